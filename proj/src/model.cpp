#include "nlcl/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace nlcl {

namespace {

double poly_eval(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

std::vector<double> poly_antiderivative(const std::vector<double>& c) {
  std::vector<double> a(c.size() + 1, 0.0);
  for (std::size_t i = 0; i < c.size(); ++i)
    a[i + 1] = c[i] / static_cast<double>(i + 1);
  return a;
}

}  // namespace

std::vector<double> ModelSpec::critical_points_in(double lo, double hi) const {
  std::vector<double> out;
  for (double p : g_critical_points)
    if (p > lo && p < hi) out.push_back(p);
  return out;
}

std::string ModelSpec::describe() const {
  std::ostringstream os;
  os << name << "{g=" << g.describe() << ",v=" << v.describe() << ",I=["
     << interval.lo << "," << interval.hi << "]}";
  return os.str();
}

Kernel Kernel::make(const std::string& family, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("kernel: eta must be positive");
  Kernel k;
  k.family_ = family;
  k.eta_ = eta;
  if (family == "constant_downstream") {
    k.support_lo_ = 0.0;
    k.support_hi_ = eta;
    k.density_poly_ = {1.0 / eta};
  } else if (family == "linear_downstream") {
    // 2(eta - x)/eta^2
    k.support_lo_ = 0.0;
    k.support_hi_ = eta;
    k.density_poly_ = {2.0 / eta, -2.0 / (eta * eta)};
  } else if (family == "parabolic_symmetric") {
    // (3/8)(1 - (x/eta)^2/4)/eta on [-2 eta, 2 eta]
    k.support_lo_ = -2.0 * eta;
    k.support_hi_ = 2.0 * eta;
    k.density_poly_ = {3.0 / (8.0 * eta), 0.0,
                       -3.0 / (32.0 * eta * eta * eta)};
  } else {
    throw std::invalid_argument("unknown kernel family: " + family);
  }
  k.antideriv_poly_ = poly_antiderivative(k.density_poly_);
  return k;
}

Kernel Kernel::custom(std::string name, double eta, double support_lo,
                      double support_hi,
                      std::function<double(double)> density) {
  if (!(eta > 0.0)) throw std::invalid_argument("kernel: eta must be positive");
  if (!(support_hi > support_lo))
    throw std::invalid_argument("kernel: empty support");
  Kernel k;
  k.family_ = std::move(name);
  k.eta_ = eta;
  k.support_lo_ = support_lo;
  k.support_hi_ = support_hi;
  k.custom_density_ = std::move(density);
  return k;
}

double Kernel::density(double x) const {
  if (x < support_lo_ || x > support_hi_) return 0.0;
  if (!density_poly_.empty()) return poly_eval(density_poly_, x);
  return custom_density_(x);
}

double Kernel::antiderivative(double x) const {
  if (antideriv_poly_.empty())
    throw std::runtime_error("kernel '" + family_ +
                             "' has no closed-form antiderivative");
  x = std::clamp(x, support_lo_, support_hi_);
  return poly_eval(antideriv_poly_, x);
}

std::string Kernel::describe() const {
  std::ostringstream os;
  os << family_ << "{eta=" << eta_ << "}";
  return os.str();
}

void InitialData::validate() const {
  double prev_hi = -std::numeric_limits<double>::infinity();
  if (!std::isfinite(default_value))
    throw std::invalid_argument("initial data: default value not finite");
  for (const auto& p : pieces) {
    if (!(p.hi > p.lo))
      throw std::invalid_argument("initial data: piece with empty interval");
    if (p.lo < prev_hi)
      throw std::invalid_argument("initial data: pieces overlap or unordered");
    if (!std::isfinite(p.value))
      throw std::invalid_argument("initial data: piece value not finite");
    prev_hi = p.hi;
  }
}

std::string InitialData::describe() const {
  std::ostringstream os;
  os << "pieces[";
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (i) os << ";";
    os << pieces[i].lo << ":" << pieces[i].hi << ":" << pieces[i].value;
  }
  os << "]default=" << default_value;
  return os.str();
}

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.passed ? "pass" : "FAIL") << "  " << c.check;
    if (!c.passed) os << "  at x=" << c.where << "  (" << c.detail << ")";
    os << "\n";
  }
  return os.str();
}

double sup_norm(const ScalarFunc& f, Interval I,
                const std::vector<double>& stationary_points, int samples) {
  if (!(I.hi >= I.lo)) throw std::invalid_argument("sup_norm: empty interval");
  auto probe = [&](double x) {
    double y = f(x);
    if (!std::isfinite(y)) {
      std::ostringstream os;
      os << "sup_norm: non-finite value of " << f.describe() << " at x=" << x;
      throw std::runtime_error(os.str());
    }
    return std::abs(y);
  };
  double best = std::max(probe(I.lo), probe(I.hi));
  for (double p : stationary_points)
    if (I.contains(p)) best = std::max(best, probe(p));
  for (int i = 1; i < samples; ++i) {
    double x = I.lo + (I.hi - I.lo) * (static_cast<double>(i) / samples);
    best = std::max(best, probe(x));
  }
  return best;
}

ModelSpec make_model_spec(const ModelFunctions& fns, Interval I) {
  if (!(I.hi >= I.lo))
    throw std::invalid_argument("make_model_spec: empty interval");
  ModelSpec m;
  m.name = fns.name;
  m.g = fns.g;
  m.dg = fns.g.derivative();
  m.v = fns.v;
  m.dv = fns.v.derivative();
  m.ddv = m.dv.derivative();
  if (fns.g_critical_points) {
    m.g_critical_points = *fns.g_critical_points;
    std::sort(m.g_critical_points.begin(), m.g_critical_points.end());
  } else {
    m.g_critical_points = m.dg.roots_in(I.lo, I.hi);
  }
  m.interval = I;
  m.bound_g = sup_norm(m.g, I, m.g_critical_points);
  m.bound_dg = sup_norm(m.dg, I);
  m.bound_v = sup_norm(m.v, I);
  m.bound_dv = sup_norm(m.dv, I);
  m.bound_ddv = sup_norm(m.ddv, I);
  return m;
}

ModelFunctions model_registry(const std::string& name) {
  if (name == "arrhenius") {
    // g = rho (1 - rho), v = exp(-rho)
    return {name, ScalarFunc::polynomial({0.0, 1.0, -1.0}), std::nullopt,
            ScalarFunc::exp_neg()};
  }
  if (name == "sedimentation") {
    // g = rho (1 - rho), v = (1 - rho)^4
    return {name, ScalarFunc::polynomial({0.0, 1.0, -1.0}), std::nullopt,
            ScalarFunc::one_minus_pow(4)};
  }
  if (name == "nlwr") {
    // g = rho, v = 1 - rho
    return {name, ScalarFunc::polynomial({0.0, 1.0}), std::nullopt,
            ScalarFunc::one_minus_pow(1)};
  }
  throw std::invalid_argument("unknown model: " + name);
}

std::vector<std::string> model_registry_names() {
  return {"arrhenius", "sedimentation", "nlwr"};
}

ValidationReport validate_model(const ModelSpec& spec, const Kernel& kernel) {
  ValidationReport rep;
  const Interval I = spec.interval;
  const int n = 10000;
  auto sample = [&](int i) {
    return I.lo + (I.hi - I.lo) * (static_cast<double>(i) / n);
  };
  auto finite_or_throw = [&](double y, const char* fn, double x) {
    if (!std::isfinite(y)) {
      std::ostringstream os;
      os << "validate_model: non-finite value of " << fn << " at x=" << x;
      throw std::runtime_error(os.str());
    }
  };

  auto nonneg = [&](const ScalarFunc& f, const char* label) {
    CheckResult c{std::string(label) + " >= 0 on I", true, 0.0, ""};
    for (int i = 0; i <= n; ++i) {
      double x = sample(i), y = f(x);
      finite_or_throw(y, label, x);
      if (y < -1e-12) {
        c.passed = false;
        c.where = x;
        c.detail = "value " + std::to_string(y);
        break;
      }
    }
    rep.checks.push_back(c);
  };
  nonneg(spec.g, "g");
  nonneg(spec.v, "v");

  {
    CheckResult c{"v' <= 0 on I", true, 0.0, ""};
    for (int i = 0; i <= n; ++i) {
      double x = sample(i), y = spec.dv(x);
      finite_or_throw(y, "v'", x);
      if (y > 1e-12) {
        c.passed = false;
        c.where = x;
        c.detail = "v' = " + std::to_string(y);
        break;
      }
    }
    rep.checks.push_back(c);
  }

  {
    CheckResult c{"stationary points of g", true, 0.0, ""};
    for (double p : spec.g_critical_points) {
      double y = spec.dg(p);
      finite_or_throw(y, "g'", p);
      if (std::abs(y) > 1e-12 || !I.contains(p)) {
        c.passed = false;
        c.where = p;
        c.detail = "g'(p) = " + std::to_string(y);
        break;
      }
    }
    rep.checks.push_back(c);
  }

  {
    CheckResult c{"kernel normalization", true, 0.0, ""};
    double mass;
    if (kernel.has_antiderivative()) {
      mass = kernel.antiderivative(kernel.support_hi()) -
             kernel.antiderivative(kernel.support_lo());
    } else {
      // crude trapezoid sweep; custom kernels get the exact check through
      // the quadrature module instead
      mass = 0.0;
      int m = 200000;
      double h = kernel.support_width() / m;
      for (int i = 0; i < m; ++i) {
        double a = kernel.support_lo() + i * h;
        mass += 0.5 * h * (kernel.density(a) + kernel.density(a + h));
      }
    }
    if (std::abs(mass - 1.0) > (kernel.has_antiderivative() ? 1e-13 : 1e-8)) {
      c.passed = false;
      c.detail = "integral = " + std::to_string(mass);
    }
    rep.checks.push_back(c);
  }

  {
    CheckResult c{"kernel >= 0 on support", true, 0.0, ""};
    for (int i = 0; i <= n; ++i) {
      double x = kernel.support_lo() +
                 kernel.support_width() * (static_cast<double>(i) / n);
      double y = kernel.density(x);
      finite_or_throw(y, "omega", x);
      if (y < -1e-12) {
        c.passed = false;
        c.where = x;
        c.detail = "omega = " + std::to_string(y);
        break;
      }
    }
    rep.checks.push_back(c);
  }

  if (kernel.downstream()) {
    CheckResult c{"kernel nonincreasing (downstream)", true, 0.0, ""};
    double prev = kernel.density(0.0);
    for (int i = 1; i <= n; ++i) {
      double x = kernel.support_width() * (static_cast<double>(i) / n);
      double y = kernel.density(x);
      if (y > prev + 1e-12) {
        c.passed = false;
        c.where = x;
        c.detail = "omega increases";
        break;
      }
      prev = y;
    }
    rep.checks.push_back(c);
  }

  return rep;
}

std::vector<double> project_initial_data(const InitialData& data,
                                         const GridSpec& grid) {
  data.validate();
  const int n = grid.cell_count();
  if (n <= 0) throw std::invalid_argument("project_initial_data: empty grid");
  std::vector<double> avg(n, data.default_value);
  for (int j = 0; j < n; ++j) {
    double xl = grid.cell_left(j);
    double xr = xl + grid.dx;
    double frac = 0.0;
    double acc = 0.0;
    bool fully_covered = false;
    for (const auto& p : data.pieces) {
      if (p.lo <= xl && p.hi >= xr) {  // cell inside one piece: exact value
        avg[j] = p.value;
        fully_covered = true;
        break;
      }
      double lo = std::max(xl, p.lo);
      double hi = std::min(xr, p.hi);
      if (hi > lo) {
        double f = (hi - lo) / grid.dx;
        frac += f;
        acc += f * p.value;
      }
    }
    if (!fully_covered) avg[j] = acc + (1.0 - frac) * data.default_value;
  }
  return avg;
}

}  // namespace nlcl
