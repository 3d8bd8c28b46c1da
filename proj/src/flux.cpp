#include "nlcl/flux.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace nlcl {

std::string to_string(FluxKind k) {
  switch (k) {
    case FluxKind::lax_friedrichs: return "lax_friedrichs";
    case FluxKind::godunov: return "godunov";
    case FluxKind::engquist_osher: return "engquist_osher";
    case FluxKind::upwind: return "upwind";
  }
  return "?";
}

namespace {

// Samples the weak-Lipschitz inequalities and |G| <= norm_g_flux on random
// triples; a violation means the closed-form constants are wrong for this
// scheme/model pair.
void check_constants(const FluxScheme& scheme, const ModelSpec& model) {
  const auto& c = scheme.constants();
  const Interval I = model.interval;
  std::mt19937 rng(0x9e3779b9u);
  std::uniform_real_distribution<double> in_I(I.lo, I.hi);
  const double v_lo = scheme.sign_agnostic() ? -model.bound_v : 0.0;
  std::uniform_real_distribution<double> in_V(v_lo, model.bound_v);
  const double tol = 1e-12;
  for (int i = 0; i < 10000; ++i) {
    double a = in_I(rng), b = in_I(rng), V = in_V(rng);
    double fab = scheme(a, b, V);
    double fbb = scheme(b, b, V);
    double faa = scheme(a, a, V);
    double d = std::abs(a - b);
    if (std::abs(fab - fbb) > c.l1 * d + tol ||
        std::abs(fab - faa) > c.l2 * d + tol ||
        std::abs(scheme.reduced(a, b)) > c.norm_g_flux + tol) {
      std::ostringstream os;
      os << "scheme constants violated for " << scheme.name() << " at a=" << a
         << " b=" << b << " V=" << V;
      throw std::logic_error(os.str());
    }
  }
}

}  // namespace

FluxScheme FluxScheme::make(FluxKind kind, const ModelSpec& model,
                            std::optional<double> alpha) {
  FluxScheme s;
  s.kind_ = kind;
  s.name_ = to_string(kind);
  s.g_ = model.g;
  s.critical_ = model.g_critical_points;
  std::sort(s.critical_.begin(), s.critical_.end());

  const double ng = model.bound_g;
  const double ndg = model.bound_dg;
  const double nv = model.bound_v;
  SchemeConstants c;
  switch (kind) {
    case FluxKind::lax_friedrichs: {
      c.alpha = alpha.value_or(ndg);
      if (c.alpha < ndg - 1e-14) {
        std::ostringstream os;
        os << "lax_friedrichs: alpha=" << c.alpha
           << " below the admissible minimum ||g'||=" << ndg;
        throw std::invalid_argument(os.str());
      }
      c.l1 = c.l2 = nv * (c.alpha + ndg) / 2.0;
      c.norm_g_flux = ng + 0.5 * c.alpha * model.interval.width();
      break;
    }
    case FluxKind::godunov:
    case FluxKind::engquist_osher:
      if (alpha) throw std::invalid_argument("alpha only applies to lax_friedrichs");
      c.l1 = c.l2 = nv * ndg;
      c.norm_g_flux = ng;
      break;
    case FluxKind::upwind: {
      if (alpha) throw std::invalid_argument("alpha only applies to lax_friedrichs");
      // G(a,b) = g(a) is only monotone in b (trivially) for linear g;
      // nonlinear g can converge to a wrong solution, so refuse it.
      double slope = model.dg(model.interval.lo);
      const int n = 64;
      for (int i = 0; i <= n; ++i) {
        double x = model.interval.lo + model.interval.width() * i / n;
        if (std::abs(model.dg(x) - slope) > 1e-12)
          throw std::invalid_argument(
              "upwind requires a linear g on I (nonlinear g may converge to a "
              "wrong solution); use godunov or engquist_osher");
      }
      c.l1 = nv * ndg;
      c.l2 = 0.0;
      c.norm_g_flux = ng;
      break;
    }
  }
  s.constants_ = c;
  check_constants(s, model);
  return s;
}

double FluxScheme::eo_signed_integral(double a, double b) const {
  // int_a^b |g'| as a telescoping sum of |g| jumps over the stationary-point
  // partition; exact for piecewise-monotone g.
  if (a == b) return 0.0;
  double lo = std::min(a, b), hi = std::max(a, b);
  double acc = 0.0;
  double prev_x = lo;
  double prev_g = g_(lo);
  for (double p : critical_) {
    if (p > lo && p < hi) {
      double gp = g_(p);
      acc += std::abs(gp - prev_g);
      prev_x = p;
      prev_g = gp;
    }
  }
  (void)prev_x;
  acc += std::abs(g_(hi) - prev_g);
  return a <= b ? acc : -acc;
}

double FluxScheme::reduced(double a, double b) const {
  switch (kind_) {
    case FluxKind::lax_friedrichs:
      return 0.5 * (g_(a) + g_(b) + constants_.alpha * (a - b));
    case FluxKind::godunov: {
      if (a == b) return g_(a);
      double lo = std::min(a, b), hi = std::max(a, b);
      double best = a <= b ? std::min(g_(a), g_(b)) : std::max(g_(a), g_(b));
      for (double p : critical_) {
        if (p > lo && p < hi) {
          double gp = g_(p);
          best = a <= b ? std::min(best, gp) : std::max(best, gp);
        }
      }
      return best;
    }
    case FluxKind::engquist_osher:
      return 0.5 * (g_(a) + g_(b) - eo_signed_integral(a, b));
    case FluxKind::upwind:
      return g_(a);
  }
  return 0.0;
}

double FluxScheme::operator()(double a, double b, double V) const {
  if (V < 0.0 && !sign_agnostic()) {
    std::ostringstream os;
    os << name_ << " flux: negative interface velocity V=" << V
       << " (this form assumes V >= 0)";
    throw std::domain_error(os.str());
  }
  return reduced(a, b) * V;
}

double kruzkov_entropy_flux(const FluxScheme& scheme, double u, double w,
                            double k, double V) {
  return scheme(std::max(u, k), std::max(w, k), V) -
         scheme(std::min(u, k), std::min(w, k), V);
}

}  // namespace nlcl
