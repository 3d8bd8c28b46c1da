#include "nlcl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nlcl {

namespace {

// Abscissae/weights for 20-node Gauss-Legendre on [-1, 1], positive half.
constexpr double kGL20X[10] = {
    0.0765265211334973, 0.2277858511416451, 0.3737060887154195,
    0.5108670019508271, 0.6360536807265150, 0.7463319064601508,
    0.8391169718222188, 0.9122344282513259, 0.9639719272779138,
    0.9931285991850949};
constexpr double kGL20W[10] = {
    0.1527533871307258, 0.1491729864726037, 0.1420961093183820,
    0.1316886384491766, 0.1181945319615184, 0.1019301198172404,
    0.0832767415767048, 0.0626720483341091, 0.0406014298003869,
    0.0176140071391521};

int floor_with_tolerance(double x) {
  return static_cast<int>(std::floor(x + 1e-9));
}

int ceil_with_tolerance(double x) {
  return static_cast<int>(std::ceil(x - 1e-9));
}

}  // namespace

double gauss_legendre_20(const std::function<double(double)>& f, double a,
                         double b) {
  double mid = 0.5 * (a + b);
  double half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < 10; ++i) {
    acc += kGL20W[i] * (f(mid + half * kGL20X[i]) + f(mid - half * kGL20X[i]));
  }
  return acc * half;
}

KernelWeights compute_weights(const Kernel& kernel, double dx,
                              bool allow_inexact_fallback) {
  if (!(dx > 0.0)) throw std::invalid_argument("compute_weights: dx <= 0");
  if (dx > kernel.support_width() * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "compute_weights: dx=" << dx << " exceeds the kernel support width "
       << kernel.support_width();
    throw std::invalid_argument(os.str());
  }
  const bool exact = kernel.has_antiderivative();
  if (!exact && !allow_inexact_fallback)
    throw std::runtime_error(
        "compute_weights: kernel '" + kernel.family() +
        "' has no closed-form antiderivative (quadrature fallback disabled)");

  KernelWeights out;
  out.exact = exact;
  int k_lo, k_hi;
  if (kernel.downstream()) {
    out.n_eta = floor_with_tolerance(kernel.eta() / dx);
    if (out.n_eta < 1)
      throw std::invalid_argument("compute_weights: window is empty (dx > eta)");
    k_lo = 0;
    k_hi = out.n_eta - 1;
  } else {
    out.n_eta = ceil_with_tolerance(-kernel.support_lo() / dx);
    if (out.n_eta < 1)
      throw std::invalid_argument("compute_weights: window is empty");
    k_lo = -out.n_eta;
    k_hi = ceil_with_tolerance(kernel.support_hi() / dx) - 1;
  }
  out.k_min = k_lo;
  out.weights.resize(static_cast<std::size_t>(k_hi - k_lo + 1));

  for (int k = k_lo; k <= k_hi; ++k) {
    double a = std::max(k * dx, kernel.support_lo());
    double b = std::min((k + 1) * dx, kernel.support_hi());
    double w = 0.0;
    if (b > a) {
      if (exact) {
        w = kernel.antiderivative(b) - kernel.antiderivative(a);
      } else {
        w = gauss_legendre_20([&](double x) { return kernel.density(x); }, a, b);
      }
    }
    out.weights[static_cast<std::size_t>(k - k_lo)] = w;
  }

  double sum = 0.0;
  for (double w : out.weights) sum += w;
  out.weight_sum = sum;
  out.gamma0 = (0 >= k_lo && 0 <= k_hi) ? out.at_k(0) : 0.0;
  return out;
}

WeightsCheck verify_weights(const KernelWeights& w, const Kernel& kernel,
                            double dx) {
  WeightsCheck c;
  c.weight_sum = 0.0;
  c.all_nonnegative = true;
  for (std::size_t i = 0; i < w.weights.size(); ++i) {
    int k = w.k_min + static_cast<int>(i);
    double a = std::max(k * dx, kernel.support_lo());
    double b = std::min((k + 1) * dx, kernel.support_hi());
    double ref = b > a ? gauss_legendre_20(
                             [&](double x) { return kernel.density(x); }, a, b)
                       : 0.0;
    c.max_requadrature_gap =
        std::max(c.max_requadrature_gap, std::abs(ref - w.weights[i]));
    c.weight_sum += w.weights[i];
    if (w.weights[i] < 0.0) c.all_nonnegative = false;
  }
  c.normalized = std::abs(c.weight_sum - 1.0) <= 1e-13;
  c.monotone_applicable = kernel.downstream();
  c.monotone = true;
  if (c.monotone_applicable) {
    for (std::size_t i = 1; i < w.weights.size(); ++i)
      if (w.weights[i] > w.weights[i - 1] + 1e-14) c.monotone = false;
  }
  return c;
}

std::string WeightsCheck::summary() const {
  std::ostringstream os;
  os << "sum=" << weight_sum << " requad_gap=" << max_requadrature_gap
     << " nonneg=" << (all_nonnegative ? "yes" : "NO");
  if (monotone_applicable) os << " monotone=" << (monotone ? "yes" : "NO");
  return os.str();
}

}  // namespace nlcl
