#ifndef NLCL_QUADRATURE_HPP
#define NLCL_QUADRATURE_HPP

#include <functional>
#include <string>
#include <vector>

#include "nlcl/model.hpp"

namespace nlcl {

/// Quadrature weights gamma_k of the nonlocal term: gamma_k integrates the
/// kernel over the cell [k dx, (k+1) dx]. Downstream kernels use the window
/// k = 0 .. n_eta-1 with n_eta = floor(eta/dx) (a non-integer ratio
/// truncates the tail and weight_sum < 1 is reported, never renormalized);
/// symmetric kernels use k = -n_eta .. n_eta-1 with n_eta = ceil(2 eta/dx)
/// and the outermost integrals clipped to the support.
struct KernelWeights {
  std::vector<double> weights;  // gamma_k for k = k_min .. k_min+size-1
  int k_min = 0;
  int n_eta = 0;
  double weight_sum = 0.0;
  double gamma0 = 0.0;  // weight of the nearest downstream cell (k = 0)
  bool exact = true;    // false when built through the quadrature fallback

  int k_max() const { return k_min + static_cast<int>(weights.size()) - 1; }
  double at_k(int k) const { return weights[static_cast<std::size_t>(k - k_min)]; }
};

/// Weights via the kernel's exact antiderivative. Kernels without one are
/// rejected unless allow_inexact_fallback is set, in which case 20-node
/// Gauss-Legendre is used per cell and the result is flagged non-exact.
KernelWeights compute_weights(const Kernel& kernel, double dx,
                              bool allow_inexact_fallback = false);

struct WeightsCheck {
  double max_requadrature_gap = 0.0;  // vs independent Gauss-Legendre(20)
  double weight_sum = 0.0;
  bool normalized = false;         // sum == 1 within 1e-13
  bool all_nonnegative = false;
  bool monotone = false;           // downstream kernels: gamma_k <= gamma_{k-1}
  bool monotone_applicable = false;
  std::string summary() const;
};

/// Re-integrates every weight with Gauss-Legendre(20) and reports the worst
/// discrepancy together with the invariant checks. Reporting only.
WeightsCheck verify_weights(const KernelWeights& w, const Kernel& kernel,
                            double dx);

/// 20-node Gauss-Legendre quadrature of f over [a, b].
double gauss_legendre_20(const std::function<double(double)>& f, double a,
                         double b);

}  // namespace nlcl

#endif
