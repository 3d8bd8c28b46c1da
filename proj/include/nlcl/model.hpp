#ifndef NLCL_MODEL_HPP
#define NLCL_MODEL_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nlcl/grid.hpp"
#include "nlcl/scalar_func.hpp"

namespace nlcl {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  double width() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

/// The continuous problem data: flux nonlinearity g, velocity v, their
/// derivatives, the stationary points of g, and sup-norm bounds over the
/// invariant interval I. Immutable after construction; everything the
/// solver needs is precomputed here.
struct ModelSpec {
  std::string name;
  ScalarFunc g;
  ScalarFunc dg;
  std::vector<double> g_critical_points;  // interior stationary points of g
  ScalarFunc v;
  ScalarFunc dv;
  ScalarFunc ddv;
  Interval interval;  // I = [rho_min, rho_max]
  double bound_g = 0.0;
  double bound_dg = 0.0;
  double bound_v = 0.0;
  double bound_dv = 0.0;
  double bound_ddv = 0.0;

  /// g's stationary points strictly inside (lo, hi).
  std::vector<double> critical_points_in(double lo, double hi) const;
  std::string describe() const;
};

/// Convolution kernel bound to a concrete horizon eta. Downstream kernels
/// live on [0, eta]; the symmetric sedimentation kernel on [-2 eta, 2 eta].
/// The antiderivative is the exact closed form used for the quadrature
/// weights; kernels lacking one can only be integrated through the
/// Gauss-Legendre fallback.
class Kernel {
public:
  static Kernel make(const std::string& family, double eta);
  /// User-supplied density without a closed-form antiderivative.
  static Kernel custom(std::string name, double eta, double support_lo,
                       double support_hi,
                       std::function<double(double)> density);

  const std::string& family() const { return family_; }
  double eta() const { return eta_; }
  double support_lo() const { return support_lo_; }  // absolute x units
  double support_hi() const { return support_hi_; }
  double support_width() const { return support_hi_ - support_lo_; }
  bool downstream() const { return support_lo_ == 0.0; }
  bool has_antiderivative() const { return !antideriv_poly_.empty(); }

  double density(double x) const;
  /// Exact antiderivative (polynomial kinds only; throws otherwise).
  double antiderivative(double x) const;
  /// Monomial coefficients of the antiderivative in x; empty when none.
  const std::vector<double>& antiderivative_poly() const {
    return antideriv_poly_;
  }
  double omega_at_zero() const { return density(0.0); }
  std::string describe() const;

private:
  std::string family_;
  double eta_ = 0.0;
  double support_lo_ = 0.0;
  double support_hi_ = 0.0;
  std::vector<double> density_poly_;    // monomials in x; empty for custom
  std::vector<double> antideriv_poly_;  // monomials in x; empty for custom
  std::function<double(double)> custom_density_;
};

/// Piecewise-constant initial data: ordered disjoint intervals with a
/// constant value each, default value elsewhere.
struct InitialData {
  struct Piece {
    double lo;
    double hi;  // may be +inf; clipped to the grid on projection
    double value;
  };
  std::vector<Piece> pieces;
  double default_value = 0.0;

  void validate() const;  // disjointness, ordering, finite values
  std::string describe() const;
};

struct CheckResult {
  std::string check;
  bool passed = false;
  double where = 0.0;  // offending sample point (failures only)
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
  std::string summary() const;
};

/// Sup norm of |f| over [I.lo, I.hi]: endpoints, the supplied stationary
/// points, and a dense sweep (1e5 samples by default).
double sup_norm(const ScalarFunc& f, Interval I,
                const std::vector<double>& stationary_points = {},
                int samples = 100000);

struct ModelFunctions {
  std::string name;
  ScalarFunc g;
  std::optional<std::vector<double>> g_critical_points;  // else derived
  ScalarFunc v;
};

/// Binds model functions to an invariant interval: derives derivatives and
/// stationary points, computes the sup-norm bounds.
ModelSpec make_model_spec(const ModelFunctions& fns, Interval I);

/// Built-in registry: "arrhenius", "sedimentation", "nlwr".
ModelFunctions model_registry(const std::string& name);
std::vector<std::string> model_registry_names();

/// Hypothesis checks: positivity of g and v, v nonincreasing, kernel
/// normalization, kernel monotonicity (downstream kernels only), stationary
/// points genuinely stationary and inside I. Non-finite samples are hard
/// errors naming the function and point.
ValidationReport validate_model(const ModelSpec& spec, const Kernel& kernel);

/// Exact cell averages of piecewise-constant data (length-weighted overlap).
std::vector<double> project_initial_data(const InitialData& data,
                                         const GridSpec& grid);

}  // namespace nlcl

#endif
