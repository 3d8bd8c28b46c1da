#ifndef NLCL_SCALAR_FUNC_HPP
#define NLCL_SCALAR_FUNC_HPP

#include <string>
#include <vector>

namespace nlcl {

/// Closed-form scalar function on the density interval: a polynomial, a
/// scaled exp(-x), or a scaled (1-x)^p. These cover every built-in model
/// and admit exact derivatives, which keeps flux extrema and CFL bounds
/// free of numerical differentiation.
class ScalarFunc {
public:
  enum class Kind { polynomial, exp_neg, one_minus_pow };

  ScalarFunc() = default;  // the zero polynomial

  static ScalarFunc polynomial(std::vector<double> coeffs);
  static ScalarFunc exp_neg(double scale = 1.0);
  static ScalarFunc one_minus_pow(int power, double scale = 1.0);

  double operator()(double x) const;
  ScalarFunc derivative() const;

  Kind kind() const { return kind_; }
  /// Monomial coefficients, lowest degree first (polynomial kind only).
  const std::vector<double>& coefficients() const { return coeffs_; }
  int degree() const;

  /// Real roots inside [lo, hi]. Exact closed forms up to quadratics;
  /// throws for higher-degree polynomials (callers must supply roots).
  std::vector<double> roots_in(double lo, double hi) const;

  /// Canonical text form, used in reports and cache keys.
  std::string describe() const;

private:
  Kind kind_ = Kind::polynomial;
  std::vector<double> coeffs_;  // polynomial only
  double scale_ = 1.0;          // exp_neg / one_minus_pow
  int power_ = 0;               // one_minus_pow
};

}  // namespace nlcl

#endif
