#ifndef NLCL_FLUX_HPP
#define NLCL_FLUX_HPP

#include <optional>
#include <string>

#include "nlcl/model.hpp"

namespace nlcl {

enum class FluxKind { lax_friedrichs, godunov, engquist_osher, upwind };

std::string to_string(FluxKind k);

/// Lipschitz-type constants of a reduced flux G and its sup norm, the
/// ingredients of the CFL bound.
struct SchemeConstants {
  double l1 = 0.0;
  double l2 = 0.0;
  double norm_g_flux = 0.0;  // sup |G| over I^2
  double alpha = 0.0;        // effective diffusion parameter, if any
};

/// Two-point numerical flux factored as F(a,b,V) = G(a,b) * V. The reduced
/// flux G depends only on g and the invariant interval. The Godunov and
/// Engquist-Osher forms are the simplified ones valid for V >= 0 and refuse
/// negative velocities; Lax-Friedrichs is sign-agnostic in V.
///
/// Construction validates the scheme: Lax-Friedrichs needs alpha >= ||g'||,
/// upwind needs a linear g, and the closed-form constants are cross-checked
/// by dense sampling of the defining inequalities.
class FluxScheme {
public:
  static FluxScheme make(FluxKind kind, const ModelSpec& model,
                         std::optional<double> alpha = std::nullopt);

  /// G(a, b): flux with the velocity factored out.
  double reduced(double a, double b) const;
  /// F(a, b, V) = G(a, b) * V. Throws for V < 0 on Godunov/EO/upwind.
  double operator()(double a, double b, double V) const;

  const SchemeConstants& constants() const { return constants_; }
  FluxKind kind() const { return kind_; }
  double alpha() const { return constants_.alpha; }
  const std::string& name() const { return name_; }
  bool sign_agnostic() const { return kind_ == FluxKind::lax_friedrichs; }

private:
  FluxScheme() = default;
  double eo_signed_integral(double a, double b) const;

  FluxKind kind_ = FluxKind::godunov;
  std::string name_;
  ScalarFunc g_ = ScalarFunc::polynomial({0.0});
  std::vector<double> critical_;  // stationary points of g inside I
  SchemeConstants constants_;
};

/// Numerical entropy flux for the Kruzkov pair |rho - k|:
/// F(max(u,k), max(w,k), V) - F(min(u,k), min(w,k), V).
double kruzkov_entropy_flux(const FluxScheme& scheme, double u, double w,
                            double k, double V);

}  // namespace nlcl

#endif
