#include <cmath>
#include <random>

#include "doctest.h"
#include "nlcl/flux.hpp"

using namespace nlcl;

namespace {
ModelSpec arrhenius_on(double lo, double hi) {
  return make_model_spec(model_registry("arrhenius"), {lo, hi});
}
}  // namespace

TEST_CASE("lax-friedrichs flux values") {
  auto m = arrhenius_on(0.0, 0.8);
  auto lxf = FluxScheme::make(FluxKind::lax_friedrichs, m, 1.0);
  // (V/2)(g(a)+g(b)+alpha(a-b)); g(0.2)=g(0.8)=0.16
  CHECK(lxf(0.2, 0.8, 1.0) == doctest::Approx(-0.14).epsilon(1e-15));
  CHECK(lxf(0.8, 0.2, 1.0) == doctest::Approx(0.46).epsilon(1e-15));
  CHECK(lxf(0.5, 0.5, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
  // negative velocities allowed for this sign-agnostic form
  CHECK(lxf(0.2, 0.8, -1.0) == doctest::Approx(0.14).epsilon(1e-15));
  CHECK_THROWS(FluxScheme::make(FluxKind::lax_friedrichs, m, 0.5));  // alpha < ||g'||
}

TEST_CASE("godunov flux: candidate extrema over endpoints and stationary points") {
  auto m = arrhenius_on(0.0, 0.8);
  auto god = FluxScheme::make(FluxKind::godunov, m);
  CHECK(god(0.2, 0.8, 1.0) == doctest::Approx(0.16).epsilon(1e-15));
  CHECK(god(0.8, 0.2, 1.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(god(0.3, 0.3, 0.7) == doctest::Approx(0.21 * 0.7).epsilon(1e-15));
  CHECK_THROWS(god(0.2, 0.8, -0.5));
}

TEST_CASE("engquist-osher flux: telescoping integral and concave shortcut") {
  auto m = arrhenius_on(0.0, 0.8);
  auto eo = FluxScheme::make(FluxKind::engquist_osher, m);
  // 0.16 + 0.16 - 0.25 = 0.07 by the concave shortcut; the integral form
  // gives (0.32 - 0.18)/2 = 0.07 as well
  CHECK(eo(0.2, 0.8, 1.0) == doctest::Approx(0.07).epsilon(1e-15));
  CHECK(eo(0.4, 0.4, 1.0) == doctest::Approx(0.24).epsilon(1e-15));
  // both arguments on the increasing branch: reduces to upwind g(a)
  CHECK(eo(0.1, 0.3, 1.0) == doctest::Approx(0.09).epsilon(1e-15));
  CHECK_THROWS(eo(0.1, 0.3, -1.0));
}

TEST_CASE("EO integral form equals the concave shortcut on random pairs") {
  auto m = arrhenius_on(0.0, 1.0);
  auto eo = FluxScheme::make(FluxKind::engquist_osher, m);
  const double c = 0.5;
  auto g = [](double x) { return x * (1.0 - x); };
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    double a = dist(rng), b = dist(rng);
    double shortcut = g(std::min(a, c)) + g(std::max(b, c)) - g(c);
    worst = std::max(worst, std::abs(eo.reduced(a, b) - shortcut));
  }
  CHECK(worst <= 1e-14);
}

TEST_CASE("EO telescoping matches adaptive quadrature of |g'|") {
  // independent oracle: fine trapezoid integration of |1 - 2x|
  auto m = arrhenius_on(0.0, 1.0);
  auto eo = FluxScheme::make(FluxKind::engquist_osher, m);
  auto num_integral = [](double a, double b) {
    int n = 200000;
    double lo = std::min(a, b), hi = std::max(a, b);
    double acc = 0.0, h = (hi - lo) / n;
    for (int i = 0; i < n; ++i) {
      double x0 = lo + i * h, x1 = x0 + h;
      acc += 0.5 * h * (std::abs(1.0 - 2.0 * x0) + std::abs(1.0 - 2.0 * x1));
    }
    return a <= b ? acc : -acc;
  };
  auto g = [](double x) { return x * (1.0 - x); };
  for (auto [a, b] : {std::pair{0.2, 0.8}, {0.8, 0.2}, {0.1, 0.45}, {0.7, 0.3}}) {
    double expected = 0.5 * (g(a) + g(b) - num_integral(a, b));
    CHECK(eo.reduced(a, b) == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("upwind requires a linear g") {
  auto nlwr = make_model_spec(model_registry("nlwr"), {0.0, 1.0});
  auto up = FluxScheme::make(FluxKind::upwind, nlwr);
  CHECK(up(0.3, 0.9, 0.5) == doctest::Approx(0.15).epsilon(1e-15));
  CHECK(up(0.4, 0.4, 1.0) == doctest::Approx(0.4).epsilon(1e-15));
  auto arr = arrhenius_on(0.0, 0.8);
  CHECK_THROWS(FluxScheme::make(FluxKind::upwind, arr));
}

TEST_CASE("scheme constants closed forms") {
  auto m = arrhenius_on(0.0, 0.8);
  auto god = FluxScheme::make(FluxKind::godunov, m);
  CHECK(god.constants().l1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(god.constants().l2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(god.constants().norm_g_flux == doctest::Approx(0.25).epsilon(1e-12));

  auto lxf = FluxScheme::make(FluxKind::lax_friedrichs, m, 1.0);
  CHECK(lxf.constants().l1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lxf.constants().norm_g_flux == doctest::Approx(0.65).epsilon(1e-12));

  auto nlwr = make_model_spec(model_registry("nlwr"), {0.0, 1.0});
  auto up = FluxScheme::make(FluxKind::upwind, nlwr);
  CHECK(up.constants().l1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(up.constants().l2 == 0.0);
}

TEST_CASE("factorization, consistency, monotonicity, weak lipschitz") {
  auto m = arrhenius_on(0.0, 0.8);
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> in_I(0.0, 0.8);
  for (FluxKind kind : {FluxKind::lax_friedrichs, FluxKind::godunov,
                        FluxKind::engquist_osher}) {
    auto scheme = kind == FluxKind::lax_friedrichs
                      ? FluxScheme::make(kind, m, 1.0)
                      : FluxScheme::make(kind, m);
    const auto& c = scheme.constants();
    double v_lo = scheme.sign_agnostic() ? -m.bound_v : 0.0;
    std::uniform_real_distribution<double> in_V(v_lo, m.bound_v);
    for (int i = 0; i < 10000; ++i) {
      double a = in_I(rng), b = in_I(rng), V = in_V(rng);
      // factorization F = G V
      CHECK(scheme(a, b, V) ==
            doctest::Approx(scheme.reduced(a, b) * V).epsilon(1e-14));
      // consistency on the diagonal
      CHECK(scheme.reduced(a, a) == doctest::Approx(m.g(a)).epsilon(1e-14));
      // monotone: nondecreasing in a, nonincreasing in b (V >= 0)
      double Vp = std::abs(V);
      double a2 = in_I(rng), b2 = in_I(rng);
      double alo = std::min(a, a2), ahi = std::max(a, a2);
      CHECK(scheme(alo, b, Vp) <= scheme(ahi, b, Vp) + 1e-12);
      double blo = std::min(b, b2), bhi = std::max(b, b2);
      CHECK(scheme(a, bhi, Vp) <= scheme(a, blo, Vp) + 1e-12);
      // weak lipschitz against the diagonal
      CHECK(std::abs(scheme(a, b, V) - scheme(b, b, V)) <=
            c.l1 * std::abs(a - b) + 1e-12);
      CHECK(std::abs(scheme(a, b, V) - scheme(a, a, V)) <=
            c.l2 * std::abs(a - b) + 1e-12);
    }
  }
}

TEST_CASE("godunov, EO and upwind coincide for linear g") {
  auto nlwr = make_model_spec(model_registry("nlwr"), {0.0, 1.0});
  auto god = FluxScheme::make(FluxKind::godunov, nlwr);
  auto eo = FluxScheme::make(FluxKind::engquist_osher, nlwr);
  auto up = FluxScheme::make(FluxKind::upwind, nlwr);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    double a = dist(rng), b = dist(rng);
    double r = up.reduced(a, b);
    worst = std::max(worst, std::abs(god.reduced(a, b) - r));
    worst = std::max(worst, std::abs(eo.reduced(a, b) - r));
  }
  CHECK(worst <= 1e-14);
}

TEST_CASE("godunov == EO == upwind on a shared monotone branch") {
  auto m = arrhenius_on(0.0, 1.0);
  auto god = FluxScheme::make(FluxKind::godunov, m);
  auto eo = FluxScheme::make(FluxKind::engquist_osher, m);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> low(0.0, 0.5), high(0.5, 1.0);
  for (int i = 0; i < 2000; ++i) {
    double a = low(rng), b = low(rng);  // both below the vertex: g increasing
    CHECK(std::abs(god.reduced(a, b) - m.g(a)) <= 1e-14);
    CHECK(std::abs(eo.reduced(a, b) - m.g(a)) <= 1e-14);
    double c = high(rng), d = high(rng);  // both above: g decreasing
    CHECK(std::abs(god.reduced(c, d) - m.g(d)) <= 1e-14);
    CHECK(std::abs(eo.reduced(c, d) - m.g(d)) <= 1e-14);
  }
}

TEST_CASE("kruzkov numerical entropy flux") {
  auto m = arrhenius_on(0.0, 0.8);
  auto god = FluxScheme::make(FluxKind::godunov, m);
  // F(0.5,0.8) - F(0.2,0.5) = min(g(0.5),g(0.8)) - min(g(0.2),g(0.5)) = 0
  CHECK(kruzkov_entropy_flux(god, 0.2, 0.8, 0.5, 1.0) ==
        doctest::Approx(0.0).epsilon(1e-15));
  // u = w = k: both terms coincide
  CHECK(kruzkov_entropy_flux(god, 0.3, 0.3, 0.3, 1.0) == 0.0);
  // k below the range: F(u,w) - g(k) V
  double u = 0.2, w = 0.7, k = -0.1, V = 0.9;
  CHECK(kruzkov_entropy_flux(god, u, w, k, V) ==
        doctest::Approx(god(u, w, V) - m.g(k) * V).epsilon(1e-14));
}
