#include <cmath>

#include "doctest.h"
#include "nlcl/quadrature.hpp"

using namespace nlcl;

TEST_CASE("constant kernel: uniform weights") {
  auto w = compute_weights(Kernel::make("constant_downstream", 0.1), 0.025);
  REQUIRE(w.weights.size() == 4);
  CHECK(w.k_min == 0);
  CHECK(w.n_eta == 4);
  for (double g : w.weights) CHECK(g == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(w.weight_sum == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(w.gamma0 == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("linear kernel, eta=0.1, dx=0.05: weights 0.75, 0.25") {
  // antiderivative (2 eta x - x^2)/eta^2 evaluated by hand:
  // gamma_0 = (0.2*0.05 - 0.0025)/0.01 = 0.75, gamma_1 = 1 - 0.75 = 0.25
  auto w = compute_weights(Kernel::make("linear_downstream", 0.1), 0.05);
  REQUIRE(w.weights.size() == 2);
  CHECK(w.weights[0] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(w.weights[1] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(w.weight_sum == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("symmetric sedimentation kernel: 8 weights, k_min=-4") {
  auto kernel = Kernel::make("parabolic_symmetric", 0.025);
  auto w = compute_weights(kernel, 0.0125);
  REQUIRE(w.weights.size() == 8);
  CHECK(w.k_min == -4);
  CHECK(w.n_eta == 4);
  CHECK(std::abs(w.weight_sum - 1.0) <= 1e-13);
  // symmetry of the kernel: gamma_{-k-1} = gamma_k
  for (int k = 0; k < 4; ++k)
    CHECK(w.at_k(k) == doctest::Approx(w.at_k(-k - 1)).epsilon(1e-14));
  // independent high-order quadrature cross-check
  auto check = verify_weights(w, kernel, 0.0125);
  CHECK(check.max_requadrature_gap <= 1e-15);
  CHECK(check.normalized);
}

TEST_CASE("weights are nonnegative and nonincreasing for downstream kernels") {
  for (double dx : {0.01, 0.0125, 0.02, 0.025}) {
    auto w = compute_weights(Kernel::make("linear_downstream", 0.1), dx);
    for (std::size_t i = 0; i < w.weights.size(); ++i) {
      CHECK(w.weights[i] >= 0.0);
      if (i) CHECK(w.weights[i] <= w.weights[i - 1] + 1e-15);
    }
  }
}

TEST_CASE("non-integer eta/dx truncates the tail, sum < 1, reported") {
  // eta/dx = 10/3 -> n_eta = 3, covered mass = Omega(3 dx)
  auto kernel = Kernel::make("linear_downstream", 0.1);
  double dx = 0.03;
  auto w = compute_weights(kernel, dx);
  CHECK(w.n_eta == 3);
  REQUIRE(w.weights.size() == 3);
  double covered = kernel.antiderivative(0.09) - kernel.antiderivative(0.0);
  CHECK(w.weight_sum == doctest::Approx(covered).epsilon(1e-14));
  CHECK(w.weight_sum < 1.0);
  auto check = verify_weights(w, kernel, dx);
  CHECK(!check.normalized);
  CHECK(check.max_requadrature_gap <= 1e-15);
}

TEST_CASE("refinement additivity: halved cells sum to the parent weight") {
  for (const char* family :
       {"constant_downstream", "linear_downstream", "parabolic_symmetric"}) {
    double eta = 0.1;
    double dx = family == std::string("parabolic_symmetric") ? 0.05 : 0.0125;
    auto kernel = Kernel::make(family, eta);
    auto coarse = compute_weights(kernel, dx);
    auto fine = compute_weights(kernel, dx / 2.0);
    REQUIRE(fine.weights.size() == 2 * coarse.weights.size());
    for (int k = coarse.k_min; k <= coarse.k_max(); ++k) {
      double parent = coarse.at_k(k);
      double split = fine.at_k(2 * k) + fine.at_k(2 * k + 1);
      CHECK(std::abs(parent - split) <= 1e-14);
    }
  }
}

TEST_CASE("gamma0 <= dx * omega(0) for downstream kernels") {
  // the combination lambda gamma_0 <= dt omega(0) used by the BV bound
  for (double dx : {0.01, 0.02, 0.05}) {
    auto kernel = Kernel::make("linear_downstream", 0.1);
    auto w = compute_weights(kernel, dx);
    CHECK(w.gamma0 <= dx * kernel.omega_at_zero() + 1e-15);
  }
}

TEST_CASE("gauss-legendre oracle agrees with exact antiderivatives") {
  auto kernel = Kernel::make("linear_downstream", 0.1);
  double exact = kernel.antiderivative(0.07) - kernel.antiderivative(0.02);
  double gl = gauss_legendre_20([&](double x) { return kernel.density(x); },
                                0.02, 0.07);
  CHECK(gl == doctest::Approx(exact).epsilon(1e-15));
  // degree-5 stress test: GL(20) is exact far beyond this
  double poly5 = gauss_legendre_20(
      [](double x) { return ((((x + 0.3) * x - 1.0) * x + 2.0) * x - 0.7) * x * x; },
      -0.4, 1.1);
  auto F = [](double x) {
    // antiderivative of x^6 + 0.3 x^5 - x^4 + 2 x^3 - 0.7 x^2
    return x * x * x * (x * x * x * x / 7.0 + 0.3 * x * x * x / 6.0 -
                        x * x / 5.0 + x / 2.0 - 0.7 / 3.0);
  };
  CHECK(poly5 == doctest::Approx(F(1.1) - F(-0.4)).epsilon(1e-14));
}

TEST_CASE("perturbed weight shows up as the requadrature discrepancy") {
  auto kernel = Kernel::make("linear_downstream", 0.1);
  auto w = compute_weights(kernel, 0.05);
  w.weights[1] += 1e-6;
  auto check = verify_weights(w, kernel, 0.05);
  CHECK(check.max_requadrature_gap == doctest::Approx(1e-6).epsilon(1e-6));
}

TEST_CASE("error cases") {
  CHECK_THROWS(compute_weights(Kernel::make("linear_downstream", 0.1), 0.2));
  CHECK_THROWS(compute_weights(Kernel::make("linear_downstream", 0.1), 0.0));
  auto custom = Kernel::custom("bump", 0.1, 0.0, 0.1,
                               [](double x) { return 200.0 * (0.1 - x); });
  CHECK_THROWS(compute_weights(custom, 0.05));  // fallback disabled
  auto w = compute_weights(custom, 0.05, /*allow_inexact_fallback=*/true);
  CHECK(!w.exact);
  CHECK(w.weights[0] == doctest::Approx(0.75).epsilon(1e-12));
}
