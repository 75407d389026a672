#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "fluctuations.hpp"
#include "meanfield.hpp"

using namespace tdicke;

namespace {

double mat_get(const std::array<double, 9>& m, int r, int c) { return m[3 * r + c]; }

}  // namespace

TEST_CASE("dressed frequencies and angles, closed forms") {
  auto d0 = dressed_frequencies(0.3, 0.0);
  CHECK(d0.omega2 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d0.omega3 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::cos(d0.theta2) == doctest::Approx(std::sqrt(1.0 - 0.09)).epsilon(1e-14));
  CHECK(d0.theta3 == doctest::Approx(-d0.theta2).epsilon(1e-14));

  auto d = dressed_frequencies(0.0, std::sqrt(3.0));
  CHECK(d.omega2 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(d.omega3 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::cos(d.theta2) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(dressed_frequencies(1.2, 0.0), std::domain_error);
  CHECK_THROWS_AS(dressed_frequencies(0.1, -0.5), std::domain_error);
}

TEST_CASE("coupling entry at the resonant superradiant example") {
  // x = 0, y = 2, lambda = 1: z = sqrt(3), omega_{2,3} = 2, cos(theta) = 1/2,
  // so the photon-atom coupling is sqrt(2)/2.
  const ModelParams p(0.0, 2.0, 1.0);
  auto fr = build_omega_squared(p, std::sqrt(3.0));
  CHECK(mat_get(fr.omega_sq, 0, 1) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-13));
  CHECK(mat_get(fr.omega_sq, 0, 2) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-13));
  CHECK(mat_get(fr.omega_sq, 1, 1) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(mat_get(fr.omega_sq, 2, 2) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(mat_get(fr.omega_sq, 1, 2) == 0.0);
}

TEST_CASE("spectrum on the second-order line is {0, 1, sqrt(1+lambda^2)}") {
  for (double lambda : {0.5, 1.0, 2.0}) {
    for (double xc : {0.0, 0.2, 0.4}) {
      const double yc = critical_line(xc);
      auto fr = build_omega_squared(ModelParams(xc, yc, lambda), 0.0);
      spectrum(fr);
      CHECK(std::abs(fr.eigenvalues_sq[0]) < 1e-12);
      CHECK(fr.eigenvalues_sq[1] == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(fr.eigenvalues_sq[2] == doctest::Approx(1.0 + lambda * lambda).epsilon(1e-12));
      CHECK(fr.gap < 1e-6);
      CHECK(fr.divergent);
    }
  }
}

TEST_CASE("determinant closed forms") {
  // z = 0: det = lambda^2 (1 - y (1 - x^2))
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ux(0.0, 0.9), uy(0.05, 0.9), ul(0.3, 3.0);
  for (int i = 0; i < 50; ++i) {
    const double x = ux(rng), l = ul(rng);
    const double y = uy(rng) / (1.0 - x * x);  // stay on the normal side
    const ModelParams p(x, y, l);
    const double expected = l * l * (1.0 - y * (1.0 - x * x));
    CHECK(omega_sq_det(p, 0.0) == doctest::Approx(expected).epsilon(1e-11));
    // det equals the eigenvalue product
    auto fr = build_omega_squared(p, 0.0);
    spectrum(fr);
    const double prod =
        fr.eigenvalues_sq[0] * fr.eigenvalues_sq[1] * fr.eigenvalues_sq[2];
    CHECK(omega_sq_det(p, 0.0) == doctest::Approx(prod).epsilon(1e-10));
  }
}

TEST_CASE("matrix square root squares back to Omega^2") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> ux(0.0, 0.9), uy(0.1, 3.0), ul(0.3, 3.0);
  int tested = 0;
  while (tested < 50) {
    const ModelParams p(ux(rng), uy(rng), ul(rng));
    const auto sol = minimize_f(p);
    auto fr = build_omega_squared(p, sol.z);
    spectrum(fr);
    matrix_sqrt(fr);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += fr.omega_sqrt[3 * r + k] * fr.omega_sqrt[3 * k + c];
        CHECK(std::abs(s - fr.omega_sq[3 * r + c]) < 1e-10);
      }
    ++tested;
  }
}

TEST_CASE("instability detection away from the true minimum") {
  // deep in the superradiant phase the z = 0 saddle has a negative direction
  auto fr = build_omega_squared(ModelParams(0.0, 2.0, 1.0), 0.0);
  CHECK_THROWS_AS(spectrum(fr), InstabilityError);
}

TEST_CASE("stationarity identity couples the minimum to the dressed angles") {
  // at any superradiant minimum: z / y = (sin(theta2) + sin(theta3)) / 2
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> ux(0.0, 0.4), uy(1.3, 3.0);
  for (int i = 0; i < 40; ++i) {
    const ModelParams p(ux(rng), uy(rng), 1.0);
    const auto sol = minimize_f(p);
    if (sol.phase != Phase::Superradiant) continue;
    const auto d = dressed_frequencies(p.x, sol.z);
    const double lhs = sol.z / p.y;
    const double rhs = 0.5 * (std::sin(d.theta2) + std::sin(d.theta3));
    CHECK(std::abs(lhs - rhs) < 1e-7);
  }
}

TEST_CASE("gamma and A ratio are consistent") {
  const ModelParams p(0.2, 0.9, 1.3);
  auto fr = analyze(p, 0.0);
  CHECK(std::cosh(fr.gamma) == doctest::Approx(fr.a_plus / fr.a_minus).epsilon(1e-12));
  CHECK(fr.a_plus >= fr.a_minus);
  CHECK(fr.a_minus > 0.0);
  CHECK(fr.entropy > 0.0);
}

TEST_CASE("entropy grows monotonically approaching the boundary") {
  double prev = -1.0;
  for (double y : {0.5, 0.7, 0.9, 0.97, 0.99, 0.999}) {
    auto fr = analyze(ModelParams(0.0, y, 1.0), 0.0);
    CHECK(fr.entropy > prev);
    prev = fr.entropy;
  }
}

TEST_CASE("small-gamma expansion of the entropy") {
  // S = gamma/(e^gamma - 1) - ln(1 - e^-gamma) -> 1 - ln(gamma) as gamma -> 0
  auto fr = analyze(ModelParams(0.0, 0.9999999, 1.0), 0.0);
  CHECK(fr.gamma < 0.1);
  CHECK(fr.entropy == doctest::Approx(1.0 - std::log(fr.gamma)).epsilon(2e-2));
}

TEST_CASE("entropy jump across the first-order boundary") {
  const auto bp = first_order_boundary(0.6);
  const auto below = minimize_f(ModelParams(0.6, bp.y_c - 1e-5, 1.0));
  const auto above = minimize_f(ModelParams(0.6, bp.y_c + 1e-5, 1.0));
  auto fb = analyze(ModelParams(0.6, bp.y_c - 1e-5, 1.0), below.z);
  auto fa = analyze(ModelParams(0.6, bp.y_c + 1e-5, 1.0), above.z);
  // both sides stay gapped and the entropies differ discontinuously
  CHECK(fb.gap > 1e-3);
  CHECK(fa.gap > 1e-3);
  CHECK(std::abs(fb.entropy - fa.entropy) > 1e-3);
}

TEST_CASE("decoupled photon at y = 0") {
  auto fr = analyze(ModelParams(0.3, 0.0, 1.2), 0.0);
  CHECK(fr.entropy == 0.0);
  CHECK(std::isinf(fr.gamma));
  CHECK(fr.gap == doctest::Approx(1.0).epsilon(1e-12));  // bare atomic mode
}

TEST_CASE("analyze rejects unstable input and full pipeline is coherent") {
  CHECK_THROWS_AS(analyze(ModelParams(0.2, 3.0, 1.0), 0.0), InstabilityError);
  const ModelParams p(0.2, 3.0, 1.0);
  const auto sol = minimize_f(p);
  auto fr = analyze(p, sol.z);
  CHECK(fr.gap > 0.0);
  CHECK(fr.entropy > 0.0);
  CHECK(!fr.divergent);
}
