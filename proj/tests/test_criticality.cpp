#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "criticality.hpp"

using namespace tdicke;

namespace {

std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> g;
  for (int i = 0; i < count; ++i)
    g.push_back(lo * std::pow(hi / lo, double(i) / (count - 1)));
  return g;
}

}  // namespace

TEST_CASE("second_order_point and gradient norm") {
  auto b = second_order_point(0.3);
  CHECK(b.y_c == doctest::Approx(1.0 / 0.91).epsilon(1e-14));
  CHECK(b.order == BoundaryOrder::SecondOrder);
  auto q = second_order_point(kTricriticalX);
  CHECK(q.order == BoundaryOrder::Tricritical);
  CHECK(q.y_c == doctest::Approx(1.25).epsilon(1e-12));
  // closed form at the QTP: K = sqrt(16/25 + 4/5 * 25/16) = sqrt(0.64 + 1.25)
  CHECK(boundary_gradient_norm(q) == doctest::Approx(std::sqrt(1.89)).epsilon(1e-12));
  CHECK(boundary_gradient_norm(second_order_point(0.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(second_order_point(0.5), std::domain_error);
}

TEST_CASE("perpendicular_foot round trip") {
  // start on the line, step along the normal, recover the foot and distance
  for (double xc : {0.1, 0.3, kTricriticalX}) {
    const auto target = second_order_point(xc);
    for (auto side : {Side::NormalSide, Side::SuperradiantSide}) {
      const auto app = make_approach(target, side, {0.05});
      const double px = target.x_c + 0.05 * app.dir_x;
      const double py = target.y_c + 0.05 * app.dir_y;
      auto [foot, n] = perpendicular_foot(px, py);
      CHECK(foot.x_c == doctest::Approx(target.x_c).epsilon(1e-5));
      CHECK(n == doctest::Approx(0.05).epsilon(1e-5));
    }
  }
  CHECK_THROWS_AS(perpendicular_foot(0.3, 3.0), std::domain_error);
}

TEST_CASE("make_approach directions") {
  const auto t = second_order_point(0.0);
  const auto sr = make_approach(t, Side::SuperradiantSide, {0.01});
  // at x = 0 the line is horizontal; superradiant side is +y
  CHECK(sr.dir_x == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(sr.dir_y == doctest::Approx(1.0).epsilon(1e-14));
  const auto nm = make_approach(t, Side::NormalSide, {0.01});
  CHECK(nm.dir_y == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK_THROWS_AS(make_approach(t, Side::NormalSide, {}), std::domain_error);
  CHECK_THROWS_AS(make_approach(t, Side::NormalSide, {-0.1}), std::domain_error);
}

TEST_CASE("order parameter exponent 1/2 at a generic boundary point") {
  const auto t = second_order_point(0.3);
  const auto app = make_approach(t, Side::SuperradiantSide, log_grid(1e-8, 1e-5, 10));
  const auto fit = order_parameter_scaling(app);
  CHECK(std::abs(fit.exponent - 0.5) < 1e-3);
  // amplitude oracle: z^2/n -> 2 K / (1 - 5 x_c^2)
  const double K = boundary_gradient_norm(t);
  const double expected = 2.0 * K / (1.0 - 5.0 * 0.09);
  CHECK(fit.amplitude == doctest::Approx(expected).epsilon(1e-2));
  CHECK(fit.r_squared > 0.999999);
}

TEST_CASE("order parameter exponent 1/4 at the tricritical point") {
  const auto t = second_order_point(kTricriticalX);
  const auto app = make_approach(t, Side::SuperradiantSide, log_grid(1e-9, 1e-6, 10));
  const auto fit = order_parameter_scaling(app);
  CHECK(std::abs(fit.exponent - 0.25) < 2e-3);
  // amplitude oracle: z^4/n -> 5 sqrt(21) / 6
  CHECK(fit.amplitude == doctest::Approx(5.0 * std::sqrt(21.0) / 6.0).epsilon(1e-2));
}

TEST_CASE("determinant scaling is linear with the predicted slope ratios") {
  const auto distances = log_grid(1e-8, 1e-5, 8);
  const auto tg = second_order_point(0.3);
  const auto tq = second_order_point(kTricriticalX);

  const auto nrm = determinant_scaling(make_approach(tg, Side::NormalSide, distances), 1.0);
  CHECK(std::abs(nrm.exponent - 1.0) < 1e-4);
  CHECK(nrm.amplitude == doctest::Approx(1.0).epsilon(1e-3));

  const auto sr = determinant_scaling(make_approach(tg, Side::SuperradiantSide, distances), 1.0);
  CHECK(std::abs(sr.exponent - 1.0) < 1e-3);
  CHECK(sr.amplitude == doctest::Approx(2.0).epsilon(1e-2));

  const auto srq = determinant_scaling(make_approach(tq, Side::SuperradiantSide, distances), 1.0);
  CHECK(std::abs(srq.exponent - 1.0) < 1e-3);
  CHECK(srq.amplitude == doctest::Approx(4.0).epsilon(1e-2));
}

TEST_CASE("determinant slope is lambda independent after the lambda^2 rescale") {
  const auto t = second_order_point(0.2);
  const auto distances = log_grid(1e-7, 1e-5, 6);
  const auto a = determinant_scaling(make_approach(t, Side::NormalSide, distances), 0.5);
  const auto b = determinant_scaling(make_approach(t, Side::NormalSide, distances), 2.0);
  CHECK(a.amplitude == doctest::Approx(b.amplitude).epsilon(1e-6));
}

TEST_CASE("gap-entropy relation at resonance (lambda = 1)") {
  // the published relation holds to high accuracy at lambda = 1
  for (double n : {1e-4, 1e-5, 1e-6}) {
    const auto t = second_order_point(0.3);
    const auto app = make_approach(t, Side::NormalSide, {n});
    const auto r = gap_entropy_relation(t.x_c + n * app.dir_x, t.y_c + n * app.dir_y, 1.0);
    CHECK(!r.divergent);
    CHECK(std::abs(r.residual) < 0.02);
  }
}

TEST_CASE("corrected gap-entropy relation holds off resonance") {
  const auto t = second_order_point(0.3);
  const auto app = make_approach(t, Side::NormalSide, {1e-6});
  const double px = t.x_c + 1e-6 * app.dir_x, py = t.y_c + 1e-6 * app.dir_y;
  for (double lambda : {0.1, 1.0, 10.0}) {
    const auto r = gap_entropy_relation_corrected(px, py, lambda);
    CHECK(!r.divergent);
    CHECK(std::abs(r.residual) < 0.02);
  }
  // published form deviates by ln(lambda)/2 off resonance
  const auto off = gap_entropy_relation(px, py, 10.0);
  CHECK(std::abs(off.residual - 0.5 * std::log(10.0)) < 0.02);
}

TEST_CASE("entropy resonance peaks at lambda = 1") {
  const auto t = second_order_point(0.3);
  const auto prof = entropy_resonance(t, 1e-5, log_grid(0.1, 10.0, 41));
  CHECK(prof.argmax_lambda == doctest::Approx(1.0).epsilon(0.1));
  // profile is symmetric in ln(lambda)
  CHECK(prof.entropies.front() == doctest::Approx(prof.entropies.back()).epsilon(1e-2));
  // and decays away from the peak
  CHECK(prof.entropies.front() < *std::max_element(prof.entropies.begin(), prof.entropies.end()));
  CHECK_THROWS_AS(entropy_resonance(t, -1.0, {1.0}), std::domain_error);
}
