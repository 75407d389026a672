#include "criticality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tdicke {

namespace {

double yc_of(double x) { return 1.0 / (1.0 - x * x); }
double yc_slope(double x) {
  const double d = 1.0 - x * x;
  return 2.0 * x / (d * d);
}

double fit_r_squared(const std::vector<double>& lx, const std::vector<double>& ly,
                     double slope, double intercept) {
  double mean = 0.0;
  for (double v : ly) mean += v;
  mean /= ly.size();
  double ss_res = 0.0, ss_tot = 0.0;
  for (size_t i = 0; i < ly.size(); ++i) {
    const double pred = intercept + slope * lx[i];
    ss_res += (ly[i] - pred) * (ly[i] - pred);
    ss_tot += (ly[i] - mean) * (ly[i] - mean);
  }
  return ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
}

// ordinary least squares on (lx, ly); returns {slope, intercept}
std::pair<double, double> ols(const std::vector<double>& lx, const std::vector<double>& ly) {
  const size_t n = lx.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += lx[i]; sy += ly[i]; sxx += lx[i] * lx[i]; sxy += lx[i] * ly[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {slope, (sy - slope * sx) / n};
}

bool is_qtp(const BoundaryPoint& t) { return t.order == BoundaryOrder::Tricritical; }

}  // namespace

BoundaryPoint second_order_point(double x_c) {
  if (!(x_c >= 0.0 && x_c <= kTricriticalX + 1e-12))
    throw std::domain_error("second_order_point: x_c must be in [0, 1/sqrt(5)]");
  const bool qtp = std::abs(x_c - kTricriticalX) < 1e-12;
  return {x_c, yc_of(x_c), qtp ? BoundaryOrder::Tricritical : BoundaryOrder::SecondOrder, 0.0};
}

double boundary_gradient_norm(const BoundaryPoint& t) {
  const double inv_y = 1.0 / t.y_c;
  return std::sqrt(inv_y * inv_y + 4.0 * t.x_c * t.x_c * t.y_c * t.y_c);
}

std::pair<BoundaryPoint, double> perpendicular_foot(double x, double y) {
  if (!(x >= 0.0)) throw std::domain_error("perpendicular_foot: require x >= 0");
  auto dist2 = [&](double xc) {
    const double dy = y - yc_of(xc);
    return (x - xc) * (x - xc) + dy * dy;
  };
  const int m = 2000;
  double best_x = 0.0, best_d = dist2(0.0);
  for (int i = 1; i <= m; ++i) {
    const double xc = kTricriticalX * i / m;
    const double d = dist2(xc);
    if (d < best_d) { best_d = d; best_x = xc; }
  }
  double lo = std::max(0.0, best_x - kTricriticalX / m);
  double hi = std::min(kTricriticalX, best_x + kTricriticalX / m);
  // golden refinement
  const double invphi = 0.6180339887498949;
  double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
  double f1 = dist2(x1), f2 = dist2(x2);
  while (hi - lo > 1e-14) {
    if (f1 <= f2) { hi = x2; x2 = x1; f2 = f1; x1 = hi - invphi * (hi - lo); f1 = dist2(x1); }
    else { lo = x1; x1 = x2; f1 = f2; x2 = lo + invphi * (hi - lo); f2 = dist2(x2); }
  }
  double xc = 0.5 * (lo + hi);
  if (xc < 1e-13) xc = 0.0;
  if (xc > kTricriticalX - 1e-13) xc = kTricriticalX;
  const double n = std::sqrt(dist2(xc));
  if (!(n <= 0.2))
    throw std::domain_error("perpendicular_foot: point farther than 0.2 from the critical line");
  return {second_order_point(xc), n};
}

CriticalApproach make_approach(const BoundaryPoint& target, Side side,
                               std::vector<double> distances) {
  if (distances.empty())
    throw std::domain_error("make_approach: need at least one distance");
  for (double n : distances)
    if (!(n > 0.0)) throw std::domain_error("make_approach: distances must be > 0");
  const double slope = yc_slope(target.x_c);
  const double h = std::hypot(slope, 1.0);
  double dx = -slope / h, dy = 1.0 / h;  // unit normal pointing into the superradiant side
  if (side == Side::NormalSide) { dx = -dx; dy = -dy; }
  return {target, side, dx, dy, std::move(distances)};
}

ScalingFit order_parameter_scaling(const CriticalApproach& app) {
  if (app.side != Side::SuperradiantSide)
    throw std::domain_error("order_parameter_scaling: approach must come from the superradiant side");
  std::vector<double> ln_n, ln_z;
  double n_min = app.distances.front(), z_at_min = 0.0;
  for (double n : app.distances) {
    const ModelParams p(app.target.x_c + n * app.dir_x, app.target.y_c + n * app.dir_y, 1.0);
    const auto sol = minimize_f(p);
    if (sol.phase != Phase::Superradiant)
      throw std::runtime_error("order_parameter_scaling: sample point classified Normal");
    ln_n.push_back(std::log(n));
    ln_z.push_back(std::log(sol.z));
    if (n <= n_min) { n_min = n; z_at_min = sol.z; }
  }
  auto [slope, intercept] = ols(ln_n, ln_z);
  ScalingFit fit;
  fit.exponent = slope;
  fit.amplitude = is_qtp(app.target) ? std::pow(z_at_min, 4) / n_min
                                     : z_at_min * z_at_min / n_min;
  fit.r_squared = fit_r_squared(ln_n, ln_z, slope, intercept);
  fit.n_min = *std::min_element(app.distances.begin(), app.distances.end());
  fit.n_max = *std::max_element(app.distances.begin(), app.distances.end());
  return fit;
}

ScalingFit determinant_scaling(const CriticalApproach& app, double lambda) {
  const double K = boundary_gradient_norm(app.target);
  std::vector<double> ln_n, ln_d;
  double n_min = app.distances.front(), d_at_min = 0.0;
  for (double n : app.distances) {
    const ModelParams p(app.target.x_c + n * app.dir_x, app.target.y_c + n * app.dir_y, lambda);
    double z = 0.0;
    if (app.side == Side::SuperradiantSide) {
      const auto sol = minimize_f(p);
      if (sol.phase != Phase::Superradiant)
        throw std::runtime_error("determinant_scaling: sample point classified Normal");
      z = sol.z;
    }
    const double d = omega_sq_det(p, z) / (lambda * lambda);
    if (!(d > 0.0))
      throw std::runtime_error("determinant_scaling: non-positive determinant");
    ln_n.push_back(std::log(n));
    ln_d.push_back(std::log(d));
    if (n <= n_min) { n_min = n; d_at_min = d; }
  }
  auto [slope, intercept] = ols(ln_n, ln_d);
  ScalingFit fit;
  fit.exponent = slope;
  fit.amplitude = d_at_min / (n_min * K);  // beta
  fit.r_squared = fit_r_squared(ln_n, ln_d, slope, intercept);
  fit.n_min = *std::min_element(app.distances.begin(), app.distances.end());
  fit.n_max = *std::max_element(app.distances.begin(), app.distances.end());
  return fit;
}

namespace {

GapEntropyResidual residual_impl(double x, double y, double lambda, bool corrected) {
  const ModelParams p(x, y, lambda);
  const auto sol = minimize_f(p);
  const auto fr = analyze(p, sol.z);
  if (fr.gap < 1e-14) return {0.0, true};
  const double c = lambda * lambda + 1.0;
  const double denom = corrected ? lambda * lambda : lambda;
  const double predicted = 1.0 - 0.5 * std::log(4.0 * std::pow(c, 1.5) * fr.gap / denom);
  return {fr.entropy - predicted, false};
}

}  // namespace

GapEntropyResidual gap_entropy_relation(double x, double y, double lambda) {
  return residual_impl(x, y, lambda, false);
}

GapEntropyResidual gap_entropy_relation_corrected(double x, double y, double lambda) {
  return residual_impl(x, y, lambda, true);
}

ResonanceProfile entropy_resonance(const BoundaryPoint& target, double n,
                                   const std::vector<double>& lambdas) {
  if (!(n > 0.0)) throw std::domain_error("entropy_resonance: require n > 0");
  const auto base = make_approach(target, Side::NormalSide, {n});
  const double x = target.x_c + n * base.dir_x;
  const double y = target.y_c + n * base.dir_y;
  ResonanceProfile prof;
  prof.lambdas = lambdas;
  double best_s = -std::numeric_limits<double>::infinity();
  prof.argmax_lambda = lambdas.empty() ? 0.0 : lambdas.front();
  for (double l : lambdas) {
    const auto fr = analyze(ModelParams(x, y, l), 0.0);
    prof.entropies.push_back(fr.entropy);
    if (fr.entropy > best_s) { best_s = fr.entropy; prof.argmax_lambda = l; }
  }
  return prof;
}

}  // namespace tdicke
