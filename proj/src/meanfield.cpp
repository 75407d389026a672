#include "meanfield.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace tdicke {

namespace {

// Derivatives d^k s / dz^k, k = 0..order, of s(z) = sqrt(1 + 2az + z^2).
// From s*s' = a + z, Leibniz gives
//   sum_k C(m,k) s^(k) s^(m+1-k) = d^m/dz^m (a + z),
// which solves for s^(m+1) in terms of lower derivatives.
std::array<double, 7> sqrt_derivs(double a, double z, int order) {
  static const double binom[6][6] = {
      {1, 0, 0, 0, 0, 0},  {1, 1, 0, 0, 0, 0},  {1, 2, 1, 0, 0, 0},
      {1, 3, 3, 1, 0, 0},  {1, 4, 6, 4, 1, 0},  {1, 5, 10, 10, 5, 1}};
  std::array<double, 7> d{};
  d[0] = std::sqrt(1.0 + 2.0 * a * z + z * z);
  if (order >= 1) d[1] = (a + z) / d[0];
  for (int m = 1; m < order; ++m) {
    double rhs = (m == 1) ? 1.0 : 0.0;
    for (int k = 1; k <= m; ++k) rhs -= binom[m][k] * d[k] * d[m + 1 - k];
    d[m + 1] = rhs / d[0];
  }
  return d;
}

void validate_for_f(double z, const ModelParams& p) {
  if (!std::isfinite(z)) throw std::domain_error("f_value: z must be finite");
  if (p.y == 0.0) throw std::domain_error("f_value: y = 0 (coupling-free limit; use classify_phase)");
}

// Golden-section minimization of fn over [lo, hi] down to interval width tol.
template <class F>
double golden_min(F&& fn, double lo, double hi, double tol) {
  const double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
  double f1 = fn(x1), f2 = fn(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - invphi * (b - a); f1 = fn(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + invphi * (b - a); f2 = fn(x2);
    }
  }
  return 0.5 * (a + b);
}

// Newton iterations on f'(z) = 0. The golden-section bracket localizes the
// minimum to ~1e-8; the analytic-derivative polish brings the stationarity
// residual down to rounding, which matters close to criticality where the
// landscape is nearly flat.
double newton_polish(double z0, const ModelParams& p, double max_step) {
  double z = z0;
  for (int it = 0; it < 60; ++it) {
    auto d = f_derivatives(z, p, 2);
    if (!(d[2] > 0.0)) break;
    double step = d[1] / d[2];
    if (!std::isfinite(step) || std::abs(step) > max_step) break;
    z -= step;
    if (z < 0.0) z = 0.0;
    if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(z))) break;
  }
  return z;
}

// (f(z) + 1) / z^2, rearranged to avoid the f(0) = -1 cancellation:
//   g(z) = 1/(2y) - [(2x+z)/(s+ + 1) + (z-2x)/(s- + 1)] / (2z).
// The first-order boundary is where min_z g = 0 with the minimizer z* > 0.
double g_degeneracy(double z, double x, double y) {
  const double sp = std::sqrt(1.0 + 2.0 * x * z + z * z);
  const double sm = std::sqrt(1.0 - 2.0 * x * z + z * z);
  return 0.5 / y - ((2.0 * x + z) / (sp + 1.0) + (z - 2.0 * x) / (sm + 1.0)) / (2.0 * z);
}

// Minimum of g_degeneracy over z in (0, zmax]; returns {z*, g(z*)}.
std::pair<double, double> min_g(double x, double y) {
  const int m = 4000;
  const double zmax = std::max(2.0, 4.0 * y);
  double best_z = zmax, best_g = g_degeneracy(zmax, x, y);
  for (int i = 1; i < m; ++i) {
    double z = zmax * i / m;
    double g = g_degeneracy(z, x, y);
    if (g < best_g) { best_g = g; best_z = z; }
  }
  double lo = std::max(1e-12, best_z - zmax / m), hi = std::min(zmax, best_z + zmax / m);
  double z = golden_min([&](double t) { return g_degeneracy(t, x, y); }, lo, hi, 1e-13);
  return {z, g_degeneracy(z, x, y)};
}

}  // namespace

double f_value(double z, const ModelParams& p) {
  validate_for_f(z, p);
  const double az = std::abs(z);  // keeps evenness exact in floating point
  const double sp = std::sqrt(1.0 + 2.0 * p.x * az + az * az);
  const double sm = std::sqrt(1.0 - 2.0 * p.x * az + az * az);
  return 0.5 * (az * az / p.y - sp - sm);
}

std::vector<double> f_derivatives(double z, const ModelParams& p, int max_order) {
  validate_for_f(z, p);
  if (max_order < 0 || max_order > 6)
    throw std::domain_error("f_derivatives: max_order must be in [0, 6]");
  auto dp = sqrt_derivs(p.x, z, max_order);
  auto dm = sqrt_derivs(-p.x, z, max_order);
  std::vector<double> out(max_order + 1);
  for (int k = 0; k <= max_order; ++k) {
    double quad = 0.0;
    if (k == 0) quad = 0.5 * z * z / p.y;
    else if (k == 1) quad = z / p.y;
    else if (k == 2) quad = 1.0 / p.y;
    out[k] = quad - 0.5 * (dp[k] + dm[k]);
  }
  return out;
}

std::vector<double> series_coefficients(const ModelParams& p, int n_terms) {
  if (n_terms < 1 || n_terms > 4)
    throw std::domain_error("series_coefficients: n_terms must be in [1, 4]");
  auto d = f_derivatives(0.0, p, 2 * (n_terms - 1));
  std::vector<double> c(n_terms);
  for (int n = 0; n < n_terms; ++n) c[n] = d[2 * n];
  return c;
}

MeanFieldSolution minimize_f(const ModelParams& p) {
  if (p.y == 0.0) return {0.0, -1.0, Phase::Normal, {{0.0, -1.0}}};

  const double z_max = std::max(10.0, 4.0 * p.y);
  const int m = 400;
  const double step = z_max / m;

  std::vector<double> fv(m + 1);
  for (int i = 0; i <= m; ++i) fv[i] = f_value(step * i, p);

  // c2 decides whether z = 0 is a local minimum; c2 < 0 also flags a possible
  // superradiant minimum below the grid resolution (near the critical line).
  auto c = series_coefficients(p, 4);
  const double c2 = c[1], c4 = c[2], c6 = c[3];

  std::vector<double> cands;
  for (int i = 1; i < m; ++i) {
    if (fv[i] <= fv[i - 1] && fv[i] <= fv[i + 1]) {
      double zg = golden_min([&](double t) { return f_value(t, p); },
                             step * (i - 1), step * (i + 1), 1e-8);
      cands.push_back(newton_polish(zg, p, 2.0 * step));
    }
  }
  if (c2 < 0.0) {
    double z0 = std::numeric_limits<double>::quiet_NaN();
    if (c4 > 1e-12) z0 = std::sqrt(-6.0 * c2 / c4);
    else if (c6 > 1e-12) z0 = std::pow(-120.0 * c2 / c6, 0.25);
    if (std::isfinite(z0) && z0 > 0.0 && z0 < 2.0 * step) {
      double z = newton_polish(z0, p, 4.0 * step);
      if (z > 0.0) cands.push_back(z);
    }
  }
  if (cands.empty() && c2 < 0.0) {
    // fallback: whole-bracket golden section
    cands.push_back(newton_polish(
        golden_min([&](double t) { return f_value(t, p); }, 0.0, z_max, 1e-8), p, z_max));
  }

  std::sort(cands.begin(), cands.end());
  MeanFieldSolution sol;
  if (c2 >= 0.0) sol.all_minima.push_back({0.0, -1.0});
  for (double z : cands) {
    if (z < kZTol) continue;  // the origin candidate is handled via c2
    if (!sol.all_minima.empty() && std::abs(z - sol.all_minima.back().z) < 1e-9) continue;
    auto d = f_derivatives(z, p, 2);
    if (!(d[2] > 0.0)) continue;
    sol.all_minima.push_back({z, d[0]});
  }
  // Degenerate near-critical case: c2 < 0 but the superradiant minimum sits
  // below double-precision resolution; it collapses to the origin.
  if (sol.all_minima.empty()) sol.all_minima.push_back({0.0, -1.0});

  const Minimum* best = &sol.all_minima.front();
  for (const auto& mm : sol.all_minima)
    if (mm.f < best->f || (mm.f == best->f && mm.z < best->z)) best = &mm;
  sol.z = best->z;
  sol.energy = best->f;
  sol.phase = (sol.z < kZTol) ? Phase::Normal : Phase::Superradiant;
  return sol;
}

double critical_line(double x_c) {
  if (!(x_c >= 0.0 && x_c <= kTricriticalX + 1e-12))
    throw std::domain_error(
        "critical_line: x_c must be in [0, 1/sqrt(5)]; beyond the tricritical point "
        "use first_order_boundary");
  return 1.0 / (1.0 - x_c * x_c);
}

BoundaryPoint tricritical_point() {
  // 2D Newton on (c2, c4)(x, y) from the documented initial guess.
  double x = 0.4, y = 1.2;
  auto c24 = [](double xx, double yy) {
    auto c = series_coefficients(ModelParams(xx, yy, 1.0), 3);
    return std::pair<double, double>{c[1], c[2]};
  };
  for (int it = 0; it < 80; ++it) {
    auto [c2, c4] = c24(x, y);
    if (std::abs(c2) < 1e-15 && std::abs(c4) < 1e-15) break;
    const double h = 1e-6;
    // dc2/dx = 2x, dc2/dy = -1/y^2 analytically; c4 partials by central differences
    double j11 = 2.0 * x, j12 = -1.0 / (y * y);
    double j21 = (c24(x + h, y).second - c24(x - h, y).second) / (2.0 * h);
    double j22 = (c24(x, y + h).second - c24(x, y - h).second) / (2.0 * h);
    double det = j11 * j22 - j12 * j21;
    if (!(std::abs(det) > 1e-14))
      throw std::runtime_error("tricritical_point: singular Jacobian");
    double dx = (c2 * j22 - c4 * j12) / det;
    double dy = (c4 * j11 - c2 * j21) / det;
    x -= dx;
    y -= dy;
    if (std::abs(dx) < 1e-14 && std::abs(dy) < 1e-14) break;
  }
  auto [c2, c4] = c24(x, y);
  if (std::abs(c2) > 1e-10 || std::abs(c4) > 1e-10)
    throw std::runtime_error("tricritical_point: root find did not converge");
  return {x, y, BoundaryOrder::Tricritical, 0.0};
}

BoundaryPoint first_order_boundary(double x) {
  if (!(x > kTricriticalX))
    throw std::domain_error(
        "first_order_boundary: x <= 1/sqrt(5); the boundary is second order there "
        "(use critical_line)");
  if (!(x < 1.0)) throw std::domain_error("first_order_boundary: require x < 1");

  // min_z g < 0  <=>  the superradiant minimum lies below f(0) = -1.
  double hi = 1.0 / (1.0 - x * x);  // spinodal of z = 0; superradiant global there
  if (!(min_g(x, hi).second < 0.0))
    throw std::runtime_error("first_order_boundary: bracket failure at spinodal");
  double lo = hi;
  for (int it = 0; it < 4000; ++it) {
    double trial = lo * (1.0 - 1e-3);
    if (!(min_g(x, trial).second < 0.0)) { lo = trial; break; }
    lo = trial;
  }
  if (min_g(x, lo).second < 0.0)
    throw std::runtime_error("first_order_boundary: no normal-global bracket found");

  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    if (min_g(x, mid).second < 0.0) hi = mid; else lo = mid;
  }
  const double yb = 0.5 * (lo + hi);
  const double z_jump = min_g(x, yb).first;
  return {x, yb, BoundaryOrder::FirstOrder, z_jump};
}

Phase classify_phase(const ModelParams& p) {
  if (p.y == 0.0) return Phase::Normal;
  return minimize_f(p).phase;
}

}  // namespace tdicke
