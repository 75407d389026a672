#pragma once

#include <vector>

#include "params.hpp"

namespace tdicke {

enum class Phase { Normal, Superradiant };
enum class BoundaryOrder { SecondOrder, FirstOrder, Tricritical };

struct Minimum {
  double z;
  double f;
};

struct MeanFieldSolution {
  double z;       // global minimizer, z >= 0
  double energy;  // f(z) at the global minimum
  Phase phase;
  std::vector<Minimum> all_minima;  // every local minimum on the bracket, ascending in z
};

struct BoundaryPoint {
  double x_c;
  double y_c;
  BoundaryOrder order;
  double z_jump;  // order-parameter discontinuity (0 on the second-order line)
};

// analytic tricritical coordinates, x = 1/sqrt(5), y = 5/4
inline constexpr double kTricriticalX = 0.4472135954999579393;
inline constexpr double kTricriticalY = 1.25;

// classification tolerance: z below this is the normal phase
inline constexpr double kZTol = 1e-10;

// Dimensionless mean-field energy per atom,
// f(z) = (z^2/y - sqrt(1+2xz+z^2) - sqrt(1-2xz+z^2)) / 2.
double f_value(double z, const ModelParams& p);

// Derivatives d^k f / dz^k for k = 0..max_order (max_order <= 6).
std::vector<double> f_derivatives(double z, const ModelParams& p, int max_order);

// Taylor coefficients c_0, c_2, ..., c_{2(n_terms-1)} of f = sum c_{2n} z^{2n}/(2n)!
// at z = 0 (n_terms <= 4).
std::vector<double> series_coefficients(const ModelParams& p, int n_terms);

// Global minimum of f over z >= 0 with every local minimum reported.
MeanFieldSolution minimize_f(const ModelParams& p);

// Second-order boundary y_c = 1/(1-x_c^2), valid for 0 <= x_c <= 1/sqrt(5).
double critical_line(double x_c);

// Numerical solution of c_2 = c_4 = 0; agrees with (1/sqrt(5), 5/4).
BoundaryPoint tricritical_point();

// First-order boundary at x in (1/sqrt(5), 1): the y with degenerate global
// minima f(0) = f(z*) = -1, z* > 0.
BoundaryPoint first_order_boundary(double x);

Phase classify_phase(const ModelParams& p);

}  // namespace tdicke
