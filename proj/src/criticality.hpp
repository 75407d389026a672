#pragma once

#include <utility>
#include <vector>

#include "fluctuations.hpp"
#include "meanfield.hpp"
#include "params.hpp"

namespace tdicke {

enum class Side { NormalSide, SuperradiantSide };

// Perpendicular approach to a second-order boundary point (possibly the QTP).
struct CriticalApproach {
  BoundaryPoint target;
  Side side;
  double dir_x;  // unit normal of the critical line at target, signed toward `side`
  double dir_y;
  std::vector<double> distances;  // n values, all > 0
};

struct ScalingFit {
  double exponent;   // log-log slope
  double amplitude;  // prefactor taken at the smallest-n point
  double r_squared;
  double n_min;
  double n_max;
};

struct GapEntropyResidual {
  double residual;  // S - (1 - ln[4 (1+l^2)^{3/2} (gap/w0) / l] / 2)
  bool divergent;   // gap below 1e-14: residual not meaningful
};

struct ResonanceProfile {
  std::vector<double> lambdas;
  std::vector<double> entropies;
  double argmax_lambda;
};

// Boundary point on the second-order line (tagged Tricritical at the QTP).
BoundaryPoint second_order_point(double x_c);

// sqrt(y_c^-2 + 4 x_c^2 y_c^2): gradient magnitude entering Eqs. for z^2 and det.
double boundary_gradient_norm(const BoundaryPoint& target);

// Closest point of the second-order line to (x, y) and the distance to it.
std::pair<BoundaryPoint, double> perpendicular_foot(double x, double y);

// Build an approach along the inward/outward normal at `target`.
CriticalApproach make_approach(const BoundaryPoint& target, Side side,
                               std::vector<double> distances);

// Order-parameter scaling z ~ n^alpha along a superradiant-side approach.
// amplitude = z^2/n (generic target) or z^4/n (QTP target) at the smallest n.
ScalingFit order_parameter_scaling(const CriticalApproach& app);

// Determinant scaling det(Omega^2)/lambda^2 ~ beta * K * n; amplitude = beta.
ScalingFit determinant_scaling(const CriticalApproach& app, double lambda);

// Residual of the universal gap-entropy relation at a point near the boundary.
GapEntropyResidual gap_entropy_relation(double x, double y, double lambda);

// Same residual against the internally consistent form (lambda^2 in the
// denominator); diagnostic, see the scaling report.
GapEntropyResidual gap_entropy_relation_corrected(double x, double y, double lambda);

// S(lambda) profile at fixed distance n from `target` (normal side) and the
// grid argmax.
ResonanceProfile entropy_resonance(const BoundaryPoint& target, double n,
                                   const std::vector<double>& lambdas);

}  // namespace tdicke
