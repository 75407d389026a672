#pragma once

#include <cmath>
#include <stdexcept>

namespace tdicke {

// Raw model parameters (light frequency, atomic splitting, coupling,
// symmetry-breaking field). Only their dimensionless combinations enter
// the physics; w0 = sqrt(eps^2 + delta^2) is the natural energy unit.
struct RawParams {
  double omega;
  double delta;
  double g;
  double eps;

  double omega0() const { return std::sqrt(eps * eps + delta * delta); }
};

// Dimensionless coordinates of a system point:
//   x      = eps / w0            (0 <= x < 1; x = 1 means delta = 0, singular)
//   y      = g^2 / (omega * w0)  (>= 0)
//   lambda = omega / w0          (> 0)
struct ModelParams {
  double x;
  double y;
  double lambda;

  ModelParams(double x_, double y_, double lambda_) : x(x_), y(y_), lambda(lambda_) {
    if (!(x >= 0.0 && x < 1.0))
      throw std::domain_error("ModelParams: require 0 <= x < 1 (x = 1 is the delta = 0 singular limit)");
    if (!(y >= 0.0)) throw std::domain_error("ModelParams: require y >= 0");
    if (!(lambda > 0.0)) throw std::domain_error("ModelParams: require lambda > 0");
  }

  static ModelParams from_raw(const RawParams& r) {
    const double w0 = r.omega0();
    if (!(w0 > 0.0)) throw std::domain_error("ModelParams: eps = delta = 0 has no scale");
    if (!(r.omega > 0.0)) throw std::domain_error("ModelParams: require omega > 0");
    return ModelParams(r.eps / w0, r.g * r.g / (r.omega * w0), r.omega / w0);
  }

  // Reconstruct raw parameters for a given overall scale w0.
  RawParams to_raw(double w0 = 1.0) const {
    return RawParams{lambda * w0, w0 * std::sqrt(1.0 - x * x), w0 * std::sqrt(y * lambda), x * w0};
  }
};

}  // namespace tdicke
