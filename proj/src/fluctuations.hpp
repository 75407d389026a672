#pragma once

#include <array>
#include <stdexcept>

#include "params.hpp"

namespace tdicke {

// Raised when the quadratic form around the supplied z has a genuinely
// negative direction, i.e. z was not the global minimizer.
struct InstabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dressed atomic frequencies (units w0) and rotation angles of the two groups.
struct DressedAngles {
  double omega2;
  double omega3;
  double theta2;
  double theta3;
};

// Quadratic-fluctuation data at a mean-field point. Basis order is fixed:
// index 0 = photon, 1 = even group, 2 = odd group. All entries in units of w0.
struct FluctuationResult {
  std::array<double, 9> omega_sq{};    // Omega^2, row-major symmetric 3x3
  std::array<double, 3> eigenvalues_sq{};  // ascending
  double gap = 0.0;                    // sqrt(max(0, smallest eigenvalue))
  std::array<double, 9> omega_sqrt{};  // principal square root Omega
  double a_plus = 0.0;
  double a_minus = 0.0;
  double gamma = 0.0;                  // arccosh(A+/A-); +inf if the photon decouples
  double entropy = 0.0;
  bool divergent = false;              // gap below 1e-12: entropy is best-effort
};

inline constexpr double kGapDivergenceTol = 1e-12;
inline constexpr double kEigenvalueClamp = -1e-10;

DressedAngles dressed_frequencies(double x, double z);

// Omega^2 only (matrix entries filled, spectrum not yet computed).
FluctuationResult build_omega_squared(const ModelParams& p, double z);

// Eigenvalues + gap. Throws InstabilityError if an eigenvalue < -1e-10.
void spectrum(FluctuationResult& fr);

// Principal square root with near-zero eigenvalues clamped to 0.
void matrix_sqrt(FluctuationResult& fr);

// A+/-, gamma and the von Neumann entropy of the reduced photon state.
void entanglement_entropy(FluctuationResult& fr);

// Convenience: all four stages in order.
FluctuationResult analyze(const ModelParams& p, double z);

// det(Omega^2) in units w0^6, evaluated in closed form from the arrow structure.
double omega_sq_det(const ModelParams& p, double z);

}  // namespace tdicke
