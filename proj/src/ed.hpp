#pragma once

#include <cstdint>
#include <vector>

#include "params.hpp"

namespace tdicke {

// Finite-N configuration. N must be even (two equal atom groups with
// collective spin j = N/4 each); N = 1 is accepted as the asymmetric-Rabi
// special case with a single spin-1/2.
struct EDConfig {
  int n_atoms = 8;
  int n_max = 0;  // boson truncation; 0 selects the automatic policy
  ModelParams params{0.0, 1.0, 1.0};
  double target_tolerance = 1e-8;  // relative ground-energy change under n_max -> n_max + 8
  std::int64_t max_dimension = 2000000;
  int dense_threshold = 4000;  // full dense solve at or below this dimension
  int n_max_limit = 512;
  std::uint32_t seed = 12345;  // start-vector seed for the iterative solver
};

struct EDResult {
  double ground_energy = 0.0;  // units w0
  double gap = 0.0;            // first excitation (absolute)
  double gap_intra = 0.0;      // first excitation within the ground parity sector
  double n_photon = 0.0;       // <b^dag b>
  double n_photon_per_atom = 0.0;
  double b_expect = 0.0;       // |<b>|, parity check (0 up to solver accuracy)
  double entropy = 0.0;        // photon-vs-atoms von Neumann entropy
  int ground_parity = 0;       // +-1 under the Z2 (phase x group-swap) symmetry
  int n_max_used = 0;
  bool truncation_converged = false;
};

// Matrix-free Hamiltonian on |n> x |j,m2> x |j,m3>, units w0 = 1:
//   H = lambda b^dag b + sqrt(1-x^2) (J2z + J3z)
//     + sqrt(y lambda / N) (b + b^dag)(J2x + J3x) + x (J2x - J3x).
struct EDHamiltonian {
  EDHamiltonian(const EDConfig& cfg);
  std::int64_t dimension() const { return dim_; }
  void apply(const double* in, double* out) const;
  // parity = phase (-1)^{n + i2 + i3} composed with the group swap 2<->3
  void apply_parity(const double* in, double* out) const;

  int n_max;
  int n_spin;  // states per group, N/2 + 1 (or 2 for N = 1)

 private:
  std::int64_t dim_;
  int n_atoms_;
  double omega_, delta_, g_, eps_;
  std::vector<double> sqrt_n_;    // sqrt(n), n = 0..n_max
  std::vector<double> jplus_;     // <j,m+1|J+|j,m> for spin index 0..n_spin-2
};

// Lowest states, observables and adaptive truncation per the configured policy.
EDResult ground_and_gap(const EDConfig& cfg);

// Convergence table; all configs must share (x, y, lambda).
std::vector<EDResult> finite_size_scan(const std::vector<EDConfig>& cfgs);

}  // namespace tdicke
