#include "fluctuations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tdicke {

namespace {

// Cyclic Jacobi eigensolver for a symmetric 3x3 matrix. A enters row-major and
// is destroyed; eigenvalues come out ascending with matching eigenvector
// columns in v. Deterministic sweep order, accurate to ~1e-15 * ||A||.
void jacobi3(std::array<double, 9>& a, std::array<double, 3>& w, std::array<double, 9>& v) {
  v = {1, 0, 0, 0, 1, 0, 0, 0, 1};
  auto idx = [](int r, int c) { return 3 * r + c; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int r = 0; r < 3; ++r)
      for (int c = r + 1; c < 3; ++c) off += a[idx(r, c)] * a[idx(r, c)];
    double norm = 0.0;
    for (double e : a) norm += e * e;
    if (off <= 1e-30 * std::max(norm, 1e-300)) break;
    static const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (auto& pq : pairs) {
      const int p = pq[0], q = pq[1];
      const double apq = a[idx(p, q)];
      if (apq == 0.0) continue;
      const double theta = (a[idx(q, q)] - a[idx(p, p)]) / (2.0 * apq);
      const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                       (std::abs(theta) + std::sqrt(theta * theta + 1.0));
      const double c = 1.0 / std::sqrt(t * t + 1.0);
      const double s = t * c;
      for (int k = 0; k < 3; ++k) {
        const double akp = a[idx(k, p)], akq = a[idx(k, q)];
        a[idx(k, p)] = c * akp - s * akq;
        a[idx(k, q)] = s * akp + c * akq;
      }
      for (int k = 0; k < 3; ++k) {
        const double apk = a[idx(p, k)], aqk = a[idx(q, k)];
        a[idx(p, k)] = c * apk - s * aqk;
        a[idx(q, k)] = s * apk + c * aqk;
      }
      for (int k = 0; k < 3; ++k) {
        const double vkp = v[idx(k, p)], vkq = v[idx(k, q)];
        v[idx(k, p)] = c * vkp - s * vkq;
        v[idx(k, q)] = s * vkp + c * vkq;
      }
    }
  }
  std::array<int, 3> order = {0, 1, 2};
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a[idx(i, i)] < a[idx(j, j)]; });
  std::array<double, 9> vs;
  for (int k = 0; k < 3; ++k) {
    w[k] = a[idx(order[k], order[k])];
    for (int r = 0; r < 3; ++r) vs[idx(r, k)] = v[idx(r, order[k])];
  }
  v = vs;
}

}  // namespace

DressedAngles dressed_frequencies(double x, double z) {
  if (!(x >= 0.0 && x < 1.0)) throw std::domain_error("dressed_frequencies: require 0 <= x < 1");
  if (!(z >= 0.0)) throw std::domain_error("dressed_frequencies: require z >= 0");
  const double root = std::sqrt(1.0 - x * x);  // delta / w0
  DressedAngles d;
  d.omega2 = std::sqrt(1.0 + 2.0 * x * z + z * z);
  d.omega3 = std::sqrt(1.0 - 2.0 * x * z + z * z);
  d.theta2 = std::atan2(z + x, root);
  d.theta3 = std::atan2(z - x, root);
  return d;
}

FluctuationResult build_omega_squared(const ModelParams& p, double z) {
  const auto d = dressed_frequencies(p.x, z);
  // lambda_{1j}/w0^2 = sqrt(omega_1 omega_j / 2) g cos(theta_j) / w0^2
  //                  = lambda sqrt(y omega_j / (2 w0)) cos(theta_j)
  const double l12 = p.lambda * std::sqrt(0.5 * p.y * d.omega2) * std::cos(d.theta2);
  const double l13 = p.lambda * std::sqrt(0.5 * p.y * d.omega3) * std::cos(d.theta3);
  FluctuationResult fr;
  fr.omega_sq = {p.lambda * p.lambda, l12, l13,
                 l12, d.omega2 * d.omega2, 0.0,
                 l13, 0.0, d.omega3 * d.omega3};
  return fr;
}

double omega_sq_det(const ModelParams& p, double z) {
  const auto fr = build_omega_squared(p, z);
  const auto& m = fr.omega_sq;
  // arrow structure: det = w1^2 w2^2 w3^2 - l12^2 w3^2 - l13^2 w2^2
  return m[0] * m[4] * m[8] - m[1] * m[1] * m[8] - m[2] * m[2] * m[4];
}

void spectrum(FluctuationResult& fr) {
  std::array<double, 9> a = fr.omega_sq;
  std::array<double, 9> v;
  jacobi3(a, fr.eigenvalues_sq, v);
  if (fr.eigenvalues_sq[0] < kEigenvalueClamp)
    throw InstabilityError("spectrum: negative eigenvalue of Omega^2; z is not the global minimizer");
  fr.gap = std::sqrt(std::max(0.0, fr.eigenvalues_sq[0]));
  fr.divergent = fr.gap < kGapDivergenceTol;
}

void matrix_sqrt(FluctuationResult& fr) {
  std::array<double, 9> a = fr.omega_sq;
  std::array<double, 3> w;
  std::array<double, 9> v;
  jacobi3(a, w, v);
  if (w[0] < kEigenvalueClamp)
    throw InstabilityError("matrix_sqrt: negative eigenvalue of Omega^2");
  std::array<double, 3> sq;
  for (int k = 0; k < 3; ++k) sq[k] = std::sqrt(std::max(0.0, w[k]));
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += v[3 * r + k] * sq[k] * v[3 * c + k];
      fr.omega_sqrt[3 * r + c] = s;
    }
  // symmetrize away rounding noise
  for (int r = 0; r < 3; ++r)
    for (int c = r + 1; c < 3; ++c) {
      double s = 0.5 * (fr.omega_sqrt[3 * r + c] + fr.omega_sqrt[3 * c + r]);
      fr.omega_sqrt[3 * r + c] = fr.omega_sqrt[3 * c + r] = s;
    }
}

void entanglement_entropy(FluctuationResult& fr) {
  const auto& o = fr.omega_sqrt;
  const double det = o[0] * (o[4] * o[8] - o[5] * o[7]) - o[1] * (o[3] * o[8] - o[5] * o[6]) +
                     o[2] * (o[3] * o[7] - o[4] * o[6]);
  const double atomic_minor = o[4] * o[8] - o[5] * o[5];
  if (!(atomic_minor > 0.0))
    throw std::runtime_error("entanglement_entropy: singular atomic block");
  fr.a_plus = 0.5 * (o[0] + det / atomic_minor);
  fr.a_minus = 0.5 * (o[0] - det / atomic_minor);
  if (fr.a_minus < -1e-12)
    throw std::runtime_error("entanglement_entropy: A- < 0 (invalid Gaussian state)");
  if (fr.a_minus <= 0.0 || fr.a_plus / fr.a_minus > 1e300) {
    // photon mode decoupled: product state
    fr.gamma = std::numeric_limits<double>::infinity();
    fr.entropy = 0.0;
    return;
  }
  const double ratio = std::max(1.0, fr.a_plus / fr.a_minus);
  fr.gamma = std::acosh(ratio);
  if (fr.gamma <= 0.0) {
    fr.entropy = std::numeric_limits<double>::infinity();
    return;
  }
  fr.entropy = fr.gamma / std::expm1(fr.gamma) - std::log1p(-std::exp(-fr.gamma));
}

FluctuationResult analyze(const ModelParams& p, double z) {
  FluctuationResult fr = build_omega_squared(p, z);
  spectrum(fr);
  matrix_sqrt(fr);
  entanglement_entropy(fr);
  return fr;
}

}  // namespace tdicke
