#include "ed.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "meanfield.hpp"

namespace tdicke {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct SectorSolve {
  std::vector<double> evals;  // lowest few, ascending
  VectorXd ground;
  bool converged = true;
};

// Lanczos with full reorthogonalization and a deterministic start vector.
// sector = +-1 re-projects onto the parity sector every iteration so rounding
// cannot leak the other sector's ground state in; 0 disables the projection.
SectorSolve lanczos(const EDHamiltonian& H, const VectorXd& v0, int max_iter, double tol,
                    int sector = 0) {
  const auto dim = H.dimension();
  std::vector<VectorXd> basis;
  std::vector<double> alpha, beta;
  VectorXd v = v0.normalized();
  VectorXd w(dim), pw(dim);
  auto project = [&](VectorXd& u) {
    if (sector == 0) return;
    H.apply_parity(u.data(), pw.data());
    u = 0.5 * (u + sector * pw);
  };
  SectorSolve out;
  out.converged = false;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es;
  for (int k = 0; k < max_iter; ++k) {
    basis.push_back(v);
    H.apply(v.data(), w.data());
    project(w);
    double a = v.dot(w);
    alpha.push_back(a);
    w -= a * v;
    if (k > 0) w -= beta.back() * basis[k - 1];
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) w -= b.dot(w) * b;
    const double bnorm = w.norm();
    const int m = static_cast<int>(alpha.size());
    if (m >= 2 || bnorm < 1e-12) {
      MatrixXd T = MatrixXd::Zero(m, m);
      for (int i = 0; i < m; ++i) {
        T(i, i) = alpha[i];
        if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
      }
      es.compute(T);
      const double scale = std::max(1.0, std::abs(es.eigenvalues()(0)));
      const int want = std::min(2, m);
      bool done = bnorm < 1e-12 * scale;
      if (!done) {
        done = true;
        for (int i = 0; i < want; ++i)
          if (std::abs(bnorm * es.eigenvectors()(m - 1, i)) > tol * scale) done = false;
      }
      if (done || k == max_iter - 1 || m >= dim) {
        const int keep = std::min(4, m);
        for (int i = 0; i < keep; ++i) out.evals.push_back(es.eigenvalues()(i));
        out.ground = VectorXd::Zero(dim);
        for (int i = 0; i < m; ++i) out.ground += es.eigenvectors()(i, 0) * basis[i];
        out.ground.normalize();
        out.converged = done;
        return out;
      }
    }
    if (bnorm < 1e-14) break;
    beta.push_back(bnorm);
    v = w / bnorm;
  }
  throw std::runtime_error("lanczos: failed to converge");
}

VectorXd sector_start(const EDHamiltonian& H, int sector, std::uint32_t seed) {
  const auto dim = H.dimension();
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int attempt = 0; attempt < 8; ++attempt) {
    VectorXd r(dim);
    for (auto i = 0; i < dim; ++i) r(i) = u(rng);
    VectorXd pr(dim);
    H.apply_parity(r.data(), pr.data());
    VectorXd v = r + sector * pr;
    if (v.norm() > 1e-6) return v.normalized();
  }
  throw std::runtime_error("sector_start: degenerate start vector");
}

}  // namespace

EDHamiltonian::EDHamiltonian(const EDConfig& cfg) {
  n_atoms_ = cfg.n_atoms;
  if (!(n_atoms_ == 1 || (n_atoms_ > 0 && n_atoms_ % 2 == 0)))
    throw std::domain_error("EDConfig: n_atoms must be even (or 1 for the Rabi case)");
  n_max = cfg.n_max;
  if (n_max < 1) throw std::domain_error("EDHamiltonian: n_max must be >= 1");
  const auto raw = cfg.params.to_raw(1.0);
  omega_ = raw.omega;
  delta_ = raw.delta;
  g_ = raw.g;
  eps_ = raw.eps;
  n_spin = (n_atoms_ == 1) ? 2 : n_atoms_ / 2 + 1;
  dim_ = static_cast<std::int64_t>(n_max + 1) * n_spin * (n_atoms_ == 1 ? 1 : n_spin);
  if (dim_ > cfg.max_dimension)
    throw std::domain_error("EDConfig: Hilbert dimension exceeds the memory budget");
  sqrt_n_.resize(n_max + 1);
  for (int n = 0; n <= n_max; ++n) sqrt_n_[n] = std::sqrt(static_cast<double>(n));
  const double j = (n_atoms_ == 1) ? 0.5 : n_atoms_ / 4.0;
  jplus_.resize(n_spin > 1 ? n_spin - 1 : 0);
  for (int i = 0; i + 1 < n_spin; ++i) {
    const double m = i - j;
    jplus_[i] = std::sqrt(j * (j + 1) - m * (m + 1));
  }
}

void EDHamiltonian::apply(const double* in, double* out) const {
  std::fill(out, out + dim_, 0.0);
  const double gsN = g_ / std::sqrt(static_cast<double>(n_atoms_));
  const double j = (n_atoms_ == 1) ? 0.5 : n_atoms_ / 4.0;

  if (n_atoms_ == 1) {
    // single group, H_SB sign (-1)^1 = -1
    for (int n = 0; n <= n_max; ++n)
      for (int i = 0; i < 2; ++i) {
        const std::int64_t id = 2 * n + i;
        const double v = in[id];
        if (v == 0.0) continue;
        out[id] += (omega_ * n + delta_ * (i - 0.5)) * v;
        const int i2 = 1 - i;
        const double jx = 0.5 * jplus_[0];
        out[2 * n + i2] += -eps_ * jx * v;
        if (n + 1 <= n_max) out[2 * (n + 1) + i2] += gsN * sqrt_n_[n + 1] * jx * v;
        if (n - 1 >= 0) out[2 * (n - 1) + i2] += gsN * sqrt_n_[n] * jx * v;
      }
    return;
  }

  const int d = n_spin;
  const std::int64_t S = static_cast<std::int64_t>(d) * d;
  for (int n = 0; n <= n_max; ++n) {
    const std::int64_t base = n * S;
    for (int i2 = 0; i2 < d; ++i2) {
      const double m2 = i2 - j;
      for (int i3 = 0; i3 < d; ++i3) {
        const std::int64_t id = base + i2 * d + i3;
        const double v = in[id];
        if (v == 0.0) continue;
        const double m3 = i3 - j;
        out[id] += (omega_ * n + delta_ * (m2 + m3)) * v;

        // eps (J2x - J3x)
        if (i2 + 1 < d) out[base + (i2 + 1) * d + i3] += eps_ * 0.5 * jplus_[i2] * v;
        if (i2 > 0) out[base + (i2 - 1) * d + i3] += eps_ * 0.5 * jplus_[i2 - 1] * v;
        if (i3 + 1 < d) out[base + i2 * d + (i3 + 1)] -= eps_ * 0.5 * jplus_[i3] * v;
        if (i3 > 0) out[base + i2 * d + (i3 - 1)] -= eps_ * 0.5 * jplus_[i3 - 1] * v;

        // (g/sqrt(N)) (b + b^dag)(J2x + J3x)
        for (int dn = -1; dn <= 1; dn += 2) {
          const int np = n + dn;
          if (np < 0 || np > n_max) continue;
          const double amp = gsN * (dn > 0 ? sqrt_n_[np] : sqrt_n_[n]);
          const std::int64_t nb = np * S;
          if (i2 + 1 < d) out[nb + (i2 + 1) * d + i3] += amp * 0.5 * jplus_[i2] * v;
          if (i2 > 0) out[nb + (i2 - 1) * d + i3] += amp * 0.5 * jplus_[i2 - 1] * v;
          if (i3 + 1 < d) out[nb + i2 * d + (i3 + 1)] += amp * 0.5 * jplus_[i3] * v;
          if (i3 > 0) out[nb + i2 * d + (i3 - 1)] += amp * 0.5 * jplus_[i3 - 1] * v;
        }
      }
    }
  }
}

void EDHamiltonian::apply_parity(const double* in, double* out) const {
  if (n_atoms_ == 1) {
    for (int n = 0; n <= n_max; ++n)
      for (int i = 0; i < 2; ++i)
        out[2 * n + i] = (((n + i) % 2) ? -1.0 : 1.0) * in[2 * n + i];
    return;
  }
  const int d = n_spin;
  const std::int64_t S = static_cast<std::int64_t>(d) * d;
  for (int n = 0; n <= n_max; ++n)
    for (int i2 = 0; i2 < d; ++i2)
      for (int i3 = 0; i3 < d; ++i3) {
        const double sgn = ((n + i2 + i3) % 2) ? -1.0 : 1.0;
        out[n * S + i2 * d + i3] = sgn * in[n * S + i3 * d + i2];
      }
}

namespace {

struct SolveOnce {
  double e0, gap, gap_intra;
  int parity;
  VectorXd ground;
};

SolveOnce solve_once(const EDConfig& cfg, const EDHamiltonian& H) {
  const auto dim = H.dimension();
  SolveOnce r;
  if (dim <= cfg.dense_threshold) {
    MatrixXd A = MatrixXd::Zero(dim, dim);
    VectorXd e = VectorXd::Zero(dim), col(dim);
    for (auto c = 0; c < dim; ++c) {
      e(c) = 1.0;
      H.apply(e.data(), col.data());
      A.col(c) = col;
      e(c) = 0.0;
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(A);
    r.e0 = es.eigenvalues()(0);
    r.gap = es.eigenvalues()(1) - r.e0;
    r.ground = es.eigenvectors().col(0);
    VectorXd pv(dim);
    auto parity_of = [&](const VectorXd& v) {
      H.apply_parity(v.data(), pv.data());
      return v.dot(pv);
    };
    if (cfg.n_atoms == 1) {
      r.parity = 0;
      r.gap_intra = r.gap;
    } else {
      const double p0 = parity_of(r.ground);
      r.parity = p0 >= 0.0 ? 1 : -1;
      r.gap_intra = 0.0;
      const int scan = std::min<std::int64_t>(dim, 12);
      for (int k = 1; k < scan; ++k) {
        VectorXd vk = es.eigenvectors().col(k);
        if (parity_of(vk) * p0 > 0.25) {
          r.gap_intra = es.eigenvalues()(k) - r.e0;
          break;
        }
      }
    }
    return r;
  }

  if (cfg.n_atoms == 1) {
    auto s = lanczos(H, VectorXd::Ones(dim), std::min<std::int64_t>(dim, 600), 1e-11);
    r.e0 = s.evals[0];
    r.gap = r.gap_intra = s.evals[1] - s.evals[0];
    r.parity = 0;
    r.ground = s.ground;
    return r;
  }

  const int max_iter = static_cast<int>(std::min<std::int64_t>(dim, 600));
  auto even = lanczos(H, sector_start(H, +1, cfg.seed), max_iter, 1e-11, +1);
  auto odd = lanczos(H, sector_start(H, -1, cfg.seed), max_iter, 1e-11, -1);
  const bool even_ground = even.evals[0] <= odd.evals[0];
  const auto& gs = even_ground ? even : odd;
  const auto& os = even_ground ? odd : even;
  r.e0 = gs.evals[0];
  r.gap = std::min(gs.evals[1], os.evals[0]) - r.e0;
  r.gap_intra = gs.evals[1] - r.e0;
  r.parity = even_ground ? 1 : -1;
  r.ground = gs.ground;
  return r;
}

EDResult observables(const EDConfig& cfg, const EDHamiltonian& H, const SolveOnce& s) {
  EDResult res;
  res.ground_energy = s.e0;
  res.gap = s.gap;
  res.gap_intra = s.gap_intra;
  res.ground_parity = s.parity;
  res.n_max_used = H.n_max;

  const int nb = H.n_max + 1;
  const std::int64_t S = H.dimension() / nb;
  Eigen::Map<const MatrixXd> psi(s.ground.data(), S, nb);  // column n = spin block

  double nph = 0.0;
  for (int n = 0; n < nb; ++n) nph += n * psi.col(n).squaredNorm();
  res.n_photon = nph;
  res.n_photon_per_atom = nph / cfg.n_atoms;

  double bexp = 0.0;
  for (int n = 0; n + 1 < nb; ++n)
    bexp += std::sqrt(n + 1.0) * psi.col(n + 1).dot(psi.col(n));
  res.b_expect = std::abs(bexp);

  MatrixXd rho = psi.transpose() * psi;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(rho);
  double ent = 0.0;
  for (int i = 0; i < nb; ++i) {
    const double p = es.eigenvalues()(i);
    if (p > 1e-14) ent -= p * std::log(p);
  }
  res.entropy = ent;
  return res;
}

int auto_n_max(const EDConfig& cfg) {
  double nph_per_atom = 0.0;
  if (cfg.params.y > 0.0) {
    const auto sol = minimize_f(cfg.params);
    nph_per_atom = sol.z * sol.z / (4.0 * cfg.params.y * cfg.params.lambda);
  }
  return std::max(16, static_cast<int>(std::ceil(4.0 * cfg.n_atoms * nph_per_atom)) + 32);
}

}  // namespace

EDResult ground_and_gap(const EDConfig& cfg) {
  int n_max = cfg.n_max > 0 ? cfg.n_max : auto_n_max(cfg);
  EDConfig run = cfg;
  run.n_max = n_max;
  EDHamiltonian H(run);
  SolveOnce prev = solve_once(run, H);
  EDResult res = observables(run, H, prev);
  res.truncation_converged = false;
  while (run.n_max + 8 <= cfg.n_max_limit) {
    EDConfig next = run;
    next.n_max = run.n_max + 8;
    EDHamiltonian H2(next);
    SolveOnce cur = solve_once(next, H2);
    EDResult r2 = observables(next, H2, cur);
    const bool conv =
        std::abs(cur.e0 - prev.e0) < cfg.target_tolerance * std::max(1.0, std::abs(cur.e0));
    res = r2;
    res.truncation_converged = conv;
    run = next;
    prev = cur;
    if (conv) break;
  }
  return res;
}

std::vector<EDResult> finite_size_scan(const std::vector<EDConfig>& cfgs) {
  if (cfgs.empty()) return {};
  for (const auto& c : cfgs) {
    if (c.params.x != cfgs.front().params.x || c.params.y != cfgs.front().params.y ||
        c.params.lambda != cfgs.front().params.lambda)
      throw std::domain_error("finite_size_scan: configs must share (x, y, lambda)");
  }
  std::vector<EDResult> out;
  out.reserve(cfgs.size());
  for (const auto& c : cfgs) out.push_back(ground_and_gap(c));
  return out;
}

}  // namespace tdicke
