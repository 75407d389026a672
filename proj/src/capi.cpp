#include "tdicke.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "criticality.hpp"
#include "ed.hpp"
#include "fluctuations.hpp"
#include "meanfield.hpp"
#include "params.hpp"

namespace {

thread_local std::string g_last_error;

td_status fail(td_status s, const char* what) {
  g_last_error = what;
  return s;
}

template <class Fn>
td_status guarded(Fn&& fn) {
  try {
    fn();
    return TD_OK;
  } catch (const tdicke::InstabilityError& e) {
    return fail(TD_ERR_INSTABILITY, e.what());
  } catch (const std::domain_error& e) {
    return fail(TD_ERR_DOMAIN, e.what());
  } catch (const std::runtime_error& e) {
    return fail(TD_ERR_NUMERIC, e.what());
  } catch (const std::exception& e) {
    return fail(TD_ERR_INTERNAL, e.what());
  }
}

tdicke::ModelParams to_params(const td_point* p) {
  if (!p) throw std::domain_error("null td_point");
  return tdicke::ModelParams(p->x, p->y, p->lambda);
}

void fill_meanfield(const tdicke::MeanFieldSolution& sol, td_meanfield* out) {
  out->z = sol.z;
  out->energy = sol.energy;
  out->phase = sol.phase == tdicke::Phase::Superradiant ? 1 : 0;
  out->n_minima = static_cast<int>(std::min<std::size_t>(sol.all_minima.size(), 8));
  for (int i = 0; i < out->n_minima; ++i) {
    out->minima_z[i] = sol.all_minima[i].z;
    out->minima_f[i] = sol.all_minima[i].f;
  }
}

void fill_boundary(const tdicke::BoundaryPoint& b, td_boundary_point* out) {
  out->x_c = b.x_c;
  out->y_c = b.y_c;
  out->order = static_cast<int>(b.order);
  out->z_jump = b.z_jump;
}

void fill_fluct(const tdicke::FluctuationResult& fr, td_fluct* out) {
  std::copy(fr.omega_sq.begin(), fr.omega_sq.end(), out->omega_sq);
  std::copy(fr.eigenvalues_sq.begin(), fr.eigenvalues_sq.end(), out->eig_sq);
  out->gap = fr.gap;
  std::copy(fr.omega_sqrt.begin(), fr.omega_sqrt.end(), out->omega_sqrt);
  out->a_plus = fr.a_plus;
  out->a_minus = fr.a_minus;
  out->gamma = fr.gamma;
  out->entropy = fr.entropy;
  out->divergent = fr.divergent ? 1 : 0;
}

tdicke::BoundaryPoint resolve_target(double target_x) {
  if (std::abs(target_x - tdicke::kTricriticalX) < 1e-12)
    return tdicke::second_order_point(tdicke::kTricriticalX);
  return tdicke::second_order_point(target_x);
}

std::vector<double> to_vec(const double* a, int count) {
  if (!a || count <= 0) throw std::domain_error("null/empty array argument");
  return std::vector<double>(a, a + count);
}

}  // namespace

extern "C" {

const char* td_strerror(td_status status) {
  switch (status) {
    case TD_OK: return "ok";
    case TD_ERR_DOMAIN: return "domain error";
    case TD_ERR_NUMERIC: return "numerical failure";
    case TD_ERR_INSTABILITY: return "fluctuation instability";
    case TD_ERR_CONFIG: return "configuration error";
    default: return "internal error";
  }
}

const char* td_last_error(void) { return g_last_error.c_str(); }

const char* td_version(void) { return TDICKE_VERSION; }

double td_qtp_x(void) { return tdicke::kTricriticalX; }

td_status td_f_value(const td_point* p, double z, double* out) {
  return guarded([&] { *out = tdicke::f_value(z, to_params(p)); });
}

td_status td_minimize(const td_point* p, td_meanfield* out) {
  return guarded([&] { fill_meanfield(tdicke::minimize_f(to_params(p)), out); });
}

td_status td_classify(const td_point* p, int* phase) {
  return guarded([&] {
    *phase = tdicke::classify_phase(to_params(p)) == tdicke::Phase::Superradiant ? 1 : 0;
  });
}

td_status td_critical_line(double x_c, double* y_c) {
  return guarded([&] { *y_c = tdicke::critical_line(x_c); });
}

td_status td_tricritical_point(td_boundary_point* out) {
  return guarded([&] { fill_boundary(tdicke::tricritical_point(), out); });
}

td_status td_first_order_boundary(double x, td_boundary_point* out) {
  return guarded([&] { fill_boundary(tdicke::first_order_boundary(x), out); });
}

td_status td_fluctuations(const td_point* p, double z, td_fluct* out) {
  return guarded([&] { fill_fluct(tdicke::analyze(to_params(p), z), out); });
}

td_status td_analyze_point(const td_point* p, td_meanfield* mf, td_fluct* fl) {
  return guarded([&] {
    const auto params = to_params(p);
    const auto sol = tdicke::minimize_f(params);
    if (mf) fill_meanfield(sol, mf);
    if (fl) fill_fluct(tdicke::analyze(params, sol.z), fl);
  });
}

td_status td_perpendicular_foot(double x, double y, td_boundary_point* foot, double* n) {
  return guarded([&] {
    auto [bp, dist] = tdicke::perpendicular_foot(x, y);
    fill_boundary(bp, foot);
    *n = dist;
  });
}

td_status td_order_scaling(double target_x, const double* distances, int count,
                           td_scaling_fit* out) {
  return guarded([&] {
    auto app = tdicke::make_approach(resolve_target(target_x), tdicke::Side::SuperradiantSide,
                                     to_vec(distances, count));
    const auto fit = tdicke::order_parameter_scaling(app);
    *out = {fit.exponent, fit.amplitude, fit.r_squared, fit.n_min, fit.n_max};
  });
}

td_status td_det_scaling(double target_x, int side, double lambda, const double* distances,
                         int count, td_scaling_fit* out) {
  return guarded([&] {
    auto app = tdicke::make_approach(
        resolve_target(target_x),
        side ? tdicke::Side::SuperradiantSide : tdicke::Side::NormalSide,
        to_vec(distances, count));
    const auto fit = tdicke::determinant_scaling(app, lambda);
    *out = {fit.exponent, fit.amplitude, fit.r_squared, fit.n_min, fit.n_max};
  });
}

td_status td_gap_entropy_residual(double x, double y, double lambda, double* residual,
                                  int* divergent) {
  return guarded([&] {
    const auto r = tdicke::gap_entropy_relation(x, y, lambda);
    *residual = r.residual;
    *divergent = r.divergent ? 1 : 0;
  });
}

td_status td_gap_entropy_residual_corrected(double x, double y, double lambda,
                                            double* residual, int* divergent) {
  return guarded([&] {
    const auto r = tdicke::gap_entropy_relation_corrected(x, y, lambda);
    *residual = r.residual;
    *divergent = r.divergent ? 1 : 0;
  });
}

td_status td_entropy_resonance(double target_x, double n, const double* lambdas, int count,
                               double* entropies, double* argmax_lambda) {
  return guarded([&] {
    const auto prof =
        tdicke::entropy_resonance(resolve_target(target_x), n, to_vec(lambdas, count));
    for (int i = 0; i < count; ++i) entropies[i] = prof.entropies[i];
    *argmax_lambda = prof.argmax_lambda;
  });
}

struct td_ed {
  tdicke::EDConfig cfg;
  tdicke::EDResult result;
  bool has_result = false;
};

td_status td_ed_create(td_ed** out) {
  return guarded([&] { *out = new td_ed(); });
}

void td_ed_destroy(td_ed* ed) { delete ed; }

td_status td_ed_set_point(td_ed* ed, const td_point* p) {
  return guarded([&] { ed->cfg.params = to_params(p); });
}

td_status td_ed_set_atoms(td_ed* ed, int n_atoms) {
  return guarded([&] {
    if (!(n_atoms == 1 || (n_atoms > 0 && n_atoms % 2 == 0)))
      throw std::domain_error("td_ed_set_atoms: n_atoms must be even (or 1)");
    ed->cfg.n_atoms = n_atoms;
  });
}

td_status td_ed_set_nmax(td_ed* ed, int n_max) {
  return guarded([&] {
    if (n_max < 0) throw std::domain_error("td_ed_set_nmax: n_max must be >= 0");
    ed->cfg.n_max = n_max;
  });
}

td_status td_ed_set_tolerance(td_ed* ed, double rel_tol) {
  return guarded([&] {
    if (!(rel_tol > 0.0)) throw std::domain_error("td_ed_set_tolerance: rel_tol must be > 0");
    ed->cfg.target_tolerance = rel_tol;
  });
}

td_status td_ed_set_max_dimension(td_ed* ed, long long dim) {
  return guarded([&] {
    if (dim <= 0) throw std::domain_error("td_ed_set_max_dimension: dim must be > 0");
    ed->cfg.max_dimension = dim;
  });
}

td_status td_ed_set_seed(td_ed* ed, unsigned seed) {
  return guarded([&] { ed->cfg.seed = seed; });
}

td_status td_ed_run(td_ed* ed) {
  td_status s = guarded([&] { ed->result = tdicke::ground_and_gap(ed->cfg); });
  ed->has_result = (s == TD_OK);
  if (s == TD_ERR_DOMAIN && g_last_error.find("budget") != std::string::npos)
    return TD_ERR_CONFIG;
  return s;
}

td_status td_ed_get_result(const td_ed* ed, td_ed_result* out) {
  return guarded([&] {
    if (!ed->has_result) throw std::domain_error("td_ed_get_result: no result (run first)");
    const auto& r = ed->result;
    *out = {r.ground_energy, r.gap,     r.gap_intra,      r.n_photon,
            r.n_photon_per_atom, r.b_expect, r.entropy,   r.ground_parity,
            r.n_max_used,    r.truncation_converged ? 1 : 0};
  });
}

}  // extern "C"
