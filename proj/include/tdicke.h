/* C interface to the tricritical Dicke model library.
 *
 * All functions return td_status; outputs are written through pointers.
 * On error, td_last_error() returns a thread-local human-readable message.
 * Quantities are dimensionless: energies in units of w0 = sqrt(eps^2+delta^2),
 * the fluctuation matrix in w0^2. Matrix basis order: photon, even group,
 * odd group (row-major 3x3).
 */
#ifndef TDICKE_H
#define TDICKE_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum td_status {
  TD_OK = 0,
  TD_ERR_DOMAIN = 1,      /* invalid argument / out of the model's domain */
  TD_ERR_NUMERIC = 2,     /* solver failed to converge */
  TD_ERR_INSTABILITY = 3, /* fluctuation matrix not positive semidefinite */
  TD_ERR_CONFIG = 4,      /* ED configuration rejected (e.g. memory budget) */
  TD_ERR_INTERNAL = 5
} td_status;

const char* td_strerror(td_status status);
const char* td_last_error(void);
const char* td_version(void);

/* dimensionless system point */
typedef struct td_point {
  double x;      /* eps / w0, in [0, 1) */
  double y;      /* g^2 / (omega w0), >= 0 */
  double lambda; /* omega / w0, > 0 */
} td_point;

typedef struct td_meanfield {
  double z;
  double energy;
  int phase; /* 0 = normal, 1 = superradiant */
  int n_minima;
  double minima_z[8];
  double minima_f[8];
} td_meanfield;

typedef struct td_boundary_point {
  double x_c;
  double y_c;
  int order; /* 0 = second order, 1 = first order, 2 = tricritical */
  double z_jump;
} td_boundary_point;

typedef struct td_fluct {
  double omega_sq[9];
  double eig_sq[3]; /* ascending */
  double gap;
  double omega_sqrt[9];
  double a_plus;
  double a_minus;
  double gamma; /* +inf when the photon decouples */
  double entropy;
  int divergent;
} td_fluct;

typedef struct td_scaling_fit {
  double exponent;
  double amplitude;
  double r_squared;
  double n_min;
  double n_max;
} td_scaling_fit;

/* mean field */
td_status td_f_value(const td_point* p, double z, double* out);
td_status td_minimize(const td_point* p, td_meanfield* out);
td_status td_classify(const td_point* p, int* phase);
td_status td_critical_line(double x_c, double* y_c);
td_status td_tricritical_point(td_boundary_point* out);
td_status td_first_order_boundary(double x, td_boundary_point* out);

/* fluctuations; td_analyze_point solves the mean field first */
td_status td_fluctuations(const td_point* p, double z, td_fluct* out);
td_status td_analyze_point(const td_point* p, td_meanfield* mf, td_fluct* fl);

/* critical behavior. target_x in [0, 1/sqrt(5)]; pass td_qtp_x() for the QTP.
 * side: 0 = normal, 1 = superradiant. */
double td_qtp_x(void);
td_status td_perpendicular_foot(double x, double y, td_boundary_point* foot, double* n);
td_status td_order_scaling(double target_x, const double* distances, int count,
                           td_scaling_fit* out);
td_status td_det_scaling(double target_x, int side, double lambda, const double* distances,
                         int count, td_scaling_fit* out);
td_status td_gap_entropy_residual(double x, double y, double lambda, double* residual,
                                  int* divergent);
td_status td_gap_entropy_residual_corrected(double x, double y, double lambda,
                                            double* residual, int* divergent);
td_status td_entropy_resonance(double target_x, double n, const double* lambdas, int count,
                               double* entropies, double* argmax_lambda);

/* exact diagonalization: opaque handle */
typedef struct td_ed td_ed;

typedef struct td_ed_result {
  double ground_energy;
  double gap;       /* absolute first excitation */
  double gap_intra; /* within the ground parity sector */
  double n_photon;
  double n_photon_per_atom;
  double b_expect;
  double entropy;
  int ground_parity;
  int n_max_used;
  int truncation_converged;
} td_ed_result;

td_status td_ed_create(td_ed** out);
void td_ed_destroy(td_ed* ed);
td_status td_ed_set_point(td_ed* ed, const td_point* p);
td_status td_ed_set_atoms(td_ed* ed, int n_atoms);
td_status td_ed_set_nmax(td_ed* ed, int n_max); /* 0 = automatic policy */
td_status td_ed_set_tolerance(td_ed* ed, double rel_tol);
td_status td_ed_set_max_dimension(td_ed* ed, long long dim);
td_status td_ed_set_seed(td_ed* ed, unsigned seed);
td_status td_ed_run(td_ed* ed);
td_status td_ed_get_result(const td_ed* ed, td_ed_result* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TDICKE_H */
