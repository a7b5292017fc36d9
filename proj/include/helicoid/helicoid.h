/*
 * C interface to the helicoid library.
 *
 * Objects are opaque handles created by hlc_*_create / hlc_*_trace /
 * hlc_*_sweep functions and released with the matching *_destroy call.
 * Every fallible function returns an hlc_status; on failure the message
 * of the most recent error on the calling thread is available from
 * hlc_last_error(). Strings returned by the library are owned by the
 * handle they came from and stay valid until that handle is destroyed.
 */
#ifndef HELICOID_H
#define HELICOID_H

#include <stddef.h>

#if defined(HLC_BUILDING_LIBRARY)
#define HLC_API __attribute__((visibility("default")))
#else
#define HLC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hlc_status {
  HLC_OK = 0,
  HLC_ERR_DOMAIN = 1,
  HLC_ERR_DEGENERATE_METRIC = 2,
  HLC_ERR_DIVISION_BY_ZERO = 3,
  HLC_ERR_TOLERANCE_NOT_MET = 4,
  HLC_ERR_SINGULAR_COEFFICIENT = 5,
  HLC_ERR_IO = 6,
  HLC_ERR_INVALID_ARGUMENT = 7,
  HLC_ERR_INTERNAL = 99
} hlc_status;

typedef enum hlc_family {
  HLC_FAMILY_HELICOIDAL = 0,
  HLC_FAMILY_ROTATIONAL = 1,
  HLC_FAMILY_BOUR_MINIMAL = 2,
  HLC_FAMILY_CLASSICAL = 3
} hlc_family;

typedef enum hlc_jet_source { HLC_JET_ANALYTIC = 0, HLC_JET_FINITE_DIFFERENCE = 1 } hlc_jet_source;

typedef enum hlc_correspondence_mode {
  HLC_CORRESPONDENCE_BOUR_RADIUS = 0,
  HLC_CORRESPONDENCE_IDENTITY = 1
} hlc_correspondence_mode;

typedef struct hlc_surface hlc_surface;
typedef struct hlc_trajectory hlc_trajectory;
typedef struct hlc_isometry_report hlc_isometry_report;
typedef struct hlc_slice_solution hlc_slice_solution;
typedef struct hlc_fidelity_report hlc_fidelity_report;
typedef struct hlc_mesh hlc_mesh;

typedef struct hlc_jet {
  double p[3];
  double p_r[3];
  double p_theta[3];
  double p_rr[3];
  double p_rtheta[3];
  double p_thetatheta[3];
} hlc_jet;

typedef struct hlc_forms {
  double E, F, G;
  double L, M, N;
  double det_I;
  double normal[3];
} hlc_forms;

typedef struct hlc_curvature_sample {
  double r, theta;
  double H, K;
  hlc_forms forms;
} hlc_curvature_sample;

typedef struct hlc_reduced_metric {
  double Err, Gtt, cross;
} hlc_reduced_metric;

typedef struct hlc_trajectory_sample {
  double r, theta, rbar, step_error, fg_integral;
} hlc_trajectory_sample;

typedef struct hlc_slice_point {
  double r, dphi, ddphi, residual;
} hlc_slice_point;

typedef struct hlc_grid {
  int nr, ntheta;
  double r_min, r_max;
  double theta_min, theta_max;
  int wrap;
} hlc_grid;

/* ---- errors ---------------------------------------------------------- */

/* Message of the last failure on this thread ("" if none). */
HLC_API const char* hlc_last_error(void);
HLC_API const char* hlc_status_name(hlc_status status);

/* ---- surfaces -------------------------------------------------------- */

/* profile: "poly:c0,c1,...", "power:c,p" or "const:c"; NULL means phi = 0.
 * The Bour family ignores the profile. */
HLC_API hlc_status hlc_surface_create(hlc_family family, double m, double a, const char* profile,
                                      hlc_surface** out);
HLC_API void hlc_surface_destroy(hlc_surface* surface);
/* Canonical profile id, e.g. "poly:0,1". */
HLC_API const char* hlc_surface_profile_id(const hlc_surface* surface);

HLC_API hlc_status hlc_surface_eval(const hlc_surface* s, double r, double theta, double out[3]);
/* Helicoidal family only: rebuilds the point from the two rotated blocks. */
HLC_API hlc_status hlc_surface_compose_definition(const hlc_surface* s, double r, double theta,
                                                  double out[3]);
/* Rotational surface of value m with a caller-supplied height. */
HLC_API hlc_status hlc_eval_rotational(double m, double r_R, double theta_R, double phi_R_value,
                                       double out[3]);
HLC_API hlc_status hlc_surface_jet(const hlc_surface* s, double r, double theta, hlc_jet* out);
HLC_API hlc_status hlc_surface_fd_jet(const hlc_surface* s, double r, double theta, double h,
                                      hlc_jet* out);

/* ---- differential geometry ------------------------------------------- */

/* Closed-form E, F, G of the helicoidal surface of value m; out = {E, F, G}. */
HLC_API hlc_status hlc_first_form_closed(double m, double a, const char* profile, double r,
                                         double theta, double out[3]);
HLC_API hlc_status hlc_forms_from_jet(const hlc_jet* jet, hlc_forms* out);
HLC_API hlc_status hlc_curvatures(const hlc_forms* forms, double* H, double* K);
/* h is used only for HLC_JET_FINITE_DIFFERENCE; pass 0 for the default. */
HLC_API hlc_status hlc_curvature_sample_at(const hlc_surface* s, double r, double theta,
                                           hlc_jet_source source, double h,
                                           hlc_curvature_sample* out);

/* ---- Bour correspondence --------------------------------------------- */

HLC_API hlc_status hlc_reduce_metric(double E, double F, double G, hlc_reduced_metric* out);

HLC_API hlc_status hlc_trajectory_trace(const hlc_surface* s, double r0, double theta0, double r1,
                                        double tol, hlc_trajectory** out);
HLC_API void hlc_trajectory_destroy(hlc_trajectory* t);
HLC_API size_t hlc_trajectory_size(const hlc_trajectory* t);
HLC_API hlc_status hlc_trajectory_get(const hlc_trajectory* t, size_t i, hlc_trajectory_sample* out);
/* r_R = sqrt(G), theta_R = theta_bar at sample i. */
HLC_API hlc_status hlc_trajectory_correspondence(const hlc_trajectory* t, size_t i, double* r_R,
                                                 double* theta_R);
HLC_API hlc_status hlc_phi_R_prime_squared(const hlc_trajectory* t, size_t i, double r_R,
                                           double theta_R, double* out);

HLC_API hlc_status hlc_isometry_report_create(const hlc_surface* s, double r0, double theta0,
                                              double r1, double tol,
                                              hlc_correspondence_mode mode,
                                              hlc_isometry_report** out);
HLC_API void hlc_isometry_report_destroy(hlc_isometry_report* rep);
HLC_API size_t hlc_isometry_report_rows(const hlc_isometry_report* rep);
HLC_API int hlc_isometry_report_truncated(const hlc_isometry_report* rep);
/* Discrepancy |k - k_R| of row i (NaN on a flagged row). */
HLC_API double hlc_isometry_report_discrepancy(const hlc_isometry_report* rep, size_t i);
HLC_API hlc_status hlc_isometry_report_write_csv(const hlc_isometry_report* rep, const char* path);
HLC_API const char* hlc_isometry_report_summary_json(const hlc_isometry_report* rep);
/* The same CSV text write_csv produces. */
HLC_API const char* hlc_isometry_report_csv(const hlc_isometry_report* rep);

HLC_API hlc_status hlc_minimality_residual(double r, double theta, double a, double dphi,
                                           double ddphi, double* out);
HLC_API hlc_status hlc_slice_solve(double theta, double a, double r0, double dphi0, double r1,
                                   double tol, hlc_slice_solution** out);
HLC_API void hlc_slice_solution_destroy(hlc_slice_solution* sol);
HLC_API size_t hlc_slice_solution_size(const hlc_slice_solution* sol);
HLC_API hlc_status hlc_slice_solution_point(const hlc_slice_solution* sol, size_t i,
                                            hlc_slice_point* out);

/* ---- printed value-3 closed forms ------------------------------------ */

/* out = {E, F, G, det_I} */
HLC_API hlc_status hlc_paper_first_forms_m3(double r, double theta, double a, double dphi,
                                            double out[4]);
HLC_API hlc_status hlc_paper_gauss_map_m3(double r, double theta, double a, double dphi,
                                          double numerator[3], double normal[3]);
/* out = {L, M, N} */
HLC_API hlc_status hlc_paper_second_forms_m3(double r, double theta, double a, double dphi,
                                             double ddphi, double out[3]);
HLC_API hlc_status hlc_paper_curvatures_m3(double r, double theta, double a, double dphi,
                                           double ddphi, double* H, double* K);

/* grid_json NULL or "" selects the default grid. */
HLC_API hlc_status hlc_fidelity_sweep(const char* grid_json, hlc_fidelity_report** out);
HLC_API void hlc_fidelity_report_destroy(hlc_fidelity_report* rep);
HLC_API size_t hlc_fidelity_report_records(const hlc_fidelity_report* rep);
/* Number of non-agreeing records for one quantity ("L", "H", ...). */
HLC_API size_t hlc_fidelity_report_discrepancies(const hlc_fidelity_report* rep,
                                                 const char* quantity);
HLC_API hlc_status hlc_fidelity_report_write_csv(const hlc_fidelity_report* rep, const char* path);
HLC_API hlc_status hlc_fidelity_report_write_digest(const hlc_fidelity_report* rep,
                                                    const char* path);
HLC_API const char* hlc_fidelity_report_summary_json(const hlc_fidelity_report* rep);

/* ---- meshes ---------------------------------------------------------- */

/* fields: comma-separated names from {H,K,E,F,G,L,M,N,detI}, or NULL. */
HLC_API hlc_status hlc_mesh_sample(const hlc_surface* s, const hlc_grid* grid, const char* fields,
                                   int with_normals, hlc_mesh** out);
HLC_API void hlc_mesh_destroy(hlc_mesh* mesh);
HLC_API size_t hlc_mesh_vertex_count(const hlc_mesh* mesh);
HLC_API size_t hlc_mesh_face_count(const hlc_mesh* mesh);
HLC_API size_t hlc_mesh_degenerate_count(const hlc_mesh* mesh);
/* Max |value| of a field over non-degenerate vertices. */
HLC_API hlc_status hlc_mesh_field_max_abs(const hlc_mesh* mesh, const char* field, double* out);
HLC_API hlc_status hlc_mesh_write_obj(const hlc_mesh* mesh, const char* path);
HLC_API hlc_status hlc_mesh_write_ply(const hlc_mesh* mesh, const char* path);
HLC_API hlc_status hlc_mesh_write_csv(const hlc_mesh* mesh, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* HELICOID_H */
