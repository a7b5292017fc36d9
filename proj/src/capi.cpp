#include "helicoid/helicoid.h"

#include <cmath>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "helicoid/bour.hpp"
#include "helicoid/diffgeo.hpp"
#include "helicoid/meshio.hpp"
#include "helicoid/paperforms.hpp"
#include "helicoid/surfaces.hpp"

using namespace helicoid;

struct hlc_surface {
  SurfaceSpec spec;
  std::string profile_id;
};

struct hlc_trajectory {
  SurfaceSpec spec;
  std::vector<TrajectorySample> samples;
};

struct hlc_isometry_report {
  IsometryReport report;
  std::string summary;
  std::string csv;
};

struct hlc_slice_solution {
  std::vector<SlicePoint> points;
};

struct hlc_fidelity_report {
  FidelityReport report;
  std::string summary;
};

struct hlc_mesh {
  MeshBuffer mesh;
};

namespace {

thread_local std::string g_last_error;

hlc_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::domain: return HLC_ERR_DOMAIN;
    case ErrorCode::degenerate_metric: return HLC_ERR_DEGENERATE_METRIC;
    case ErrorCode::division_by_zero: return HLC_ERR_DIVISION_BY_ZERO;
    case ErrorCode::tolerance_not_met: return HLC_ERR_TOLERANCE_NOT_MET;
    case ErrorCode::singular_coefficient: return HLC_ERR_SINGULAR_COEFFICIENT;
    case ErrorCode::io: return HLC_ERR_IO;
  }
  return HLC_ERR_INTERNAL;
}

template <class Fn>
hlc_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return HLC_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return HLC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HLC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return HLC_ERR_INTERNAL;
  }
}

hlc_status invalid(const char* what) {
  g_last_error = what;
  return HLC_ERR_INVALID_ARGUMENT;
}

void copy3(const Vec3& v, double out[3]) {
  out[0] = v.x();
  out[1] = v.y();
  out[2] = v.z();
}

Vec3 vec3(const double in[3]) { return Vec3(in[0], in[1], in[2]); }

void to_c(const Jet2& j, hlc_jet* out) {
  copy3(j.p, out->p);
  copy3(j.p_r, out->p_r);
  copy3(j.p_t, out->p_theta);
  copy3(j.p_rr, out->p_rr);
  copy3(j.p_rt, out->p_rtheta);
  copy3(j.p_tt, out->p_thetatheta);
}

void to_c(const FundamentalForms& f, hlc_forms* out) {
  out->E = f.E;
  out->F = f.F;
  out->G = f.G;
  out->L = f.L;
  out->M = f.M;
  out->N = f.N;
  out->det_I = f.detI;
  copy3(f.normal, out->normal);
}

FundamentalForms from_c(const hlc_forms& in) {
  FundamentalForms f;
  f.E = in.E;
  f.F = in.F;
  f.G = in.G;
  f.L = in.L;
  f.M = in.M;
  f.N = in.N;
  f.detI = in.det_I;
  f.normal = vec3(in.normal);
  return f;
}

Profile profile_or_zero(const char* text) {
  if (text == nullptr || *text == '\0') return Profile::polynomial({0.0});
  return Profile::parse(text);
}

hlc_status write_to(const char* path, const auto& writer, std::ios::openmode mode = std::ios::out) {
  if (!path) return invalid("null output path");
  return guarded([&] {
    std::ofstream os(path, mode | std::ios::out | std::ios::trunc);
    if (!os) throw IOError(std::string("cannot open '") + path + "' for writing");
    writer(os);
    os.flush();
    if (!os) throw IOError(std::string("write to '") + path + "' failed");
  });
}

}  // namespace

extern "C" {

const char* hlc_last_error(void) { return g_last_error.c_str(); }

const char* hlc_status_name(hlc_status status) {
  switch (status) {
    case HLC_OK: return "ok";
    case HLC_ERR_DOMAIN: return "DomainError";
    case HLC_ERR_DEGENERATE_METRIC: return "DegenerateMetric";
    case HLC_ERR_DIVISION_BY_ZERO: return "DivisionByZero";
    case HLC_ERR_TOLERANCE_NOT_MET: return "ToleranceNotMet";
    case HLC_ERR_SINGULAR_COEFFICIENT: return "SingularCoefficient";
    case HLC_ERR_IO: return "IOError";
    case HLC_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case HLC_ERR_INTERNAL: return "InternalError";
  }
  return "UnknownStatus";
}

// --- surfaces ---------------------------------------------------------------

hlc_status hlc_surface_create(hlc_family family, double m, double a, const char* profile,
                              hlc_surface** out) {
  if (!out) return invalid("null output handle");
  *out = nullptr;
  return guarded([&] {
    SurfaceSpec spec;
    switch (family) {
      case HLC_FAMILY_HELICOIDAL:
        spec = SurfaceSpec::helicoidal(m, a, profile_or_zero(profile));
        break;
      case HLC_FAMILY_ROTATIONAL:
        spec = SurfaceSpec::rotational(m, profile_or_zero(profile));
        break;
      case HLC_FAMILY_BOUR_MINIMAL:
        spec = SurfaceSpec::bour_minimal(m, a);
        break;
      case HLC_FAMILY_CLASSICAL:
        spec = SurfaceSpec::classical_helicoid(a, profile_or_zero(profile));
        break;
      default:
        throw DomainError("unknown surface family");
    }
    *out = new hlc_surface{spec, spec.profile.id()};
  });
}

void hlc_surface_destroy(hlc_surface* surface) { delete surface; }

const char* hlc_surface_profile_id(const hlc_surface* surface) {
  return surface ? surface->profile_id.c_str() : "";
}

hlc_status hlc_surface_eval(const hlc_surface* s, double r, double theta, double out[3]) {
  if (!s || !out) return invalid("null argument");
  return guarded([&] { copy3(eval(s->spec, r, theta), out); });
}

hlc_status hlc_surface_compose_definition(const hlc_surface* s, double r, double theta,
                                          double out[3]) {
  if (!s || !out) return invalid("null argument");
  return guarded([&] { copy3(compose_definition(s->spec, r, theta), out); });
}

hlc_status hlc_eval_rotational(double m, double r_R, double theta_R, double phi_R_value,
                               double out[3]) {
  if (!out) return invalid("null argument");
  return guarded([&] {
    const SurfaceSpec spec = SurfaceSpec::rotational(m, Profile::polynomial({0.0}));
    copy3(eval_rotational(spec, r_R, theta_R, phi_R_value), out);
  });
}

hlc_status hlc_surface_jet(const hlc_surface* s, double r, double theta, hlc_jet* out) {
  if (!s || !out) return invalid("null argument");
  return guarded([&] { to_c(jet(s->spec, r, theta), out); });
}

hlc_status hlc_surface_fd_jet(const hlc_surface* s, double r, double theta, double h,
                              hlc_jet* out) {
  if (!s || !out) return invalid("null argument");
  return guarded([&] { to_c(fd_jet(s->spec, r, theta, h > 0 ? h : kDefaultFdStep), out); });
}

// --- differential geometry --------------------------------------------------

hlc_status hlc_first_form_closed(double m, double a, const char* profile, double r, double theta,
                                 double out[3]) {
  if (!out) return invalid("null argument");
  return guarded([&] {
    const FirstForm f = first_form_closed(m, a, profile_or_zero(profile), r, theta);
    out[0] = f.E;
    out[1] = f.F;
    out[2] = f.G;
  });
}

hlc_status hlc_forms_from_jet(const hlc_jet* j, hlc_forms* out) {
  if (!j || !out) return invalid("null argument");
  return guarded([&] {
    Jet2 jt;
    jt.p = vec3(j->p);
    jt.p_r = vec3(j->p_r);
    jt.p_t = vec3(j->p_theta);
    jt.p_rr = vec3(j->p_rr);
    jt.p_rt = vec3(j->p_rtheta);
    jt.p_tt = vec3(j->p_thetatheta);
    to_c(fundamental_forms(jt), out);
  });
}

hlc_status hlc_curvatures(const hlc_forms* forms, double* H, double* K) {
  if (!forms || !H || !K) return invalid("null argument");
  return guarded([&] {
    const Curvatures c = curvatures(from_c(*forms));
    *H = c.H;
    *K = c.K;
  });
}

hlc_status hlc_curvature_sample_at(const hlc_surface* s, double r, double theta,
                                   hlc_jet_source source, double h, hlc_curvature_sample* out) {
  if (!s || !out) return invalid("null argument");
  return guarded([&] {
    const CurvatureSample cs = curvature_sample(
        s->spec, r, theta,
        source == HLC_JET_FINITE_DIFFERENCE ? JetSource::finite_difference : JetSource::analytic,
        h > 0 ? h : kDefaultFdStep);
    out->r = cs.r;
    out->theta = cs.theta;
    out->H = cs.H;
    out->K = cs.K;
    to_c(cs.forms, &out->forms);
  });
}

// --- Bour correspondence ----------------------------------------------------

hlc_status hlc_reduce_metric(double E, double F, double G, hlc_reduced_metric* out) {
  if (!out) return invalid("null argument");
  return guarded([&] {
    const ReducedMetric rm = reduce_metric(E, F, G);
    *out = {rm.Err, rm.Gtt, rm.cross};
  });
}

hlc_status hlc_trajectory_trace(const hlc_surface* s, double r0, double theta0, double r1,
                                double tol, hlc_trajectory** out) {
  if (!s || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    auto samples = trace_orthogonal(s->spec, r0, theta0, r1, tol > 0 ? tol : kDefaultTrajectoryTol);
    *out = new hlc_trajectory{s->spec, std::move(samples)};
  });
}

void hlc_trajectory_destroy(hlc_trajectory* t) { delete t; }

size_t hlc_trajectory_size(const hlc_trajectory* t) { return t ? t->samples.size() : 0; }

hlc_status hlc_trajectory_get(const hlc_trajectory* t, size_t i, hlc_trajectory_sample* out) {
  if (!t || !out) return invalid("null argument");
  if (i >= t->samples.size()) return invalid("sample index out of range");
  const TrajectorySample& s = t->samples[i];
  *out = {s.r, s.theta, s.rbar, s.step_error, s.fg_integral};
  return HLC_OK;
}

hlc_status hlc_trajectory_correspondence(const hlc_trajectory* t, size_t i, double* r_R,
                                         double* theta_R) {
  if (!t || !r_R || !theta_R) return invalid("null argument");
  if (i >= t->samples.size()) return invalid("sample index out of range");
  return guarded([&] {
    const Correspondence c = correspondence(t->spec, t->samples[i]);
    *r_R = c.r_R;
    *theta_R = c.theta_R;
  });
}

hlc_status hlc_phi_R_prime_squared(const hlc_trajectory* t, size_t i, double r_R, double theta_R,
                                   double* out) {
  if (!t || !out) return invalid("null argument");
  if (i >= t->samples.size()) return invalid("sample index out of range");
  return guarded([&] { *out = phi_R_prime_squared(t->spec, t->samples[i], {r_R, theta_R}); });
}

hlc_status hlc_isometry_report_create(const hlc_surface* s, double r0, double theta0, double r1,
                                      double tol, hlc_correspondence_mode mode,
                                      hlc_isometry_report** out) {
  if (!s || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    IsometryParams p;
    p.r0 = r0;
    p.theta0 = theta0;
    p.r1 = r1;
    p.tol = tol > 0 ? tol : kDefaultTrajectoryTol;
    p.mode = mode == HLC_CORRESPONDENCE_IDENTITY ? CorrespondenceMode::identity
                                                 : CorrespondenceMode::bour_radius;
    IsometryReport rep = isometry_report(s->spec, p);
    std::string summary = rep.summary_json();
    std::ostringstream csv;
    rep.write_csv(csv);
    *out = new hlc_isometry_report{std::move(rep), std::move(summary), csv.str()};
  });
}

void hlc_isometry_report_destroy(hlc_isometry_report* rep) { delete rep; }

size_t hlc_isometry_report_rows(const hlc_isometry_report* rep) {
  return rep ? rep->report.rows.size() : 0;
}

int hlc_isometry_report_truncated(const hlc_isometry_report* rep) {
  return rep && rep->report.truncated ? 1 : 0;
}

double hlc_isometry_report_discrepancy(const hlc_isometry_report* rep, size_t i) {
  if (!rep || i >= rep->report.rows.size()) return std::nan("");
  return rep->report.rows[i].discrepancy;
}

hlc_status hlc_isometry_report_write_csv(const hlc_isometry_report* rep, const char* path) {
  if (!rep) return invalid("null argument");
  return write_to(path, [&](std::ostream& os) { rep->report.write_csv(os); });
}

const char* hlc_isometry_report_summary_json(const hlc_isometry_report* rep) {
  return rep ? rep->summary.c_str() : "";
}

const char* hlc_isometry_report_csv(const hlc_isometry_report* rep) {
  return rep ? rep->csv.c_str() : "";
}

hlc_status hlc_minimality_residual(double r, double theta, double a, double dphi, double ddphi,
                                   double* out) {
  if (!out) return invalid("null argument");
  return guarded([&] { *out = minimality_residual(r, theta, a, dphi, ddphi); });
}

hlc_status hlc_slice_solve(double theta, double a, double r0, double dphi0, double r1, double tol,
                           hlc_slice_solution** out) {
  if (!out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    auto pts = solve_slice_ode(theta, a, r0, dphi0, r1, tol > 0 ? tol : kDefaultTrajectoryTol);
    *out = new hlc_slice_solution{std::move(pts)};
  });
}

void hlc_slice_solution_destroy(hlc_slice_solution* sol) { delete sol; }

size_t hlc_slice_solution_size(const hlc_slice_solution* sol) {
  return sol ? sol->points.size() : 0;
}

hlc_status hlc_slice_solution_point(const hlc_slice_solution* sol, size_t i,
                                    hlc_slice_point* out) {
  if (!sol || !out) return invalid("null argument");
  if (i >= sol->points.size()) return invalid("point index out of range");
  const SlicePoint& p = sol->points[i];
  *out = {p.r, p.dphi, p.ddphi, p.residual};
  return HLC_OK;
}

// --- printed value-3 closed forms -------------------------------------------

hlc_status hlc_paper_first_forms_m3(double r, double theta, double a, double dphi, double out[4]) {
  if (!out) return invalid("null argument");
  return guarded([&] {
    const PaperFirstForms f = paper_first_forms_m3(r, theta, a, dphi);
    out[0] = f.E;
    out[1] = f.F;
    out[2] = f.G;
    out[3] = f.detI;
  });
}

hlc_status hlc_paper_gauss_map_m3(double r, double theta, double a, double dphi,
                                  double numerator[3], double normal[3]) {
  if (!numerator || !normal) return invalid("null argument");
  return guarded([&] {
    const PaperGaussMap g = paper_gauss_map_m3(r, theta, a, dphi);
    copy3(g.numerator, numerator);
    copy3(g.normal, normal);
  });
}

hlc_status hlc_paper_second_forms_m3(double r, double theta, double a, double dphi, double ddphi,
                                     double out[3]) {
  if (!out) return invalid("null argument");
  return guarded([&] {
    const SecondForm s = paper_second_forms_m3(r, theta, a, dphi, ddphi);
    out[0] = s.L;
    out[1] = s.M;
    out[2] = s.N;
  });
}

hlc_status hlc_paper_curvatures_m3(double r, double theta, double a, double dphi, double ddphi,
                                   double* H, double* K) {
  if (!H || !K) return invalid("null argument");
  return guarded([&] {
    const Curvatures c = paper_curvatures_m3(r, theta, a, dphi, ddphi);
    *H = c.H;
    *K = c.K;
  });
}

hlc_status hlc_fidelity_sweep(const char* grid_json, hlc_fidelity_report** out) {
  if (!out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    const FidelityGrid grid = (grid_json && *grid_json) ? fidelity_grid_from_json(grid_json)
                                                        : default_fidelity_grid();
    FidelityReport rep = fidelity_sweep(grid);
    std::string summary = rep.summary_json();
    *out = new hlc_fidelity_report{std::move(rep), std::move(summary)};
  });
}

void hlc_fidelity_report_destroy(hlc_fidelity_report* rep) { delete rep; }

size_t hlc_fidelity_report_records(const hlc_fidelity_report* rep) {
  return rep ? rep->report.records.size() : 0;
}

size_t hlc_fidelity_report_discrepancies(const hlc_fidelity_report* rep, const char* quantity) {
  if (!rep || !quantity) return 0;
  for (const QuantitySummary& s : rep->report.summary)
    if (s.quantity == quantity) return s.discrepant;
  return 0;
}

hlc_status hlc_fidelity_report_write_csv(const hlc_fidelity_report* rep, const char* path) {
  if (!rep) return invalid("null argument");
  return write_to(path, [&](std::ostream& os) { rep->report.write_csv(os); });
}

hlc_status hlc_fidelity_report_write_digest(const hlc_fidelity_report* rep, const char* path) {
  if (!rep) return invalid("null argument");
  return write_to(path, [&](std::ostream& os) { rep->report.write_digest(os); });
}

const char* hlc_fidelity_report_summary_json(const hlc_fidelity_report* rep) {
  return rep ? rep->summary.c_str() : "";
}

// --- meshes -----------------------------------------------------------------

hlc_status hlc_mesh_sample(const hlc_surface* s, const hlc_grid* grid, const char* fields,
                           int with_normals, hlc_mesh** out) {
  if (!s || !grid || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    GridSpec g;
    g.nr = grid->nr;
    g.ntheta = grid->ntheta;
    g.r_min = grid->r_min;
    g.r_max = grid->r_max;
    g.theta_min = grid->theta_min;
    g.theta_max = grid->theta_max;
    g.wrap = grid->wrap != 0;
    std::vector<std::string> names;
    if (fields && *fields) {
      std::stringstream ss(fields);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!item.empty()) names.push_back(item);
    }
    *out = new hlc_mesh{sample_grid(s->spec, g, names, with_normals != 0)};
  });
}

void hlc_mesh_destroy(hlc_mesh* mesh) { delete mesh; }

size_t hlc_mesh_vertex_count(const hlc_mesh* mesh) { return mesh ? mesh->mesh.vertices.size() : 0; }

size_t hlc_mesh_face_count(const hlc_mesh* mesh) { return mesh ? mesh->mesh.faces.size() : 0; }

size_t hlc_mesh_degenerate_count(const hlc_mesh* mesh) {
  return mesh ? mesh->mesh.degenerate_count() : 0;
}

hlc_status hlc_mesh_field_max_abs(const hlc_mesh* mesh, const char* field, double* out) {
  if (!mesh || !field || !out) return invalid("null argument");
  const ScalarField* f = mesh->mesh.field(field);
  if (!f) return invalid("field not present in mesh");
  double mx = 0.0;
  for (std::size_t i = 0; i < f->values.size(); ++i)
    if (!mesh->mesh.degenerate[i]) mx = std::max(mx, std::abs(f->values[i]));
  *out = mx;
  return HLC_OK;
}

hlc_status hlc_mesh_write_obj(const hlc_mesh* mesh, const char* path) {
  if (!mesh) return invalid("null argument");
  return write_to(path, [&](std::ostream& os) { write_obj(mesh->mesh, os); });
}

hlc_status hlc_mesh_write_ply(const hlc_mesh* mesh, const char* path) {
  if (!mesh) return invalid("null argument");
  return write_to(path, [&](std::ostream& os) { write_ply(mesh->mesh, os); }, std::ios::binary);
}

hlc_status hlc_mesh_write_csv(const hlc_mesh* mesh, const char* path) {
  if (!mesh) return invalid("null argument");
  return write_to(path, [&](std::ostream& os) { write_fields_csv(mesh->mesh, os); });
}

}  // extern "C"
