#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

#include "helicoid/helicoid.h"

namespace {

hlc_surface* worked_surface() {
  hlc_surface* s = nullptr;
  REQUIRE(hlc_surface_create(HLC_FAMILY_HELICOIDAL, 3, 1, "poly:0,1", &s) == HLC_OK);
  return s;
}

std::string tmp_path(const char* name) { return std::string("capi_test_") + name; }

}  // namespace

TEST_CASE("surface handles and error reporting") {
  hlc_surface* s = worked_surface();
  CHECK(std::string(hlc_surface_profile_id(s)) == "poly:0,1");
  double p[3];
  CHECK(hlc_surface_eval(s, 1, 0, p) == HLC_OK);
  CHECK(p[0] == doctest::Approx(0.25));
  CHECK(std::string(hlc_last_error()).empty());

  CHECK(hlc_surface_eval(s, -1, 0, p) == HLC_ERR_DOMAIN);
  CHECK(std::strlen(hlc_last_error()) > 0);
  CHECK(hlc_surface_eval(nullptr, 1, 0, p) == HLC_ERR_INVALID_ARGUMENT);
  hlc_surface_destroy(s);

  hlc_surface* bad = reinterpret_cast<hlc_surface*>(0x1);
  CHECK(hlc_surface_create(HLC_FAMILY_HELICOIDAL, 1, 0, nullptr, &bad) == HLC_ERR_DOMAIN);
  CHECK(bad == nullptr);
  CHECK(hlc_surface_create(HLC_FAMILY_HELICOIDAL, 3, 0, "sin:1", &bad) == HLC_ERR_DOMAIN);
  CHECK(hlc_surface_create(static_cast<hlc_family>(42), 3, 0, nullptr, &bad) == HLC_ERR_DOMAIN);
  CHECK(hlc_surface_create(HLC_FAMILY_HELICOIDAL, 3, 0, nullptr, nullptr) ==
        HLC_ERR_INVALID_ARGUMENT);
  hlc_surface_destroy(nullptr);

  CHECK(std::string(hlc_status_name(HLC_ERR_DEGENERATE_METRIC)) == "DegenerateMetric");
  CHECK(std::string(hlc_status_name(HLC_OK)) == "ok");
}

TEST_CASE("worked point through the C API") {
  hlc_surface* s = worked_surface();
  hlc_curvature_sample cs;
  REQUIRE(hlc_curvature_sample_at(s, 1, 0, HLC_JET_ANALYTIC, 0, &cs) == HLC_OK);
  CHECK(cs.forms.E == doctest::Approx(1));
  CHECK(cs.forms.F == doctest::Approx(1));
  CHECK(cs.forms.G == doctest::Approx(5));
  CHECK(cs.forms.det_I == doctest::Approx(4));
  CHECK(cs.forms.normal[0] == doctest::Approx(1));
  CHECK(cs.H == doctest::Approx(-1));
  CHECK(cs.K == doctest::Approx(-1));

  hlc_jet jet, fd;
  REQUIRE(hlc_surface_jet(s, 1, 0, &jet) == HLC_OK);
  REQUIRE(hlc_surface_fd_jet(s, 1, 0, 0, &fd) == HLC_OK);
  CHECK(jet.p_rtheta[1] == doctest::Approx(-6));
  CHECK(fd.p_rtheta[1] == doctest::Approx(-6).epsilon(1e-6));
  hlc_forms f;
  REQUIRE(hlc_forms_from_jet(&jet, &f) == HLC_OK);
  double H, K;
  REQUIRE(hlc_curvatures(&f, &H, &K) == HLC_OK);
  CHECK(H == doctest::Approx(-1));

  double def[3], ev[3];
  REQUIRE(hlc_surface_compose_definition(s, 0.7, 0.4, def) == HLC_OK);
  REQUIRE(hlc_surface_eval(s, 0.7, 0.4, ev) == HLC_OK);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(def[k] - ev[k]) < 1e-14);

  double efg[3];
  REQUIRE(hlc_first_form_closed(3, 1, "poly:0,1", 1, 0, efg) == HLC_OK);
  CHECK(efg[2] == doctest::Approx(5));
  double rot[3];
  REQUIRE(hlc_eval_rotational(3, 1, 0, 0, rot) == HLC_OK);
  CHECK(rot[0] == doctest::Approx(0.25));
  hlc_surface_destroy(s);

  hlc_surface* flat = nullptr;
  REQUIRE(hlc_surface_create(HLC_FAMILY_HELICOIDAL, 3, 0, nullptr, &flat) == HLC_OK);
  CHECK(hlc_curvature_sample_at(flat, 1, 0, HLC_JET_ANALYTIC, 0, &cs) == HLC_ERR_DEGENERATE_METRIC);
  hlc_surface_destroy(flat);
}

TEST_CASE("trajectories and isometry reports") {
  hlc_surface* s = worked_surface();
  hlc_reduced_metric rm;
  REQUIRE(hlc_reduce_metric(1, 1, 5, &rm) == HLC_OK);
  CHECK(rm.Err == doctest::Approx(0.8));

  hlc_trajectory* t = nullptr;
  REQUIRE(hlc_trajectory_trace(s, 1, 0, 1.5, 1e-9, &t) == HLC_OK);
  REQUIRE(hlc_trajectory_size(t) > 2);
  hlc_trajectory_sample first;
  REQUIRE(hlc_trajectory_get(t, 0, &first) == HLC_OK);
  CHECK(first.r == 1);
  double rR, tR;
  REQUIRE(hlc_trajectory_correspondence(t, 0, &rR, &tR) == HLC_OK);
  CHECK(rR == doctest::Approx(std::sqrt(5.0)));
  double v;
  CHECK(hlc_phi_R_prime_squared(t, 0, rR, tR, &v) == HLC_OK);
  CHECK(hlc_trajectory_get(t, 1u << 30, &first) == HLC_ERR_INVALID_ARGUMENT);
  hlc_trajectory_destroy(t);

  hlc_isometry_report* rep = nullptr;
  REQUIRE(hlc_isometry_report_create(s, 1, 0, 1.5, 1e-9, HLC_CORRESPONDENCE_BOUR_RADIUS, &rep) ==
          HLC_OK);
  CHECK(hlc_isometry_report_rows(rep) > 2);
  CHECK(hlc_isometry_report_truncated(rep) == 0);
  CHECK(std::string(hlc_isometry_report_csv(rep)).rfind("r,theta,rbar,", 0) == 0);
  CHECK(std::string(hlc_isometry_report_summary_json(rep)).front() == '{');
  const std::string path = tmp_path("iso.csv");
  CHECK(hlc_isometry_report_write_csv(rep, path.c_str()) == HLC_OK);
  CHECK(hlc_isometry_report_write_csv(rep, "/nonexistent/dir/x.csv") == HLC_ERR_IO);
  std::remove(path.c_str());
  hlc_isometry_report_destroy(rep);
  hlc_surface_destroy(s);
}

TEST_CASE("minimality and the slice ODE") {
  double res;
  REQUIRE(hlc_minimality_residual(0.5, 0, 0, 0, 0, &res) == HLC_OK);
  CHECK(res == 0);
  hlc_slice_solution* sol = nullptr;
  REQUIRE(hlc_slice_solve(0, 0, 0.2, 0, 0.9, 1e-9, &sol) == HLC_OK);
  hlc_slice_point p;
  REQUIRE(hlc_slice_solution_point(sol, hlc_slice_solution_size(sol) - 1, &p) == HLC_OK);
  CHECK(p.r == 0.9);
  CHECK(p.dphi == 0);
  hlc_slice_solution_destroy(sol);
  CHECK(hlc_slice_solve(0, 0, 0.5, 0, 1.5, 1e-9, &sol) == HLC_ERR_SINGULAR_COEFFICIENT);
}

TEST_CASE("printed forms and the fidelity sweep") {
  double efgd[4];
  REQUIRE(hlc_paper_first_forms_m3(1, 0, 1, 1, efgd) == HLC_OK);
  CHECK(efgd[3] == doctest::Approx(4));
  double num[3], e[3];
  REQUIRE(hlc_paper_gauss_map_m3(1, 0, 1, 1, num, e) == HLC_OK);
  CHECK(e[0] == doctest::Approx(1));
  double lmn[3];
  REQUIRE(hlc_paper_second_forms_m3(1, 0, 1, 1, 0, lmn) == HLC_OK);
  CHECK(lmn[0] == doctest::Approx(1));
  double H, K;
  CHECK(hlc_paper_curvatures_m3(1, 0, 0, 0, 0, &H, &K) == HLC_ERR_DEGENERATE_METRIC);

  hlc_fidelity_report* rep = nullptr;
  REQUIRE(hlc_fidelity_sweep(nullptr, &rep) == HLC_OK);
  CHECK(hlc_fidelity_report_records(rep) >= 100 * 11);
  CHECK(hlc_fidelity_report_discrepancies(rep, "L") > 0);
  CHECK(hlc_fidelity_report_discrepancies(rep, "E") == 0);
  hlc_fidelity_report_destroy(rep);
  CHECK(hlc_fidelity_sweep("{not json", &rep) == HLC_ERR_DOMAIN);
}

TEST_CASE("meshes") {
  hlc_surface* b3 = nullptr;
  REQUIRE(hlc_surface_create(HLC_FAMILY_BOUR_MINIMAL, 3, 0, nullptr, &b3) == HLC_OK);
  const hlc_grid g{8, 8, 0.2, 1.5, 0, 2 * M_PI, 1};
  hlc_mesh* mesh = nullptr;
  REQUIRE(hlc_mesh_sample(b3, &g, "H,K", 1, &mesh) == HLC_OK);
  CHECK(hlc_mesh_vertex_count(mesh) == 64);
  CHECK(hlc_mesh_face_count(mesh) == 112);
  CHECK(hlc_mesh_degenerate_count(mesh) == 0);
  double h;
  REQUIRE(hlc_mesh_field_max_abs(mesh, "H", &h) == HLC_OK);
  CHECK(h < 1e-8);
  CHECK(hlc_mesh_field_max_abs(mesh, "E", &h) == HLC_ERR_INVALID_ARGUMENT);
  const std::string obj = tmp_path("m.obj"), ply = tmp_path("m.ply"), csv = tmp_path("m.csv");
  CHECK(hlc_mesh_write_obj(mesh, obj.c_str()) == HLC_OK);
  CHECK(hlc_mesh_write_ply(mesh, ply.c_str()) == HLC_OK);
  CHECK(hlc_mesh_write_csv(mesh, csv.c_str()) == HLC_OK);
  CHECK(hlc_mesh_write_obj(mesh, "/nonexistent/dir/m.obj") == HLC_ERR_IO);
  for (const auto& p : {obj, ply, csv}) std::remove(p.c_str());
  hlc_mesh_destroy(mesh);

  const hlc_grid bad{1, 8, 0.2, 1.5, 0, 2 * M_PI, 1};
  CHECK(hlc_mesh_sample(b3, &bad, nullptr, 0, &mesh) == HLC_ERR_DOMAIN);
  CHECK(hlc_mesh_sample(b3, &g, "bogus", 0, &mesh) == HLC_ERR_DOMAIN);
  hlc_surface_destroy(b3);
}
