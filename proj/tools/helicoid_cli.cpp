// helicoid: command-line front end over the helicoid C API.
//
//   helicoid eval      point, jet and fundamental forms at one (r, theta)
//   helicoid curvature H and K over a parameter grid
//   helicoid fidelity  printed value-3 closed forms against the oracles
//   helicoid bour      orthogonal trajectory and isometry report
//   helicoid mesh      OBJ / PLY / CSV export of a sampled surface
//   helicoid minimal   minimality residual grid or theta-slice ODE
//
// Every run is described by a RunConfig that round-trips through JSON
// (--json to load, --dump-config to print). Flags override file values.
// Exit codes: 0 success, 2 usage or math error, 1 I/O or internal error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "helicoid/helicoid.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

constexpr double kFigurePitch = 1.0;

struct RunConfig {
  std::string subcommand;

  std::optional<std::string> preset;
  std::optional<std::string> family;
  std::optional<double> m;
  std::optional<double> a;
  std::optional<std::string> profile;

  // eval
  double r = 1.0;
  double theta = 0.0;
  bool jet = false;
  bool forms = false;

  // grids (curvature, mesh, minimal --residual-grid)
  int nr = 64;
  int ntheta = 128;
  double r_min = 0.2;
  double r_max = 1.5;
  double theta_min = 0.0;
  double theta_max = 2 * M_PI;
  bool wrap = true;

  // curvature
  std::string oracle = "analytic";
  double fd_step = 0.0;
  bool compare = false;

  // bour and minimal
  std::optional<double> r0;
  std::optional<double> r1;
  double theta0 = 0.0;
  double tol = 1e-9;
  std::string mode = "bour-radius";
  int tol_sweep = 0;

  // minimal
  bool residual_grid = false;
  double phi_prime0 = 0.0;
  double phi_prime = 0.0;
  double phi_second = 0.0;

  // fidelity
  std::string grid_file;
  std::string digest;

  // mesh
  std::string format = "obj";
  std::string fields;
  bool normals = false;

  // outputs
  std::string output;
  std::string summary;
};

template <class T>
void put_opt(json& j, const char* key, const std::optional<T>& v) {
  j[key] = v ? json(*v) : json(nullptr);
}

json to_json(const RunConfig& c) {
  json j;
  j["subcommand"] = c.subcommand;
  put_opt(j, "preset", c.preset);
  put_opt(j, "family", c.family);
  put_opt(j, "m", c.m);
  put_opt(j, "a", c.a);
  put_opt(j, "profile", c.profile);
  j["r"] = c.r;
  j["theta"] = c.theta;
  j["jet"] = c.jet;
  j["forms"] = c.forms;
  j["grid"] = {{"nr", c.nr},           {"ntheta", c.ntheta},       {"r_min", c.r_min},
               {"r_max", c.r_max},     {"theta_min", c.theta_min}, {"theta_max", c.theta_max},
               {"wrap", c.wrap}};
  j["oracle"] = c.oracle;
  j["fd_step"] = c.fd_step;
  j["compare"] = c.compare;
  put_opt(j, "r0", c.r0);
  put_opt(j, "r1", c.r1);
  j["theta0"] = c.theta0;
  j["tol"] = c.tol;
  j["mode"] = c.mode;
  j["tol_sweep"] = c.tol_sweep;
  j["residual_grid"] = c.residual_grid;
  j["phi_prime0"] = c.phi_prime0;
  j["phi_prime"] = c.phi_prime;
  j["phi_second"] = c.phi_second;
  j["grid_file"] = c.grid_file;
  j["digest"] = c.digest;
  j["format"] = c.format;
  j["fields"] = c.fields;
  j["normals"] = c.normals;
  j["output"] = c.output;
  j["summary"] = c.summary;
  return j;
}

template <class T>
void get(const json& j, const char* key, T& v) {
  if (j.contains(key) && !j.at(key).is_null()) v = j.at(key).get<T>();
}

template <class T>
void get(const json& j, const char* key, std::optional<T>& v) {
  if (j.contains(key) && !j.at(key).is_null()) v = j.at(key).get<T>();
}

RunConfig from_json(const json& j) {
  static const std::vector<std::string> known = {
      "subcommand", "preset",    "family",     "m",          "a",        "profile",
      "r",          "theta",     "jet",        "forms",      "grid",     "oracle",
      "fd_step",    "compare",   "r0",         "r1",         "theta0",   "tol",
      "mode",       "tol_sweep", "residual_grid", "phi_prime0", "phi_prime", "phi_second",
      "grid_file",  "digest",    "format",     "fields",     "normals",  "output",
      "summary"};
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& item : j.items())
    if (std::find(known.begin(), known.end(), item.key()) == known.end())
      throw std::invalid_argument("unknown config key '" + item.key() + "'");

  RunConfig c;
  get(j, "subcommand", c.subcommand);
  get(j, "preset", c.preset);
  get(j, "family", c.family);
  get(j, "m", c.m);
  get(j, "a", c.a);
  get(j, "profile", c.profile);
  get(j, "r", c.r);
  get(j, "theta", c.theta);
  get(j, "jet", c.jet);
  get(j, "forms", c.forms);
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    get(g, "nr", c.nr);
    get(g, "ntheta", c.ntheta);
    get(g, "r_min", c.r_min);
    get(g, "r_max", c.r_max);
    get(g, "theta_min", c.theta_min);
    get(g, "theta_max", c.theta_max);
    get(g, "wrap", c.wrap);
  }
  get(j, "oracle", c.oracle);
  get(j, "fd_step", c.fd_step);
  get(j, "compare", c.compare);
  get(j, "r0", c.r0);
  get(j, "r1", c.r1);
  get(j, "theta0", c.theta0);
  get(j, "tol", c.tol);
  get(j, "mode", c.mode);
  get(j, "tol_sweep", c.tol_sweep);
  get(j, "residual_grid", c.residual_grid);
  get(j, "phi_prime0", c.phi_prime0);
  get(j, "phi_prime", c.phi_prime);
  get(j, "phi_second", c.phi_second);
  get(j, "grid_file", c.grid_file);
  get(j, "digest", c.digest);
  get(j, "format", c.format);
  get(j, "fields", c.fields);
  get(j, "normals", c.normals);
  get(j, "output", c.output);
  get(j, "summary", c.summary);
  return c;
}

// Errors that end the run with a given exit code.
struct Exit {
  int code;
  std::string message;
};

[[noreturn]] void usage(const std::string& msg) { throw Exit{kExitUsage, msg}; }

int exit_code_for(hlc_status s) {
  switch (s) {
    case HLC_OK: return kExitOk;
    case HLC_ERR_IO:
    case HLC_ERR_INTERNAL: return kExitInternal;
    default: return kExitUsage;
  }
}

void check(hlc_status s) {
  if (s != HLC_OK)
    throw Exit{exit_code_for(s), std::string(hlc_status_name(s)) + ": " + hlc_last_error()};
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Relative paths land under HELICOID_OUTPUT_DIR when it is set.
std::string resolve_output(const std::string& path) {
  const char* dir = std::getenv("HELICOID_OUTPUT_DIR");
  if (!dir || !*dir || path.empty() || path.front() == '/') return path;
  std::string base(dir);
  if (base.back() != '/') base += '/';
  return base + path;
}

// Writes to the resolved path, or to stdout when the path is empty.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(resolve_output(path), std::ios::out | std::ios::trunc);
    if (!*file_) throw Exit{kExitInternal, "IOError: cannot open '" + resolve_output(path) + "'"};
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }
  bool to_stdout() const { return !file_; }
  void close() {
    if (file_) {
      file_->close();
      if (!*file_) throw Exit{kExitInternal, "IOError: write failed"};
    }
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void emit_summary(const RunConfig& c, const json& summary, bool data_on_stdout) {
  if (!c.summary.empty()) {
    Sink s(c.summary);
    s.os() << summary.dump(2) << '\n';
    s.close();
  }
  (data_on_stdout ? std::cerr : std::cout) << summary.dump() << '\n';
}

// --- surfaces ---------------------------------------------------------------

hlc_family parse_family(const std::string& name) {
  if (name == "helicoidal") return HLC_FAMILY_HELICOIDAL;
  if (name == "rotational") return HLC_FAMILY_ROTATIONAL;
  if (name == "bour-minimal" || name == "bour") return HLC_FAMILY_BOUR_MINIMAL;
  if (name == "classical") return HLC_FAMILY_CLASSICAL;
  usage("unknown family '" + name + "' (helicoidal|rotational|bour-minimal|classical)");
}

void apply_preset(RunConfig& c) {
  if (!c.preset) return;
  if (*c.preset == "fig1") {
    if (!c.family) c.family = "bour-minimal";
    if (!c.m) c.m = 3;
    if (!c.a) c.a = kFigurePitch;
  } else if (*c.preset == "fig2") {
    if (!c.family) c.family = "bour-minimal";
    if (!c.m) c.m = 3;
    if (!c.a) c.a = 0.0;
  } else {
    usage("unknown preset '" + *c.preset + "' (fig1|fig2)");
  }
}

using SurfacePtr = std::unique_ptr<hlc_surface, decltype(&hlc_surface_destroy)>;

SurfacePtr make_surface(RunConfig& c) {
  apply_preset(c);
  const std::string family = c.family.value_or("helicoidal");
  const hlc_family fam = parse_family(family);
  if (fam != HLC_FAMILY_CLASSICAL && !c.m) usage("--m is required for the " + family + " family");
  if (fam == HLC_FAMILY_BOUR_MINIMAL && c.profile)
    std::cerr << "warning: the bour-minimal family ignores --profile\n";
  const std::string profile = c.profile.value_or("poly:0");
  hlc_surface* s = nullptr;
  check(hlc_surface_create(fam, c.m.value_or(0.0), c.a.value_or(0.0),
                           fam == HLC_FAMILY_BOUR_MINIMAL ? nullptr : profile.c_str(), &s));
  return SurfacePtr(s, &hlc_surface_destroy);
}

json surface_json(const RunConfig& c, const hlc_surface* s) {
  json j;
  j["family"] = c.family.value_or("helicoidal");
  j["m"] = c.m ? json(*c.m) : json(nullptr);
  j["a"] = c.a.value_or(0.0);
  const bool bour = parse_family(j["family"]) == HLC_FAMILY_BOUR_MINIMAL;
  j["profile"] = bour ? json(nullptr) : json(hlc_surface_profile_id(s));
  return j;
}

json vec(const double v[3]) { return json::array({v[0], v[1], v[2]}); }

double grid_r(const RunConfig& c, int i) {
  return c.nr > 1 ? c.r_min + (c.r_max - c.r_min) * i / (c.nr - 1) : c.r_min;
}

double grid_theta(const RunConfig& c, int j) {
  const double span = c.theta_max - c.theta_min;
  if (c.wrap) return c.theta_min + span * j / c.ntheta;
  return c.ntheta > 1 ? c.theta_min + span * j / (c.ntheta - 1) : c.theta_min;
}

void require_grid(const RunConfig& c, int min_n) {
  if (c.nr < min_n || c.ntheta < min_n)
    usage("grid needs nr, ntheta >= " + std::to_string(min_n));
  if (!(c.r_min > 0.0) || !(c.r_max >= c.r_min)) usage("grid needs 0 < r-min <= r-max");
}

// --- subcommands --------------------------------------------------------------

int cmd_eval(RunConfig& c) {
  SurfacePtr s = make_surface(c);
  double p[3];
  check(hlc_surface_eval(s.get(), c.r, c.theta, p));
  json out = surface_json(c, s.get());
  out["r"] = c.r;
  out["theta"] = c.theta;
  out["point"] = vec(p);
  if (c.jet) {
    hlc_jet jt;
    check(hlc_surface_jet(s.get(), c.r, c.theta, &jt));
    out["jet"] = {{"p_r", vec(jt.p_r)},         {"p_theta", vec(jt.p_theta)},
                  {"p_rr", vec(jt.p_rr)},       {"p_rtheta", vec(jt.p_rtheta)},
                  {"p_thetatheta", vec(jt.p_thetatheta)}};
  }
  if (c.forms) {
    hlc_curvature_sample cs;
    check(hlc_curvature_sample_at(s.get(), c.r, c.theta, HLC_JET_ANALYTIC, 0.0, &cs));
    const hlc_forms& f = cs.forms;
    out["forms"] = {{"E", f.E}, {"F", f.F},         {"G", f.G},          {"L", f.L},
                    {"M", f.M}, {"N", f.N},         {"detI", f.det_I},   {"normal", vec(f.normal)},
                    {"H", cs.H}, {"K", cs.K}};
  }
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

struct HK {
  double H, K;
  bool ok;
};

HK sample_hk(const hlc_surface* s, double r, double theta, hlc_jet_source src, double h) {
  hlc_curvature_sample cs;
  const hlc_status st = hlc_curvature_sample_at(s, r, theta, src, h, &cs);
  if (st == HLC_ERR_DEGENERATE_METRIC) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan, false};
  }
  check(st);
  return {cs.H, cs.K, true};
}

int cmd_curvature(RunConfig& c) {
  SurfacePtr s = make_surface(c);
  require_grid(c, 1);
  hlc_jet_source src;
  if (c.oracle == "analytic") src = HLC_JET_ANALYTIC;
  else if (c.oracle == "fd") src = HLC_JET_FINITE_DIFFERENCE;
  else usage("--oracle must be analytic or fd");

  Sink sink(c.output);
  std::ostream& os = sink.os();
  os << "r,theta,H,K,status";
  if (c.compare) os << ",H_other,K_other";
  os << '\n';

  std::size_t rows = 0, flagged = 0;
  double max_h = 0, max_k = 0, diff_h = 0, diff_k = 0;
  for (int i = 0; i < c.nr; ++i) {
    for (int j = 0; j < c.ntheta; ++j) {
      const double r = grid_r(c, i), t = grid_theta(c, j);
      const HK v = sample_hk(s.get(), r, t, src, c.fd_step);
      ++rows;
      os << fmt(r) << ',' << fmt(t) << ',' << fmt(v.H) << ',' << fmt(v.K) << ','
         << (v.ok ? "ok" : "degenerate");
      if (!v.ok) ++flagged;
      if (v.ok) {
        max_h = std::max(max_h, std::abs(v.H));
        max_k = std::max(max_k, std::abs(v.K));
      }
      if (c.compare) {
        const hlc_jet_source other =
            src == HLC_JET_ANALYTIC ? HLC_JET_FINITE_DIFFERENCE : HLC_JET_ANALYTIC;
        const HK w = sample_hk(s.get(), r, t, other, c.fd_step);
        os << ',' << fmt(w.H) << ',' << fmt(w.K);
        if (v.ok && w.ok) {
          diff_h = std::max(diff_h, std::abs(v.H - w.H));
          diff_k = std::max(diff_k, std::abs(v.K - w.K));
        }
      }
      os << '\n';
    }
  }
  sink.close();

  json summary = surface_json(c, s.get());
  summary["oracle"] = c.oracle;
  summary["rows"] = rows;
  summary["flagged_degenerate"] = flagged;
  summary["max_abs_H"] = max_h;
  summary["max_abs_K"] = max_k;
  if (c.compare) {
    summary["max_abs_diff_H"] = diff_h;
    summary["max_abs_diff_K"] = diff_k;
  }
  emit_summary(c, summary, sink.to_stdout());
  return kExitOk;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) usage("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_fidelity(RunConfig& c) {
  const std::string grid = c.grid_file.empty() ? std::string() : read_file(c.grid_file);
  hlc_fidelity_report* raw = nullptr;
  check(hlc_fidelity_sweep(grid.c_str(), &raw));
  std::unique_ptr<hlc_fidelity_report, decltype(&hlc_fidelity_report_destroy)> rep(
      raw, &hlc_fidelity_report_destroy);

  const std::string csv = resolve_output(c.output.empty() ? "fidelity.csv" : c.output);
  const std::string digest = resolve_output(c.digest.empty() ? "fidelity_digest.md" : c.digest);
  check(hlc_fidelity_report_write_csv(rep.get(), csv.c_str()));
  check(hlc_fidelity_report_write_digest(rep.get(), digest.c_str()));

  json summary = json::parse(hlc_fidelity_report_summary_json(rep.get()));
  summary["csv"] = csv;
  summary["digest"] = digest;
  emit_summary(c, summary, false);
  return kExitOk;
}

hlc_correspondence_mode parse_mode(const std::string& mode) {
  if (mode == "bour-radius") return HLC_CORRESPONDENCE_BOUR_RADIUS;
  if (mode == "identity") return HLC_CORRESPONDENCE_IDENTITY;
  usage("--mode must be bour-radius or identity");
}

int tolerance_sweep(RunConfig& c, const hlc_surface* s, double r0, double r1) {
  Sink sink(c.output);
  std::ostream& os = sink.os();
  os << "tol,steps,rbar_end,theta_bar_end,delta_rbar\n";
  double prev = std::numeric_limits<double>::quiet_NaN();
  json table = json::array();
  double tol = c.tol;
  for (int k = 0; k < c.tol_sweep; ++k, tol /= 10) {
    hlc_trajectory* raw = nullptr;
    check(hlc_trajectory_trace(s, r0, c.theta0, r1, tol, &raw));
    std::unique_ptr<hlc_trajectory, decltype(&hlc_trajectory_destroy)> t(raw,
                                                                         &hlc_trajectory_destroy);
    const std::size_t n = hlc_trajectory_size(t.get());
    hlc_trajectory_sample last;
    check(hlc_trajectory_get(t.get(), n - 1, &last));
    const double delta = std::abs(last.rbar - prev);
    os << fmt(tol) << ',' << n - 1 << ',' << fmt(last.rbar) << ','
       << fmt(last.theta + last.fg_integral) << ',' << fmt(delta) << '\n';
    table.push_back({{"tol", tol}, {"steps", n - 1}, {"rbar_end", last.rbar}, {"delta_rbar", delta}});
    prev = last.rbar;
  }
  sink.close();
  json summary = surface_json(c, s);
  summary["tolerance_sweep"] = table;
  emit_summary(c, summary, sink.to_stdout());
  return kExitOk;
}

int cmd_bour(RunConfig& c) {
  SurfacePtr s = make_surface(c);
  const double r0 = c.r0.value_or(0.5), r1 = c.r1.value_or(1.5);
  if (c.tol_sweep < 0) usage("--tol-sweep must be >= 0");
  if (c.tol_sweep > 0) return tolerance_sweep(c, s.get(), r0, r1);

  hlc_isometry_report* raw = nullptr;
  check(hlc_isometry_report_create(s.get(), r0, c.theta0, r1, c.tol, parse_mode(c.mode), &raw));
  std::unique_ptr<hlc_isometry_report, decltype(&hlc_isometry_report_destroy)> rep(
      raw, &hlc_isometry_report_destroy);

  Sink sink(c.output);
  sink.os() << hlc_isometry_report_csv(rep.get());
  sink.close();
  emit_summary(c, json::parse(hlc_isometry_report_summary_json(rep.get())), sink.to_stdout());
  return kExitOk;
}

int cmd_mesh(RunConfig& c) {
  SurfacePtr s = make_surface(c);
  require_grid(c, 2);
  std::string fields = c.fields;
  if (fields.empty() && c.format == "csv") fields = "H,K";

  const hlc_grid grid{c.nr, c.ntheta, c.r_min, c.r_max, c.theta_min, c.theta_max, c.wrap ? 1 : 0};
  hlc_mesh* raw = nullptr;
  check(hlc_mesh_sample(s.get(), &grid, fields.empty() ? nullptr : fields.c_str(),
                        c.normals ? 1 : 0, &raw));
  std::unique_ptr<hlc_mesh, decltype(&hlc_mesh_destroy)> mesh(raw, &hlc_mesh_destroy);

  const std::string path = resolve_output(c.output.empty() ? "mesh." + c.format : c.output);
  if (c.format == "obj") check(hlc_mesh_write_obj(mesh.get(), path.c_str()));
  else if (c.format == "ply") check(hlc_mesh_write_ply(mesh.get(), path.c_str()));
  else if (c.format == "csv") check(hlc_mesh_write_csv(mesh.get(), path.c_str()));
  else usage("--format must be obj, ply or csv");

  json summary = surface_json(c, s.get());
  if (c.preset) summary["preset"] = *c.preset;
  summary["path"] = path;
  summary["format"] = c.format;
  summary["vertices"] = hlc_mesh_vertex_count(mesh.get());
  summary["faces"] = hlc_mesh_face_count(mesh.get());
  summary["degenerate_vertices"] = hlc_mesh_degenerate_count(mesh.get());
  std::stringstream names(fields);
  for (std::string name; std::getline(names, name, ',');) {
    double v = 0;
    check(hlc_mesh_field_max_abs(mesh.get(), name.c_str(), &v));
    summary["max_abs_" + name] = v;
  }
  emit_summary(c, summary, false);
  return kExitOk;
}

int cmd_minimal(RunConfig& c) {
  const double a = c.a.value_or(0.0);
  Sink sink(c.output);
  std::ostream& os = sink.os();
  json summary;
  summary["a"] = a;

  if (c.residual_grid) {
    require_grid(c, 1);
    os << "r,theta,residual\n";
    double max_abs = 0;
    for (int i = 0; i < c.nr; ++i) {
      for (int j = 0; j < c.ntheta; ++j) {
        const double r = grid_r(c, i), t = grid_theta(c, j);
        double res = 0;
        check(hlc_minimality_residual(r, t, a, c.phi_prime, c.phi_second, &res));
        max_abs = std::max(max_abs, std::abs(res));
        os << fmt(r) << ',' << fmt(t) << ',' << fmt(res) << '\n';
      }
    }
    sink.close();
    summary["mode"] = "residual_grid";
    summary["phi_prime"] = c.phi_prime;
    summary["phi_second"] = c.phi_second;
    summary["rows"] = c.nr * c.ntheta;
    summary["max_abs_residual"] = max_abs;
    emit_summary(c, summary, sink.to_stdout());
    return kExitOk;
  }

  const double r0 = c.r0.value_or(0.2), r1 = c.r1.value_or(0.9);
  hlc_slice_solution* raw = nullptr;
  check(hlc_slice_solve(c.theta, a, r0, c.phi_prime0, r1, c.tol, &raw));
  std::unique_ptr<hlc_slice_solution, decltype(&hlc_slice_solution_destroy)> sol(
      raw, &hlc_slice_solution_destroy);
  os << "r,dphi,ddphi,residual\n";
  double max_abs = 0;
  const std::size_t n = hlc_slice_solution_size(sol.get());
  for (std::size_t i = 0; i < n; ++i) {
    hlc_slice_point p;
    check(hlc_slice_solution_point(sol.get(), i, &p));
    max_abs = std::max(max_abs, std::abs(p.residual));
    os << fmt(p.r) << ',' << fmt(p.dphi) << ',' << fmt(p.ddphi) << ',' << fmt(p.residual) << '\n';
  }
  sink.close();
  summary["mode"] = "slice";
  summary["theta"] = c.theta;
  summary["r0"] = r0;
  summary["r1"] = r1;
  summary["phi_prime0"] = c.phi_prime0;
  summary["tol"] = c.tol;
  summary["points"] = n;
  summary["max_abs_residual"] = max_abs;
  emit_summary(c, summary, sink.to_stdout());
  return kExitOk;
}

// --- option wiring ------------------------------------------------------------

void add_surface(CLI::App* sub, RunConfig& c) {
  sub->add_option("--family", c.family,
                  "helicoidal (default), rotational, bour-minimal or classical");
  sub->add_option("--m", c.m, "value m (required except for classical)");
  sub->add_option("--a", c.a, "pitch a >= 0 (default 0)");
  sub->add_option("--profile", c.profile,
                  "height profile: poly:c0,c1,... | power:c,p | const:c (default poly:0)");
}

void add_grid(CLI::App* sub, RunConfig& c) {
  sub->add_option("--nr", c.nr, "radial samples")->capture_default_str();
  sub->add_option("--ntheta", c.ntheta, "angular samples")->capture_default_str();
  sub->add_option("--r-min", c.r_min)->capture_default_str();
  sub->add_option("--r-max", c.r_max)->capture_default_str();
  sub->add_option("--theta-min", c.theta_min)->capture_default_str();
  sub->add_option("--theta-max", c.theta_max)->capture_default_str();
  sub->add_option("--wrap", c.wrap, "theta periodic over [min, max)")->capture_default_str();
}

void add_outputs(CLI::App* sub, RunConfig& c) {
  sub->add_option("-o,--output", c.output, "output file (relative to $HELICOID_OUTPUT_DIR)");
  sub->add_option("--summary", c.summary, "also write the JSON summary to this file");
}

// Finds --json PATH / --json=PATH before CLI11 sees the flags.
std::optional<std::string> find_json_arg(int argc, char** argv) {
  std::optional<std::string> path;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--json" && i + 1 < argc) path = argv[++i];
    else if (arg.rfind("--json=", 0) == 0) path = arg.substr(7);
  }
  return path;
}

int run(int argc, char** argv) {
  RunConfig c;
  if (const auto path = find_json_arg(argc, argv)) {
    try {
      c = from_json(json::parse(read_file(*path)));
    } catch (const Exit&) {
      throw;
    } catch (const std::exception& e) {
      usage("bad config '" + *path + "': " + e.what());
    }
  }

  CLI::App app{"Helicoidal surfaces of value m and Bour's correspondence.\n"
               "Figure presets: fig1 = value-3 Bour height with pitch a=1 (pitch is a\n"
               "chosen default), fig2 = Bour minimal surface B3 with a=0."};
  app.set_help_all_flag("--help-all");
  app.require_subcommand(0, 1);
  app.fallthrough();
  std::string json_path;
  bool dump_config = false;
  app.add_option("--json", json_path, "load a RunConfig JSON file; flags override it");
  app.add_flag("--dump-config", dump_config, "print the effective RunConfig as JSON and exit");

  CLI::App* eval = app.add_subcommand("eval", "point, jet and forms at one (r, theta) as JSON");
  add_surface(eval, c);
  eval->add_option("--r", c.r)->capture_default_str();
  eval->add_option("--theta", c.theta)->capture_default_str();
  eval->add_flag("--jet", c.jet, "include first and second partials");
  eval->add_flag("--forms", c.forms, "include E, F, G, L, M, N, det I, normal, H, K");

  CLI::App* curv = app.add_subcommand("curvature", "H and K over a grid as CSV");
  add_surface(curv, c);
  add_grid(curv, c);
  curv->add_option("--oracle", c.oracle, "analytic or fd jets")->capture_default_str();
  curv->add_option("--fd-step", c.fd_step, "finite-difference step (0 = 1e-5)");
  curv->add_flag("--compare", c.compare, "also evaluate the other oracle and report max diffs");
  add_outputs(curv, c);

  CLI::App* fid = app.add_subcommand("fidelity", "printed value-3 forms against the oracles");
  fid->add_option("--grid", c.grid_file, "JSON grid file (default built-in grid)");
  fid->add_option("--digest", c.digest, "digest path (default fidelity_digest.md)");
  add_outputs(fid, c);

  CLI::App* bour = app.add_subcommand("bour", "orthogonal trajectory and isometry report");
  add_surface(bour, c);
  bour->add_option("--r0", c.r0, "start radius (default 0.5)");
  bour->add_option("--theta0", c.theta0)->capture_default_str();
  bour->add_option("--r1", c.r1, "end radius (default 1.5)");
  bour->add_option("--tol", c.tol)->capture_default_str();
  bour->add_option("--mode", c.mode, "bour-radius (r_R = sqrt G) or identity")->capture_default_str();
  bour->add_option("--tol-sweep", c.tol_sweep, "emit a convergence table over N tolerances");
  add_outputs(bour, c);

  CLI::App* mesh = app.add_subcommand("mesh", "OBJ, PLY or CSV export");
  add_surface(mesh, c);
  add_grid(mesh, c);
  mesh->add_option("--preset", c.preset, "fig1 (a=1 by default) or fig2 (a=0)");
  mesh->add_option("--format", c.format, "obj, ply or csv")->capture_default_str();
  mesh->add_option("--fields", c.fields, "comma list from H,K,E,F,G,L,M,N,detI");
  mesh->add_flag("--normals", c.normals, "emit vertex normals");
  add_outputs(mesh, c);

  CLI::App* minimal = app.add_subcommand("minimal", "value-3 minimality residual or slice ODE");
  minimal->add_option("--a", c.a, "pitch a (default 0)");
  minimal->add_option("--theta", c.theta, "slice angle")->capture_default_str();
  minimal->add_option("--phi-prime0", c.phi_prime0, "phi'(r0) for the slice ODE");
  minimal->add_option("--r0", c.r0, "start radius (default 0.2)");
  minimal->add_option("--r1", c.r1, "end radius (default 0.9); r = 1 is singular");
  minimal->add_option("--tol", c.tol)->capture_default_str();
  minimal->add_flag("--residual-grid", c.residual_grid, "evaluate the residual over a grid");
  minimal->add_option("--phi-prime", c.phi_prime, "phi' for --residual-grid");
  minimal->add_option("--phi-second", c.phi_second, "phi'' for --residual-grid");
  add_grid(minimal, c);
  add_outputs(minimal, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  for (CLI::App* sub : app.get_subcommands()) c.subcommand = sub->get_name();
  if (dump_config) {
    std::cout << to_json(c).dump(2) << '\n';
    return kExitOk;
  }
  if (c.subcommand.empty()) usage("no subcommand given (see --help)");
  if (c.subcommand == "eval") return cmd_eval(c);
  if (c.subcommand == "curvature") return cmd_curvature(c);
  if (c.subcommand == "fidelity") return cmd_fidelity(c);
  if (c.subcommand == "bour") return cmd_bour(c);
  if (c.subcommand == "mesh") return cmd_mesh(c);
  if (c.subcommand == "minimal") return cmd_minimal(c);
  usage("unknown subcommand '" + c.subcommand + "'");
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Exit& e) {
    std::cerr << "helicoid: " << e.message << '\n';
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "helicoid: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
