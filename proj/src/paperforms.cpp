#include "helicoid/paperforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>

#include <json.hpp>

#include "format.hpp"
#include "helicoid/errors.hpp"

namespace helicoid {

namespace {

// Trigonometric values of k*theta for the multiples that appear in the
// printed expansions, and the powers of r they use.
struct Terms {
  double r, a;
  double r2, r3, r4, r5, r6, r7, r8, r9, r10, r12;
  double c2, c4, c6, c8, c10, c12, c14;
  double s2, s4, s6, s8, s10, s12, s14;

  Terms(double r_, double theta, double a_) : r(r_), a(a_) {
    r2 = r * r;
    r3 = r2 * r;
    r4 = r2 * r2;
    r5 = r4 * r;
    r6 = r4 * r2;
    r7 = r6 * r;
    r8 = r4 * r4;
    r9 = r8 * r;
    r10 = r8 * r2;
    r12 = r8 * r4;
    c2 = std::cos(2 * theta), s2 = std::sin(2 * theta);
    c4 = std::cos(4 * theta), s4 = std::sin(4 * theta);
    c6 = std::cos(6 * theta), s6 = std::sin(6 * theta);
    c8 = std::cos(8 * theta), s8 = std::sin(8 * theta);
    c10 = std::cos(10 * theta), s10 = std::sin(10 * theta);
    c12 = std::cos(12 * theta), s12 = std::sin(12 * theta);
    c14 = std::cos(14 * theta), s14 = std::sin(14 * theta);
  }
};

double checked_det(double r, double theta, double a, double dphi) {
  if (!(r > 0.0)) throw DomainError("radial parameter must be > 0");
  const double det = paper_first_forms_m3(r, theta, a, dphi).detI;
  if (!(det > kDegenerateThreshold))
    throw DegenerateMetric("printed det I = " + detail::fmt_short(det) +
                           " is at or below the degeneracy threshold");
  return det;
}

}  // namespace

PaperFirstForms paper_first_forms_m3(double r, double theta, double a, double dphi) {
  const Terms t(r, theta, a);
  PaperFirstForms f;
  f.E = t.r2 * (t.r4 - 2 * t.r2 * t.c6 + 1) + dphi * dphi;
  f.F = 2 * t.r5 * t.s6 + a * dphi;
  f.G = t.r4 * (t.r4 + 2 * t.r2 * t.c6 + 1) + a * a;
  f.detI = t.r2 * (t.r12 - 2 * t.r8 + a * a * t.r4 + t.r4 - 2 * a * a * t.r2 * t.c6 + a * a) -
           4 * a * t.r5 * t.s6 * dphi + t.r4 * (t.r4 + 2 * t.r2 * t.c6 + 1) * dphi * dphi;
  return f;
}

PaperGaussMap paper_gauss_map_m3(double r, double theta, double a, double dphi) {
  const double det = checked_det(r, theta, a, dphi);
  const Terms t(r, theta, a);
  PaperGaussMap g;
  g.numerator = Vec3(-a * r * (t.r2 * t.s4 + t.s2) + t.r2 * dphi * (t.r2 * t.c4 + t.c2),
                     a * r * (t.r2 * t.c4 - t.c2) + t.r2 * dphi * (t.r2 * t.s4 - t.s2),
                     t.r7 - t.r3);
  g.normal = g.numerator / std::sqrt(det);
  return g;
}

SecondForm paper_second_forms_m3(double r, double theta, double a, double dphi, double ddphi) {
  const double inv_sqrt_det = 1.0 / std::sqrt(checked_det(r, theta, a, dphi));
  const Terms t(r, theta, a);
  SecondForm s;
  s.L = inv_sqrt_det *
        (t.r3 * (t.r4 - 1) * ddphi +
         0.5 * t.r2 *
             (1 - 3 * t.r4 + 2 * (1 + t.r2) * t.c2 + (-1 + 2 * t.r2) * t.c4 -
              2 * t.r2 * t.c6 + 3 * t.r4 * t.c8) *
             dphi +
         (1 + 2 * a * t.r3) * t.s2 + 0.5 * r * (a + 2 * r) * t.s4 + a * t.r3 * t.s6 -
         1.5 * a * t.r5 * t.s8);
  s.M = inv_sqrt_det * 2 * t.r2 * ((-2 * t.r4 + t.r2 * t.c6 + 1) * a + t.r3 * dphi * t.s6);
  s.N = inv_sqrt_det * 2 * t.r4 * (-a * r * t.s6 + (2 * t.r4 + t.r2 * t.c6 - 1) * dphi);
  return s;
}

double paper_mean_numerator_m3(double r, double theta, double a, double dphi, double ddphi) {
  const Terms t(r, theta, a);
  const double a2 = a * a;
  const double q = t.r8 + t.r4 + a2;  // recurring factor r^8 + r^4 + a^2

  const double bracket =
      t.r2 * (2 * (t.r2 + 1) * q * t.c2 + (2 * t.r2 - 1) * q * t.c4 -
              2 * t.r2 * (10 * t.r8 + 6 * t.r6 * t.c6 - 6 * t.r4 + 5 * a2) * t.c6 +
              3 * t.r4 * q * t.c8 - 16 * t.r8 * t.s6 * t.s6 +
              4 * t.r6 * (t.r2 + 1) * t.c2 * t.c6 + 2 * t.r6 * (2 * t.r2 - 1) * t.c4 * t.c6 +
              6 * t.r10 * t.c6 * t.c8 + t.r4 * (13 * a2 + 2 * t.r4 + 5 * t.r8 - 3) - 7 * a2);

  return 2 * t.r3 * (t.r4 - 1) * (t.r8 + 2 * t.r6 * t.c6 + t.r4 + a2) * ddphi +
         4 * t.r4 * (2 * t.r4 + t.r2 * t.c6 - 1) * dphi * dphi * dphi -
         12 * a * t.r5 * t.s6 * dphi * dphi + bracket * dphi +
         2 * (2 * a * t.r3 + 1) * q * t.s2 + r * (a + 2 * r) * q * t.s4 +
         2 * a * t.r3 * (15 * t.r8 - 9 * t.r4 + a2) * t.s6 - 3 * a * t.r5 * q * t.s8 +
         4 * t.r6 * (2 * a * t.r3 + 1) * t.s2 * t.c6 + 2 * t.r7 * (a + 2 * r) * t.s4 * t.c6 -
         2 * a * t.r9 * (2 * t.s6 + 3 * t.r2 * t.s8) * t.c6;
}

double paper_gauss_numerator_m3(double r, double theta, double a, double dphi, double ddphi) {
  const Terms t(r, theta, a);
  const double a2 = a * a;

  const double phi2_block =
      0.5 * t.r7 *
      (-32 * t.r9 + 28 * t.r5 - 8 * r + (-3 * t.r4 + 2 * t.r2 - 1) * t.s2 +
       2 * (t.r2 + 1) * t.s4 + 2 * (-3 * t.r4 + 1) * t.s6 + 2 * (t.r2 + 1) * t.s8 +
       (2 * t.r2 - 1) * t.s10 - 2 * t.r2 * t.s12 + 3 * t.r4 * t.s14 +
       16 * t.r3 * (-2 * t.r4 + 1) * t.c6 - 4 * t.r5 * t.c12);

  const double phi1_block =
      t.r4 * (8 * a * t.r5 * (2 * t.r4 - 1) * t.s6 + 4 * a * t.r7 * t.s12 +
              (-4 * a * t.r6 - 3 * a * t.r4 + t.r3 + 2 * a * t.r2 + 2 * a) * t.c2 +
              (-4 * a * t.r6 + 5 * a * t.r4 + 3 * a * t.r2 + r - a) * t.c4 +
              a * (t.r4 - 1) * t.r2 * t.c6 +
              (-6 * a * t.r8 + 2 * a * t.r4 + a * t.r2 - r) * t.c8 +
              (a * t.r4 - t.r3 - a * t.r2) * t.c10 - 2 * a * t.r4 * t.c12 +
              3 * a * t.r6 * t.c14 + 6 * a * t.r8 - 5 * a * t.r4 + a);

  const double tail = -0.5 * a * t.r2 * (19 * a * t.r7 - 7 * a * t.r3 + 10 * t.r2 - 4) * t.s2 +
                      a * t.r2 * (1 - 4 * t.r4) * (a * r + 1) * t.s4 -
                      2 * a2 * t.r5 * (2 * t.r4 - 1) * t.s6 +
                      a * t.r4 * (6 * a * t.r7 - a * t.r3 + 1) * t.s8 +
                      0.5 * a * t.r4 * (a * r + 2) * t.s10 + a2 * t.r7 * t.s12 -
                      1.5 * a2 * t.r9 * t.s14 + 2 * a2 * t.r10 * t.c12 - 2 * a2 * t.r10;

  return 2 * a * t.r5 * (t.r4 - 1) * (t.r2 * t.c6 - 2 * t.r4 + 1) * ddphi +
         2 * t.r8 * (t.r4 - 1) * t.s6 * dphi * ddphi + phi2_block * dphi * dphi +
         phi1_block * dphi + tail;
}

Curvatures paper_curvatures_m3(double r, double theta, double a, double dphi, double ddphi) {
  const double det = checked_det(r, theta, a, dphi);
  return {paper_mean_numerator_m3(r, theta, a, dphi, ddphi) / (4 * std::pow(det, 1.5)),
          paper_gauss_numerator_m3(r, theta, a, dphi, ddphi) / (det * det)};
}

// --- fidelity sweep --------------------------------------------------------

FidelityGrid default_fidelity_grid() {
  const double pi = std::numbers::pi;
  FidelityGrid g;
  g.r = {0.5, 0.8, 1.2, 1.5};
  g.theta = {0.0, pi / 7, pi / 3, 2 * pi / 5, 5 * pi / 6};
  g.a = {0.0, 1.0};
  g.profiles = {Profile::polynomial({0.0}), Profile::polynomial({0.0, 1.0}),
                Profile::polynomial({0.0, 0.0, 1.0})};
  g.extra_points.push_back({1.0, 0.0, 1.0, Profile::polynomial({0.0, 1.0})});
  return g;
}

FidelityGrid fidelity_grid_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("fidelity grid is not valid JSON: ") + e.what());
  }
  FidelityGrid g = default_fidelity_grid();
  try {
    if (j.contains("r")) g.r = j.at("r").get<std::vector<double>>();
    if (j.contains("theta")) g.theta = j.at("theta").get<std::vector<double>>();
    if (j.contains("a")) g.a = j.at("a").get<std::vector<double>>();
    if (j.contains("profiles")) {
      g.profiles.clear();
      for (const auto& p : j.at("profiles")) g.profiles.push_back(Profile::parse(p.get<std::string>()));
    }
    if (j.contains("points")) {
      g.extra_points.clear();
      for (const auto& p : j.at("points"))
        g.extra_points.push_back({p.at("r").get<double>(), p.at("theta").get<double>(),
                                  p.value("a", 0.0),
                                  Profile::parse(p.value("profile", std::string("poly:0")))});
    }
    g.exclude_degenerate_band = j.value("exclude_band", g.exclude_degenerate_band);
    g.degenerate_band = j.value("band", g.degenerate_band);
    g.agree_tol = j.value("agree_tol", g.agree_tol);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("fidelity grid has a malformed field: ") + e.what());
  }
  for (double r : g.r)
    if (!(r > 0.0)) throw DomainError("fidelity grid radii must be > 0");
  for (const FidelityPoint& p : g.extra_points)
    if (!(p.r > 0.0)) throw DomainError("fidelity grid radii must be > 0");
  for (double a : g.a)
    if (!(a >= 0.0)) throw DomainError("fidelity grid pitches must be >= 0");
  return g;
}

namespace {

FidelityRecord make_record(const std::string& quantity, const FidelityPoint& pt,
                           std::vector<double> paper, std::vector<double> oracle,
                           double agree_tol) {
  FidelityRecord rec;
  rec.quantity = quantity;
  rec.r = pt.r;
  rec.theta = pt.theta;
  rec.a = pt.a;
  rec.profile_id = pt.profile.id();
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < paper.size(); ++i) {
    diff = std::max(diff, std::abs(paper[i] - oracle[i]));
    scale = std::max(scale, std::abs(oracle[i]));
  }
  rec.abs_diff = diff;
  if (diff == 0.0)
    rec.rel_diff = 0.0;
  else
    rec.rel_diff = scale > 0.0 ? diff / scale : std::numeric_limits<double>::infinity();
  rec.status = diff <= agree_tol * std::max(1.0, scale) ? "agree" : "discrepancy";
  rec.paper_value = std::move(paper);
  rec.oracle_value = std::move(oracle);
  return rec;
}

FidelityRecord degenerate_record(const std::string& quantity, const FidelityPoint& pt) {
  FidelityRecord rec;
  rec.quantity = quantity;
  rec.r = pt.r;
  rec.theta = pt.theta;
  rec.a = pt.a;
  rec.profile_id = pt.profile.id();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  rec.paper_value = {nan};
  rec.oracle_value = {nan};
  rec.abs_diff = nan;
  rec.rel_diff = nan;
  rec.status = "degenerate";
  return rec;
}

const std::vector<std::string>& quantity_order() {
  static const std::vector<std::string> order = {"E", "F",  "G", "detI", "e", "e_norm2",
                                                 "L", "M",  "N", "H",    "K", "residual"};
  return order;
}

void sweep_cell(const FidelityPoint& pt, double agree_tol, std::vector<FidelityRecord>& out) {
  const double dphi = pt.profile.d1(pt.r);
  const double ddphi = pt.profile.d2(pt.r);
  const SurfaceSpec spec = SurfaceSpec::helicoidal(3.0, pt.a, pt.profile);

  // First forms never degenerate as formulas; compare against the closed form.
  const PaperFirstForms pf = paper_first_forms_m3(pt.r, pt.theta, pt.a, dphi);
  const FirstForm cf = first_form_closed(3.0, pt.a, pt.profile, pt.r, pt.theta);
  out.push_back(make_record("E", pt, {pf.E}, {cf.E}, agree_tol));
  out.push_back(make_record("F", pt, {pf.F}, {cf.F}, agree_tol));
  out.push_back(make_record("G", pt, {pf.G}, {cf.G}, agree_tol));

  const Jet2 j = jet(spec, pt.r, pt.theta);
  const FirstForm jf = first_form_from_jet(j);
  out.push_back(make_record("detI", pt, {pf.detI}, {jf.det()}, agree_tol));

  FundamentalForms forms;
  Curvatures curv;
  try {
    forms = fundamental_forms(j);
    curv = curvatures(forms);
  } catch (const DegenerateMetric&) {
    for (std::size_t q = 4; q < quantity_order().size(); ++q)
      out.push_back(degenerate_record(quantity_order()[q], pt));
    return;
  }

  try {
    const PaperGaussMap pg = paper_gauss_map_m3(pt.r, pt.theta, pt.a, dphi);
    out.push_back(make_record("e", pt, {pg.normal.x(), pg.normal.y(), pg.normal.z()},
                              {forms.normal.x(), forms.normal.y(), forms.normal.z()},
                              agree_tol));
    out.push_back(
        make_record("e_norm2", pt, {pg.numerator.squaredNorm()}, {forms.detI}, agree_tol));
    const SecondForm ps = paper_second_forms_m3(pt.r, pt.theta, pt.a, dphi, ddphi);
    out.push_back(make_record("L", pt, {ps.L}, {forms.L}, agree_tol));
    out.push_back(make_record("M", pt, {ps.M}, {forms.M}, agree_tol));
    out.push_back(make_record("N", pt, {ps.N}, {forms.N}, agree_tol));
    const Curvatures pc = paper_curvatures_m3(pt.r, pt.theta, pt.a, dphi, ddphi);
    out.push_back(make_record("H", pt, {pc.H}, {curv.H}, agree_tol));
    out.push_back(make_record("K", pt, {pc.K}, {curv.K}, agree_tol));
    out.push_back(make_record("residual", pt,
                              {paper_mean_numerator_m3(pt.r, pt.theta, pt.a, dphi, ddphi)},
                              {4 * std::pow(forms.detI, 1.5) * curv.H}, agree_tol));
  } catch (const DegenerateMetric&) {
    // Printed det I may fall below the threshold while the oracle does not.
    for (std::size_t q = 4; q < quantity_order().size(); ++q)
      out.push_back(degenerate_record(quantity_order()[q], pt));
  }
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string join_values(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    s += detail::fmt17(v[i]);
  }
  return s;
}

nlohmann::json finite_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

FidelityReport fidelity_sweep(const FidelityGrid& grid) {
  std::vector<FidelityPoint> cells;
  for (double r : grid.r)
    for (double th : grid.theta)
      for (double a : grid.a)
        for (const Profile& p : grid.profiles) cells.push_back({r, th, a, p});
  cells.insert(cells.end(), grid.extra_points.begin(), grid.extra_points.end());

  FidelityReport rep;
  for (const FidelityPoint& pt : cells) {
    if (!(pt.r > 0.0)) throw DomainError("fidelity grid radii must be > 0");
    if (grid.exclude_degenerate_band && std::abs(pt.r - 1.0) < grid.degenerate_band &&
        pt.a == 0.0 && pt.profile.d1(pt.r) == 0.0) {
      ++rep.excluded_cells;
      continue;
    }
    ++rep.cells;
    sweep_cell(pt, grid.agree_tol, rep.records);
  }

  for (const std::string& q : quantity_order()) {
    QuantitySummary s;
    s.quantity = q;
    std::vector<double> abs_d, rel_d;
    for (const FidelityRecord& rec : rep.records) {
      if (rec.quantity != q) continue;
      ++s.count;
      if (rec.status == "degenerate") {
        ++s.degenerate;
        continue;
      }
      (rec.status == "agree" ? s.agree : s.discrepant)++;
      abs_d.push_back(rec.abs_diff);
      rel_d.push_back(rec.rel_diff);
    }
    if (!abs_d.empty()) {
      s.max_abs = *std::max_element(abs_d.begin(), abs_d.end());
      s.max_rel = *std::max_element(rel_d.begin(), rel_d.end());
      s.median_abs = median(abs_d);
      s.median_rel = median(rel_d);
    }
    rep.summary.push_back(s);
  }
  return rep;
}

void FidelityReport::write_csv(std::ostream& os) const {
  os << "quantity,r,theta,a,profile,paper_value,oracle_value,abs_diff,rel_diff,status\n";
  for (const FidelityRecord& rec : records) {
    os << rec.quantity << ',' << detail::fmt17(rec.r) << ',' << detail::fmt17(rec.theta) << ','
       << detail::fmt17(rec.a) << ",\"" << rec.profile_id << "\"," << join_values(rec.paper_value)
       << ',' << join_values(rec.oracle_value) << ',' << detail::fmt17(rec.abs_diff) << ','
       << detail::fmt17(rec.rel_diff) << ',' << rec.status << '\n';
  }
}

std::string FidelityReport::summary_json() const {
  nlohmann::ordered_json j;
  j["cells"] = cells;
  j["excluded_cells"] = excluded_cells;
  j["records"] = records.size();
  nlohmann::ordered_json qs = nlohmann::ordered_json::array();
  for (const QuantitySummary& s : summary) {
    nlohmann::ordered_json e;
    e["quantity"] = s.quantity;
    e["count"] = s.count;
    e["agree"] = s.agree;
    e["discrepant"] = s.discrepant;
    e["degenerate"] = s.degenerate;
    e["max_abs_diff"] = finite_or_null(s.max_abs);
    e["median_abs_diff"] = finite_or_null(s.median_abs);
    e["max_rel_diff"] = finite_or_null(s.max_rel);
    e["median_rel_diff"] = finite_or_null(s.median_rel);
    qs.push_back(e);
  }
  j["quantities"] = qs;
  return j.dump(2);
}

void FidelityReport::write_digest(std::ostream& os) const {
  os << "# Value-3 closed forms: discrepancy digest\n\n";
  os << "Cells evaluated: " << cells << " (excluded near branch points: " << excluded_cells
     << ")\n\n";
  os << "| quantity | records | agree | discrepant | degenerate | max abs diff | max rel diff |\n";
  os << "|---|---|---|---|---|---|---|\n";
  for (const QuantitySummary& s : summary)
    os << "| " << s.quantity << " | " << s.count << " | " << s.agree << " | " << s.discrepant
       << " | " << s.degenerate << " | " << detail::fmt_short(s.max_abs) << " | "
       << detail::fmt_short(s.max_rel) << " |\n";

  for (const QuantitySummary& s : summary) {
    if (s.discrepant == 0 && s.degenerate == 0) continue;
    os << "\n## " << s.quantity << "\n\n";
    os << "| r | theta | a | profile | printed | first principles | abs diff | status |\n";
    os << "|---|---|---|---|---|---|---|---|\n";
    for (const FidelityRecord& rec : records) {
      if (rec.quantity != s.quantity || rec.status == "agree") continue;
      os << "| " << detail::fmt_short(rec.r) << " | " << detail::fmt_short(rec.theta) << " | "
         << detail::fmt_short(rec.a) << " | " << rec.profile_id << " | "
         << join_values(rec.paper_value) << " | " << join_values(rec.oracle_value) << " | "
         << detail::fmt_short(rec.abs_diff) << " | " << rec.status << " |\n";
    }
  }
}

}  // namespace helicoid
