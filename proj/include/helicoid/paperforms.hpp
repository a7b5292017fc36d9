#pragma once

// Printed closed forms for the helicoidal surface of value 3, transcribed
// term by term and never corrected, together with the sweep that compares
// them against the first-principles quantities in diffgeo.
//
// Reading conventions for ambiguous tokens are listed in
// docs/transcription_key.md.

#include <iosfwd>
#include <string>
#include <vector>

#include "helicoid/diffgeo.hpp"
#include "helicoid/surfaces.hpp"

namespace helicoid {

struct PaperFirstForms {
  double E = 0, F = 0, G = 0;
  /// The two-line expansion, not recomputed as EG - F^2.
  double detI = 0;
};

struct PaperGaussMap {
  Vec3 numerator = Vec3::Zero();
  /// numerator / sqrt(detI), detI taken from the printed expansion.
  Vec3 normal = Vec3::Zero();
};

PaperFirstForms paper_first_forms_m3(double r, double theta, double a, double dphi);
PaperGaussMap paper_gauss_map_m3(double r, double theta, double a, double dphi);
SecondForm paper_second_forms_m3(double r, double theta, double a, double dphi, double ddphi);
Curvatures paper_curvatures_m3(double r, double theta, double a, double dphi, double ddphi);

/// Braced numerator of the printed mean curvature (H times 4 det I^{3/2}).
/// The minimality condition for value 3 sets exactly this expression to 0.
double paper_mean_numerator_m3(double r, double theta, double a, double dphi, double ddphi);

/// Braced numerator of the printed Gaussian curvature (K times det I^2).
double paper_gauss_numerator_m3(double r, double theta, double a, double dphi, double ddphi);

struct FidelityRecord {
  std::string quantity;
  double r = 0, theta = 0, a = 0;
  std::string profile_id;
  std::vector<double> paper_value;
  std::vector<double> oracle_value;
  /// max_i |paper_i - oracle_i|
  double abs_diff = 0;
  /// abs_diff / max_i |oracle_i|; inf when the oracle is 0 and they differ.
  double rel_diff = 0;
  /// "agree", "discrepancy" or "degenerate".
  std::string status;
};

struct FidelityPoint {
  double r = 0, theta = 0, a = 0;
  Profile profile;
};

struct FidelityGrid {
  std::vector<double> r;
  std::vector<double> theta;
  std::vector<double> a;
  std::vector<Profile> profiles;
  /// Cells appended after the tensor grid.
  std::vector<FidelityPoint> extra_points;
  /// Skip cells with |r - 1| < band when a = 0 and phi'(r) = 0.
  bool exclude_degenerate_band = true;
  double degenerate_band = 0.05;
  /// Agreement: abs_diff <= agree_tol * max(1, |oracle|).
  double agree_tol = 1e-8;
};

/// r in {0.5, 0.8, 1.2, 1.5}, theta in {0, pi/7, pi/3, 2pi/5, 5pi/6},
/// a in {0, 1}, phi in {0, r, r^2}, plus the point (1, 0, a=1, phi=r).
FidelityGrid default_fidelity_grid();

/// Reads {"r": [...], "theta": [...], "a": [...], "profiles": ["poly:0,1", ...],
/// "points": [{"r":..,"theta":..,"a":..,"profile":".."}], "exclude_band": bool,
/// "band": x, "agree_tol": x}. Missing keys keep the defaults.
FidelityGrid fidelity_grid_from_json(const std::string& json_text);

struct QuantitySummary {
  std::string quantity;
  std::size_t count = 0, agree = 0, discrepant = 0, degenerate = 0;
  double max_abs = 0, median_abs = 0, max_rel = 0, median_rel = 0;
};

struct FidelityReport {
  std::vector<FidelityRecord> records;
  std::vector<QuantitySummary> summary;
  std::size_t cells = 0;
  std::size_t excluded_cells = 0;

  void write_csv(std::ostream& os) const;
  std::string summary_json() const;
  /// Markdown listing every non-agreeing record, grouped by quantity.
  void write_digest(std::ostream& os) const;
};

FidelityReport fidelity_sweep(const FidelityGrid& grid);

}  // namespace helicoid
