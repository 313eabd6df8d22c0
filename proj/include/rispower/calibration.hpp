// SPDX-License-Identifier: Apache-2.0
//
// Fits measured power sweeps to the linear model total = static + n * slope
// and turns the fitted parameters back into hardware spec fields.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "rispower/core_model.hpp"

namespace rispower {

// What the ON-unit count n of a dataset refers to.
enum class UnitSemantics {
  cells,           // n = fully forward-biased cells, one polarization
  bits,            // n = individual ON bits
  dual_pol_cells,  // n = cells forward-biased on both polarizations
};

std::string_view to_string(UnitSemantics semantics);
UnitSemantics unit_semantics_from_string(std::string_view name);

struct MeasurementPoint {
  long long n_on = 0;
  double power_watts = 0.0;
  std::string label;
};

struct DatasetMeta {
  std::string ris_id;
  std::string polarization_tag;
  double operating_voltage_volts = 0.0;  // 0 = unspecified
  UnitSemantics n_semantics = UnitSemantics::cells;
};

struct MeasurementDataset {
  std::vector<MeasurementPoint> points;
  DatasetMeta meta;

  void validate() const;  // throws on negative n_on or power
};

struct FitResult {
  double slope_watts_per_unit = 0.0;
  double intercept_watts = 0.0;
  double r_squared = 0.0;
  double max_abs_residual_watts = 0.0;
};

// Ordinary least squares in closed form. Points are accumulated in a
// canonical order, so any permutation of the dataset returns the identical
// FitResult. Throws on fewer than two points or when all n_on coincide.
FitResult fit_linear(const MeasurementDataset& dataset);

struct RatioCheck {
  double ratio = 0.0;
  double rel_tol = 0.0;
  bool pass = false;
};

// Checks that the dual-polarization slope is twice the single-polarization
// slope: pass iff |dual.slope / single.slope - 2| <= rel_tol.
RatioCheck check_polarization_ratio(const FitResult& dual, const FitResult& single,
                                    double rel_tol);

struct GroupPower {
  std::string label;
  double power_watts = 0.0;
};

struct ComboMeasurement {
  std::vector<std::string> members;
  double measured_watts = 0.0;
};

struct ComboResult {
  std::string combo_label;
  double theoretical_watts = 0.0;
  double measured_watts = 0.0;
  double delta_watts = 0.0;  // theoretical - measured
  bool pass = false;
};

struct AdditivityReport {
  std::vector<ComboResult> combos;
  double abs_tol_watts = 0.0;
  bool all_pass = false;
};

// Checks that simultaneously activated groups draw the sum of their
// individually measured powers, within an absolute tolerance.
AdditivityReport check_coding_additivity(std::span<const GroupPower> per_group,
                                         std::span<const ComboMeasurement> combos,
                                         double abs_tol_watts);

struct CalibrationResult {
  RisHardwareSpec spec;
  double slack_watts = 0.0;  // fit intercept minus the template's static power
};

// Copies the template, derives the per-device power from the fitted slope
// under the given unit semantics (e.g. slope / (2B) when n counted
// dual-polarized B-bit cells), and adjusts the controller budget so the
// calibrated static power equals the fit intercept. PIN-diode and RF-switch
// templates only.
CalibrationResult calibrate_spec(const RisHardwareSpec& spec_template, const FitResult& fit,
                                 UnitSemantics n_semantics);

struct ResidualPoint {
  long long n_on = 0;
  double measured_watts = 0.0;
  double model_watts = 0.0;
  double residual_watts = 0.0;  // measured - model
};

struct ResidualReport {
  std::vector<ResidualPoint> points;
  double max_abs_watts = 0.0;
  double mean_abs_watts = 0.0;
};

// Evaluates the spec's model prediction at each dataset point and reports
// measured-minus-model residuals. Throws when the dataset semantics cannot
// apply to the spec (dual-polarization counts on a single-polarized surface,
// n_on beyond the surface's capacity).
ResidualReport predict_residuals(const RisHardwareSpec& spec, const MeasurementDataset& dataset);

}  // namespace rispower
