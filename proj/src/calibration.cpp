// SPDX-License-Identifier: Apache-2.0
#include "rispower/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rispower {

namespace {

[[noreturn]] void invalid(const std::string& message) {
  throw std::invalid_argument(message);
}

// Bits switched on per counted unit of a dataset, e.g. 2B when n counted
// dual-polarized B-bit cells. Used to translate fitted per-unit slopes into
// per-device powers and back.
long long bits_per_counted_unit(const RisHardwareSpec& spec, UnitSemantics semantics) {
  if (semantics == UnitSemantics::bits) return 1;
  if (!is_uniform(spec))
    invalid("per-cell unit semantics need a uniform spec");
  const long long bits = uniform_bit_resolution(spec);
  if (semantics == UnitSemantics::dual_pol_cells) {
    if (!(spec.polarization == PolarizationMode::dual()))
      invalid("dataset counts dual-polarized cells but the spec is single-polarized");
    return 2 * bits;
  }
  return bits;
}

long long counted_unit_capacity(const RisHardwareSpec& spec, UnitSemantics semantics) {
  if (semantics == UnitSemantics::bits) {
    return control_signal_count(spec, Polarization::vertical) +
           control_signal_count(spec, Polarization::horizontal);
  }
  return spec.cell_count();
}

}  // namespace

std::string_view to_string(UnitSemantics semantics) {
  switch (semantics) {
    case UnitSemantics::cells: return "cells";
    case UnitSemantics::bits: return "bits";
    case UnitSemantics::dual_pol_cells: return "dual_pol_cells";
  }
  invalid("unknown unit semantics value");
}

UnitSemantics unit_semantics_from_string(std::string_view name) {
  if (name == "cells") return UnitSemantics::cells;
  if (name == "bits") return UnitSemantics::bits;
  if (name == "dual_pol_cells") return UnitSemantics::dual_pol_cells;
  invalid("unknown unit semantics '" + std::string(name) + "'");
}

void MeasurementDataset::validate() const {
  for (const MeasurementPoint& point : points) {
    if (point.n_on < 0) invalid("measurement point with negative n_on");
    if (!(point.power_watts >= 0)) invalid("measurement point with negative power");
  }
}

FitResult fit_linear(const MeasurementDataset& dataset) {
  dataset.validate();
  const auto& pts = dataset.points;
  const std::size_t n = pts.size();
  if (n < 2) invalid("linear fit needs at least two points");

  // Accumulate in a canonical order so every permutation of the same points
  // produces the identical result.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (pts[a].n_on != pts[b].n_on) return pts[a].n_on < pts[b].n_on;
    if (pts[a].power_watts != pts[b].power_watts) return pts[a].power_watts < pts[b].power_watts;
    return pts[a].label < pts[b].label;
  });

  long long sum_x = 0;
  long double sum_y = 0;
  for (std::size_t i : order) {
    sum_x += pts[i].n_on;
    sum_y += pts[i].power_watts;
  }
  const long double mean_x = static_cast<long double>(sum_x) / static_cast<long double>(n);
  const long double mean_y = sum_y / static_cast<long double>(n);

  long double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i : order) {
    const long double dx = static_cast<long double>(pts[i].n_on) - mean_x;
    const long double dy = static_cast<long double>(pts[i].power_watts) - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0) invalid("linear fit is degenerate: every point has the same n_on");

  const long double slope = sxy / sxx;
  const long double intercept = mean_y - slope * mean_x;

  long double ss_res = 0;
  long double max_abs_residual = 0;
  for (std::size_t i : order) {
    const long double predicted = slope * static_cast<long double>(pts[i].n_on) + intercept;
    const long double r = static_cast<long double>(pts[i].power_watts) - predicted;
    ss_res += r * r;
    max_abs_residual = std::max(max_abs_residual, std::fabs(r));
  }

  FitResult fit;
  fit.slope_watts_per_unit = static_cast<double>(slope);
  fit.intercept_watts = static_cast<double>(intercept);
  fit.max_abs_residual_watts = static_cast<double>(max_abs_residual);
  if (syy == 0) {
    fit.r_squared = 1.0;  // constant data is fitted perfectly by the constant line
  } else {
    fit.r_squared = std::clamp(static_cast<double>(1.0l - ss_res / syy), 0.0, 1.0);
  }
  return fit;
}

RatioCheck check_polarization_ratio(const FitResult& dual, const FitResult& single,
                                    double rel_tol) {
  if (single.slope_watts_per_unit == 0)
    invalid("single-polarization slope is zero; the ratio is undefined");
  if (rel_tol < 0) invalid("negative tolerance");
  RatioCheck check;
  check.ratio = dual.slope_watts_per_unit / single.slope_watts_per_unit;
  check.rel_tol = rel_tol;
  check.pass = std::fabs(check.ratio - 2.0) <= rel_tol;
  return check;
}

AdditivityReport check_coding_additivity(std::span<const GroupPower> per_group,
                                         std::span<const ComboMeasurement> combos,
                                         double abs_tol_watts) {
  if (abs_tol_watts < 0) invalid("negative tolerance");
  std::map<std::string, double> group_power;
  for (const GroupPower& group : per_group) {
    auto [it, inserted] = group_power.emplace(group.label, group.power_watts);
    if (!inserted) invalid("duplicate group label '" + group.label + "'");
  }

  AdditivityReport report;
  report.abs_tol_watts = abs_tol_watts;
  report.all_pass = true;
  for (const ComboMeasurement& combo : combos) {
    ComboResult result;
    double theoretical = 0;
    for (std::size_t i = 0; i < combo.members.size(); ++i) {
      auto it = group_power.find(combo.members[i]);
      if (it == group_power.end()) invalid("unknown group label '" + combo.members[i] + "'");
      theoretical += it->second;
      if (i) result.combo_label += '+';
      result.combo_label += combo.members[i];
    }
    result.theoretical_watts = theoretical;
    result.measured_watts = combo.measured_watts;
    result.delta_watts = theoretical - combo.measured_watts;
    result.pass = std::fabs(result.delta_watts) <= abs_tol_watts;
    report.all_pass = report.all_pass && result.pass;
    report.combos.push_back(std::move(result));
  }
  return report;
}

CalibrationResult calibrate_spec(const RisHardwareSpec& spec_template, const FitResult& fit,
                                 UnitSemantics n_semantics) {
  spec_template.validate();
  if (fit.slope_watts_per_unit < 0)
    invalid("fitted slope is negative; a per-device power cannot be derived");

  CalibrationResult result;
  result.spec = spec_template;
  switch (spec_template.device_class) {
    case DeviceClass::pin_diode: {
      const long long per_unit = bits_per_counted_unit(spec_template, n_semantics);
      if (per_unit == 0) invalid("the template has no configurable bits to calibrate");
      result.spec.pin_on_bit_power_watts =
          fit.slope_watts_per_unit / static_cast<double>(per_unit);
      break;
    }
    case DeviceClass::rf_switch: {
      long long per_unit = 1;
      if (n_semantics == UnitSemantics::dual_pol_cells) {
        if (!(spec_template.polarization == PolarizationMode::dual()))
          invalid("dataset counts dual-polarized cells but the spec is single-polarized");
        per_unit = 2;
      }
      result.spec.switch_cell_power_watts =
          fit.slope_watts_per_unit / static_cast<double>(per_unit);
      break;
    }
    default:
      invalid("calibration applies to PIN-diode and RF-switch surfaces only");
  }

  result.slack_watts = fit.intercept_watts - static_power(spec_template);
  result.spec.controller_power_watts += result.slack_watts;
  if (result.spec.controller_power_watts < 0)
    invalid("fit intercept lies below the template's drive-circuit budget");
  result.spec.validate();
  return result;
}

ResidualReport predict_residuals(const RisHardwareSpec& spec, const MeasurementDataset& dataset) {
  spec.validate();
  dataset.validate();
  const UnitSemantics semantics = dataset.meta.n_semantics;

  long long per_unit_bits = 0;
  if (spec.device_class == DeviceClass::pin_diode)
    per_unit_bits = bits_per_counted_unit(spec, semantics);
  else if (semantics == UnitSemantics::dual_pol_cells &&
           !(spec.polarization == PolarizationMode::dual()))
    invalid("dataset counts dual-polarized cells but the spec is single-polarized");

  const long long capacity = counted_unit_capacity(spec, semantics);
  const double base = static_power(spec);
  const CodingState zeros = CodingState::all_zeros(spec.cell_count());
  const double coding_independent_units = units_power(spec, zeros);

  ResidualReport report;
  long double abs_sum = 0;
  for (const MeasurementPoint& point : dataset.points) {
    if (point.n_on > capacity)
      invalid("n_on " + std::to_string(point.n_on) + " exceeds the surface's " +
              std::to_string(capacity) + " countable units; check the dataset semantics");
    ResidualPoint rp;
    rp.n_on = point.n_on;
    rp.measured_watts = point.power_watts;
    if (spec.device_class == DeviceClass::pin_diode) {
      rp.model_watts = base + spec.pin_on_bit_power_watts *
                                  static_cast<double>(point.n_on * per_unit_bits);
    } else {
      rp.model_watts = base + coding_independent_units;
    }
    rp.residual_watts = rp.measured_watts - rp.model_watts;
    abs_sum += std::fabs(rp.residual_watts);
    report.max_abs_watts = std::max(report.max_abs_watts, std::fabs(rp.residual_watts));
    report.points.push_back(rp);
  }
  if (!report.points.empty())
    report.mean_abs_watts =
        static_cast<double>(abs_sum / static_cast<long double>(report.points.size()));
  return report;
}

}  // namespace rispower
