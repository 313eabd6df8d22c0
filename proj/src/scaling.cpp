// SPDX-License-Identifier: Apache-2.0
#include "rispower/scaling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rispower {

namespace {

[[noreturn]] void invalid(const std::string& message) {
  throw std::invalid_argument(message);
}

// RF-switch surfaces scale flat; everything else linearly.
double effective_coefficient(DeviceClass cls, const ScalingAssumptions& assumptions) {
  switch (cls) {
    case DeviceClass::pin_diode:
    case DeviceClass::varactor_continuous:
      return assumptions.per_cell_coefficient_watts;
    case DeviceClass::rf_switch:
      return 0.0;
    case DeviceClass::varactor_discrete:
      invalid("no scaling law is defined for discrete varactor surfaces");
  }
  invalid("unknown device class value");
}

}  // namespace

ScalingAssumptions ScalingAssumptions::defaults_for(DeviceClass cls) {
  switch (cls) {
    case DeviceClass::pin_diode:
      return {4.8, 0.01};
    case DeviceClass::varactor_continuous:
      return {4.8, 0.43};
    case DeviceClass::rf_switch:
      return {4.8, 0.0};
    case DeviceClass::varactor_discrete:
      invalid("no scaling law is defined for discrete varactor surfaces");
  }
  invalid("unknown device class value");
}

double simplified_total_power(DeviceClass cls, long long cell_count,
                              const ScalingAssumptions& assumptions) {
  if (cell_count < 0) invalid("negative cell count");
  if (assumptions.controller_power_watts < 0 || assumptions.per_cell_coefficient_watts < 0)
    invalid("scaling assumptions must be non-negative");
  const double coefficient = effective_coefficient(cls, assumptions);
  if (cls == DeviceClass::rf_switch) return assumptions.controller_power_watts;
  return assumptions.controller_power_watts + static_cast<double>(cell_count) * coefficient;
}

std::vector<std::pair<long long, double>> power_curve(DeviceClass cls,
                                                      std::span<const long long> cell_counts,
                                                      const ScalingAssumptions& assumptions) {
  if (cell_counts.empty()) invalid("no cell counts given");
  std::vector<std::pair<long long, double>> curve;
  curve.reserve(cell_counts.size());
  for (long long n : cell_counts) {
    curve.emplace_back(n, simplified_total_power(cls, n, assumptions));
  }
  return curve;
}

std::optional<long long> crossover(DeviceClass class_a, const ScalingAssumptions& assumptions_a,
                                   DeviceClass class_b, const ScalingAssumptions& assumptions_b) {
  const double slope_a = effective_coefficient(class_a, assumptions_a);
  const double slope_b = effective_coefficient(class_b, assumptions_b);
  const double intercept_a = assumptions_a.controller_power_watts;
  const double intercept_b = assumptions_b.controller_power_watts;
  if (slope_a == slope_b) return std::nullopt;  // parallel lines never swap order

  const double meet = (intercept_b - intercept_a) / (slope_a - slope_b);
  if (meet <= 0) return std::nullopt;  // already swapped (or equal) before n = 0

  const double initial = intercept_a - intercept_b;
  // The sign of (P_a - P_b) flips within one step of the real-valued meeting
  // point; scan the neighborhood to pin the first integer at or past it.
  long long start = static_cast<long long>(std::floor(meet)) - 1;
  if (start < 0) start = 0;
  for (long long n = start; n <= start + 3; ++n) {
    const double diff = simplified_total_power(class_a, n, assumptions_a) -
                        simplified_total_power(class_b, n, assumptions_b);
    if (diff == 0 || (diff < 0) != (initial < 0)) return n;
  }
  return std::nullopt;  // unreachable for finite inputs
}

}  // namespace rispower
