// SPDX-License-Identifier: Apache-2.0
//
// First-order scaling laws for surfaces built from commodity parts: total
// power grows linearly in the cell count for PIN-diode and continuous
// varactor surfaces and stays flat for RF-switch surfaces. Discrete varactor
// surfaces have no published coefficient and are refused.
#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rispower/core_model.hpp"

namespace rispower {

struct ScalingAssumptions {
  double controller_power_watts = 4.8;
  double per_cell_coefficient_watts = 0.0;

  static ScalingAssumptions defaults_for(DeviceClass cls);
};

// controller + n * coefficient for PIN-diode and continuous varactor
// surfaces; controller alone for RF-switch surfaces.
double simplified_total_power(DeviceClass cls, long long cell_count,
                              const ScalingAssumptions& assumptions);

std::vector<std::pair<long long, double>> power_curve(DeviceClass cls,
                                                      std::span<const long long> cell_counts,
                                                      const ScalingAssumptions& assumptions);

// Smallest cell count n >= 0 at which the cheaper-at-n=0 class stops being
// cheaper (equality counts as the swap point), or nullopt when the curves
// never meet for n >= 0.
std::optional<long long> crossover(DeviceClass class_a, const ScalingAssumptions& assumptions_a,
                                   DeviceClass class_b, const ScalingAssumptions& assumptions_b);

}  // namespace rispower
