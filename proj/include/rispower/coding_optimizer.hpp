// SPDX-License-Identifier: Apache-2.0
//
// A global state offset (s + k) mod 2^B shifts every cell by the same
// amount, which preserves all pairwise phase differences and therefore the
// realized beam pattern, but changes how many bits are forward-biased.
// Picking the cheapest offset reduces PIN-diode cell draw for free.
#pragma once

#include "rispower/core_model.hpp"

namespace rispower {

struct OffsetResult {
  int offset = 0;
  double power_before_watts = 0.0;
  double power_after_watts = 0.0;
  double savings_watts = 0.0;
  long long on_bits_before = 0;
  long long on_bits_after = 0;
};

// Maps every state of each configured polarization to (s + offset) mod 2^B;
// unconfigured polarizations keep their all-zero states. Requires
// 0 <= offset < 2^B and every input state below 2^B.
CodingState apply_offset(const CodingState& coding, int offset, int bit_resolution,
                         PolarizationMode polarization);

// Minimizes units_power over all 2^B global offsets via a state-frequency
// histogram. Ties resolve to the smallest offset. PIN-diode surfaces with a
// uniform bit resolution only.
OffsetResult optimize_global_offset(const CodingState& coding, const RisHardwareSpec& spec);

// Same minimum found by exhaustively re-applying every offset and
// re-evaluating units_power. Reference implementation for cross-checking.
OffsetResult brute_force_min_power(const CodingState& coding, const RisHardwareSpec& spec);

}  // namespace rispower
