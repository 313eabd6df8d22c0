// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <rispower/core_model.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace rispower::test {

inline PolarizationMode random_polarization(std::mt19937& rng) {
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0: return PolarizationMode::vertical_only();
    case 1: return PolarizationMode::horizontal_only();
    default: return PolarizationMode::dual();
  }
}

// Draws a uniform hardware spec covering every device class.  Bit
// resolutions are kept small so exhaustive coding enumeration stays cheap.
inline RisHardwareSpec random_uniform_spec(std::mt19937& rng) {
  std::uniform_int_distribution<int> class_pick(0, 3);
  std::uniform_int_distribution<int> cell_pick(1, 64);
  std::uniform_int_distribution<int> bit_pick(1, 4);
  std::uniform_int_distribution<int> group_pick(1, 8);
  std::uniform_int_distribution<int> signal_pick(1, 8);
  std::uniform_real_distribution<double> milli(0.0005, 0.05);
  std::uniform_real_distribution<double> watts(0.1, 20.0);

  DeviceClass cls = DeviceClass::pin_diode;
  int bits = bit_pick(rng);
  switch (class_pick(rng)) {
    case 0: cls = DeviceClass::pin_diode; break;
    case 1:
      cls = DeviceClass::varactor_continuous;
      bits = 0;
      break;
    case 2:
      cls = DeviceClass::varactor_discrete;
      bits = std::uniform_int_distribution<int>(0, 3)(rng);
      break;
    default: cls = DeviceClass::rf_switch; break;
  }

  DriveCircuitSpec drive;
  drive.signals_per_circuit = signal_pick(rng);
  drive.rated_power_watts = watts(rng) / 10.0;

  DevicePowers powers;
  powers.pin_on_bit_watts = milli(rng);
  powers.switch_cell_watts = milli(rng);

  return make_uniform_spec(cls, random_polarization(rng), cell_pick(rng),
                           bits, group_pick(rng), drive, watts(rng), powers);
}

// Random coding over the configured polarizations of a uniform spec.
inline CodingState random_coding(const RisHardwareSpec& spec,
                                 std::mt19937& rng) {
  const int n = spec.cell_count();
  CodingState coding = CodingState::all_zeros(n);
  const int bits = uniform_bit_resolution(spec);
  const std::uint32_t mask =
      bits == 0 ? 0u : ((std::uint32_t{1} << bits) - 1u);
  std::uniform_int_distribution<std::uint32_t> state_pick(0u, mask);
  for (int i = 0; i < n; ++i) {
    if (spec.polarization.vertical) coding.states_v[i] = state_pick(rng);
    if (spec.polarization.horizontal) coding.states_h[i] = state_pick(rng);
  }
  return coding;
}

// Random state with exactly on_bits of the low bit_resolution bits set.
inline std::uint32_t random_state_with_popcount(int bit_resolution, int on_bits,
                                                std::mt19937& rng) {
  std::vector<int> positions(static_cast<std::size_t>(bit_resolution));
  for (int b = 0; b < bit_resolution; ++b) positions[static_cast<std::size_t>(b)] = b;
  std::shuffle(positions.begin(), positions.end(), rng);
  std::uint32_t state = 0;
  for (int k = 0; k < on_bits; ++k)
    state |= std::uint32_t{1} << positions[static_cast<std::size_t>(k)];
  return state;
}

// Per-cell ON-bit counts plus a coding that realises them identically on
// every configured polarization, as the closed-form power entry expects.
struct MirroredCoding {
  std::vector<int> on_bits_per_cell;
  CodingState coding;
};

inline MirroredCoding random_mirrored_coding(const RisHardwareSpec& spec,
                                             std::mt19937& rng) {
  const int n = spec.cell_count();
  const int bits = uniform_bit_resolution(spec);
  MirroredCoding out;
  out.on_bits_per_cell.assign(static_cast<std::size_t>(n), 0);
  out.coding = CodingState::all_zeros(n);
  std::uniform_int_distribution<int> count_pick(0, bits);
  for (int i = 0; i < n; ++i) {
    const int b = count_pick(rng);
    out.on_bits_per_cell[static_cast<std::size_t>(i)] = b;
    const std::uint32_t state = random_state_with_popcount(bits, b, rng);
    const std::size_t idx = static_cast<std::size_t>(i);
    if (spec.polarization.vertical) out.coding.states_v[idx] = state;
    if (spec.polarization.horizontal) out.coding.states_h[idx] = state;
  }
  return out;
}

}  // namespace rispower::test
