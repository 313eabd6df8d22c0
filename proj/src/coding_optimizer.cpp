// SPDX-License-Identifier: Apache-2.0
#include "rispower/coding_optimizer.hpp"

#include <bit>
#include <stdexcept>
#include <string>
#include <vector>

namespace rispower {

namespace {

[[noreturn]] void invalid(const std::string& message) {
  throw std::invalid_argument(message);
}

// Offsets are enumerated exhaustively, so very wide states are refused
// rather than silently taking minutes.
constexpr int kMaxEnumeratedBits = 12;

void check_pin_uniform(const RisHardwareSpec& spec) {
  spec.validate();
  if (spec.device_class != DeviceClass::pin_diode)
    invalid("the global-offset optimizer applies to PIN-diode surfaces only");
  if (!is_uniform(spec)) invalid("the global-offset optimizer needs a uniform bit resolution");
  if (uniform_bit_resolution(spec) > kMaxEnumeratedBits)
    invalid("bit resolutions above " + std::to_string(kMaxEnumeratedBits) +
            " are not supported by the offset search");
}

}  // namespace

CodingState apply_offset(const CodingState& coding, int offset, int bit_resolution,
                         PolarizationMode polarization) {
  if (bit_resolution < 0 || bit_resolution > 30) invalid("bit resolution outside [0, 30]");
  const std::uint32_t size = 1u << bit_resolution;
  if (offset < 0 || static_cast<std::uint32_t>(offset) >= size)
    invalid("offset " + std::to_string(offset) + " outside [0, 2^" +
            std::to_string(bit_resolution) + ")");
  if (coding.states_v.size() != coding.states_h.size())
    invalid("coding has mismatched polarization vectors");

  CodingState shifted = coding;
  const std::uint32_t mask = size - 1;
  for (Polarization p : {Polarization::vertical, Polarization::horizontal}) {
    if (!polarization.configurable(p)) continue;
    for (std::uint32_t& state : shifted.pol(p)) {
      if (state >= size)
        invalid("state " + std::to_string(state) + " does not fit " +
                std::to_string(bit_resolution) + " bits; the resolution is not uniform");
      state = (state + static_cast<std::uint32_t>(offset)) & mask;
    }
  }
  return shifted;
}

OffsetResult optimize_global_offset(const CodingState& coding, const RisHardwareSpec& spec) {
  check_pin_uniform(spec);
  validate_coding(spec, coding);
  const int bits = uniform_bit_resolution(spec);
  const std::uint32_t size = 1u << bits;
  const std::uint32_t mask = size - 1;

  std::vector<long long> frequency(size, 0);
  for (Polarization p : {Polarization::vertical, Polarization::horizontal}) {
    if (!spec.polarization.configurable(p)) continue;
    for (std::uint32_t state : coding.pol(p)) ++frequency[state];
  }

  long long best_bits = -1;
  std::uint32_t best_offset = 0;
  long long current_bits = 0;
  for (std::uint32_t k = 0; k < size; ++k) {
    long long on_bits = 0;
    for (std::uint32_t s = 0; s < size; ++s) {
      if (frequency[s]) on_bits += frequency[s] * std::popcount((s + k) & mask);
    }
    if (k == 0) current_bits = on_bits;
    if (best_bits < 0 || on_bits < best_bits) {
      best_bits = on_bits;
      best_offset = k;
    }
  }

  OffsetResult result;
  result.offset = static_cast<int>(best_offset);
  result.on_bits_before = current_bits;
  result.on_bits_after = best_bits;
  result.power_before_watts =
      static_cast<double>(current_bits) * spec.pin_on_bit_power_watts;
  result.power_after_watts = static_cast<double>(best_bits) * spec.pin_on_bit_power_watts;
  result.savings_watts = result.power_before_watts - result.power_after_watts;
  return result;
}

OffsetResult brute_force_min_power(const CodingState& coding, const RisHardwareSpec& spec) {
  check_pin_uniform(spec);
  validate_coding(spec, coding);
  const int bits = uniform_bit_resolution(spec);
  const std::uint32_t size = 1u << bits;

  OffsetResult result;
  result.on_bits_before = total_on_bits(spec, coding);
  result.power_before_watts = units_power(spec, coding);
  bool found = false;
  for (std::uint32_t k = 0; k < size; ++k) {
    const CodingState shifted =
        apply_offset(coding, static_cast<int>(k), bits, spec.polarization);
    const double power = units_power(spec, shifted);
    const long long on_bits = total_on_bits(spec, shifted);
    if (!found || on_bits < result.on_bits_after) {
      found = true;
      result.offset = static_cast<int>(k);
      result.on_bits_after = on_bits;
      result.power_after_watts = power;
    }
  }
  result.savings_watts = result.power_before_watts - result.power_after_watts;
  return result;
}

}  // namespace rispower
