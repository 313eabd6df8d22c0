// SPDX-License-Identifier: Apache-2.0
//
// Power model for reconfigurable intelligent surfaces. Total draw splits into
// a static part (control board plus drive circuits) and a coding-dependent
// part contributed by the unit cells themselves. PIN-diode cells draw power
// per forward-biased bit, varactor cells draw nothing at the cell level, and
// RF-switch cells draw a fixed per-cell amount regardless of coding.
#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace rispower {

enum class DeviceClass {
  pin_diode,
  varactor_continuous,
  varactor_discrete,
  rf_switch,
};

std::string_view to_string(DeviceClass cls);
DeviceClass device_class_from_string(std::string_view name);

enum class Polarization { vertical, horizontal };

// Which polarization directions the surface can configure.
struct PolarizationMode {
  bool vertical = false;
  bool horizontal = false;

  static constexpr PolarizationMode dual() { return {true, true}; }
  static constexpr PolarizationMode vertical_only() { return {true, false}; }
  static constexpr PolarizationMode horizontal_only() { return {false, true}; }

  constexpr bool configurable(Polarization p) const {
    return p == Polarization::vertical ? vertical : horizontal;
  }
  constexpr int indicator_sum() const {
    return (vertical ? 1 : 0) + (horizontal ? 1 : 0);
  }
  constexpr bool operator==(const PolarizationMode&) const = default;
};

std::string_view to_string(PolarizationMode mode);
PolarizationMode polarization_mode_from_string(std::string_view name);

struct DriveCircuitSpec {
  int signals_per_circuit = 1;     // control signals one circuit generates
  double rated_power_watts = 0.0;  // draw of a single drive circuit
  constexpr bool operator==(const DriveCircuitSpec&) const = default;
};

// One tunable element along one polarization direction. Varactor cells are
// counted through the configurable flag, PIN-diode and RF-switch cells
// through their bit resolution.
struct CellPolarization {
  int bit_resolution = 0;
  bool configurable = false;
  constexpr bool operator==(const CellPolarization&) const = default;
};

struct UnitCellSpec {
  CellPolarization v;
  CellPolarization h;

  const CellPolarization& pol(Polarization p) const {
    return p == Polarization::vertical ? v : h;
  }
  CellPolarization& pol(Polarization p) {
    return p == Polarization::vertical ? v : h;
  }
  constexpr bool operator==(const UnitCellSpec&) const = default;
};

struct RisHardwareSpec {
  DeviceClass device_class = DeviceClass::pin_diode;
  PolarizationMode polarization;
  std::vector<UnitCellSpec> cells;
  int group_size_v = 1;  // cells sharing one control signal, per polarization
  int group_size_h = 1;
  DriveCircuitSpec drive;
  double controller_power_watts = 0.0;
  double pin_on_bit_power_watts = 0.0;   // per ON bit; PIN-diode class only
  double switch_cell_power_watts = 0.0;  // per cell per polarization; RF-switch class only

  int cell_count() const { return static_cast<int>(cells.size()); }
  int group_size(Polarization p) const {
    return p == Polarization::vertical ? group_size_v : group_size_h;
  }

  // Throws std::invalid_argument when a structural invariant is violated.
  void validate() const;
};

// Per-cell state indices for each polarization. Both vectors always span all
// cells; an unconfigured polarization carries all-zero states.
struct CodingState {
  std::vector<std::uint32_t> states_v;
  std::vector<std::uint32_t> states_h;

  std::vector<std::uint32_t>& pol(Polarization p) {
    return p == Polarization::vertical ? states_v : states_h;
  }
  const std::vector<std::uint32_t>& pol(Polarization p) const {
    return p == Polarization::vertical ? states_v : states_h;
  }
  int cell_count() const { return static_cast<int>(states_v.size()); }

  static CodingState all_zeros(int cell_count);
  // Every configurable bit set: state 2^B - 1 per cell per configured
  // polarization.
  static CodingState all_ones(const RisHardwareSpec& spec);
};

struct PowerBreakdown {
  double controller_watts = 0.0;
  double drive_circuits_watts = 0.0;
  double units_watts = 0.0;
  double total_watts = 0.0;
};

// Number of control signals the surface needs along one polarization:
// sum of bit resolutions for PIN-diode and RF-switch cells, count of
// configurable cells for varactor classes. Zero for an unconfigured
// polarization.
long long control_signal_count(const RisHardwareSpec& spec, Polarization p);

// Number of drive circuits: per configured polarization, the signal count
// divided by (group size x signals per circuit) rounded up. The ceiling is
// applied per polarization, never to the summed signal count.
long long drive_circuit_count(const RisHardwareSpec& spec);

// Controller draw plus the drive-circuit budget. Independent of coding.
double static_power(const RisHardwareSpec& spec);

// Draw of a single cell along one polarization: ON-bit count times the
// per-bit power. Throws when on_bits is outside [0, bit_resolution].
double unit_cell_power(int bit_resolution, int on_bits, double pin_on_bit_power_watts);

// Throws std::invalid_argument when the coding does not fit the spec
// (wrong cell count, state index out of range for a cell's resolution).
void validate_coding(const RisHardwareSpec& spec, const CodingState& coding);

// Total ON bits across both polarizations.
long long total_on_bits(const RisHardwareSpec& spec, const CodingState& coding);

// Coding-dependent cell draw: PIN-diode surfaces pay per ON bit, varactor
// surfaces draw nothing here, RF-switch surfaces pay per configurable cell
// and polarization regardless of the coding.
double units_power(const RisHardwareSpec& spec, const CodingState& coding);

PowerBreakdown total_power(const RisHardwareSpec& spec, const CodingState& coding);

struct DevicePowers {
  double pin_on_bit_watts = 0.0;
  double switch_cell_watts = 0.0;
};

// Builds a spec whose cells are all identical, with the same group size on
// every configured polarization. PIN-diode and RF-switch surfaces need
// bit_resolution >= 1; continuous varactor surfaces need bit_resolution 0.
RisHardwareSpec make_uniform_spec(DeviceClass cls, PolarizationMode polarization,
                                  int cell_count, int bit_resolution, int group_size,
                                  DriveCircuitSpec drive, double controller_power_watts,
                                  DevicePowers device_powers = {});

// True when every cell is identical, both polarization directions of a
// dual-polarized cell match, and the group sizes agree.
bool is_uniform(const RisHardwareSpec& spec);

// Bit resolution shared by all configured polarizations of a uniform spec.
int uniform_bit_resolution(const RisHardwareSpec& spec);

// Closed-form static power for uniform surfaces; agrees bit-for-bit with
// static_power there. Throws on non-uniform specs.
double concise_static_power(const RisHardwareSpec& spec);

// Closed-form cell draw for a uniform surface whose configured polarizations
// share the given per-cell ON-bit counts; agrees bit-for-bit with
// units_power on the matching coding.
double concise_units_power(const RisHardwareSpec& spec, std::span<const int> on_bits_per_cell);

}  // namespace rispower
