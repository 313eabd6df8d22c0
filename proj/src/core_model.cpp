// SPDX-License-Identifier: Apache-2.0
#include "rispower/core_model.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace rispower {

namespace {

constexpr long long ceil_div(long long numerator, long long denominator) {
  return (numerator + denominator - 1) / denominator;
}

[[noreturn]] void invalid(const std::string& message) {
  throw std::invalid_argument(message);
}

bool counts_bits(DeviceClass cls) {
  return cls == DeviceClass::pin_diode || cls == DeviceClass::rf_switch;
}

std::uint32_t state_mask(int bit_resolution) {
  return bit_resolution == 0 ? 0u : ((1u << bit_resolution) - 1u);
}

}  // namespace

std::string_view to_string(DeviceClass cls) {
  switch (cls) {
    case DeviceClass::pin_diode: return "pin_diode";
    case DeviceClass::varactor_continuous: return "varactor_continuous";
    case DeviceClass::varactor_discrete: return "varactor_discrete";
    case DeviceClass::rf_switch: return "rf_switch";
  }
  invalid("unknown device class value");
}

DeviceClass device_class_from_string(std::string_view name) {
  if (name == "pin_diode") return DeviceClass::pin_diode;
  if (name == "varactor_continuous") return DeviceClass::varactor_continuous;
  if (name == "varactor_discrete") return DeviceClass::varactor_discrete;
  if (name == "rf_switch") return DeviceClass::rf_switch;
  invalid("unknown device class '" + std::string(name) + "'");
}

std::string_view to_string(PolarizationMode mode) {
  if (mode.vertical && mode.horizontal) return "dual";
  if (mode.vertical) return "vertical";
  if (mode.horizontal) return "horizontal";
  invalid("polarization mode configures no direction");
}

PolarizationMode polarization_mode_from_string(std::string_view name) {
  if (name == "dual") return PolarizationMode::dual();
  if (name == "vertical") return PolarizationMode::vertical_only();
  if (name == "horizontal") return PolarizationMode::horizontal_only();
  invalid("unknown polarization mode '" + std::string(name) + "'");
}

void RisHardwareSpec::validate() const {
  if (cells.empty()) invalid("spec has no unit cells");
  if (polarization.indicator_sum() < 1) invalid("spec configures no polarization direction");
  if (group_size_v < 1 || group_size_h < 1) invalid("group size must be at least 1");
  if (drive.signals_per_circuit < 1) invalid("signals_per_circuit must be at least 1");
  if (drive.rated_power_watts < 0) invalid("drive circuit power must be non-negative");
  if (controller_power_watts < 0) invalid("controller power must be non-negative");
  if (pin_on_bit_power_watts < 0) invalid("pin_on_bit_power must be non-negative");
  if (switch_cell_power_watts < 0) invalid("switch_cell_power must be non-negative");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (Polarization p : {Polarization::vertical, Polarization::horizontal}) {
      const CellPolarization& cp = cells[i].pol(p);
      if (cp.bit_resolution < 0)
        invalid("cell " + std::to_string(i) + ": negative bit resolution");
      if (cp.bit_resolution > 30)
        invalid("cell " + std::to_string(i) + ": bit resolution above 30 is unsupported");
      if (!cp.configurable && cp.bit_resolution != 0)
        invalid("cell " + std::to_string(i) + ": non-configurable entry with nonzero resolution");
      if (!polarization.configurable(p) && cp.configurable)
        invalid("cell " + std::to_string(i) + ": configurable entry on an unconfigured polarization");
    }
  }
}

CodingState CodingState::all_zeros(int cell_count) {
  if (cell_count < 0) invalid("negative cell count");
  CodingState coding;
  coding.states_v.assign(static_cast<std::size_t>(cell_count), 0u);
  coding.states_h.assign(static_cast<std::size_t>(cell_count), 0u);
  return coding;
}

CodingState CodingState::all_ones(const RisHardwareSpec& spec) {
  CodingState coding = all_zeros(spec.cell_count());
  for (std::size_t i = 0; i < spec.cells.size(); ++i) {
    for (Polarization p : {Polarization::vertical, Polarization::horizontal}) {
      const CellPolarization& cp = spec.cells[i].pol(p);
      if (cp.configurable) coding.pol(p)[i] = state_mask(cp.bit_resolution);
    }
  }
  return coding;
}

long long control_signal_count(const RisHardwareSpec& spec, Polarization p) {
  if (!spec.polarization.configurable(p)) return 0;
  long long count = 0;
  for (const UnitCellSpec& cell : spec.cells) {
    const CellPolarization& cp = cell.pol(p);
    if (counts_bits(spec.device_class)) {
      count += cp.bit_resolution;
    } else {
      count += cp.configurable ? 1 : 0;
    }
  }
  return count;
}

long long drive_circuit_count(const RisHardwareSpec& spec) {
  if (spec.drive.signals_per_circuit < 1) invalid("signals_per_circuit must be at least 1");
  long long circuits = 0;
  for (Polarization p : {Polarization::vertical, Polarization::horizontal}) {
    if (!spec.polarization.configurable(p)) continue;
    if (spec.group_size(p) < 1) invalid("group size must be at least 1");
    long long signals = control_signal_count(spec, p);
    long long per_circuit =
        static_cast<long long>(spec.group_size(p)) * spec.drive.signals_per_circuit;
    circuits += ceil_div(signals, per_circuit);
  }
  return circuits;
}

double static_power(const RisHardwareSpec& spec) {
  return spec.controller_power_watts +
         static_cast<double>(drive_circuit_count(spec)) * spec.drive.rated_power_watts;
}

double unit_cell_power(int bit_resolution, int on_bits, double pin_on_bit_power_watts) {
  if (bit_resolution < 0) invalid("negative bit resolution");
  if (on_bits < 0 || on_bits > bit_resolution)
    invalid("ON-bit count " + std::to_string(on_bits) + " outside [0, " +
            std::to_string(bit_resolution) + "]");
  return static_cast<double>(on_bits) * pin_on_bit_power_watts;
}

void validate_coding(const RisHardwareSpec& spec, const CodingState& coding) {
  const std::size_t n = spec.cells.size();
  if (coding.states_v.size() != n || coding.states_h.size() != n)
    invalid("coding covers " + std::to_string(coding.states_v.size()) + "/" +
            std::to_string(coding.states_h.size()) + " cells, spec has " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (Polarization p : {Polarization::vertical, Polarization::horizontal}) {
      std::uint32_t state = coding.pol(p)[i];
      if (state > state_mask(spec.cells[i].pol(p).bit_resolution))
        invalid("cell " + std::to_string(i) + ": state " + std::to_string(state) +
                " exceeds the cell's resolution");
    }
  }
}

long long total_on_bits(const RisHardwareSpec& spec, const CodingState& coding) {
  validate_coding(spec, coding);
  long long bits = 0;
  for (const std::uint32_t s : coding.states_v) bits += std::popcount(s);
  for (const std::uint32_t s : coding.states_h) bits += std::popcount(s);
  return bits;
}

double units_power(const RisHardwareSpec& spec, const CodingState& coding) {
  validate_coding(spec, coding);
  switch (spec.device_class) {
    case DeviceClass::pin_diode: {
      long long bits = 0;
      for (const std::uint32_t s : coding.states_v) bits += std::popcount(s);
      for (const std::uint32_t s : coding.states_h) bits += std::popcount(s);
      return static_cast<double>(bits) * spec.pin_on_bit_power_watts;
    }
    case DeviceClass::varactor_continuous:
    case DeviceClass::varactor_discrete:
      return 0.0;
    case DeviceClass::rf_switch: {
      long long configurable = 0;
      for (const UnitCellSpec& cell : spec.cells) {
        configurable += cell.v.configurable ? 1 : 0;
        configurable += cell.h.configurable ? 1 : 0;
      }
      return static_cast<double>(configurable) * spec.switch_cell_power_watts;
    }
  }
  invalid("unknown device class value");
}

PowerBreakdown total_power(const RisHardwareSpec& spec, const CodingState& coding) {
  PowerBreakdown breakdown;
  breakdown.controller_watts = spec.controller_power_watts;
  breakdown.drive_circuits_watts =
      static_cast<double>(drive_circuit_count(spec)) * spec.drive.rated_power_watts;
  breakdown.units_watts = units_power(spec, coding);
  breakdown.total_watts =
      breakdown.controller_watts + breakdown.drive_circuits_watts + breakdown.units_watts;
  return breakdown;
}

RisHardwareSpec make_uniform_spec(DeviceClass cls, PolarizationMode polarization, int cell_count,
                                  int bit_resolution, int group_size, DriveCircuitSpec drive,
                                  double controller_power_watts, DevicePowers device_powers) {
  if (cell_count < 1) invalid("cell count must be at least 1");
  if (bit_resolution < 0) invalid("negative bit resolution");
  if (counts_bits(cls) && bit_resolution == 0)
    invalid("a configurable " + std::string(to_string(cls)) +
            " cell needs a bit resolution of at least 1");
  if (cls == DeviceClass::varactor_continuous && bit_resolution != 0)
    invalid("continuous varactor cells have no bit states; bit resolution must be 0");

  RisHardwareSpec spec;
  spec.device_class = cls;
  spec.polarization = polarization;
  spec.group_size_v = group_size;
  spec.group_size_h = group_size;
  spec.drive = drive;
  spec.controller_power_watts = controller_power_watts;
  spec.pin_on_bit_power_watts = device_powers.pin_on_bit_watts;
  spec.switch_cell_power_watts = device_powers.switch_cell_watts;

  UnitCellSpec cell;
  for (Polarization p : {Polarization::vertical, Polarization::horizontal}) {
    if (polarization.configurable(p)) cell.pol(p) = {bit_resolution, true};
  }
  spec.cells.assign(static_cast<std::size_t>(cell_count), cell);

  spec.validate();
  return spec;
}

bool is_uniform(const RisHardwareSpec& spec) {
  if (spec.cells.empty()) return false;
  const UnitCellSpec& first = spec.cells.front();
  for (const UnitCellSpec& cell : spec.cells) {
    if (!(cell == first)) return false;
  }
  if (spec.polarization == PolarizationMode::dual()) {
    if (!(first.v == first.h)) return false;
    if (spec.group_size_v != spec.group_size_h) return false;
  }
  return true;
}

int uniform_bit_resolution(const RisHardwareSpec& spec) {
  if (!is_uniform(spec)) invalid("spec is not uniform");
  Polarization p = spec.polarization.vertical ? Polarization::vertical : Polarization::horizontal;
  return spec.cells.front().pol(p).bit_resolution;
}

double concise_static_power(const RisHardwareSpec& spec) {
  if (!is_uniform(spec)) invalid("the concise form requires a uniform spec");
  Polarization p = spec.polarization.vertical ? Polarization::vertical : Polarization::horizontal;
  const CellPolarization& cell = spec.cells.front().pol(p);
  const long long n = spec.cell_count();
  const long long per_circuit =
      static_cast<long long>(spec.group_size(p)) * spec.drive.signals_per_circuit;
  long long signals_per_pol;
  if (counts_bits(spec.device_class)) {
    signals_per_pol = static_cast<long long>(cell.bit_resolution) * n;
  } else {
    signals_per_pol = (cell.configurable ? 1ll : 0ll) * n;
  }
  const long long circuits =
      spec.polarization.indicator_sum() * ceil_div(signals_per_pol, per_circuit);
  return spec.controller_power_watts +
         static_cast<double>(circuits) * spec.drive.rated_power_watts;
}

double concise_units_power(const RisHardwareSpec& spec, std::span<const int> on_bits_per_cell) {
  if (!is_uniform(spec)) invalid("the concise form requires a uniform spec");
  if (on_bits_per_cell.size() != spec.cells.size())
    invalid("ON-bit counts cover " + std::to_string(on_bits_per_cell.size()) +
            " cells, spec has " + std::to_string(spec.cells.size()));
  const int bits = uniform_bit_resolution(spec);
  switch (spec.device_class) {
    case DeviceClass::pin_diode: {
      long long total = 0;
      for (int b : on_bits_per_cell) {
        if (b < 0 || b > bits)
          invalid("ON-bit count " + std::to_string(b) + " outside [0, " + std::to_string(bits) +
                  "]");
        total += b;
      }
      total *= spec.polarization.indicator_sum();
      return static_cast<double>(total) * spec.pin_on_bit_power_watts;
    }
    case DeviceClass::varactor_continuous:
    case DeviceClass::varactor_discrete:
      return 0.0;
    case DeviceClass::rf_switch: {
      Polarization p =
          spec.polarization.vertical ? Polarization::vertical : Polarization::horizontal;
      const long long per_pol =
          (spec.cells.front().pol(p).configurable ? 1ll : 0ll) * spec.cell_count();
      const long long total = spec.polarization.indicator_sum() * per_pol;
      return static_cast<double>(total) * spec.switch_cell_power_watts;
    }
  }
  invalid("unknown device class value");
}

}  // namespace rispower
