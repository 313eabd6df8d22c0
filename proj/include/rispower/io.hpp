// SPDX-License-Identifier: Apache-2.0
//
// File formats: key-value spec files with unit-suffixed power values,
// comma-separated coding tables, and comma-separated measurement sweeps.
// Lines starting with '#' are comments everywhere.
#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rispower/calibration.hpp"
#include "rispower/core_model.hpp"

namespace rispower::io {

// Carries "file:line: message" diagnostics; line 0 means the whole file.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string_view origin, int line, std::string_view message);
  const std::string& origin() const { return origin_; }
  int line() const { return line_; }

 private:
  std::string origin_;
  int line_ = 0;
};

// Spec files describe one uniform surface:
//
//   device_class = pin_diode | varactor_continuous | varactor_discrete | rf_switch
//   polarization = dual | vertical | horizontal
//   cells = 256
//   bit_resolution = 1
//   group_size = 1
//   signals_per_circuit = 8
//   drive_circuit_power = 0.07mW
//   controller_power = 4.8W
//   pin_on_bit_power = 12.56mW     (optional, PIN-diode surfaces)
//   switch_cell_power = 495uW      (optional, RF-switch surfaces)
//
// Unknown and duplicate keys are rejected with their line number.
RisHardwareSpec parse_spec_text(std::string_view text, std::string_view origin_name);
RisHardwareSpec load_spec_file(const std::filesystem::path& path);

// Canonical text for a uniform spec; parsing it back yields a spec that
// evaluates to identical power on any coding. Throws on non-uniform specs.
std::string serialize_spec(const RisHardwareSpec& spec);

// Coding tables:
//
//   cell_index,state_v,state_h
//   0,1,0
//
// The header is required. Exactly one row per cell, indices 0..N-1 in any
// order. A missing polarization column means that polarization holds
// state 0 everywhere.
CodingState parse_coding_csv(std::string_view text, std::string_view origin_name);
CodingState load_coding_csv(const std::filesystem::path& path);
std::string serialize_coding_csv(const CodingState& coding);

// Measurement sweeps:
//
//   n_on,power_watts,label
//   0,15.75,all-off
//
// The header is required; power is a plain number in watts; the label may
// be empty. Dataset metadata (unit semantics etc.) is supplied by the
// caller, not the file.
MeasurementDataset parse_dataset_csv(std::string_view text, std::string_view origin_name);
MeasurementDataset load_dataset_csv(const std::filesystem::path& path);
std::string serialize_dataset_csv(const MeasurementDataset& dataset);

// Per-group draw tables (`group,coding,power`, suffixed power units): one
// row per control group and coding word, e.g. the measured draw of one cell
// column under each 2-bit state.
struct GroupStatePower {
  std::string group;
  std::string coding;
  double power_watts = 0.0;
};

std::vector<GroupStatePower> parse_group_state_powers_csv(std::string_view text,
                                                          std::string_view origin_name);
std::vector<GroupStatePower> load_group_state_powers_csv(const std::filesystem::path& path);

// Group-combination tables (`members,measured,theoretical`, suffixed power
// units, members joined by '+'): the measured draw of several groups
// activated together next to the sum of their individual draws.
struct ComboRecord {
  std::vector<std::string> members;
  double measured_watts = 0.0;
  double theoretical_watts = 0.0;
};

std::vector<ComboRecord> parse_combo_csv(std::string_view text, std::string_view origin_name);
std::vector<ComboRecord> load_combo_csv(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);  // throws ParseError when unreadable

}  // namespace rispower::io
