// SPDX-License-Identifier: Apache-2.0
#include "rispower/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "rispower/units.hpp"

namespace rispower::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(std::string_view origin, int line, std::string_view message) {
  throw ParseError(origin, line, message);
}

// Iterates the non-empty, non-comment lines of a text with their 1-based
// line numbers.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++number;
    start = end + 1;
    std::string_view stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    fn(number, stripped);
  }
}

std::vector<std::string_view> split(std::string_view line, char separator) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t end = line.find(separator, start);
    if (end == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      return fields;
    }
    fields.push_back(trim(line.substr(start, end - start)));
    start = end + 1;
  }
}

long long parse_integer(std::string_view origin, int line, std::string_view field) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    fail(origin, line, "expected an integer, got '" + std::string(field) + "'");
  return value;
}

double parse_plain_double(std::string_view origin, int line, std::string_view field) {
  std::string buffer(field);
  char* end = nullptr;
  errno = 0;
  double value = std::strtod(buffer.c_str(), &end);
  if (buffer.empty() || end != buffer.c_str() + buffer.size())
    fail(origin, line, "expected a number, got '" + std::string(field) + "'");
  return value;
}

double parse_power(std::string_view origin, int line, std::string_view field) {
  try {
    return units::parse_watts(field);
  } catch (const std::invalid_argument& e) {
    fail(origin, line, e.what());
  }
}

// Shortest text that reads back as exactly the same double.
std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

}  // namespace

ParseError::ParseError(std::string_view origin, int line, std::string_view message)
    : std::runtime_error(line > 0 ? std::string(origin) + ":" + std::to_string(line) + ": " +
                                        std::string(message)
                                  : std::string(origin) + ": " + std::string(message)),
      origin_(origin),
      line_(line) {}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path.string(), 0, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) fail(path.string(), 0, "read error");
  return std::move(buffer).str();
}

RisHardwareSpec parse_spec_text(std::string_view text, std::string_view origin_name) {
  struct Entry {
    std::string value;
    int line = 0;
  };
  static const std::vector<std::string_view> known_keys = {
      "device_class",    "polarization",        "cells",
      "bit_resolution",  "group_size",          "signals_per_circuit",
      "drive_circuit_power", "controller_power", "pin_on_bit_power",
      "switch_cell_power",
  };
  std::map<std::string, Entry, std::less<>> entries;

  for_each_line(text, [&](int line, std::string_view stripped) {
    std::size_t eq = stripped.find('=');
    if (eq == std::string_view::npos) fail(origin_name, line, "expected 'key = value'");
    std::string key(trim(stripped.substr(0, eq)));
    std::string value(trim(stripped.substr(eq + 1)));
    if (std::find(known_keys.begin(), known_keys.end(), key) == known_keys.end())
      fail(origin_name, line, "unknown key '" + key + "'");
    if (value.empty()) fail(origin_name, line, "key '" + key + "' has no value");
    auto [it, inserted] = entries.emplace(std::move(key), Entry{std::move(value), line});
    if (!inserted)
      fail(origin_name, line,
           "duplicate key '" + it->first + "' (first set on line " +
               std::to_string(it->second.line) + ")");
  });

  auto require = [&](std::string_view key) -> const Entry& {
    auto it = entries.find(key);
    if (it == entries.end())
      fail(origin_name, 0, "missing required key '" + std::string(key) + "'");
    return it->second;
  };
  auto optional_power = [&](std::string_view key) -> double {
    auto it = entries.find(key);
    if (it == entries.end()) return 0.0;
    return parse_power(origin_name, it->second.line, it->second.value);
  };
  auto checked_int = [&](const Entry& entry) -> int {
    long long value = parse_integer(origin_name, entry.line, entry.value);
    if (value < 0 || value > 1'000'000'000) fail(origin_name, entry.line, "value out of range");
    return static_cast<int>(value);
  };

  DeviceClass cls = DeviceClass::pin_diode;
  PolarizationMode mode;
  try {
    const Entry& entry = require("device_class");
    cls = device_class_from_string(entry.value);
    const Entry& pol_entry = require("polarization");
    mode = polarization_mode_from_string(pol_entry.value);
  } catch (const std::invalid_argument& e) {
    fail(origin_name, 0, e.what());
  }

  DriveCircuitSpec drive;
  drive.signals_per_circuit = checked_int(require("signals_per_circuit"));
  const Entry& drive_power = require("drive_circuit_power");
  drive.rated_power_watts = parse_power(origin_name, drive_power.line, drive_power.value);
  const Entry& controller = require("controller_power");

  DevicePowers powers;
  powers.pin_on_bit_watts = optional_power("pin_on_bit_power");
  powers.switch_cell_watts = optional_power("switch_cell_power");

  try {
    return make_uniform_spec(cls, mode, checked_int(require("cells")),
                             checked_int(require("bit_resolution")),
                             checked_int(require("group_size")), drive,
                             parse_power(origin_name, controller.line, controller.value), powers);
  } catch (const std::invalid_argument& e) {
    fail(origin_name, 0, e.what());
  }
}

RisHardwareSpec load_spec_file(const std::filesystem::path& path) {
  return parse_spec_text(read_file(path), path.string());
}

std::string serialize_spec(const RisHardwareSpec& spec) {
  spec.validate();
  if (!is_uniform(spec))
    throw std::invalid_argument("only uniform specs have a file representation");
  Polarization p = spec.polarization.vertical ? Polarization::vertical : Polarization::horizontal;
  std::string out;
  out += "device_class = " + std::string(to_string(spec.device_class)) + "\n";
  out += "polarization = " + std::string(to_string(spec.polarization)) + "\n";
  out += "cells = " + std::to_string(spec.cell_count()) + "\n";
  out += "bit_resolution = " + std::to_string(spec.cells.front().pol(p).bit_resolution) + "\n";
  out += "group_size = " + std::to_string(spec.group_size(p)) + "\n";
  out += "signals_per_circuit = " + std::to_string(spec.drive.signals_per_circuit) + "\n";
  out += "drive_circuit_power = " + format_double(spec.drive.rated_power_watts) + "W\n";
  out += "controller_power = " + format_double(spec.controller_power_watts) + "W\n";
  out += "pin_on_bit_power = " + format_double(spec.pin_on_bit_power_watts) + "W\n";
  out += "switch_cell_power = " + format_double(spec.switch_cell_power_watts) + "W\n";
  return out;
}

CodingState parse_coding_csv(std::string_view text, std::string_view origin_name) {
  bool header_seen = false;
  int index_column = -1, v_column = -1, h_column = -1;
  int column_count = 0;
  struct Row {
    long long index;
    std::uint32_t v, h;
  };
  std::vector<Row> rows;

  for_each_line(text, [&](int line, std::string_view stripped) {
    std::vector<std::string_view> fields = split(stripped, ',');
    if (!header_seen) {
      header_seen = true;
      column_count = static_cast<int>(fields.size());
      for (int i = 0; i < column_count; ++i) {
        if (fields[i] == "cell_index") index_column = i;
        else if (fields[i] == "state_v") v_column = i;
        else if (fields[i] == "state_h") h_column = i;
        else fail(origin_name, line, "unknown column '" + std::string(fields[i]) + "'");
      }
      if (index_column < 0) fail(origin_name, line, "missing 'cell_index' column");
      if (v_column < 0 && h_column < 0)
        fail(origin_name, line, "need at least one of 'state_v', 'state_h'");
      return;
    }
    if (static_cast<int>(fields.size()) != column_count)
      fail(origin_name, line, "expected " + std::to_string(column_count) + " fields");
    Row row{};
    row.index = parse_integer(origin_name, line, fields[index_column]);
    auto state = [&](int column) -> std::uint32_t {
      if (column < 0) return 0;  // a missing polarization column means state 0
      long long value = parse_integer(origin_name, line, fields[column]);
      if (value < 0 || value > 0x3FFFFFFF) fail(origin_name, line, "state out of range");
      return static_cast<std::uint32_t>(value);
    };
    row.v = state(v_column);
    row.h = state(h_column);
    rows.push_back(row);
  });

  if (!header_seen) fail(origin_name, 0, "missing header line");
  if (rows.empty()) fail(origin_name, 0, "no coding rows");

  CodingState coding = CodingState::all_zeros(static_cast<int>(rows.size()));
  std::vector<bool> seen(rows.size(), false);
  for (const Row& row : rows) {
    if (row.index < 0 || row.index >= static_cast<long long>(rows.size()))
      fail(origin_name, 0,
           "cell_index " + std::to_string(row.index) + " outside 0.." +
               std::to_string(rows.size() - 1));
    if (seen[static_cast<std::size_t>(row.index)])
      fail(origin_name, 0, "cell_index " + std::to_string(row.index) + " appears twice");
    seen[static_cast<std::size_t>(row.index)] = true;
    coding.states_v[static_cast<std::size_t>(row.index)] = row.v;
    coding.states_h[static_cast<std::size_t>(row.index)] = row.h;
  }
  return coding;
}

CodingState load_coding_csv(const std::filesystem::path& path) {
  return parse_coding_csv(read_file(path), path.string());
}

std::string serialize_coding_csv(const CodingState& coding) {
  std::string out = "cell_index,state_v,state_h\n";
  for (int i = 0; i < coding.cell_count(); ++i) {
    out += std::to_string(i) + "," + std::to_string(coding.states_v[i]) + "," +
           std::to_string(coding.states_h[i]) + "\n";
  }
  return out;
}

MeasurementDataset parse_dataset_csv(std::string_view text, std::string_view origin_name) {
  MeasurementDataset dataset;
  bool header_seen = false;
  for_each_line(text, [&](int line, std::string_view stripped) {
    std::vector<std::string_view> fields = split(stripped, ',');
    if (!header_seen) {
      header_seen = true;
      if (fields.size() != 3 || fields[0] != "n_on" || fields[1] != "power_watts" ||
          fields[2] != "label")
        fail(origin_name, line, "expected header 'n_on,power_watts,label'");
      return;
    }
    if (fields.size() != 3) fail(origin_name, line, "expected 3 fields");
    MeasurementPoint point;
    point.n_on = parse_integer(origin_name, line, fields[0]);
    point.power_watts = parse_plain_double(origin_name, line, fields[1]);
    point.label = std::string(fields[2]);
    if (point.n_on < 0) fail(origin_name, line, "n_on must be non-negative");
    if (point.power_watts < 0) fail(origin_name, line, "power must be non-negative");
    dataset.points.push_back(std::move(point));
  });
  if (!header_seen) fail(origin_name, 0, "missing header line");
  if (dataset.points.empty()) fail(origin_name, 0, "no measurement rows");
  return dataset;
}

MeasurementDataset load_dataset_csv(const std::filesystem::path& path) {
  return parse_dataset_csv(read_file(path), path.string());
}

std::string serialize_dataset_csv(const MeasurementDataset& dataset) {
  std::string out = "n_on,power_watts,label\n";
  for (const MeasurementPoint& point : dataset.points) {
    out += std::to_string(point.n_on) + "," + format_double(point.power_watts) + "," +
           point.label + "\n";
  }
  return out;
}

std::vector<GroupStatePower> parse_group_state_powers_csv(std::string_view text,
                                                          std::string_view origin_name) {
  std::vector<GroupStatePower> rows;
  bool header_seen = false;
  for_each_line(text, [&](int line, std::string_view stripped) {
    std::vector<std::string_view> fields = split(stripped, ',');
    if (!header_seen) {
      header_seen = true;
      if (fields.size() != 3 || fields[0] != "group" || fields[1] != "coding" ||
          fields[2] != "power")
        fail(origin_name, line, "expected header 'group,coding,power'");
      return;
    }
    if (fields.size() != 3) fail(origin_name, line, "expected 3 fields");
    GroupStatePower row;
    row.group = std::string(fields[0]);
    row.coding = std::string(fields[1]);
    row.power_watts = parse_power(origin_name, line, fields[2]);
    if (row.group.empty() || row.coding.empty()) fail(origin_name, line, "empty field");
    rows.push_back(std::move(row));
  });
  if (!header_seen) fail(origin_name, 0, "missing header line");
  if (rows.empty()) fail(origin_name, 0, "no rows");
  return rows;
}

std::vector<GroupStatePower> load_group_state_powers_csv(const std::filesystem::path& path) {
  return parse_group_state_powers_csv(read_file(path), path.string());
}

std::vector<ComboRecord> parse_combo_csv(std::string_view text, std::string_view origin_name) {
  std::vector<ComboRecord> combos;
  bool header_seen = false;
  for_each_line(text, [&](int line, std::string_view stripped) {
    std::vector<std::string_view> fields = split(stripped, ',');
    if (!header_seen) {
      header_seen = true;
      if (fields.size() != 3 || fields[0] != "members" || fields[1] != "measured" ||
          fields[2] != "theoretical")
        fail(origin_name, line, "expected header 'members,measured,theoretical'");
      return;
    }
    if (fields.size() != 3) fail(origin_name, line, "expected 3 fields");
    ComboRecord combo;
    for (std::string_view member : split(fields[0], '+')) {
      if (member.empty()) fail(origin_name, line, "empty member in '" + std::string(fields[0]) + "'");
      combo.members.emplace_back(member);
    }
    combo.measured_watts = parse_power(origin_name, line, fields[1]);
    combo.theoretical_watts = parse_power(origin_name, line, fields[2]);
    combos.push_back(std::move(combo));
  });
  if (!header_seen) fail(origin_name, 0, "missing header line");
  if (combos.empty()) fail(origin_name, 0, "no rows");
  return combos;
}

std::vector<ComboRecord> load_combo_csv(const std::filesystem::path& path) {
  return parse_combo_csv(read_file(path), path.string());
}

}  // namespace rispower::io
