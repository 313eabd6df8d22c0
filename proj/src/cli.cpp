// SPDX-License-Identifier: Apache-2.0
#include "rispower/cli.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rispower/calibration.hpp"
#include "rispower/coding_optimizer.hpp"
#include "rispower/core_model.hpp"
#include "rispower/io.hpp"
#include "rispower/report.hpp"
#include "rispower/scaling.hpp"
#include "rispower/units.hpp"
#include "rispower/validate.hpp"

namespace rispower::cli {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitInputError = 2;

struct Hash {
  std::uint64_t value = 14695981039346656037ull;
  void add(std::string_view tag, std::string_view bytes) {
    value = report::fnv1a64(tag, value);
    value = report::fnv1a64(bytes, value);
  }
  void add_file(std::string_view tag, const std::filesystem::path& path) {
    add(tag, io::read_file(path));
  }
};

// Writes the payload to --out when given, otherwise to standard output.
// Human-readable summaries go to standard error so the payload stays
// machine-parseable.
void emit(const std::string& payload, const std::string& out_path, bool pretty,
          const std::string& pretty_text) {
  if (out_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << payload;
    if (!out) throw io::ParseError(out_path, 0, "cannot write output file");
  }
  if (pretty) std::cerr << pretty_text;
}

json breakdown_to_json(const PowerBreakdown& breakdown) {
  return {{"controller_watts", breakdown.controller_watts},
          {"drive_circuits_watts", breakdown.drive_circuits_watts},
          {"units_watts", breakdown.units_watts},
          {"total_watts", breakdown.total_watts}};
}

std::vector<std::string> spec_warnings(const RisHardwareSpec& spec) {
  std::vector<std::string> warnings;
  if (spec.device_class != DeviceClass::pin_diode && spec.pin_on_bit_power_watts > 0)
    warnings.push_back("pin_on_bit_power is ignored for this device class");
  if (spec.device_class != DeviceClass::rf_switch && spec.switch_cell_power_watts > 0)
    warnings.push_back("switch_cell_power is ignored for this device class");
  return warnings;
}

CodingState resolve_coding(const RisHardwareSpec& spec, const std::string& coding_path,
                           const std::string& preset, Hash& hash) {
  if (!coding_path.empty() && !preset.empty())
    throw std::invalid_argument("give either --coding or --coding-preset, not both");
  if (!coding_path.empty()) {
    hash.add_file("coding", coding_path);
    return io::load_coding_csv(coding_path);
  }
  if (preset == "all_zeros") {
    hash.add("preset", preset);
    return CodingState::all_zeros(spec.cell_count());
  }
  if (preset == "all_ones") {
    hash.add("preset", preset);
    return CodingState::all_ones(spec);
  }
  throw std::invalid_argument("need a coding: --coding <file> or --coding-preset <name>");
}

DeviceClass parse_class_argument(const std::string& name) {
  if (name == "pin") return DeviceClass::pin_diode;
  if (name == "varactor") return DeviceClass::varactor_continuous;
  if (name == "rf") return DeviceClass::rf_switch;
  return device_class_from_string(name);
}

struct ComputeArgs {
  std::string spec_path, coding_path, preset, out_path;
  bool pretty = false;
};

int run_compute(const ComputeArgs& args) {
  Hash hash;
  hash.add("subcommand", "compute");
  hash.add_file("spec", args.spec_path);
  const RisHardwareSpec spec = io::load_spec_file(args.spec_path);
  const CodingState coding = resolve_coding(spec, args.coding_path, args.preset, hash);

  const PowerBreakdown breakdown = total_power(spec, coding);
  json results = {{"breakdown", breakdown_to_json(breakdown)},
                  {"cells", spec.cell_count()},
                  {"device_class", std::string(to_string(spec.device_class))},
                  {"drive_circuit_count", drive_circuit_count(spec)},
                  {"control_signals",
                   {{"vertical", control_signal_count(spec, Polarization::vertical)},
                    {"horizontal", control_signal_count(spec, Polarization::horizontal)}}},
                  {"on_bits", total_on_bits(spec, coding)}};

  char pretty_text[512];
  std::snprintf(pretty_text, sizeof pretty_text,
                "%s, %d cells, %s polarization\n"
                "  controller      %s\n"
                "  drive circuits  %s (%lld circuits)\n"
                "  unit cells      %s\n"
                "  total           %s\n",
                std::string(to_string(spec.device_class)).c_str(), spec.cell_count(),
                std::string(to_string(spec.polarization)).c_str(),
                units::format_watts(breakdown.controller_watts).c_str(),
                units::format_watts(breakdown.drive_circuits_watts).c_str(),
                drive_circuit_count(spec),
                units::format_watts(breakdown.units_watts).c_str(),
                units::format_watts(breakdown.total_watts).c_str());

  const json report =
      report::make_report("compute", hash.value, results, spec_warnings(spec));
  emit(report::render(report), args.out_path, args.pretty, pretty_text);
  return kExitOk;
}

struct FitArgs {
  std::string dataset_path, reference_path, out_path;
  double rel_tol = 0.05;
  bool pretty = false;
};

int run_fit(const FitArgs& args) {
  Hash hash;
  hash.add("subcommand", "fit");
  hash.add_file("dataset", args.dataset_path);
  const MeasurementDataset dataset = io::load_dataset_csv(args.dataset_path);
  const FitResult fit = fit_linear(dataset);

  json results = {{"fit",
                   {{"slope_watts_per_unit", fit.slope_watts_per_unit},
                    {"intercept_watts", fit.intercept_watts},
                    {"r_squared", fit.r_squared},
                    {"max_abs_residual_watts", fit.max_abs_residual_watts},
                    {"points", dataset.points.size()}}}};

  std::string pretty_text = "fit: slope " + units::format_watts(fit.slope_watts_per_unit) +
                            "/unit, intercept " + units::format_watts(fit.intercept_watts) +
                            ", r^2 " + std::to_string(fit.r_squared) + "\n";

  int exit_code = kExitOk;
  if (!args.reference_path.empty()) {
    hash.add_file("reference", args.reference_path);
    const MeasurementDataset reference = io::load_dataset_csv(args.reference_path);
    const FitResult reference_fit = fit_linear(reference);
    const RatioCheck ratio = check_polarization_ratio(fit, reference_fit, args.rel_tol);
    results["polarization_ratio"] = {{"ratio", ratio.ratio},
                                     {"rel_tol", ratio.rel_tol},
                                     {"pass", ratio.pass},
                                     {"reference_slope_watts_per_unit",
                                      reference_fit.slope_watts_per_unit}};
    pretty_text += "ratio vs reference: " + std::to_string(ratio.ratio) +
                   (ratio.pass ? " PASS\n" : " FAIL\n");
    if (!ratio.pass) exit_code = kExitValidationFailure;
  }

  hash.add("rel_tol", std::to_string(args.rel_tol));
  const json report = report::make_report("fit", hash.value, results, {});
  emit(report::render(report), args.out_path, args.pretty, pretty_text);
  return exit_code;
}

struct ValidateArgs {
  std::vector<std::string> ids;
  std::string fixtures_dir = "fixtures";
  std::string abs_tol = "0.5mW";
  double rel_tol = 0.05;
  std::string out_path;
  bool pretty = false;
};

int run_validate(const ValidateArgs& args) {
  validate::Tolerances tol;
  tol.abs_watts = units::parse_watts(args.abs_tol);
  tol.rel = args.rel_tol;
  if (tol.abs_watts < 0 || tol.rel < 0) throw std::invalid_argument("negative tolerance");

  std::vector<std::string> ids;
  for (const std::string& id : args.ids) {
    if (id == "all") {
      ids.insert(ids.end(), validate::known_fixture_ids().begin(),
                 validate::known_fixture_ids().end());
    } else {
      ids.push_back(id);
    }
  }

  Hash hash;
  hash.add("subcommand", "validate");
  hash.add("abs_tol", std::to_string(tol.abs_watts));
  hash.add("rel_tol", std::to_string(tol.rel));
  for (const std::string& id : ids) {
    hash.add("fixture", id);
    for (const std::filesystem::path& file : validate::fixture_files(id, args.fixtures_dir)) {
      hash.add_file("file", file);
    }
  }

  json suites = json::array();
  std::string pretty_text;
  bool all_passed = true;
  for (const std::string& id : ids) {
    const validate::SuiteResult suite = validate::run_fixture_suite(id, args.fixtures_dir, tol);
    json checks = json::array();
    pretty_text += suite.ris_id + "\n";
    for (const validate::CheckResult& check : suite.checks) {
      checks.push_back({{"name", check.name},
                        {"passed", check.passed},
                        {"gated", check.gated},
                        {"details", check.details}});
      const char* status = check.gated ? (check.passed ? "PASS" : "FAIL") : "info";
      pretty_text += "  [" + std::string(status) + "] " + check.name + "\n";
    }
    const bool suite_passed = suite.gated_passed();
    all_passed = all_passed && suite_passed;
    suites.push_back({{"ris", suite.ris_id}, {"passed", suite_passed}, {"checks", checks}});
  }

  const json report = report::make_report(
      "validate", hash.value, {{"suites", suites}, {"all_passed", all_passed}}, {});
  emit(report::render(report), args.out_path, args.pretty, pretty_text);
  return all_passed ? kExitOk : kExitValidationFailure;
}

struct ScaleArgs {
  std::string class_name, range;
  long long step = 1;
  std::string controller_power, per_cell_coefficient;
  std::string format = "json";
  std::string out_path;
  bool pretty = false;
};

int run_scale(const ScaleArgs& args) {
  const DeviceClass cls = parse_class_argument(args.class_name);
  ScalingAssumptions assumptions = ScalingAssumptions::defaults_for(cls);
  if (!args.controller_power.empty())
    assumptions.controller_power_watts = units::parse_watts(args.controller_power);
  if (!args.per_cell_coefficient.empty())
    assumptions.per_cell_coefficient_watts = units::parse_watts(args.per_cell_coefficient);

  const std::size_t dots = args.range.find("..");
  if (dots == std::string::npos)
    throw std::invalid_argument("range must look like 0..1000");
  long long first = 0, last = 0;
  try {
    first = std::stoll(args.range.substr(0, dots));
    last = std::stoll(args.range.substr(dots + 2));
  } catch (const std::exception&) {
    throw std::invalid_argument("range must look like 0..1000");
  }
  if (first < 0 || last < first) throw std::invalid_argument("range bounds must satisfy 0 <= first <= last");
  if (args.step < 1) throw std::invalid_argument("step must be at least 1");
  if ((last - first) / args.step > 10'000'000)
    throw std::invalid_argument("range would produce more than 10 million rows");

  std::vector<long long> cell_counts;
  for (long long n = first; n <= last; n += args.step) cell_counts.push_back(n);
  const auto curve = power_curve(cls, cell_counts, assumptions);

  Hash hash;
  hash.add("subcommand", "scale");
  hash.add("class", std::string(to_string(cls)));
  hash.add("range", args.range);
  hash.add("step", std::to_string(args.step));
  hash.add("controller", std::to_string(assumptions.controller_power_watts));
  hash.add("coefficient", std::to_string(assumptions.per_cell_coefficient_watts));

  std::string pretty_text =
      std::string(to_string(cls)) + ": " + std::to_string(curve.size()) + " points, " +
      units::format_watts(curve.front().second) + " at n=" + std::to_string(curve.front().first) +
      " to " + units::format_watts(curve.back().second) + " at n=" +
      std::to_string(curve.back().first) + "\n";

  if (args.format == "csv") {
    std::string payload = "n,power_watts\n";
    char value[64];
    for (const auto& [n, watts] : curve) {
      const auto [end, ec] = std::to_chars(value, value + sizeof value, watts);
      (void)ec;
      payload += std::to_string(n);
      payload += ',';
      payload.append(value, end);
      payload += '\n';
    }
    emit(payload, args.out_path, args.pretty, pretty_text);
    return kExitOk;
  }

  json points = json::array();
  for (const auto& [n, watts] : curve) points.push_back({n, watts});
  const json results = {{"device_class", std::string(to_string(cls))},
                        {"assumptions",
                         {{"controller_watts", assumptions.controller_power_watts},
                          {"per_cell_coefficient_watts", assumptions.per_cell_coefficient_watts}}},
                        {"curve", points},
                        {"rows", curve.size()}};
  const json report = report::make_report("scale", hash.value, results, {});
  emit(report::render(report), args.out_path, args.pretty, pretty_text);
  return kExitOk;
}

struct OptimizeArgs {
  std::string spec_path, coding_path, preset, out_path;
  bool pretty = false;
};

int run_optimize(const OptimizeArgs& args) {
  Hash hash;
  hash.add("subcommand", "optimize");
  hash.add_file("spec", args.spec_path);
  const RisHardwareSpec spec = io::load_spec_file(args.spec_path);
  const CodingState coding = resolve_coding(spec, args.coding_path, args.preset, hash);

  const OffsetResult result = optimize_global_offset(coding, spec);
  const json results = {{"offset", result.offset},
                        {"bit_resolution", uniform_bit_resolution(spec)},
                        {"power_before_watts", result.power_before_watts},
                        {"power_after_watts", result.power_after_watts},
                        {"savings_watts", result.savings_watts},
                        {"on_bits_before", result.on_bits_before},
                        {"on_bits_after", result.on_bits_after}};

  const std::string pretty_text =
      "offset " + std::to_string(result.offset) + ": " +
      units::format_watts(result.power_before_watts) + " -> " +
      units::format_watts(result.power_after_watts) + " (saves " +
      units::format_watts(result.savings_watts) + ", ON bits " +
      std::to_string(result.on_bits_before) + " -> " + std::to_string(result.on_bits_after) +
      ")\n";

  const json report =
      report::make_report("optimize", hash.value, results, spec_warnings(spec));
  emit(report::render(report), args.out_path, args.pretty, pretty_text);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Power-consumption toolkit for reconfigurable intelligent surfaces"};
  app.require_subcommand(1);

  ComputeArgs compute_args;
  CLI::App* compute = app.add_subcommand(
      "compute", "Evaluate the power breakdown of a surface under a coding state");
  compute->add_option("--spec", compute_args.spec_path, "surface spec file")->required();
  compute->add_option("--coding", compute_args.coding_path, "coding CSV file");
  compute->add_option("--coding-preset", compute_args.preset, "all_zeros or all_ones")
      ->check(CLI::IsMember({"all_zeros", "all_ones"}));
  compute->add_option("--out", compute_args.out_path, "write the report to a file");
  compute->add_flag("--pretty", compute_args.pretty, "human-readable summary on stderr");

  FitArgs fit_args;
  CLI::App* fit = app.add_subcommand("fit", "Fit a measured power sweep to the linear model");
  fit->add_option("--dataset", fit_args.dataset_path, "measurement CSV file")->required();
  fit->add_option("--ratio-against", fit_args.reference_path,
                  "single-polarization reference dataset; checks the fitted slope is twice "
                  "the reference slope");
  fit->add_option("--tolerance-rel", fit_args.rel_tol, "relative tolerance for the ratio check");
  fit->add_option("--out", fit_args.out_path, "write the report to a file");
  fit->add_flag("--pretty", fit_args.pretty, "human-readable summary on stderr");

  ValidateArgs validate_args;
  CLI::App* validate_cmd = app.add_subcommand(
      "validate", "Re-derive published figures from the bundled reference surfaces");
  validate_cmd->add_option("ids", validate_args.ids, "fixture ids (ris1..ris6) or 'all'")
      ->required();
  validate_cmd->add_option("--fixtures-dir", validate_args.fixtures_dir,
                           "directory with the bundled fixture files");
  validate_cmd->add_option("--tolerance-abs", validate_args.abs_tol,
                           "absolute tolerance for measured-data checks, e.g. 0.5mW");
  validate_cmd->add_option("--tolerance-rel", validate_args.rel_tol,
                           "relative tolerance for ratio checks");
  validate_cmd->add_option("--out", validate_args.out_path, "write the report to a file");
  validate_cmd->add_flag("--pretty", validate_args.pretty, "per-check summary on stderr");

  ScaleArgs scale_args;
  CLI::App* scale = app.add_subcommand("scale", "Project total power across surface sizes");
  scale->add_option("class", scale_args.class_name, "pin, varactor, rf, or a full class name")
      ->required();
  scale->add_option("range", scale_args.range, "cell-count range, e.g. 0..1000")->required();
  scale->add_option("--step", scale_args.step, "cell-count increment");
  scale->add_option("--controller-power", scale_args.controller_power,
                    "override the controller budget, e.g. 4.8W");
  scale->add_option("--per-cell-coefficient", scale_args.per_cell_coefficient,
                    "override the per-cell coefficient, e.g. 10mW");
  scale->add_option("--format", scale_args.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  scale->add_option("--out", scale_args.out_path, "write the output to a file");
  scale->add_flag("--pretty", scale_args.pretty, "one-line summary on stderr");

  OptimizeArgs optimize_args;
  CLI::App* optimize = app.add_subcommand(
      "optimize", "Find the global state offset that minimizes PIN-diode draw");
  optimize->add_option("--spec", optimize_args.spec_path, "surface spec file")->required();
  optimize->add_option("--coding", optimize_args.coding_path, "coding CSV file");
  optimize->add_option("--coding-preset", optimize_args.preset, "all_zeros or all_ones")
      ->check(CLI::IsMember({"all_zeros", "all_ones"}));
  optimize->add_option("--out", optimize_args.out_path, "write the report to a file");
  optimize->add_flag("--pretty", optimize_args.pretty, "one-line summary on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (compute->parsed()) return run_compute(compute_args);
    if (fit->parsed()) return run_fit(fit_args);
    if (validate_cmd->parsed()) return run_validate(validate_args);
    if (scale->parsed()) return run_scale(scale_args);
    if (optimize->parsed()) return run_optimize(optimize_args);
    std::cerr << "error: no subcommand given\n";
    return kExitInputError;
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace rispower::cli
