// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <json.hpp>

#include <rispower/core_model.hpp>
#include <rispower/io.hpp>
#include <rispower/validate.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kTool = TOOL_PATH;
const std::string kFixtures = FIXTURES_DIR;

const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("ris-power-cli-" + std::to_string(getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

void spill(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  ++counter;
  const fs::path out_path = scratch_dir() / ("stdout-" + std::to_string(counter));
  const fs::path err_path = scratch_dir() / ("stderr-" + std::to_string(counter));
  const std::string command = "\"" + kTool + "\" " + args + " > \"" + out_path.string() +
                              "\" 2> \"" + err_path.string() + "\"";
  const int status = std::system(command.c_str());
  CliResult result;
  if (status != -1 && WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  return result;
}

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

}  // namespace

TEST_CASE("compute reports a full power breakdown") {
  const CliResult r =
      run_cli("compute --spec \"" + fixture("ris3.spec") + "\" --coding-preset all_ones");
  REQUIRE_EQ(r.exit_code, 0);
  const json j = json::parse(r.out);
  CHECK_EQ(j["invocation"]["subcommand"], "compute");
  CHECK_EQ(j["invocation"]["config_hash"].get<std::string>().size(), 16);
  CHECK(j["warnings"].empty());
  CHECK_EQ(j["results"]["cells"], 512);
  CHECK_EQ(j["results"]["device_class"], "pin_diode");
  CHECK_EQ(j["results"]["drive_circuit_count"], 64);
  CHECK_EQ(j["results"]["control_signals"]["vertical"], 512);
  CHECK_EQ(j["results"]["control_signals"]["horizontal"], 0);
  CHECK_EQ(j["results"]["on_bits"], 512);
  CHECK_EQ(j["results"]["breakdown"]["units_watts"].get<double>(), 512.0 * 0.01199);
  CHECK_EQ(j["results"]["breakdown"]["total_watts"].get<double>(), 6.52 + 512.0 * 0.01199);
}

TEST_CASE("compute output is byte-identical across runs") {
  const std::string args =
      "compute --spec \"" + fixture("ris2.spec") + "\" --coding-preset all_ones";
  const CliResult first = run_cli(args);
  const CliResult second = run_cli(args);
  REQUIRE_EQ(first.exit_code, 0);
  CHECK_EQ(first.out, second.out);
  CHECK_FALSE(first.out.empty());

  const CliResult zeros =
      run_cli("compute --spec \"" + fixture("ris2.spec") + "\" --coding-preset all_zeros");
  const json a = json::parse(first.out);
  const json b = json::parse(zeros.out);
  CHECK_NE(a["invocation"]["config_hash"], b["invocation"]["config_hash"]);
}

TEST_CASE("--out moves the payload into a file") {
  const fs::path report_path = scratch_dir() / "report.json";
  const std::string base =
      "compute --spec \"" + fixture("ris1.spec") + "\" --coding-preset all_zeros";
  const CliResult direct = run_cli(base);
  const CliResult filed = run_cli(base + " --out \"" + report_path.string() + "\"");
  REQUIRE_EQ(filed.exit_code, 0);
  CHECK(filed.out.empty());
  CHECK_EQ(slurp(report_path), direct.out);
}

TEST_CASE("--pretty adds a human summary on stderr only") {
  const std::string base =
      "compute --spec \"" + fixture("ris1.spec") + "\" --coding-preset all_zeros";
  const CliResult plain = run_cli(base);
  const CliResult pretty = run_cli(base + " --pretty");
  REQUIRE_EQ(pretty.exit_code, 0);
  CHECK_EQ(pretty.out, plain.out);
  CHECK(plain.err.empty());
  CHECK(pretty.err.find("total") != std::string::npos);
}

TEST_CASE("irrelevant device powers in a spec produce a warning") {
  const fs::path spec_path = scratch_dir() / "varactor_with_pin.spec";
  spill(spec_path,
        "device_class = varactor_continuous\n"
        "polarization = vertical\n"
        "cells = 8\n"
        "bit_resolution = 0\n"
        "group_size = 1\n"
        "signals_per_circuit = 1\n"
        "drive_circuit_power = 0W\n"
        "controller_power = 1W\n"
        "pin_on_bit_power = 1mW\n");
  const CliResult r =
      run_cli("compute --spec \"" + spec_path.string() + "\" --coding-preset all_zeros");
  REQUIRE_EQ(r.exit_code, 0);
  const json j = json::parse(r.out);
  REQUIRE_EQ(j["warnings"].size(), 1);
  CHECK(j["warnings"][0].get<std::string>().find("ignored") != std::string::npos);
}

TEST_CASE("input problems exit with code 2 and an error line") {
  const CliResult missing = run_cli("compute --spec /nonexistent.spec --coding-preset all_ones");
  CHECK_EQ(missing.exit_code, 2);
  CHECK(missing.err.find("error:") != std::string::npos);
  CHECK(missing.err.find("cannot open") != std::string::npos);

  const fs::path bad_spec = scratch_dir() / "bad.spec";
  spill(bad_spec, "device_class = pin_diode\nthis is not a key value line\n");
  const CliResult garbage =
      run_cli("compute --spec \"" + bad_spec.string() + "\" --coding-preset all_ones");
  CHECK_EQ(garbage.exit_code, 2);
  CHECK(garbage.err.find(":2:") != std::string::npos);

  const CliResult no_coding = run_cli("compute --spec \"" + fixture("ris3.spec") + "\"");
  CHECK_EQ(no_coding.exit_code, 2);
  CHECK(no_coding.err.find("need a coding") != std::string::npos);

  const CliResult both = run_cli("compute --spec \"" + fixture("ris3.spec") +
                                 "\" --coding-preset all_ones --coding \"" +
                                 fixture("ris6_alternating.csv") + "\"");
  CHECK_EQ(both.exit_code, 2);

  const CliResult unknown_sub = run_cli("frobnicate");
  CHECK_EQ(unknown_sub.exit_code, 2);

  const CliResult missing_flag = run_cli("fit");
  CHECK_EQ(missing_flag.exit_code, 2);

  const CliResult bad_fixture =
      run_cli("validate nosuchris --fixtures-dir \"" + kFixtures + "\"");
  CHECK_EQ(bad_fixture.exit_code, 2);
  CHECK(bad_fixture.err.find("unknown fixture") != std::string::npos);

  const CliResult wrong_class = run_cli(
      "optimize --spec \"" + fixture("ris5.spec") + "\" --coding-preset all_zeros");
  CHECK_EQ(wrong_class.exit_code, 2);
  CHECK(wrong_class.err.find("PIN-diode") != std::string::npos);
}

TEST_CASE("validate distinguishes passing and failing reference surfaces") {
  const CliResult good =
      run_cli("validate ris1 ris6 --fixtures-dir \"" + kFixtures + "\"");
  REQUIRE_EQ(good.exit_code, 0);
  const json good_json = json::parse(good.out);
  CHECK(good_json["results"]["all_passed"].get<bool>());
  REQUIRE_EQ(good_json["results"]["suites"].size(), 2);
  CHECK_EQ(good_json["results"]["suites"][0]["ris"], "ris1");
  CHECK(good_json["results"]["suites"][0]["passed"].get<bool>());
  CHECK(good_json["results"]["suites"][1]["passed"].get<bool>());

  const CliResult mixed = run_cli("validate ris4 --fixtures-dir \"" + kFixtures + "\"");
  CHECK_EQ(mixed.exit_code, 1);
  const json mixed_json = json::parse(mixed.out);
  CHECK_FALSE(mixed_json["results"]["all_passed"].get<bool>());
  const json& checks = mixed_json["results"]["suites"][0]["checks"];
  bool saw_combo = false, saw_columns = false, saw_raw = false;
  for (const json& check : checks) {
    const std::string name = check["name"];
    if (name == "combo_additivity") {
      saw_combo = true;
      CHECK(check["passed"].get<bool>());
      CHECK(check["gated"].get<bool>());
    } else if (name == "column_bit_additivity") {
      saw_columns = true;
      CHECK_FALSE(check["passed"].get<bool>());
      CHECK(check["gated"].get<bool>());
    } else if (name == "combo_raw_readings") {
      saw_raw = true;
      CHECK_FALSE(check["gated"].get<bool>());
    }
  }
  CHECK(saw_combo);
  CHECK(saw_columns);
  CHECK(saw_raw);
}

TEST_CASE("validate all covers every bundled surface") {
  const CliResult r = run_cli("validate all --fixtures-dir \"" + kFixtures + "\" --pretty");
  CHECK_EQ(r.exit_code, 1);  // the ris4 column check keeps the full run red
  const json j = json::parse(r.out);
  CHECK_EQ(j["results"]["suites"].size(), 6);
  CHECK(r.err.find("[FAIL] column_bit_additivity") != std::string::npos);
  CHECK(r.err.find("[PASS]") != std::string::npos);
  CHECK(r.err.find("[info]") != std::string::npos);
}

TEST_CASE("fit recovers the generating line from model sweeps") {
  using namespace rispower;
  const RisHardwareSpec spec = io::load_spec_file(fixture("ris2.spec"));
  MeasurementDataset single, dual;
  for (int n = 0; n <= 3600; n += 60) {
    CodingState coding = CodingState::all_zeros(3600);
    for (int i = 0; i < n; ++i) coding.states_v[static_cast<std::size_t>(i)] = 1;
    single.points.push_back({n, total_power(spec, coding).total_watts, ""});
    for (int i = 0; i < n; ++i) coding.states_h[static_cast<std::size_t>(i)] = 1;
    dual.points.push_back({n, total_power(spec, coding).total_watts, ""});
  }
  const fs::path single_path = scratch_dir() / "single.csv";
  const fs::path dual_path = scratch_dir() / "dual.csv";
  spill(single_path, io::serialize_dataset_csv(single));
  spill(dual_path, io::serialize_dataset_csv(dual));

  const CliResult alone = run_cli("fit --dataset \"" + single_path.string() + "\"");
  REQUIRE_EQ(alone.exit_code, 0);
  const json fit_json = json::parse(alone.out)["results"]["fit"];
  CHECK_LT(std::fabs(fit_json["slope_watts_per_unit"].get<double>() - 0.01256),
           1e-9 * 0.01256);
  CHECK_LT(std::fabs(fit_json["intercept_watts"].get<double>() - 15.73), 1e-9 * 15.73);
  CHECK_EQ(fit_json["points"], 61);

  const CliResult ratio = run_cli("fit --dataset \"" + dual_path.string() +
                                  "\" --ratio-against \"" + single_path.string() +
                                  "\" --tolerance-rel 1e-6");
  REQUIRE_EQ(ratio.exit_code, 0);
  const json ratio_json = json::parse(ratio.out)["results"]["polarization_ratio"];
  CHECK(ratio_json["pass"].get<bool>());
  CHECK_LT(std::fabs(ratio_json["ratio"].get<double>() - 2.0), 1e-9);

  // Comparing a dataset against itself puts the ratio at 1, far outside
  // tolerance: validation failure, exit code 1.
  const CliResult self_ratio = run_cli("fit --dataset \"" + single_path.string() +
                                       "\" --ratio-against \"" + single_path.string() + "\"");
  CHECK_EQ(self_ratio.exit_code, 1);
  CHECK_FALSE(
      json::parse(self_ratio.out)["results"]["polarization_ratio"]["pass"].get<bool>());
}

TEST_CASE("scale projects curves and honors the CSV format") {
  const CliResult r = run_cli("scale pin 0..1000");
  REQUIRE_EQ(r.exit_code, 0);
  const json j = json::parse(r.out);
  CHECK_EQ(j["invocation"]["subcommand"], "scale");
  CHECK_EQ(j["results"]["rows"], 1001);
  CHECK_EQ(j["results"]["device_class"], "pin_diode");
  const json& curve = j["results"]["curve"];
  CHECK_EQ(curve[0][0], 0);
  CHECK_EQ(curve[0][1].get<double>(), 4.8);
  CHECK_EQ(curve[1000][0], 1000);
  CHECK_EQ(curve[1000][1].get<double>(), 4.8 + 1000.0 * 0.01);

  const CliResult csv = run_cli("scale pin 0..1000 --format csv");
  REQUIRE_EQ(csv.exit_code, 0);
  CHECK_EQ(csv.out.rfind("n,power_watts\n", 0), 0);
  int lines = 0;
  for (char c : csv.out)
    if (c == '\n') ++lines;
  CHECK_EQ(lines, 1002);

  const CliResult flat = run_cli("scale rf 0..100000 --step 50000");
  REQUIRE_EQ(flat.exit_code, 0);
  const json flat_json = json::parse(flat.out);
  CHECK_EQ(flat_json["results"]["rows"], 3);
  for (const json& point : flat_json["results"]["curve"])
    CHECK_EQ(point[1].get<double>(), 4.8);

  const CliResult overridden =
      run_cli("scale varactor 0..10 --controller-power 2W --per-cell-coefficient 100mW");
  REQUIRE_EQ(overridden.exit_code, 0);
  const json o = json::parse(overridden.out);
  CHECK_EQ(o["results"]["assumptions"]["controller_watts"].get<double>(), 2.0);
  CHECK_EQ(o["results"]["curve"][10][1].get<double>(), 2.0 + 10.0 * 0.1);
}

TEST_CASE("scale rejects unusable ranges and classes") {
  CHECK_EQ(run_cli("scale varactor_discrete 0..10").exit_code, 2);
  CHECK_EQ(run_cli("scale pin abc").exit_code, 2);
  CHECK_EQ(run_cli("scale pin 10..0").exit_code, 2);
  CHECK_EQ(run_cli("scale pin 0..10 --step 0").exit_code, 2);
  CHECK_EQ(run_cli("scale pin 0..2000000000000").exit_code, 2);
  CHECK_EQ(run_cli("scale pin 0..10 --format xml").exit_code, 2);
}

TEST_CASE("optimize shifts an all-ON single-bit surface to all-OFF") {
  const CliResult r =
      run_cli("optimize --spec \"" + fixture("ris3.spec") + "\" --coding-preset all_ones");
  REQUIRE_EQ(r.exit_code, 0);
  const json j = json::parse(r.out);
  CHECK_EQ(j["invocation"]["subcommand"], "optimize");
  CHECK_EQ(j["results"]["offset"], 1);
  CHECK_EQ(j["results"]["bit_resolution"], 1);
  CHECK_EQ(j["results"]["on_bits_before"], 512);
  CHECK_EQ(j["results"]["on_bits_after"], 0);
  CHECK_EQ(j["results"]["power_after_watts"].get<double>(), 0.0);
  CHECK_EQ(j["results"]["savings_watts"].get<double>(), 512.0 * 0.01199);
}

TEST_CASE("optimize reads codings from files") {
  const fs::path spec_path = scratch_dir() / "pin64.spec";
  spill(spec_path,
        "device_class = pin_diode\n"
        "polarization = vertical\n"
        "cells = 64\n"
        "bit_resolution = 1\n"
        "group_size = 1\n"
        "signals_per_circuit = 1\n"
        "drive_circuit_power = 0W\n"
        "controller_power = 0W\n"
        "pin_on_bit_power = 1mW\n");
  const CliResult r = run_cli("optimize --spec \"" + spec_path.string() + "\" --coding \"" +
                              fixture("ris6_alternating.csv") + "\"");
  // Half the cells are ON; flipping cannot do better, so the offset stays 0.
  REQUIRE_EQ(r.exit_code, 0);
  const json j = json::parse(r.out);
  CHECK_EQ(j["results"]["offset"], 0);
  CHECK_EQ(j["results"]["on_bits_before"], 32);
  CHECK_EQ(j["results"]["on_bits_after"], 32);
  CHECK_EQ(j["results"]["savings_watts"].get<double>(), 0.0);
}

TEST_CASE("top-level help succeeds") {
  const CliResult r = run_cli("--help");
  CHECK_EQ(r.exit_code, 0);
  CHECK(r.out.find("compute") != std::string::npos);
  CHECK(r.out.find("validate") != std::string::npos);
}
