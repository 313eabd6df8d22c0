// SPDX-License-Identifier: Apache-2.0
//
// Consistency suites for the bundled reference surfaces (ris1..ris6). Each
// suite re-derives published figures from the fixture files and checks the
// model against them. Checks marked gated decide the exit status;
// informational checks report known discrepancies without failing the run.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace rispower::validate {

struct CheckResult {
  std::string name;
  bool passed = false;
  bool gated = true;
  nlohmann::json details;
};

struct SuiteResult {
  std::string ris_id;
  std::vector<CheckResult> checks;

  bool gated_passed() const;
};

struct Tolerances {
  double abs_watts = 0.0005;  // 0.5 mW
  double rel = 0.05;
};

const std::vector<std::string>& known_fixture_ids();

// The bundled files a suite reads, for input fingerprinting. Throws on an
// unknown fixture id.
std::vector<std::filesystem::path> fixture_files(const std::string& ris_id,
                                                 const std::filesystem::path& fixtures_dir);

SuiteResult run_fixture_suite(const std::string& ris_id,
                              const std::filesystem::path& fixtures_dir,
                              const Tolerances& tol);

}  // namespace rispower::validate
