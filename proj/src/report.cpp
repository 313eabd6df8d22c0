// SPDX-License-Identifier: Apache-2.0
#include "rispower/report.hpp"

namespace rispower::report {

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t hash = seed;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string to_hex(std::uint64_t value) {
  static const char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[value & 0xF];
    value >>= 4;
  }
  return out;
}

nlohmann::json make_report(std::string_view subcommand, std::uint64_t config_hash,
                           nlohmann::json results, std::vector<std::string> warnings) {
  return {{"invocation", {{"subcommand", subcommand}, {"config_hash", to_hex(config_hash)}}},
          {"results", std::move(results)},
          {"warnings", warnings}};
}

std::string render(const nlohmann::json& report) {
  return report.dump(2) + "\n";
}

}  // namespace rispower::report
