// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace rispower::report {

// FNV-1a over the given bytes; used to fingerprint the exact inputs an
// invocation saw. Chain calls by passing the previous hash as the seed.
std::uint64_t fnv1a64(std::string_view bytes,
                      std::uint64_t seed = 14695981039346656037ull);

std::string to_hex(std::uint64_t value);

// Every subcommand emits the same envelope: the invocation echo, a results
// object, and a list of warnings. Serialization is byte-deterministic for
// identical inputs (keys are sorted, doubles printed shortest-round-trip).
nlohmann::json make_report(std::string_view subcommand, std::uint64_t config_hash,
                           nlohmann::json results, std::vector<std::string> warnings);

std::string render(const nlohmann::json& report);  // two-space indent, trailing newline

}  // namespace rispower::report
