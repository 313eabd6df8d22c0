// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

namespace rispower::units {

// Parses a power value with an explicit unit suffix: "4.8W", "12.56mW",
// "495uW" (the UTF-8 micro sign is accepted as well). Whitespace between
// the number and the suffix is allowed. The conversion rewrites the decimal
// exponent before the single string-to-double conversion, so equivalent
// spellings ("4.8W", "4800mW", "4800000uW") parse to the same double.
// Throws std::invalid_argument on malformed input or a missing suffix.
double parse_watts(std::string_view text);

// Formats a wattage for display with an engineering suffix, e.g. "12.56 mW".
std::string format_watts(double watts);

}  // namespace rispower::units
