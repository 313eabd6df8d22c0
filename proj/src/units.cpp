// SPDX-License-Identifier: Apache-2.0
#include "rispower/units.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace rispower::units {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(std::string_view text, std::string_view why) {
  throw std::invalid_argument("bad power value '" + std::string(text) + "': " + std::string(why));
}

// Splits a plain decimal number, optionally with an exponent, into its
// mantissa and decimal exponent. Only [+-], digits, '.', and e/E are
// accepted; at least one digit must appear in the mantissa.
struct Decimal {
  std::string_view mantissa;
  int exponent = 0;
};

Decimal split_decimal(std::string_view full, std::string_view number) {
  Decimal out;
  std::size_t epos = number.find_first_of("eE");
  out.mantissa = number.substr(0, epos);
  if (epos != std::string_view::npos) {
    std::string_view exp = number.substr(epos + 1);
    if (exp.empty()) fail(full, "empty exponent");
    const char* first = exp.data();
    const char* last = exp.data() + exp.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, out.exponent);
    if (ec != std::errc() || ptr != last) fail(full, "malformed exponent");
  }
  std::string_view m = out.mantissa;
  if (!m.empty() && (m.front() == '+' || m.front() == '-')) m.remove_prefix(1);
  bool digit_seen = false;
  bool dot_seen = false;
  for (char c : m) {
    if (c >= '0' && c <= '9') {
      digit_seen = true;
    } else if (c == '.') {
      if (dot_seen) fail(full, "repeated decimal point");
      dot_seen = true;
    } else {
      fail(full, "malformed number");
    }
  }
  if (!digit_seen) fail(full, "no digits");
  return out;
}

}  // namespace

double parse_watts(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) fail(text, "empty");
  if (s.back() != 'W') fail(text, "missing unit suffix (expected W, mW, or uW)");
  s.remove_suffix(1);

  int scale = 0;
  if (!s.empty() && s.back() == 'm') {
    scale = -3;
    s.remove_suffix(1);
  } else if (!s.empty() && s.back() == 'u') {
    scale = -6;
    s.remove_suffix(1);
  } else if (s.size() >= 2 && static_cast<unsigned char>(s[s.size() - 2]) == 0xC2 &&
             static_cast<unsigned char>(s[s.size() - 1]) == 0xB5) {
    scale = -6;
    s.remove_suffix(2);
  }

  std::string_view number = trim(s);
  if (number.empty()) fail(text, "no number before the unit");

  // Fold the unit scale into the decimal exponent and convert once, so the
  // result is the correctly rounded double of the written value.
  Decimal dec = split_decimal(text, number);
  long long exponent = static_cast<long long>(dec.exponent) + scale;
  std::string rewritten(dec.mantissa);
  rewritten += 'e';
  rewritten += std::to_string(exponent);

  errno = 0;
  char* end = nullptr;
  double value = std::strtod(rewritten.c_str(), &end);
  if (end != rewritten.c_str() + rewritten.size()) fail(text, "malformed number");
  if (!std::isfinite(value)) fail(text, "out of range");
  return value;
}

std::string format_watts(double watts) {
  double magnitude = std::fabs(watts);
  const char* suffix = "W";
  double scaled = watts;
  if (magnitude > 0 && magnitude < 1e-3) {
    suffix = "uW";
    scaled = watts * 1e6;
  } else if (magnitude > 0 && magnitude < 1.0) {
    suffix = "mW";
    scaled = watts * 1e3;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g %s", scaled, suffix);
  return buf;
}

}  // namespace rispower::units
