// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <rispower/units.hpp>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

using rispower::units::format_watts;
using rispower::units::parse_watts;

TEST_CASE("parse_watts handles each suffix") {
  CHECK_EQ(parse_watts("4.8W"), 4.8);
  CHECK_EQ(parse_watts("12.56mW"), 0.01256);
  CHECK_EQ(parse_watts("495uW"), 495e-6);
  CHECK_EQ(parse_watts("495\xC2\xB5W"), parse_watts("495uW"));
  CHECK_EQ(parse_watts("0W"), 0.0);
  CHECK_EQ(parse_watts("-2.5W"), -2.5);
  CHECK_EQ(parse_watts("+3W"), 3.0);
}

TEST_CASE("parse_watts tolerates surrounding whitespace") {
  CHECK_EQ(parse_watts("  4.8W  "), 4.8);
  CHECK_EQ(parse_watts("4.8 W"), 4.8);
  CHECK_EQ(parse_watts("12.56 mW"), 0.01256);
}

TEST_CASE("parse_watts accepts scientific notation") {
  CHECK_EQ(parse_watts("1.256e1mW"), 0.01256);
  CHECK_EQ(parse_watts("1.256E-2W"), 0.01256);
  CHECK_EQ(parse_watts("5e+2uW"), 5e-4);
}

TEST_CASE("equivalent spellings parse to identical doubles") {
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"4800mW", "4.8W"},
      {"12.56mW", "0.01256W"},
      {"0.07mW", "0.00007W"},
      {"495uW", "0.000495W"},
      {"1mW", "0.001W"},
      {"0.001mW", "0.000001W"},
      {"123456.789mW", "123.456789W"},
      {"495\xC2\xB5W", "495uW"},
      {"70uW", "0.07mW"},
  };
  for (const auto& [a, b] : pairs) {
    CAPTURE(a);
    CAPTURE(b);
    CHECK_EQ(parse_watts(a), parse_watts(b));
  }
}

TEST_CASE("parse_watts rejects malformed input") {
  CHECK_THROWS_AS(parse_watts(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_watts("   "), std::invalid_argument);
  CHECK_THROWS_AS(parse_watts("4.8"), std::invalid_argument);
  CHECK_THROWS_AS(parse_watts("W"), std::invalid_argument);
  CHECK_THROWS_AS(parse_watts("mW"), std::invalid_argument);
  CHECK_THROWS_AS(parse_watts("4.8kW"), std::invalid_argument);
  CHECK_THROWS_AS(parse_watts("4..8W"), std::invalid_argument);
  CHECK_THROWS_AS(parse_watts("4.8eW"), std::invalid_argument);
  CHECK_THROWS_AS(parse_watts("4.8e+W"), std::invalid_argument);
  CHECK_THROWS_AS(parse_watts("abcW"), std::invalid_argument);
  CHECK_THROWS_AS(parse_watts("1e999W"), std::invalid_argument);
  CHECK_THROWS_AS(parse_watts(".W"), std::invalid_argument);
}

TEST_CASE("format_watts picks an engineering suffix") {
  CHECK_EQ(format_watts(4.8), "4.8 W");
  CHECK_EQ(format_watts(0.01256), "12.56 mW");
  CHECK_EQ(format_watts(495e-6), "495 uW");
  CHECK_EQ(format_watts(0.0), "0 W");
  CHECK_EQ(format_watts(-0.002), "-2 mW");
  CHECK_EQ(format_watts(103.2), "103.2 W");
}
