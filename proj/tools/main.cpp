// SPDX-License-Identifier: Apache-2.0
#include "rispower/cli.hpp"

int main(int argc, char** argv) { return rispower::cli::run(argc, argv); }
