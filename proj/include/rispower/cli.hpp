// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace rispower::cli {

// Full command-line front end. Returns the process exit code:
// 0 success, 1 validation failure, 2 input or usage error.
int run(int argc, const char* const* argv);

}  // namespace rispower::cli
