// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The specfuse Authors

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace specfuse::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (args[0] is the program name). Normal output
/// goes to `out`, diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Deterministic synthetic grayscale test images (gratings, blobs, edges,
/// noise), `count` of them at size x size.
void write_synthetic_images(const std::filesystem::path& dir, int count, int size);

}  // namespace specfuse::cli
