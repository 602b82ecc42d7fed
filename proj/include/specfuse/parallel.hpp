// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The specfuse Authors

#pragma once

#include <cstddef>
#include <functional>

namespace specfuse {

/// Worker count from SPECFUSE_THREADS, falling back to the hardware
/// concurrency (at least 1).
std::size_t thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads. Each index
/// runs exactly once; callers write results into per-index slots so output
/// does not depend on scheduling. The exception from the lowest failing
/// index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace specfuse
