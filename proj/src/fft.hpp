// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The specfuse Authors

#pragma once

#include <cstddef>
#include <span>

#include "specfuse/tensor.hpp"

namespace specfuse::detail {

/// In-place unnormalized 1-D DFT of any length. `inverse` flips the sign of
/// the exponent; no 1/N factor is applied in either direction.
void fft(std::span<Complex> data, bool inverse);

/// In-place unnormalized 2-D DFT of a row-major height x width array.
void fft2(std::span<Complex> data, std::size_t height, std::size_t width, bool inverse);

}  // namespace specfuse::detail
