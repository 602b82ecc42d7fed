// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The specfuse Authors

#pragma once

#include <cstddef>

#include "specfuse/tensor.hpp"

// Bias-free cross-correlations with zero "same" padding, stride 1. Kernels
// must have odd extents; a kernel of extent k with dilation d is padded by
// d * (k - 1) / 2 on each side so output and input planes match in size.
namespace specfuse::conv {

/// Applies one 1 x kh x kw kernel to every channel of `input` independently.
Tensor depthwise(const Tensor& input, const Tensor& kernel, std::size_t dilation = 1);

/// Row pass with a 1 x 1 x k kernel followed by a column pass with a
/// 1 x k x 1 kernel, both depthwise.
Tensor separable(const Tensor& input, const Tensor& row_kernel, const Tensor& col_kernel);

/// Dense convolution. `kernels` is (out_channels * in_channels) x k x k with
/// filter (o, i) stored at channel o * in_channels + i.
Tensor dense(const Tensor& input, const Tensor& kernels, std::size_t out_channels,
             std::size_t dilation = 1);

/// 1x1 convolution; `matrix` is 1 x out_channels x in_channels.
Tensor pointwise(const Tensor& input, const Tensor& matrix);

/// 1 x k x k kernel with a single 1 at the center.
Tensor delta_kernel(std::size_t kh, std::size_t kw);

}  // namespace specfuse::conv
