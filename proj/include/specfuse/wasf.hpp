// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The specfuse Authors

#pragma once

#include <cstddef>

#include "specfuse/tensor.hpp"
#include "specfuse/wavelet.hpp"

namespace specfuse::wasf {

/// Parameters of one wavelet-adaptive spectral fusion operator.
struct WasfParams {
    /// Radius exponent: the low-frequency disk has radius 2^n bins.
    std::size_t n = 1;
    double lambda = 0.5;
    wavelet::DwtConvParams dwt = wavelet::DwtConvParams::identity();
    /// Length k of the 1 x k and k x 1 depthwise kernels. Independent of n.
    std::size_t sep_kernel_len = 3;
    Tensor sep_row;  // 1 x 1 x k
    Tensor sep_col;  // 1 x k x 1

    double radius() const;

    /// Identity DWT stage and delta separable kernels.
    static WasfParams identity(std::size_t n, double lambda = 0.5, std::size_t sep_kernel_len = 3,
                               std::size_t dwt_depth = 2, std::size_t dwt_kernel = 3);

    /// Checks everything that does not depend on the input size.
    void validate() const;

    /// Throws ParameterError naming n and the size unless 2^n <= min(H, W) / 2.
    void check_fits(std::size_t height, std::size_t width) const;
};

/// Per channel: dwtconv, then spectral mix at radius 2^n with weight lambda,
/// then the 1 x k / k x 1 separable convolution. Shape preserving and linear.
Tensor wasf_forward(const Tensor& t, const WasfParams& p);

}  // namespace specfuse::wasf
