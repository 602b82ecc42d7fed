// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The specfuse Authors

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "specfuse/tensor.hpp"

namespace specfuse::wavelet {

enum class Band : std::size_t { LL = 0, LH = 1, HL = 2, HH = 3 };

inline constexpr std::array<const char*, 4> kBandNames = {"LL", "LH", "HL", "HH"};

/// One level of orthonormal 2-D Haar analysis. `height`/`width` are the
/// spatial dimensions of the analyzed signal, needed to crop odd sizes on
/// synthesis.
struct Subbands {
    Tensor ll;
    Tensor lh;
    Tensor hl;
    Tensor hh;
    std::size_t height = 0;
    std::size_t width = 0;

    const Tensor& band(Band b) const;
    Tensor& band(Band b);
};

/// Haar analysis of every channel. For a 2x2 block [a b; c d]:
///   LL = (a+b+c+d)/2, LH = (a-b+c-d)/2, HL = (a+b-c-d)/2, HH = (a-b-c+d)/2.
/// Odd extents are padded by repeating the last row/column.
Subbands dwt2(const Tensor& t);

/// Exact inverse of dwt2, cropped to the recorded source size.
Tensor idwt2(const Subbands& s);

/// Synthesis of four equally-sized subbands into a 2h x 2w tensor.
Tensor idwt2(const Tensor& ll, const Tensor& lh, const Tensor& hl, const Tensor& hh);

/// Cascade where level l+1 analyzes level l's LL. Level l holds subbands of
/// size ceil(H/2^l) x ceil(W/2^l).
struct WaveletPyramid {
    std::vector<Subbands> levels;

    std::size_t depth() const noexcept { return levels.size(); }
};

/// Throws ParameterError unless depth >= 1 and 2^depth <= min(H, W).
void check_depth(std::size_t depth, std::size_t height, std::size_t width);

WaveletPyramid dwt_pyramid(const Tensor& t, std::size_t depth);

/// Reconstructs from the deepest LL and every level's detail bands;
/// intermediate LL bands are not read.
Tensor idwt_pyramid(const WaveletPyramid& p);

/// Per-level depthwise kernels for the four subbands plus a spatial
/// residual kernel, all 1 x k x k.
struct DwtConvParams {
    std::size_t depth = 2;
    std::size_t kernel_size = 3;
    std::vector<std::array<Tensor, 4>> level_kernels;
    Tensor residual;

    /// Delta subband kernels and a zero residual: dwtconv becomes identity.
    static DwtConvParams identity(std::size_t depth = 2, std::size_t kernel_size = 3);
    static DwtConvParams zeros(std::size_t depth = 2, std::size_t kernel_size = 3);

    void validate() const;
};

/// Cascaded wavelet convolution. Analysis: at each level, decompose the
/// current signal, convolve each subband with its kernel, and continue with
/// the convolved LL. Synthesis runs bottom-up, replacing each level's LL by
/// the reconstruction from the level below. The residual convolution of the
/// input is added at the end.
Tensor dwtconv(const Tensor& t, const DwtConvParams& params);

}  // namespace specfuse::wavelet
