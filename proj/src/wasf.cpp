// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The specfuse Authors

#include "specfuse/wasf.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "specfuse/conv.hpp"
#include "specfuse/error.hpp"
#include "specfuse/fourier.hpp"
#include "specfuse/parallel.hpp"

namespace specfuse::wasf {

double WasfParams::radius() const { return std::ldexp(1.0, static_cast<int>(n)); }

WasfParams WasfParams::identity(std::size_t n, double lambda, std::size_t sep_kernel_len,
                                std::size_t dwt_depth, std::size_t dwt_kernel) {
    WasfParams p;
    p.n = n;
    p.lambda = lambda;
    p.dwt = wavelet::DwtConvParams::identity(dwt_depth, dwt_kernel);
    p.sep_kernel_len = sep_kernel_len;
    p.sep_row = conv::delta_kernel(1, sep_kernel_len);
    p.sep_col = conv::delta_kernel(sep_kernel_len, 1);
    return p;
}

void WasfParams::validate() const {
    if (n == 0 || n > 30) throw ParameterError("WASF radius exponent n must lie in [1, 30]");
    fourier::SpectralMixParams{lambda, radius()}.validate();
    dwt.validate();
    if (sep_kernel_len % 2 == 0) {
        throw ParameterError("WASF separable kernel length must be odd, got " +
                             std::to_string(sep_kernel_len));
    }
    if (sep_row.channels() != 1 || sep_row.height() != 1 || sep_row.width() != sep_kernel_len) {
        throw ParameterError("WASF row kernel must be 1x1x" + std::to_string(sep_kernel_len));
    }
    if (sep_col.channels() != 1 || sep_col.height() != sep_kernel_len || sep_col.width() != 1) {
        throw ParameterError("WASF column kernel must be 1x" + std::to_string(sep_kernel_len) + "x1");
    }
}

void WasfParams::check_fits(std::size_t height, std::size_t width) const {
    if (radius() > static_cast<double>(std::min(height, width)) / 2.0) {
        throw ParameterError("WASF radius 2^" + std::to_string(n) + " exceeds the Nyquist extent of a " +
                             std::to_string(height) + "x" + std::to_string(width) + " input");
    }
}

Tensor wasf_forward(const Tensor& t, const WasfParams& p) {
    p.validate();
    p.check_fits(t.height(), t.width());
    wavelet::check_depth(p.dwt.depth, t.height(), t.width());
    const fourier::SpectralMixParams mix{p.lambda, p.radius()};
    std::vector<Tensor> planes(t.channels());
    parallel_for(t.channels(), [&](std::size_t c) {
        auto enhanced = wavelet::dwtconv(t.channel_tensor(c), p.dwt);
        auto mixed = fourier::spf_mix(enhanced, mix);
        planes[c] = conv::separable(mixed, p.sep_row, p.sep_col);
    });
    return stack_channels(planes);
}

}  // namespace specfuse::wasf
