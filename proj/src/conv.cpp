// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The specfuse Authors

#include "specfuse/conv.hpp"

#include <string>

#include "specfuse/error.hpp"

namespace specfuse::conv {
namespace {

void check_kernel(const Tensor& k, std::size_t channels, const char* what) {
    if (k.channels() != channels || k.height() % 2 == 0 || k.width() % 2 == 0) {
        throw ParameterError(std::string(what) + ": kernel must be " + std::to_string(channels) +
                             " x odd x odd, got " + std::to_string(k.channels()) + "x" +
                             std::to_string(k.height()) + "x" + std::to_string(k.width()));
    }
}

// out += correlate(in, kernel) for one plane.
void accumulate_plane(std::span<const double> in, std::span<double> out, std::size_t h,
                      std::size_t w, std::span<const double> kernel, std::size_t kh,
                      std::size_t kw, std::size_t dilation) {
    const auto ph = static_cast<long>(dilation * (kh - 1) / 2);
    const auto pw = static_cast<long>(dilation * (kw - 1) / 2);
    const auto d = static_cast<long>(dilation);
    const auto H = static_cast<long>(h);
    const auto W = static_cast<long>(w);
    for (std::size_t i = 0; i < kh; ++i) {
        const long dy = static_cast<long>(i) * d - ph;
        for (std::size_t j = 0; j < kw; ++j) {
            const double kv = kernel[i * kw + j];
            if (kv == 0.0) continue;
            const long dx = static_cast<long>(j) * d - pw;
            const long y0 = std::max(0L, -dy);
            const long y1 = std::min(H, H - dy);
            const long x0 = std::max(0L, -dx);
            const long x1 = std::min(W, W - dx);
            for (long y = y0; y < y1; ++y) {
                const double* src = in.data() + (y + dy) * W;
                double* dst = out.data() + y * W;
                for (long x = x0; x < x1; ++x) dst[x] += kv * src[x + dx];
            }
        }
    }
}

}  // namespace

Tensor depthwise(const Tensor& input, const Tensor& kernel, std::size_t dilation) {
    check_kernel(kernel, 1, "depthwise");
    if (dilation == 0) throw ParameterError("dilation must be positive");
    Tensor out(input.channels(), input.height(), input.width());
    for (std::size_t c = 0; c < input.channels(); ++c) {
        accumulate_plane(input.channel(c), out.channel(c), input.height(), input.width(),
                         kernel.data(), kernel.height(), kernel.width(), dilation);
    }
    return out;
}

Tensor separable(const Tensor& input, const Tensor& row_kernel, const Tensor& col_kernel) {
    if (row_kernel.height() != 1 || col_kernel.width() != 1) {
        throw ParameterError("separable: expected a 1 x k row kernel and a k x 1 column kernel");
    }
    return depthwise(depthwise(input, row_kernel), col_kernel);
}

Tensor dense(const Tensor& input, const Tensor& kernels, std::size_t out_channels,
             std::size_t dilation) {
    const auto cin = input.channels();
    check_kernel(kernels, out_channels * cin, "dense");
    if (dilation == 0) throw ParameterError("dilation must be positive");
    Tensor out(out_channels, input.height(), input.width());
    const auto ksz = kernels.plane_size();
    for (std::size_t o = 0; o < out_channels; ++o) {
        for (std::size_t i = 0; i < cin; ++i) {
            accumulate_plane(input.channel(i), out.channel(o), input.height(), input.width(),
                             kernels.data().subspan((o * cin + i) * ksz, ksz), kernels.height(),
                             kernels.width(), dilation);
        }
    }
    return out;
}

Tensor pointwise(const Tensor& input, const Tensor& matrix) {
    if (matrix.channels() != 1 || matrix.width() != input.channels()) {
        throw ParameterError("pointwise: matrix is 1x" + std::to_string(matrix.height()) + "x" +
                             std::to_string(matrix.width()) + " but input has " +
                             std::to_string(input.channels()) + " channels");
    }
    const auto cout = matrix.height();
    Tensor out(cout, input.height(), input.width());
    for (std::size_t o = 0; o < cout; ++o) {
        auto dst = out.channel(o);
        for (std::size_t i = 0; i < input.channels(); ++i) {
            const double m = matrix.at(0, o, i);
            if (m == 0.0) continue;
            auto src = input.channel(i);
            for (std::size_t p = 0; p < dst.size(); ++p) dst[p] += m * src[p];
        }
    }
    return out;
}

Tensor delta_kernel(std::size_t kh, std::size_t kw) {
    Tensor k(1, kh, kw);
    k.at(0, kh / 2, kw / 2) = 1.0;
    return k;
}

}  // namespace specfuse::conv
