// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The specfuse Authors

#include "specfuse/wavelet.hpp"

#include <string>

#include "specfuse/conv.hpp"
#include "specfuse/error.hpp"

namespace specfuse::wavelet {
namespace {

std::size_t half_up(std::size_t n) { return (n + 1) / 2; }

void check_same(const Tensor& a, const Tensor& b) {
    if (!a.same_shape(b)) throw ParameterError("idwt2: subband shapes differ");
}

}  // namespace

const Tensor& Subbands::band(Band b) const {
    switch (b) {
        case Band::LL: return ll;
        case Band::LH: return lh;
        case Band::HL: return hl;
        default: return hh;
    }
}

Tensor& Subbands::band(Band b) {
    return const_cast<Tensor&>(static_cast<const Subbands&>(*this).band(b));
}

Subbands dwt2(const Tensor& t) {
    const auto h = t.height();
    const auto w = t.width();
    const auto oh = half_up(h);
    const auto ow = half_up(w);
    Subbands s{Tensor(t.channels(), oh, ow), Tensor(t.channels(), oh, ow),
               Tensor(t.channels(), oh, ow), Tensor(t.channels(), oh, ow), h, w};
    for (std::size_t c = 0; c < t.channels(); ++c) {
        for (std::size_t i = 0; i < oh; ++i) {
            const auto y0 = 2 * i;
            const auto y1 = std::min(2 * i + 1, h - 1);
            for (std::size_t j = 0; j < ow; ++j) {
                const auto x0 = 2 * j;
                const auto x1 = std::min(2 * j + 1, w - 1);
                const double a = t.at(c, y0, x0);
                const double b = t.at(c, y0, x1);
                const double cc = t.at(c, y1, x0);
                const double d = t.at(c, y1, x1);
                s.ll.at(c, i, j) = 0.5 * (a + b + cc + d);
                s.lh.at(c, i, j) = 0.5 * (a - b + cc - d);
                s.hl.at(c, i, j) = 0.5 * (a + b - cc - d);
                s.hh.at(c, i, j) = 0.5 * (a - b - cc + d);
            }
        }
    }
    return s;
}

Tensor idwt2(const Tensor& ll, const Tensor& lh, const Tensor& hl, const Tensor& hh) {
    check_same(ll, lh);
    check_same(ll, hl);
    check_same(ll, hh);
    const auto oh = ll.height();
    const auto ow = ll.width();
    Tensor out(ll.channels(), 2 * oh, 2 * ow);
    for (std::size_t c = 0; c < ll.channels(); ++c) {
        for (std::size_t i = 0; i < oh; ++i) {
            for (std::size_t j = 0; j < ow; ++j) {
                const double s0 = ll.at(c, i, j);
                const double s1 = lh.at(c, i, j);
                const double s2 = hl.at(c, i, j);
                const double s3 = hh.at(c, i, j);
                out.at(c, 2 * i, 2 * j) = 0.5 * (s0 + s1 + s2 + s3);
                out.at(c, 2 * i, 2 * j + 1) = 0.5 * (s0 - s1 + s2 - s3);
                out.at(c, 2 * i + 1, 2 * j) = 0.5 * (s0 + s1 - s2 - s3);
                out.at(c, 2 * i + 1, 2 * j + 1) = 0.5 * (s0 - s1 - s2 + s3);
            }
        }
    }
    return out;
}

Tensor idwt2(const Subbands& s) {
    auto full = idwt2(s.ll, s.lh, s.hl, s.hh);
    if (s.height == full.height() && s.width == full.width()) return full;
    if (s.height > full.height() || s.width > full.width() || s.height + 1 < full.height() ||
        s.width + 1 < full.width()) {
        throw ParameterError("idwt2: recorded source size inconsistent with subbands");
    }
    Tensor out(full.channels(), s.height, s.width);
    for (std::size_t c = 0; c < out.channels(); ++c) {
        for (std::size_t y = 0; y < s.height; ++y) {
            for (std::size_t x = 0; x < s.width; ++x) out.at(c, y, x) = full.at(c, y, x);
        }
    }
    return out;
}

void check_depth(std::size_t depth, std::size_t height, std::size_t width) {
    const auto extent = std::min(height, width);
    if (depth == 0 || depth >= 8 * sizeof(std::size_t) || (std::size_t{1} << depth) > extent) {
        throw ParameterError("wavelet depth " + std::to_string(depth) + " is invalid for a " +
                             std::to_string(height) + "x" + std::to_string(width) +
                             " image (need 1 <= depth and 2^depth <= min(H, W))");
    }
}

WaveletPyramid dwt_pyramid(const Tensor& t, std::size_t depth) {
    check_depth(depth, t.height(), t.width());
    WaveletPyramid p;
    p.levels.reserve(depth);
    p.levels.push_back(dwt2(t));
    for (std::size_t l = 1; l < depth; ++l) p.levels.push_back(dwt2(p.levels.back().ll));
    return p;
}

Tensor idwt_pyramid(const WaveletPyramid& p) {
    if (p.levels.empty()) throw ParameterError("idwt_pyramid: empty pyramid");
    Tensor current = p.levels.back().ll;
    for (auto it = p.levels.rbegin(); it != p.levels.rend(); ++it) {
        Subbands level{current, it->lh, it->hl, it->hh, it->height, it->width};
        current = idwt2(level);
    }
    return current;
}

DwtConvParams DwtConvParams::identity(std::size_t depth, std::size_t kernel_size) {
    DwtConvParams p = zeros(depth, kernel_size);
    for (auto& level : p.level_kernels) {
        for (auto& k : level) k = conv::delta_kernel(kernel_size, kernel_size);
    }
    return p;
}

DwtConvParams DwtConvParams::zeros(std::size_t depth, std::size_t kernel_size) {
    if (kernel_size % 2 == 0) throw ParameterError("dwtconv kernel size must be odd");
    DwtConvParams p;
    p.depth = depth;
    p.kernel_size = kernel_size;
    const Tensor zero(1, kernel_size, kernel_size);
    p.level_kernels.assign(depth, {zero, zero, zero, zero});
    p.residual = zero;
    return p;
}

void DwtConvParams::validate() const {
    if (depth == 0) throw ParameterError("dwtconv depth must be at least 1");
    if (kernel_size % 2 == 0) {
        throw ParameterError("dwtconv kernel size must be odd, got " + std::to_string(kernel_size));
    }
    if (level_kernels.size() != depth) {
        throw ParameterError("dwtconv expects " + std::to_string(depth) + " kernel levels, got " +
                             std::to_string(level_kernels.size()));
    }
    auto check = [&](const Tensor& k, const std::string& name) {
        if (k.channels() != 1 || k.height() != kernel_size || k.width() != kernel_size) {
            throw ParameterError("dwtconv kernel " + name + " must be 1x" +
                                 std::to_string(kernel_size) + "x" + std::to_string(kernel_size));
        }
    };
    for (std::size_t l = 0; l < depth; ++l) {
        for (std::size_t b = 0; b < 4; ++b) {
            check(level_kernels[l][b], "level" + std::to_string(l + 1) + "." + kBandNames[b]);
        }
    }
    check(residual, "residual");
}

Tensor dwtconv(const Tensor& t, const DwtConvParams& params) {
    params.validate();
    check_depth(params.depth, t.height(), t.width());
    std::vector<Subbands> levels;
    levels.reserve(params.depth);
    Tensor current = t;
    for (std::size_t l = 0; l < params.depth; ++l) {
        auto s = dwt2(current);
        for (std::size_t b = 0; b < 4; ++b) {
            auto& band = s.band(static_cast<Band>(b));
            band = conv::depthwise(band, params.level_kernels[l][b]);
        }
        current = s.ll;
        levels.push_back(std::move(s));
    }
    for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
        it->ll = std::move(current);
        current = idwt2(*it);
    }
    const auto residual = conv::depthwise(t, params.residual);
    for (std::size_t i = 0; i < current.size(); ++i) current.data()[i] += residual.data()[i];
    return current;
}

}  // namespace specfuse::wavelet
