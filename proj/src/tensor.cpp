// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The specfuse Authors

#include "specfuse/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "specfuse/error.hpp"

namespace specfuse {
namespace {

std::size_t checked_volume(std::size_t c, std::size_t h, std::size_t w) {
    if (c == 0 || h == 0 || w == 0) {
        throw ParameterError("tensor dimensions must be positive, got " + std::to_string(c) + "x" +
                             std::to_string(h) + "x" + std::to_string(w));
    }
    constexpr auto kMax = std::numeric_limits<std::size_t>::max() / sizeof(double);
    if (h > kMax / w || c > kMax / (h * w)) {
        throw SizeError("tensor dimension product overflows");
    }
    return c * h * w;
}

std::size_t checked_area(std::size_t h, std::size_t w, const char* what) {
    if (h == 0 || w == 0) {
        throw ParameterError(std::string(what) + " dimensions must be positive");
    }
    if (h > std::numeric_limits<std::size_t>::max() / sizeof(Complex) / w) {
        throw SizeError(std::string(what) + " dimension product overflows");
    }
    return h * w;
}

}  // namespace

Tensor::Tensor(std::size_t channels, std::size_t height, std::size_t width)
    : channels_(channels), height_(height), width_(width),
      data_(checked_volume(channels, height, width), 0.0) {}

Tensor::Tensor(std::size_t channels, std::size_t height, std::size_t width, std::vector<double> data)
    : channels_(channels), height_(height), width_(width), data_(std::move(data)) {
    if (data_.size() != checked_volume(channels, height, width)) {
        throw SizeError("tensor data length " + std::to_string(data_.size()) + " does not match " +
                        std::to_string(channels) + "x" + std::to_string(height) + "x" +
                        std::to_string(width));
    }
}

Tensor Tensor::channel_tensor(std::size_t c) const {
    auto plane = channel(c);
    return Tensor(1, height_, width_, std::vector<double>(plane.begin(), plane.end()));
}

bool Tensor::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Tensor stack_channels(std::span<const Tensor> planes) {
    if (planes.empty()) throw ParameterError("cannot stack zero planes");
    const auto h = planes.front().height();
    const auto w = planes.front().width();
    std::size_t total = 0;
    for (const auto& p : planes) {
        if (p.height() != h || p.width() != w) throw ParameterError("stacked planes differ in size");
        total += p.channels();
    }
    std::vector<double> data;
    data.reserve(total * h * w);
    for (const auto& p : planes) data.insert(data.end(), p.data().begin(), p.data().end());
    return Tensor(total, h, w, std::move(data));
}

double max_abs_diff(const Tensor& a, const Tensor& b) {
    if (!a.same_shape(b)) throw ParameterError("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

double energy(const Tensor& t) {
    double s = 0.0;
    for (double v : t.data()) s += v * v;
    return s;
}

Tensor axpby(double a, const Tensor& x, double b, const Tensor& y) {
    if (!x.same_shape(y)) throw ParameterError("axpby: shape mismatch");
    Tensor out(x.channels(), x.height(), x.width());
    for (std::size_t i = 0; i < x.size(); ++i) out.data()[i] = a * x.data()[i] + b * y.data()[i];
    return out;
}

Spectrum::Spectrum(std::size_t height, std::size_t width)
    : height_(height), width_(width), data_(checked_area(height, width, "spectrum")) {}

Spectrum::Spectrum(std::size_t height, std::size_t width, std::vector<Complex> data)
    : height_(height), width_(width), data_(std::move(data)) {
    if (data_.size() != checked_area(height, width, "spectrum")) {
        throw SizeError("spectrum data length does not match its dimensions");
    }
}

Mask::Mask(std::size_t height, std::size_t width)
    : height_(height), width_(width), data_(checked_area(height, width, "mask"), 0) {}

Mask::Mask(std::size_t height, std::size_t width, std::vector<std::uint8_t> data)
    : height_(height), width_(width), data_(std::move(data)) {
    if (data_.size() != checked_area(height, width, "mask")) {
        throw SizeError("mask data length does not match its dimensions");
    }
    for (auto& v : data_) {
        if (v > 1) throw ParameterError("mask values must be 0 or 1");
    }
}

std::size_t Mask::count() const noexcept {
    return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), std::uint8_t{1}));
}

}  // namespace specfuse
