// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The specfuse Authors

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace specfuse {

using Complex = std::complex<double>;

/// Dense rank-3 real array laid out row-major as (channel, row, column).
class Tensor {
public:
    Tensor() = default;

    /// Zero-filled tensor. Throws ParameterError on a zero dimension and
    /// SizeError if the element count overflows.
    Tensor(std::size_t channels, std::size_t height, std::size_t width);

    /// Takes ownership of `data`; its length must equal channels*height*width.
    Tensor(std::size_t channels, std::size_t height, std::size_t width, std::vector<double> data);

    std::size_t channels() const noexcept { return channels_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t width() const noexcept { return width_; }
    std::size_t plane_size() const noexcept { return height_ * width_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double& at(std::size_t c, std::size_t y, std::size_t x) noexcept {
        return data_[(c * height_ + y) * width_ + x];
    }
    double at(std::size_t c, std::size_t y, std::size_t x) const noexcept {
        return data_[(c * height_ + y) * width_ + x];
    }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }
    const std::vector<double>& values() const noexcept { return data_; }

    std::span<double> channel(std::size_t c) noexcept {
        return std::span<double>(data_).subspan(c * plane_size(), plane_size());
    }
    std::span<const double> channel(std::size_t c) const noexcept {
        return std::span<const double>(data_).subspan(c * plane_size(), plane_size());
    }

    /// Copy of channel `c` as a single-channel tensor.
    Tensor channel_tensor(std::size_t c) const;

    bool same_shape(const Tensor& other) const noexcept {
        return channels_ == other.channels_ && height_ == other.height_ && width_ == other.width_;
    }

    bool all_finite() const noexcept;

    friend bool operator==(const Tensor&, const Tensor&) = default;

private:
    std::size_t channels_ = 0;
    std::size_t height_ = 0;
    std::size_t width_ = 0;
    std::vector<double> data_;
};

/// Stacks single-channel planes (all of equal spatial size) into one tensor.
Tensor stack_channels(std::span<const Tensor> planes);

/// Largest absolute elementwise difference; shapes must match.
double max_abs_diff(const Tensor& a, const Tensor& b);

/// Sum of squares of all elements.
double energy(const Tensor& t);

/// Elementwise a*x + b*y.
Tensor axpby(double a, const Tensor& x, double b, const Tensor& y);

/// Complex height x width array. The `centered` flag records whether the
/// DC bin has been moved to the array center and is changed only by
/// center() and uncenter().
class Spectrum {
public:
    Spectrum() = default;
    Spectrum(std::size_t height, std::size_t width);
    Spectrum(std::size_t height, std::size_t width, std::vector<Complex> data);

    std::size_t height() const noexcept { return height_; }
    std::size_t width() const noexcept { return width_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool centered() const noexcept { return centered_; }

    Complex& at(std::size_t u, std::size_t v) noexcept { return data_[u * width_ + v]; }
    Complex at(std::size_t u, std::size_t v) const noexcept { return data_[u * width_ + v]; }

    std::span<Complex> data() noexcept { return data_; }
    std::span<const Complex> data() const noexcept { return data_; }

    friend bool operator==(const Spectrum&, const Spectrum&) = default;

private:
    friend Spectrum center(const Spectrum&);
    friend Spectrum uncenter(const Spectrum&);

    std::size_t height_ = 0;
    std::size_t width_ = 0;
    std::vector<Complex> data_;
    bool centered_ = false;
};

/// Binary height x width gate, 1 = pass.
class Mask {
public:
    Mask() = default;
    Mask(std::size_t height, std::size_t width);
    Mask(std::size_t height, std::size_t width, std::vector<std::uint8_t> data);

    std::size_t height() const noexcept { return height_; }
    std::size_t width() const noexcept { return width_; }
    std::size_t size() const noexcept { return data_.size(); }

    bool at(std::size_t u, std::size_t v) const noexcept { return data_[u * width_ + v] != 0; }
    void set(std::size_t u, std::size_t v, bool on) noexcept { data_[u * width_ + v] = on ? 1 : 0; }
    std::span<const std::uint8_t> data() const noexcept { return data_; }

    std::size_t count() const noexcept;

    friend bool operator==(const Mask&, const Mask&) = default;

private:
    std::size_t height_ = 0;
    std::size_t width_ = 0;
    std::vector<std::uint8_t> data_;
};

}  // namespace specfuse
