// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The specfuse Authors

#include "specfuse/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fft.hpp"
#include "specfuse/error.hpp"
#include "specfuse/parallel.hpp"

namespace specfuse {

Spectrum center(const Spectrum& s) {
    if (s.centered()) throw StateError("center: spectrum is already centered");
    const auto h = s.height();
    const auto w = s.width();
    Spectrum out(h, w);
    for (std::size_t u = 0; u < h; ++u) {
        for (std::size_t v = 0; v < w; ++v) out.at((u + h / 2) % h, (v + w / 2) % w) = s.at(u, v);
    }
    out.centered_ = true;
    return out;
}

Spectrum uncenter(const Spectrum& s) {
    if (!s.centered()) throw StateError("uncenter: spectrum is not centered");
    const auto h = s.height();
    const auto w = s.width();
    Spectrum out(h, w);
    for (std::size_t u = 0; u < h; ++u) {
        for (std::size_t v = 0; v < w; ++v) out.at(u, v) = s.at((u + h / 2) % h, (v + w / 2) % w);
    }
    return out;
}

}  // namespace specfuse

namespace specfuse::fourier {
namespace {

void require_single_channel(const Tensor& t, const char* op) {
    if (t.channels() != 1) {
        throw ParameterError(std::string(op) + " expects a single-channel tensor, got " +
                             std::to_string(t.channels()) + " channels");
    }
}

Tensor filter_plane(const Tensor& plane, const Mask& mask, double inside, double outside) {
    auto spec = center(dft2(plane));
    auto bins = spec.data();
    const auto gate = mask.data();
    for (std::size_t i = 0; i < bins.size(); ++i) bins[i] *= gate[i] ? inside : outside;
    return idft2(uncenter(spec));
}

}  // namespace

void SpectralMixParams::validate() const {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw ParameterError("lambda must lie in [0, 1], got " + std::to_string(lambda));
    }
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw ParameterError("radius must be positive, got " + std::to_string(radius));
    }
}

void CutoffSpec::validate() const {
    if (!(radius_fraction > 0.0 && radius_fraction <= 1.0)) {
        throw ParameterError("radius_fraction must lie in (0, 1], got " +
                             std::to_string(radius_fraction));
    }
}

double CutoffSpec::absolute_radius(std::size_t height, std::size_t width) const {
    return radius_fraction * static_cast<double>(std::min(height, width)) / 2.0;
}

Spectrum dft2(const Tensor& t) {
    require_single_channel(t, "dft2");
    std::vector<Complex> bins(t.data().begin(), t.data().end());
    detail::fft2(bins, t.height(), t.width(), false);
    return Spectrum(t.height(), t.width(), std::move(bins));
}

Tensor idft2(const Spectrum& s) {
    if (s.centered()) throw StateError("idft2: spectrum must be uncentered first");
    std::vector<Complex> bins(s.data().begin(), s.data().end());
    detail::fft2(bins, s.height(), s.width(), true);
    const double scale = 1.0 / static_cast<double>(s.size());
    std::vector<double> real(bins.size());
    double max_real = 0.0;
    double max_imag = 0.0;
    for (std::size_t i = 0; i < bins.size(); ++i) {
        real[i] = bins[i].real() * scale;
        max_real = std::max(max_real, std::abs(real[i]));
        max_imag = std::max(max_imag, std::abs(bins[i].imag() * scale));
    }
    if (!(max_imag < 1e-8 * (1.0 + max_real))) {
        throw NumericalError("idft2: imaginary residue " + std::to_string(max_imag) +
                             " exceeds tolerance; spectrum is not Hermitian");
    }
    return Tensor(1, s.height(), s.width(), std::move(real));
}

Mask radial_mask(std::size_t height, std::size_t width, double radius) {
    if (!(radius >= 0.0)) throw ParameterError("mask radius must be non-negative");
    Mask mask(height, width);
    const double r2 = radius * radius;
    const auto cu = static_cast<double>(height / 2);
    const auto cv = static_cast<double>(width / 2);
    for (std::size_t u = 0; u < height; ++u) {
        const double du = static_cast<double>(u) - cu;
        for (std::size_t v = 0; v < width; ++v) {
            const double dv = static_cast<double>(v) - cv;
            mask.set(u, v, du * du + dv * dv <= r2);
        }
    }
    return mask;
}

Mask cutoff_mask(std::size_t height, std::size_t width, const CutoffSpec& spec) {
    spec.validate();
    return radial_mask(height, width, spec.absolute_radius(height, width));
}

Tensor mask_filter(const Tensor& t, const Mask& centered_mask, double inside, double outside) {
    if (centered_mask.height() != t.height() || centered_mask.width() != t.width()) {
        throw ParameterError("mask shape does not match tensor plane");
    }
    std::vector<Tensor> planes(t.channels());
    parallel_for(t.channels(), [&](std::size_t c) {
        planes[c] = filter_plane(t.channel_tensor(c), centered_mask, inside, outside);
    });
    return stack_channels(planes);
}

SplitResult spf_split(const Tensor& t, double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw ParameterError("spf_split: radius must be positive, got " + std::to_string(radius));
    }
    const auto mask = radial_mask(t.height(), t.width(), radius);
    return {mask_filter(t, mask, 1.0, 0.0), mask_filter(t, mask, 0.0, 1.0)};
}

Tensor spf_mix(const Tensor& t, const SpectralMixParams& params) {
    params.validate();
    const auto mask = radial_mask(t.height(), t.width(), params.radius);
    return mask_filter(t, mask, params.lambda, 1.0 - params.lambda);
}

Tensor spectrum_to_tensor(const Spectrum& s) {
    Tensor out(2, s.height(), s.width());
    auto re = out.channel(0);
    auto im = out.channel(1);
    for (std::size_t i = 0; i < s.size(); ++i) {
        re[i] = s.data()[i].real();
        im[i] = s.data()[i].imag();
    }
    return out;
}

Spectrum tensor_to_spectrum(const Tensor& t) {
    if (t.channels() != 2) throw ParameterError("spectrum tensors have exactly two channels");
    std::vector<Complex> bins(t.plane_size());
    for (std::size_t i = 0; i < bins.size(); ++i) bins[i] = Complex(t.channel(0)[i], t.channel(1)[i]);
    return Spectrum(t.height(), t.width(), std::move(bins));
}

}  // namespace specfuse::fourier
