// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The specfuse Authors

#pragma once

#include <cstddef>

#include "specfuse/tensor.hpp"

namespace specfuse {

/// Cyclic shift by (floor(H/2), floor(W/2)) moving the DC bin to the array
/// center. Throws StateError if `s` is already centered.
Spectrum center(const Spectrum& s);

/// Inverse of center(). Throws StateError if `s` is not centered.
Spectrum uncenter(const Spectrum& s);

}  // namespace specfuse

namespace specfuse::fourier {

using specfuse::center;
using specfuse::uncenter;

/// Balance weight and low-frequency disk radius (in frequency bins) for the
/// spectral pooling mix.
struct SpectralMixParams {
    double lambda = 0.5;
    double radius = 1.0;

    /// Throws ParameterError unless 0 <= lambda <= 1 and radius > 0.
    void validate() const;
};

/// Cutoff radius as a fraction of the largest representable radius
/// min(H, W) / 2.
struct CutoffSpec {
    double radius_fraction = 1.0;

    /// Throws ParameterError unless 0 < radius_fraction <= 1.
    void validate() const;
    double absolute_radius(std::size_t height, std::size_t width) const;
};

/// Unnormalized forward 2-D DFT of a single-channel tensor.
Spectrum dft2(const Tensor& t);

/// Inverse 2-D DFT with the 1/(H*W) factor. The spectrum must be uncentered.
/// Throws NumericalError when the imaginary residue exceeds
/// 1e-8 * (1 + max|real|), which only happens for non-Hermitian input.
Tensor idft2(const Spectrum& s);

/// Disk mask on the centered grid: bin (u, v) passes iff its distance from
/// (floor(H/2), floor(W/2)) is <= `radius`. Any radius >= 0 is accepted.
Mask radial_mask(std::size_t height, std::size_t width, double radius);

/// radial_mask with R = radius_fraction * min(H, W) / 2.
Mask cutoff_mask(std::size_t height, std::size_t width, const CutoffSpec& spec);

/// Per channel: transform, center, scale bins inside the centered mask by
/// `inside` and the rest by `outside`, uncenter, invert (one inverse
/// transform per channel).
Tensor mask_filter(const Tensor& t, const Mask& centered_mask, double inside, double outside);

struct SplitResult {
    Tensor low;
    Tensor high;
};

/// Low/high decomposition about a disk of `radius` bins; low + high == t.
SplitResult spf_split(const Tensor& t, double radius);

/// lambda * low + (1 - lambda) * high, evaluated by mixing in the frequency
/// domain and applying a single inverse transform.
Tensor spf_mix(const Tensor& t, const SpectralMixParams& params);

/// Two-channel (real, imag) tensor view of a spectrum, for dumping.
Tensor spectrum_to_tensor(const Spectrum& s);
Spectrum tensor_to_spectrum(const Tensor& t);

}  // namespace specfuse::fourier
