// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The specfuse Authors

#include "fft.hpp"

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

namespace specfuse::detail {
namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 Cooley-Tukey; n must be a power of two.
void fft_pow2(std::span<Complex> a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        // Twiddles evaluated directly rather than by recurrence to keep
        // rounding error independent of n.
        std::vector<Complex> tw(half);
        for (std::size_t k = 0; k < half; ++k) {
            const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(len);
            tw[k] = Complex(std::cos(ang), std::sin(ang));
        }
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const Complex u = a[i + k];
                const Complex v = a[i + k + half] * tw[k];
                a[i + k] = u + v;
                a[i + k + half] = u - v;
            }
        }
    }
}

// Bluestein chirp-z: expresses an arbitrary-length DFT as a power-of-two
// circular convolution.
void fft_bluestein(std::span<Complex> a, bool inverse) {
    const std::size_t n = a.size();
    std::size_t m = 1;
    while (m < 2 * n - 1) m <<= 1;
    const double sign = inverse ? 1.0 : -1.0;

    std::vector<Complex> chirp(n);
    for (std::size_t k = 0; k < n; ++k) {
        // k^2 mod 2n keeps the angle argument small and exact.
        const auto k2 = static_cast<double>((k * k) % (2 * n));
        const double ang = sign * std::numbers::pi * k2 / static_cast<double>(n);
        chirp[k] = Complex(std::cos(ang), std::sin(ang));
    }
    std::vector<Complex> x(m), y(m);
    for (std::size_t k = 0; k < n; ++k) x[k] = a[k] * chirp[k];
    y[0] = std::conj(chirp[0]);
    for (std::size_t k = 1; k < n; ++k) y[k] = y[m - k] = std::conj(chirp[k]);

    fft_pow2(x, false);
    fft_pow2(y, false);
    for (std::size_t i = 0; i < m; ++i) x[i] *= y[i];
    fft_pow2(x, true);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * inv_m * chirp[k];
}

}  // namespace

void fft(std::span<Complex> data, bool inverse) {
    if (data.size() <= 1) return;
    if (is_pow2(data.size())) {
        fft_pow2(data, inverse);
    } else {
        fft_bluestein(data, inverse);
    }
}

void fft2(std::span<Complex> data, std::size_t height, std::size_t width, bool inverse) {
    for (std::size_t r = 0; r < height; ++r) fft(data.subspan(r * width, width), inverse);
    std::vector<Complex> col(height);
    for (std::size_t c = 0; c < width; ++c) {
        for (std::size_t r = 0; r < height; ++r) col[r] = data[r * width + c];
        fft(col, inverse);
        for (std::size_t r = 0; r < height; ++r) data[r * width + c] = col[r];
    }
}

}  // namespace specfuse::detail
