// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The specfuse Authors

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "specfuse/tensor.hpp"
#include "specfuse/wasf.hpp"

namespace specfuse::pfb {

inline constexpr std::size_t kBranchCount = 4;
inline constexpr std::array<std::size_t, kBranchCount> kDilations = {1, 3, 5, 7};

enum class Nonlinearity { none, relu };
enum class CreationMode { seeded, identity, loaded };

const char* to_string(CreationMode m);

/// Knuth's MMIX 64-bit LCG: state' = state * 6364136223846793005 +
/// 1442695040888963407 (mod 2^64), state initialized to the seed. A draw
/// advances the state and maps its top 53 bits to u in [0, 1); parameters
/// take the value -0.1 + 0.2 * u.
class SeededUniform {
public:
    explicit SeededUniform(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() noexcept {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return state_;
    }
    double next_unit() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1p-53; }
    double next_weight() noexcept { return -0.1 + 0.2 * next_unit(); }

private:
    std::uint64_t state_;
};

struct Branch {
    Tensor proj;     // 1 x mid x in
    wasf::WasfParams wasf;
    Tensor dilated;  // (mid * mid) x 3 x 3
    std::size_t dilation = 1;
};

struct PfbWeights {
    std::size_t in_channels = 0;
    std::size_t mid_channels = 64;
    std::size_t out_channels = 0;
    std::array<Branch, kBranchCount> branches;
    Tensor fuse;      // 1 x out x (4 * mid)
    Tensor shortcut;  // 1 x out x in
    Nonlinearity nonlinearity = Nonlinearity::relu;

    std::uint64_t seed = 0;
    CreationMode mode = CreationMode::loaded;

    /// Throws ParameterError on any shape or dilation inconsistency.
    void validate() const;
};

/// Knobs for building weights. Branch j (0-based) uses radius 2^exponent[j]
/// and separable kernels of length sep_kernel_lens[j].
struct PfbConfig {
    std::size_t in_channels = 1;
    std::size_t mid_channels = 64;
    std::size_t out_channels = 1;
    std::array<std::size_t, kBranchCount> radius_exponents = {1, 2, 3, 4};
    std::array<std::size_t, kBranchCount> sep_kernel_lens = {3, 5, 7, 9};
    std::size_t dwt_depth = 2;
    std::size_t dwt_kernel = 3;
    double lambda = 0.5;
    Nonlinearity nonlinearity = Nonlinearity::relu;
};

/// Every kernel drawn from SeededUniform(seed) in a fixed order: for each
/// branch, proj, DWT level kernels (LL, LH, HL, HH per level), DWT residual,
/// separable row, separable column, dilated; then fuse and shortcut. Each
/// tensor is filled in row-major order. Lambdas come from the config.
PfbWeights weights_seeded(std::uint64_t seed, const PfbConfig& config);
PfbWeights weights_seeded(std::uint64_t seed, std::size_t in_channels, std::size_t mid_channels,
                          std::size_t out_channels);

/// Zero branch projections and fuse, identity shortcut, identity WASF
/// stages, no nonlinearity. Requires in_channels == out_channels.
PfbWeights weights_identity(const PfbConfig& config);

/// Forward pass: per branch 1x1 projection, WASF, dilated 3x3 convolution;
/// concatenation, 1x1 fuse, plus 1x1 shortcut of the input, then the
/// nonlinearity. Spatial size is preserved.
Tensor pfb_forward(const Tensor& t, const PfbWeights& w);

/// Named parameter map. Names follow "branch{1..4}.<stage>.<param>",
/// "fuse.kernel", "shortcut.kernel", plus "config.*" and "meta.*" entries.
struct WeightBundle {
    std::map<std::string, Tensor> entries;
};

WeightBundle to_bundle(const PfbWeights& w);

/// Throws FormatError listing missing or unexpected names.
PfbWeights from_bundle(const WeightBundle& b);

/// "PFBW" | u32 entry count | entries of (u16 name length, UTF-8 name,
/// SFT1 record). Entries are written in lexicographic name order.
std::string encode_bundle(const WeightBundle& b);
WeightBundle decode_bundle(std::string_view bytes);

void weights_save(const PfbWeights& w, const std::filesystem::path& path);
PfbWeights weights_load(const std::filesystem::path& path);

}  // namespace specfuse::pfb
