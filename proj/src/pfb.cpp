// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The specfuse Authors

#include "specfuse/pfb.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <vector>

#include "specfuse/conv.hpp"
#include "specfuse/error.hpp"
#include "specfuse/io.hpp"
#include "specfuse/wavelet.hpp"

namespace specfuse::pfb {
namespace {

constexpr std::string_view kBundleMagic = "PFBW";

std::string branch_prefix(std::size_t j) { return "branch" + std::to_string(j + 1) + "."; }

std::string dwt_kernel_name(std::size_t j, std::size_t level, std::size_t band) {
    std::string b = wavelet::kBandNames[band];
    std::transform(b.begin(), b.end(), b.begin(), [](unsigned char c) { return std::tolower(c); });
    return branch_prefix(j) + "wasf.dwt.level" + std::to_string(level + 1) + "." + b;
}

void fill(Tensor& t, SeededUniform& rng) {
    for (double& v : t.data()) v = rng.next_weight();
}

Tensor scalar_tensor(std::initializer_list<double> values) {
    return Tensor(1, 1, values.size(), std::vector<double>(values));
}

void require_shape(const Tensor& t, std::size_t c, std::size_t h, std::size_t w,
                   const std::string& name) {
    if (t.channels() != c || t.height() != h || t.width() != w) {
        throw ParameterError(name + " must be " + std::to_string(c) + "x" + std::to_string(h) + "x" +
                             std::to_string(w) + ", got " + std::to_string(t.channels()) + "x" +
                             std::to_string(t.height()) + "x" + std::to_string(t.width()));
    }
}

void check_config(const PfbConfig& c) {
    if (c.in_channels == 0 || c.mid_channels == 0 || c.out_channels == 0) {
        throw ParameterError("PFB channel counts must be positive");
    }
}

Branch empty_branch(const PfbConfig& c, std::size_t j) {
    Branch b;
    b.proj = Tensor(1, c.mid_channels, c.in_channels);
    b.wasf = wasf::WasfParams::identity(c.radius_exponents[j], c.lambda, c.sep_kernel_lens[j],
                                        c.dwt_depth, c.dwt_kernel);
    b.dilated = Tensor(c.mid_channels * c.mid_channels, 3, 3);
    b.dilation = kDilations[j];
    return b;
}

// ---- bundle decoding helpers

std::uint64_t as_count(const Tensor& t, std::size_t i, const std::string& name) {
    const double v = t.data()[i];
    if (!(v >= 0.0 && v <= 9007199254740992.0) || std::floor(v) != v) {
        throw FormatError("bundle entry " + name + " must hold non-negative integers");
    }
    return static_cast<std::uint64_t>(v);
}

const Tensor& lookup(const WeightBundle& b, const std::string& name, std::size_t min_len = 1) {
    auto it = b.entries.find(name);
    if (it == b.entries.end()) throw FormatError("weight bundle is missing parameter '" + name + "'");
    if (it->second.size() < min_len) throw FormatError("bundle entry " + name + " is too short");
    return it->second;
}

}  // namespace

const char* to_string(CreationMode m) {
    switch (m) {
        case CreationMode::seeded: return "seeded";
        case CreationMode::identity: return "identity";
        default: return "loaded";
    }
}

void PfbWeights::validate() const {
    if (in_channels == 0 || mid_channels == 0 || out_channels == 0) {
        throw ParameterError("PFB channel counts must be positive");
    }
    for (std::size_t j = 0; j < kBranchCount; ++j) {
        const auto& b = branches[j];
        const auto prefix = branch_prefix(j);
        if (b.dilation != kDilations[j]) {
            throw ParameterError(prefix + "dilation must be " + std::to_string(kDilations[j]));
        }
        require_shape(b.proj, 1, mid_channels, in_channels, prefix + "proj.kernel");
        require_shape(b.dilated, mid_channels * mid_channels, 3, 3, prefix + "dilated.kernel");
        b.wasf.validate();
    }
    require_shape(fuse, 1, out_channels, kBranchCount * mid_channels, "fuse.kernel");
    require_shape(shortcut, 1, out_channels, in_channels, "shortcut.kernel");
}

PfbWeights weights_seeded(std::uint64_t seed, const PfbConfig& config) {
    check_config(config);
    SeededUniform rng(seed);
    PfbWeights w;
    w.in_channels = config.in_channels;
    w.mid_channels = config.mid_channels;
    w.out_channels = config.out_channels;
    w.nonlinearity = config.nonlinearity;
    w.seed = seed;
    w.mode = CreationMode::seeded;
    for (std::size_t j = 0; j < kBranchCount; ++j) {
        auto& b = w.branches[j];
        b = empty_branch(config, j);
        fill(b.proj, rng);
        for (auto& level : b.wasf.dwt.level_kernels) {
            for (auto& k : level) fill(k, rng);
        }
        fill(b.wasf.dwt.residual, rng);
        fill(b.wasf.sep_row, rng);
        fill(b.wasf.sep_col, rng);
        fill(b.dilated, rng);
    }
    w.fuse = Tensor(1, config.out_channels, kBranchCount * config.mid_channels);
    w.shortcut = Tensor(1, config.out_channels, config.in_channels);
    fill(w.fuse, rng);
    fill(w.shortcut, rng);
    w.validate();
    return w;
}

PfbWeights weights_seeded(std::uint64_t seed, std::size_t in_channels, std::size_t mid_channels,
                          std::size_t out_channels) {
    PfbConfig config;
    config.in_channels = in_channels;
    config.mid_channels = mid_channels;
    config.out_channels = out_channels;
    return weights_seeded(seed, config);
}

PfbWeights weights_identity(const PfbConfig& config) {
    check_config(config);
    if (config.in_channels != config.out_channels) {
        throw ParameterError("identity PFB weights need in_channels == out_channels");
    }
    PfbWeights w;
    w.in_channels = config.in_channels;
    w.mid_channels = config.mid_channels;
    w.out_channels = config.out_channels;
    w.nonlinearity = Nonlinearity::none;
    w.mode = CreationMode::identity;
    for (std::size_t j = 0; j < kBranchCount; ++j) w.branches[j] = empty_branch(config, j);
    w.fuse = Tensor(1, config.out_channels, kBranchCount * config.mid_channels);
    w.shortcut = Tensor(1, config.out_channels, config.in_channels);
    for (std::size_t c = 0; c < config.in_channels; ++c) w.shortcut.at(0, c, c) = 1.0;
    w.validate();
    return w;
}

Tensor pfb_forward(const Tensor& t, const PfbWeights& w) {
    w.validate();
    if (t.channels() != w.in_channels) {
        throw ParameterError("PFB expects " + std::to_string(w.in_channels) + " input channels, got " +
                             std::to_string(t.channels()));
    }
    for (const auto& b : w.branches) {
        b.wasf.check_fits(t.height(), t.width());
        wavelet::check_depth(b.wasf.dwt.depth, t.height(), t.width());
    }
    std::vector<Tensor> branch_out(kBranchCount);
    for (std::size_t j = 0; j < kBranchCount; ++j) {
        const auto& b = w.branches[j];
        auto projected = conv::pointwise(t, b.proj);
        auto fused = wasf::wasf_forward(projected, b.wasf);
        branch_out[j] = conv::dense(fused, b.dilated, w.mid_channels, b.dilation);
    }
    auto out = conv::pointwise(stack_channels(branch_out), w.fuse);
    const auto skip = conv::pointwise(t, w.shortcut);
    for (std::size_t i = 0; i < out.size(); ++i) {
        double v = out.data()[i] + skip.data()[i];
        if (w.nonlinearity == Nonlinearity::relu) v = std::max(v, 0.0);
        out.data()[i] = v;
    }
    return out;
}

WeightBundle to_bundle(const PfbWeights& w) {
    w.validate();
    WeightBundle b;
    auto& e = b.entries;
    e["meta.seed"] = scalar_tensor({static_cast<double>(w.seed & 0xFFFF),
                                    static_cast<double>((w.seed >> 16) & 0xFFFF),
                                    static_cast<double>((w.seed >> 32) & 0xFFFF),
                                    static_cast<double>((w.seed >> 48) & 0xFFFF)});
    e["meta.mode"] = scalar_tensor({static_cast<double>(static_cast<int>(w.mode))});
    e["config.channels"] = scalar_tensor({static_cast<double>(w.in_channels),
                                          static_cast<double>(w.mid_channels),
                                          static_cast<double>(w.out_channels)});
    e["config.nonlinearity"] =
        scalar_tensor({w.nonlinearity == Nonlinearity::relu ? 1.0 : 0.0});
    for (std::size_t j = 0; j < kBranchCount; ++j) {
        const auto& br = w.branches[j];
        const auto p = branch_prefix(j);
        e[p + "proj.kernel"] = br.proj;
        e[p + "wasf.n"] = scalar_tensor({static_cast<double>(br.wasf.n)});
        e[p + "wasf.lambda"] = scalar_tensor({br.wasf.lambda});
        e[p + "wasf.dwt.shape"] = scalar_tensor({static_cast<double>(br.wasf.dwt.depth),
                                                 static_cast<double>(br.wasf.dwt.kernel_size)});
        for (std::size_t l = 0; l < br.wasf.dwt.depth; ++l) {
            for (std::size_t band = 0; band < 4; ++band) {
                e[dwt_kernel_name(j, l, band)] = br.wasf.dwt.level_kernels[l][band];
            }
        }
        e[p + "wasf.dwt.residual"] = br.wasf.dwt.residual;
        e[p + "wasf.sep.row"] = br.wasf.sep_row;
        e[p + "wasf.sep.col"] = br.wasf.sep_col;
        e[p + "dilated.kernel"] = br.dilated;
    }
    e["fuse.kernel"] = w.fuse;
    e["shortcut.kernel"] = w.shortcut;
    return b;
}

PfbWeights from_bundle(const WeightBundle& b) {
    std::set<std::string> used;
    auto get = [&](const std::string& name, std::size_t min_len = 1) -> const Tensor& {
        used.insert(name);
        return lookup(b, name, min_len);
    };

    PfbWeights w;
    const auto& seed = get("meta.seed", 4);
    w.seed = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        const auto chunk = as_count(seed, i, "meta.seed");
        if (chunk > 0xFFFF) throw FormatError("bundle entry meta.seed has an out-of-range chunk");
        w.seed |= chunk << (16 * i);
    }
    const auto mode = as_count(get("meta.mode"), 0, "meta.mode");
    if (mode > 2) throw FormatError("bundle entry meta.mode is out of range");
    w.mode = static_cast<CreationMode>(mode);
    const auto& channels = get("config.channels", 3);
    w.in_channels = as_count(channels, 0, "config.channels");
    w.mid_channels = as_count(channels, 1, "config.channels");
    w.out_channels = as_count(channels, 2, "config.channels");
    w.nonlinearity = as_count(get("config.nonlinearity"), 0, "config.nonlinearity") != 0
                         ? Nonlinearity::relu
                         : Nonlinearity::none;

    for (std::size_t j = 0; j < kBranchCount; ++j) {
        auto& br = w.branches[j];
        const auto p = branch_prefix(j);
        br.dilation = kDilations[j];
        br.proj = get(p + "proj.kernel");
        br.wasf.n = as_count(get(p + "wasf.n"), 0, p + "wasf.n");
        br.wasf.lambda = get(p + "wasf.lambda").data()[0];
        const auto& shape = get(p + "wasf.dwt.shape", 2);
        br.wasf.dwt.depth = as_count(shape, 0, p + "wasf.dwt.shape");
        br.wasf.dwt.kernel_size = as_count(shape, 1, p + "wasf.dwt.shape");
        if (br.wasf.dwt.depth > 30) throw FormatError(p + "wasf.dwt.shape depth is out of range");
        br.wasf.dwt.level_kernels.resize(br.wasf.dwt.depth);
        for (std::size_t l = 0; l < br.wasf.dwt.depth; ++l) {
            for (std::size_t band = 0; band < 4; ++band) {
                br.wasf.dwt.level_kernels[l][band] = get(dwt_kernel_name(j, l, band));
            }
        }
        br.wasf.dwt.residual = get(p + "wasf.dwt.residual");
        br.wasf.sep_row = get(p + "wasf.sep.row");
        br.wasf.sep_col = get(p + "wasf.sep.col");
        br.wasf.sep_kernel_len = br.wasf.sep_row.width();
        br.dilated = get(p + "dilated.kernel");
    }
    w.fuse = get("fuse.kernel");
    w.shortcut = get("shortcut.kernel");

    std::string extras;
    for (const auto& [name, _] : b.entries) {
        if (!used.contains(name)) extras += (extras.empty() ? "" : ", ") + name;
    }
    if (!extras.empty()) throw FormatError("weight bundle has unexpected parameters: " + extras);
    try {
        w.validate();
    } catch (const ParameterError& e) {
        throw FormatError(std::string("weight bundle is inconsistent: ") + e.what());
    }
    return w;
}

std::string encode_bundle(const WeightBundle& b) {
    if (b.entries.size() > 0xFFFFFFFFu) throw SizeError("too many bundle entries");
    std::string out(kBundleMagic);
    const auto count = static_cast<std::uint32_t>(b.entries.size());
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((count >> (8 * i)) & 0xFF));
    for (const auto& [name, tensor] : b.entries) {
        if (name.size() > 0xFFFF) throw SizeError("bundle entry name too long: " + name);
        const auto len = static_cast<std::uint16_t>(name.size());
        out.push_back(static_cast<char>(len & 0xFF));
        out.push_back(static_cast<char>(len >> 8));
        out += name;
        out += io::encode_tensor(tensor);
    }
    return out;
}

WeightBundle decode_bundle(std::string_view bytes) {
    auto fail = [](std::size_t offset, const std::string& what) -> void {
        throw FormatError("PFBW format error at byte " + std::to_string(offset) + ": " + what);
    };
    if (bytes.size() < 8 || bytes.substr(0, 4) != kBundleMagic) fail(0, "bad magic (expected \"PFBW\")");
    std::uint32_t count = 0;
    for (int i = 0; i < 4; ++i) count |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[4 + i])) << (8 * i);
    WeightBundle b;
    std::size_t pos = 8;
    for (std::uint32_t e = 0; e < count; ++e) {
        if (bytes.size() - pos < 2) fail(pos, "truncated entry name length");
        const std::size_t len = static_cast<unsigned char>(bytes[pos]) |
                                (static_cast<std::size_t>(static_cast<unsigned char>(bytes[pos + 1])) << 8);
        pos += 2;
        if (bytes.size() - pos < len) fail(pos, "truncated entry name");
        std::string name(bytes.substr(pos, len));
        pos += len;
        std::size_t consumed = 0;
        auto tensor = io::decode_tensor(bytes.substr(pos), pos, &consumed);
        if (!b.entries.emplace(name, std::move(tensor)).second) fail(pos, "duplicate entry '" + name + "'");
        pos += consumed;
    }
    if (pos != bytes.size()) fail(pos, "trailing bytes after last entry");
    return b;
}

void weights_save(const PfbWeights& w, const std::filesystem::path& path) {
    io::write_file_atomic(path, encode_bundle(to_bundle(w)));
}

PfbWeights weights_load(const std::filesystem::path& path) {
    return from_bundle(decode_bundle(io::read_file(path)));
}

}  // namespace specfuse::pfb
