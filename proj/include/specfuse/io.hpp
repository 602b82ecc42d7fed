// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The specfuse Authors

#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "specfuse/tensor.hpp"

namespace specfuse::io {

// SFT1 layout: "SFT1" | u32 channels | u32 height | u32 width | f64 payload,
// all little-endian, payload in (channel, row, column) order.
inline constexpr std::string_view kTensorMagic = "SFT1";
inline constexpr std::size_t kTensorHeaderBytes = 16;

/// Serializes `t` to SFT1 bytes. Identical tensors give identical bytes.
std::string encode_tensor(const Tensor& t);

/// Parses one SFT1 record starting at `bytes[0]`. `base_offset` is added to
/// byte offsets reported in errors (for records embedded in larger files).
/// On success `*consumed` receives the record length.
Tensor decode_tensor(std::string_view bytes, std::size_t base_offset = 0,
                     std::size_t* consumed = nullptr);

Tensor tensor_read(const std::filesystem::path& path);
void tensor_write(const Tensor& t, const std::filesystem::path& path);

/// Reads an 8/16-bit binary PGM (P5) or grayscale PNG as a 1xHxW tensor in
/// [0, 1]. The encoding is detected from the file signature.
Tensor image_read_gray(const std::filesystem::path& path);

/// Writes a 1xHxW tensor as grayscale. `.png` paths produce PNG, anything else
/// PGM. Values are clamped to [0, 1] and rounded to `bits` (8 or 16).
void image_write_gray(const Tensor& t, const std::filesystem::path& path, int bits = 8);

std::string encode_pgm(const Tensor& t, int bits);
std::string encode_png(const Tensor& t, int bits);
Tensor decode_gray_image(std::string_view bytes, const std::string& name);

std::string read_file(const std::filesystem::path& path);

/// Writes `bytes` to a sibling temporary file and renames it over `path`, so
/// `path` either keeps its old content or receives the complete new content.
/// Setting SPECFUSE_INJECT_WRITE_FAILURE in the environment makes the write
/// fail midway (used to test the no-partial-output guarantee).
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

}  // namespace specfuse::io
