// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The specfuse Authors

#include "specfuse/io.hpp"

#include <png.h>
#include <unistd.h>

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <memory>
#include <sstream>

#include "specfuse/error.hpp"

namespace specfuse::io {
namespace {

static_assert(std::numeric_limits<double>::is_iec559, "SFT1 requires IEEE-754 doubles");

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
}

std::uint64_t get_le(std::string_view b, std::size_t pos, int n) {
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) {
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[pos + i])) << (8 * i);
    }
    return v;
}

[[noreturn]] void format_error(std::size_t offset, const std::string& what) {
    throw FormatError("SFT1 format error at byte " + std::to_string(offset) + ": " + what);
}

// ---------------------------------------------------------------- PGM

struct PgmCursor {
    std::string_view bytes;
    std::size_t pos = 0;
    const std::string& name;

    void skip_space_and_comments() {
        while (pos < bytes.size()) {
            const char c = bytes[pos];
            if (c == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                ++pos;
            } else {
                break;
            }
        }
    }

    unsigned long number(const char* field) {
        skip_space_and_comments();
        const auto start = pos;
        unsigned long v = 0;
        while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') {
            v = v * 10 + static_cast<unsigned long>(bytes[pos] - '0');
            if (v > 0xFFFFFFFFul) throw FormatError(name + ": PGM " + field + " too large");
            ++pos;
        }
        if (pos == start) {
            throw FormatError(name + ": malformed PGM header (" + field + ") at byte " +
                              std::to_string(start));
        }
        return v;
    }
};

Tensor decode_pgm(std::string_view bytes, const std::string& name) {
    PgmCursor cur{bytes, 2, name};
    const auto width = cur.number("width");
    const auto height = cur.number("height");
    const auto maxval = cur.number("maxval");
    if (width == 0 || height == 0) throw FormatError(name + ": PGM has a zero dimension");
    if (maxval == 0 || maxval > 65535) {
        throw FormatError(name + ": unsupported PGM maxval " + std::to_string(maxval));
    }
    if (cur.pos >= bytes.size()) throw FormatError(name + ": PGM header not terminated");
    ++cur.pos;  // single whitespace before the raster
    const std::size_t bps = maxval > 255 ? 2 : 1;
    const std::size_t n = width * height;
    if (bytes.size() - cur.pos < n * bps) {
        throw FormatError(name + ": PGM raster truncated (expected " + std::to_string(n * bps) +
                          " bytes after header)");
    }
    std::vector<double> data(n);
    const auto full = static_cast<double>(maxval);
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data() + cur.pos);
    for (std::size_t i = 0; i < n; ++i) {
        const unsigned v = bps == 2 ? (static_cast<unsigned>(p[2 * i]) << 8) | p[2 * i + 1] : p[i];
        data[i] = static_cast<double>(std::min<unsigned long>(v, maxval)) / full;
    }
    return Tensor(1, height, width, std::move(data));
}

// ---------------------------------------------------------------- PNG

const char* png_color_type_name(int color_type) {
    switch (color_type) {
        case PNG_COLOR_TYPE_GRAY: return "grayscale";
        case PNG_COLOR_TYPE_GRAY_ALPHA: return "grayscale+alpha";
        case PNG_COLOR_TYPE_PALETTE: return "palette";
        case PNG_COLOR_TYPE_RGB: return "RGB";
        case PNG_COLOR_TYPE_RGB_ALPHA: return "RGBA";
        default: return "unknown";
    }
}

struct PngReadSource {
    std::string_view bytes;
    std::size_t pos = 0;
};

void png_read_callback(png_structp png, png_bytep out, png_size_t n) {
    auto* src = static_cast<PngReadSource*>(png_get_io_ptr(png));
    if (src->bytes.size() - src->pos < n) png_error(png, "truncated PNG stream");
    std::memcpy(out, src->bytes.data() + src->pos, n);
    src->pos += n;
}

void png_error_callback(png_structp png, png_const_charp msg) {
    auto* slot = static_cast<std::string*>(png_get_error_ptr(png));
    if (slot) *slot = msg;
    png_longjmp(png, 1);
}

void png_warning_callback(png_structp, png_const_charp) {}

Tensor decode_png(std::string_view bytes, const std::string& name) {
    std::string error_message;
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &error_message,
                                             png_error_callback, png_warning_callback);
    if (!png) throw IoError(name + ": cannot allocate PNG reader");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError(name + ": cannot allocate PNG info");
    }
    PngReadSource src{bytes, 0};
    std::vector<double> data;
    png_uint_32 width = 0;
    png_uint_32 height = 0;
    int color_type = -1;
    std::vector<png_byte> raster;
    std::vector<png_bytep> rows;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw FormatError(name + ": PNG decode failed: " + error_message);
    }
    png_set_read_fn(png, &src, png_read_callback);
    png_read_info(png, info);
    int bit_depth = 0;
    png_get_IHDR(png, info, &width, &height, &bit_depth, &color_type, nullptr, nullptr, nullptr);
    if (color_type != PNG_COLOR_TYPE_GRAY) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw FormatError(name + ": unsupported PNG color type '" +
                          std::string(png_color_type_name(color_type)) +
                          "' (only grayscale is accepted)");
    }
    if (bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    png_read_update_info(png, info);
    const std::size_t rowbytes = png_get_rowbytes(png, info);
    raster.resize(rowbytes * height);
    rows.resize(height);
    for (png_uint_32 y = 0; y < height; ++y) rows[y] = raster.data() + y * rowbytes;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    const bool wide = bit_depth == 16;
    const double full = wide ? 65535.0 : 255.0;
    data.resize(static_cast<std::size_t>(width) * height);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const unsigned v = wide ? (static_cast<unsigned>(raster[2 * i]) << 8) | raster[2 * i + 1]
                                : raster[i];
        data[i] = static_cast<double>(v) / full;
    }
    return Tensor(1, height, width, std::move(data));
}

void png_write_callback(png_structp png, png_bytep in, png_size_t n) {
    auto* out = static_cast<std::string*>(png_get_io_ptr(png));
    out->append(reinterpret_cast<const char*>(in), n);
}

void png_flush_callback(png_structp) {}

std::vector<unsigned> quantize(const Tensor& t, int bits) {
    if (t.channels() != 1) {
        throw ParameterError("grayscale images need a single-channel tensor, got " +
                             std::to_string(t.channels()) + " channels");
    }
    if (bits != 8 && bits != 16) throw ParameterError("image bit depth must be 8 or 16");
    const double maxval = bits == 16 ? 65535.0 : 255.0;
    std::vector<unsigned> q(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double v = t.data()[i];
        if (std::isnan(v)) throw ParameterError("cannot quantize NaN pixel");
        q[i] = static_cast<unsigned>(std::lround(std::clamp(v, 0.0, 1.0) * maxval));
    }
    return q;
}

}  // namespace

std::string encode_tensor(const Tensor& t) {
    constexpr auto kLimit = std::numeric_limits<std::uint32_t>::max();
    if (t.channels() > kLimit || t.height() > kLimit || t.width() > kLimit) {
        throw SizeError("tensor dimension exceeds the SFT1 u32 range");
    }
    std::string out;
    out.reserve(kTensorHeaderBytes + 8 * t.size());
    out.append(kTensorMagic);
    put_u32(out, static_cast<std::uint32_t>(t.channels()));
    put_u32(out, static_cast<std::uint32_t>(t.height()));
    put_u32(out, static_cast<std::uint32_t>(t.width()));
    for (double v : t.data()) put_u64(out, std::bit_cast<std::uint64_t>(v));
    return out;
}

Tensor decode_tensor(std::string_view bytes, std::size_t base_offset, std::size_t* consumed) {
    if (bytes.size() < 4 || bytes.substr(0, 4) != kTensorMagic) {
        format_error(base_offset, "bad magic (expected \"SFT1\")");
    }
    if (bytes.size() < kTensorHeaderBytes) {
        format_error(base_offset + bytes.size(), "truncated header");
    }
    const auto c = get_le(bytes, 4, 4);
    const auto h = get_le(bytes, 8, 4);
    const auto w = get_le(bytes, 12, 4);
    if (c == 0) format_error(base_offset + 4, "channel count is zero");
    if (h == 0) format_error(base_offset + 8, "height is zero");
    if (w == 0) format_error(base_offset + 12, "width is zero");
    constexpr std::uint64_t kMaxElems = std::numeric_limits<std::size_t>::max() / 8;
    if (h * w > kMaxElems / c) {
        throw SizeError("SFT1 dimension product " + std::to_string(c) + "x" + std::to_string(h) + "x" +
                        std::to_string(w) + " overflows");
    }
    const std::size_t n = static_cast<std::size_t>(c * h * w);
    const std::size_t payload = n * 8;
    if (bytes.size() - kTensorHeaderBytes < payload) {
        format_error(base_offset + bytes.size(),
                     "payload truncated (expected " + std::to_string(payload) + " bytes)");
    }
    std::vector<double> data(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t pos = kTensorHeaderBytes + 8 * i;
        data[i] = std::bit_cast<double>(get_le(bytes, pos, 8));
        if (!std::isfinite(data[i])) format_error(base_offset + pos, "non-finite value");
    }
    if (consumed) *consumed = kTensorHeaderBytes + payload;
    return Tensor(c, h, w, std::move(data));
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed for " + path.string());
    return bytes;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
    auto tmp = path;
    tmp += ".tmp-" + std::to_string(::getpid());
    const bool inject_failure = std::getenv("SPECFUSE_INJECT_WRITE_FAILURE") != nullptr;
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + path.string() + " for writing");
        const auto first = inject_failure ? bytes.size() / 2 : bytes.size();
        out.write(bytes.data(), static_cast<std::streamsize>(first));
        out.flush();
        if (!out || inject_failure) {
            out.close();
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw IoError("write failed for " + path.string() +
                          (inject_failure ? " (injected failure)" : ""));
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move output into place at " + path.string());
    }
}

Tensor tensor_read(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    std::size_t consumed = 0;
    auto t = decode_tensor(bytes, 0, &consumed);
    if (consumed != bytes.size()) {
        format_error(consumed, "trailing bytes after payload in " + path.string());
    }
    return t;
}

void tensor_write(const Tensor& t, const std::filesystem::path& path) {
    write_file_atomic(path, encode_tensor(t));
}

std::string encode_pgm(const Tensor& t, int bits) {
    const auto q = quantize(t, bits);
    std::string out = "P5\n" + std::to_string(t.width()) + " " + std::to_string(t.height()) + "\n" +
                      (bits == 16 ? "65535" : "255") + "\n";
    out.reserve(out.size() + q.size() * (bits / 8));
    for (unsigned v : q) {
        if (bits == 16) out.push_back(static_cast<char>(v >> 8));
        out.push_back(static_cast<char>(v & 0xFFu));
    }
    return out;
}

std::string encode_png(const Tensor& t, int bits) {
    const auto q = quantize(t, bits);
    const std::size_t bps = bits / 8;
    std::vector<png_byte> raster(q.size() * bps);
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (bps == 2) {
            raster[2 * i] = static_cast<png_byte>(q[i] >> 8);
            raster[2 * i + 1] = static_cast<png_byte>(q[i] & 0xFFu);
        } else {
            raster[i] = static_cast<png_byte>(q[i]);
        }
    }
    std::string out;
    std::string error_message;
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &error_message,
                                              png_error_callback, png_warning_callback);
    if (!png) throw IoError("cannot allocate PNG writer");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("cannot allocate PNG info");
    }
    std::vector<png_bytep> rows(t.height());
    for (std::size_t y = 0; y < t.height(); ++y) rows[y] = raster.data() + y * t.width() * bps;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("PNG encode failed: " + error_message);
    }
    png_set_write_fn(png, &out, png_write_callback, png_flush_callback);
    png_set_IHDR(png, info, static_cast<png_uint_32>(t.width()), static_cast<png_uint_32>(t.height()),
                 bits, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return out;
}

Tensor decode_gray_image(std::string_view bytes, const std::string& name) {
    static constexpr unsigned char kPngSig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
    if (bytes.size() >= 8 && std::memcmp(bytes.data(), kPngSig, 8) == 0) return decode_png(bytes, name);
    if (bytes.size() >= 2 && bytes[0] == 'P') {
        switch (bytes[1]) {
            case '5': return decode_pgm(bytes, name);
            case '2': throw FormatError(name + ": unsupported netpbm type 'plain PGM (P2)'");
            case '3':
            case '6': throw FormatError(name + ": unsupported color type 'RGB pixmap (PPM)'");
            case '1':
            case '4': throw FormatError(name + ": unsupported color type 'bitmap (PBM)'");
            default: break;
        }
    }
    throw FormatError(name + ": unrecognized image encoding (expected binary PGM or PNG)");
}

Tensor image_read_gray(const std::filesystem::path& path) {
    return decode_gray_image(read_file(path), path.string());
}

void image_write_gray(const Tensor& t, const std::filesystem::path& path, int bits) {
    auto ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    write_file_atomic(path, ext == ".png" ? encode_png(t, bits) : encode_pgm(t, bits));
}

}  // namespace specfuse::io
