// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The specfuse Authors

#include <gtest/gtest.h>
#include <png.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <random>
#include <set>

#include "oracles.hpp"
#include "specfuse/error.hpp"
#include "specfuse/io.hpp"
#include "specfuse/parallel.hpp"
#include "specfuse/tensor.hpp"

namespace fs = std::filesystem;
using namespace specfuse;

namespace {

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("specfuse_core_" + std::to_string(::getpid()) + "_" +
                                             std::to_string(counter_++));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

private:
    static inline int counter_ = 0;
    fs::path path_;
};

std::string pgm_bytes(int w, int h, int maxval, std::initializer_list<unsigned> px) {
    std::string s = "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n" + std::to_string(maxval) + "\n";
    for (unsigned v : px) {
        if (maxval > 255) s.push_back(static_cast<char>(v >> 8));
        s.push_back(static_cast<char>(v & 0xFF));
    }
    return s;
}

}  // namespace

TEST(Tensor, RejectsZeroDimensions) {
    EXPECT_THROW(Tensor(0, 2, 2), ParameterError);
    EXPECT_THROW(Tensor(1, 0, 2), ParameterError);
    EXPECT_THROW(Tensor(1, 2, 0), ParameterError);
}

TEST(Tensor, RejectsOverflowingVolume) {
    const auto big = std::numeric_limits<std::size_t>::max() / 2;
    EXPECT_THROW(Tensor(big, big, 4), SizeError);
}

TEST(Tensor, DataLengthMustMatch) { EXPECT_THROW(Tensor(1, 2, 2, std::vector<double>(3)), SizeError); }

TEST(Tensor, RowMajorChannelLayout) {
    Tensor t(2, 2, 3);
    t.at(1, 1, 2) = 7.0;
    EXPECT_EQ(t.data()[(1 * 2 + 1) * 3 + 2], 7.0);
    EXPECT_EQ(t.channel(1)[5], 7.0);
    EXPECT_EQ(t.channel_tensor(1).at(0, 1, 2), 7.0);
}

TEST(Tensor, StackAndAxpby) {
    std::mt19937_64 rng(1);
    const auto a = oracle::random_tensor(rng, 1, 3, 4);
    const auto b = oracle::random_tensor(rng, 1, 3, 4);
    const Tensor planes[] = {a, b};
    const auto s = stack_channels(planes);
    EXPECT_EQ(s.channels(), 2u);
    EXPECT_EQ(s.channel_tensor(1), b);
    const auto c = axpby(2.0, a, -1.0, b);
    for (std::size_t i = 0; i < c.size(); ++i) EXPECT_DOUBLE_EQ(c.data()[i], 2.0 * a.data()[i] - b.data()[i]);
}

TEST(Spectrum, CenteringFlagIsTracked) {
    Spectrum s(3, 4);
    EXPECT_FALSE(s.centered());
    EXPECT_THROW(uncenter(s), StateError);
}

TEST(Mask, RejectsNonBinaryValues) { EXPECT_THROW(Mask(1, 2, {0, 2}), ParameterError); }

TEST(Sft1, RoundTripIsBitExact) {
    std::mt19937_64 rng(2);
    auto t = oracle::random_tensor(rng, 3, 5, 7, -1e300, 1e300);
    t.at(0, 0, 0) = -0.0;
    t.at(1, 2, 3) = std::numeric_limits<double>::denorm_min();
    const auto bytes = io::encode_tensor(t);
    EXPECT_EQ(bytes.size(), io::kTensorHeaderBytes + 8 * t.size());
    const auto back = io::decode_tensor(bytes);
    EXPECT_EQ(io::encode_tensor(back), bytes);
    EXPECT_TRUE(std::signbit(back.at(0, 0, 0)));
}

TEST(Sft1, FileRoundTrip) {
    TempDir dir;
    std::mt19937_64 rng(3);
    const auto t = oracle::random_tensor(rng, 3, 17, 23);
    io::tensor_write(t, dir.path() / "a.sft");
    const auto back = io::tensor_read(dir.path() / "a.sft");
    EXPECT_EQ(back, t);
    io::tensor_write(back, dir.path() / "b.sft");
    EXPECT_EQ(io::read_file(dir.path() / "a.sft"), io::read_file(dir.path() / "b.sft"));
}

TEST(Sft1, SmallKnownTensor) {
    TempDir dir;
    const Tensor t(1, 2, 2, {1.0, 2.0, 3.0, 4.0});
    io::tensor_write(t, dir.path() / "k.sft");
    EXPECT_EQ(io::tensor_read(dir.path() / "k.sft"), t);
    EXPECT_EQ(io::read_file(dir.path() / "k.sft").substr(0, 8), std::string("SFT1\x01\0\0\0", 8));
}

TEST(Sft1, ErrorsReportByteOffsets) {
    const auto good = io::encode_tensor(Tensor(1, 2, 2));
    auto expect_msg = [](std::string_view bytes, const std::string& needle) {
        try {
            io::decode_tensor(bytes);
            ADD_FAILURE() << "no error for " << needle;
        } catch (const FormatError& e) {
            EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
        }
    };
    expect_msg("XXXX" + good.substr(4), "byte 0");
    expect_msg(good.substr(0, 10), "truncated header");
    expect_msg(good.substr(0, good.size() - 1), "payload truncated");
    auto zero_h = good;
    zero_h[8] = 0;
    zero_h[9] = 0;
    expect_msg(zero_h, "byte 8");
    auto nan = good;
    const auto bits = std::bit_cast<std::uint64_t>(std::numeric_limits<double>::quiet_NaN());
    for (int i = 0; i < 8; ++i) nan[24 + i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
    expect_msg(nan, "byte 24");
}

TEST(Sft1, OverflowingDimensionsAreSizeErrors) {
    std::string b = "SFT1";
    for (int i = 0; i < 12; ++i) b.push_back(static_cast<char>(0xFF));
    EXPECT_THROW(io::decode_tensor(b), SizeError);
}

TEST(Sft1, TrailingBytesRejectedByFileReader) {
    TempDir dir;
    io::write_file_atomic(dir.path() / "t.sft", io::encode_tensor(Tensor(1, 1, 1)) + "x");
    EXPECT_THROW(io::tensor_read(dir.path() / "t.sft"), FormatError);
}

TEST(Image, PgmScaling) {
    const auto t = io::decode_gray_image(pgm_bytes(2, 2, 255, {0, 255, 128, 64}), "x.pgm");
    ASSERT_EQ(t.size(), 4u);
    EXPECT_EQ(t.data()[0], 0.0);
    EXPECT_EQ(t.data()[1], 1.0);
    EXPECT_EQ(t.data()[2], 128.0 / 255.0);
    EXPECT_EQ(t.data()[3], 64.0 / 255.0);
}

TEST(Image, PgmSixteenBitAndComments) {
    auto bytes = pgm_bytes(2, 1, 65535, {65535, 257});
    bytes.insert(3, "# a comment\n");
    const auto t = io::decode_gray_image(bytes, "x.pgm");
    EXPECT_EQ(t.data()[0], 1.0);
    EXPECT_EQ(t.data()[1], 257.0 / 65535.0);
}

TEST(Image, AllWhiteIsAllOnes) {
    const auto t = io::decode_gray_image(pgm_bytes(3, 1, 255, {255, 255, 255}), "w.pgm");
    for (double v : t.data()) EXPECT_EQ(v, 1.0);
}

TEST(Image, PngAndPgmAgree) {
    std::mt19937_64 rng(4);
    for (int bits : {8, 16}) {
        const auto t = oracle::random_tensor(rng, 1, 9, 13, 0.0, 1.0);
        const auto a = io::decode_gray_image(io::encode_pgm(t, bits), "a.pgm");
        const auto b = io::decode_gray_image(io::encode_png(t, bits), "a.png");
        EXPECT_LE(oracle::max_diff(a, b), 1e-12);
    }
}

TEST(Image, RoundTripWithinQuantizationBound) {
    TempDir dir;
    std::mt19937_64 rng(5);
    for (int bits : {8, 16}) {
        for (const char* name : {"r.pgm", "r.png"}) {
            const auto t = oracle::random_tensor(rng, 1, 11, 6, 0.0, 1.0);
            io::image_write_gray(t, dir.path() / name, bits);
            const auto back = io::image_read_gray(dir.path() / name);
            const double bound = 1.0 / (2.0 * (std::ldexp(1.0, bits) - 1.0));
            EXPECT_LE(oracle::max_diff(t, back), bound + 1e-15) << name << " " << bits;
        }
    }
}

TEST(Image, WriteClampsOutOfRange) {
    const Tensor t(1, 1, 3, {-0.25, 0.5, 1.75});
    const auto back = io::decode_gray_image(io::encode_pgm(t, 8), "c.pgm");
    EXPECT_EQ(back.data()[0], 0.0);
    EXPECT_EQ(back.data()[1], 128.0 / 255.0);
    EXPECT_EQ(back.data()[2], 1.0);
}

TEST(Image, RgbPngNamesColorType) {
    TempDir dir;
    const auto path = dir.path() / "rgb.png";
    png_image img{};
    img.version = PNG_IMAGE_VERSION;
    img.width = 2;
    img.height = 2;
    img.format = PNG_FORMAT_RGB;
    const unsigned char px[12] = {255, 0, 0, 0, 255, 0, 0, 0, 255, 9, 9, 9};
    ASSERT_TRUE(png_image_write_to_file(&img, path.c_str(), 0, px, 0, nullptr));
    try {
        io::image_read_gray(path);
        FAIL() << "RGB PNG accepted";
    } catch (const FormatError& e) {
        EXPECT_NE(std::string(e.what()).find("RGB"), std::string::npos) << e.what();
    }
}

TEST(Image, PpmNamesColorType) {
    try {
        io::decode_gray_image("P6\n1 1\n255\nabc", "c.ppm");
        FAIL();
    } catch (const FormatError& e) {
        EXPECT_NE(std::string(e.what()).find("RGB"), std::string::npos);
    }
}

TEST(Image, MultiChannelWriteRejected) {
    EXPECT_THROW(io::encode_pgm(Tensor(2, 2, 2), 8), ParameterError);
}

TEST(AtomicWrite, InjectedFailureLeavesNothingBehind) {
    TempDir dir;
    const auto target = dir.path() / "out.sft";
    ::setenv("SPECFUSE_INJECT_WRITE_FAILURE", "1", 1);
    EXPECT_THROW(io::tensor_write(Tensor(1, 8, 8), target), IoError);
    ::unsetenv("SPECFUSE_INJECT_WRITE_FAILURE");
    EXPECT_FALSE(fs::exists(target));
    EXPECT_TRUE(fs::is_empty(dir.path()));
}

TEST(AtomicWrite, InjectedFailureKeepsPreviousContents) {
    TempDir dir;
    const auto target = dir.path() / "keep.txt";
    io::write_file_atomic(target, "old");
    ::setenv("SPECFUSE_INJECT_WRITE_FAILURE", "1", 1);
    EXPECT_THROW(io::write_file_atomic(target, "new contents"), IoError);
    ::unsetenv("SPECFUSE_INJECT_WRITE_FAILURE");
    EXPECT_EQ(io::read_file(target), "old");
}

TEST(Parallel, VisitsEveryIndexOnce) {
    ::setenv("SPECFUSE_THREADS", "4", 1);
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
    ::unsetenv("SPECFUSE_THREADS");
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(Parallel, RethrowsLowestFailingIndex) {
    ::setenv("SPECFUSE_THREADS", "3", 1);
    try {
        parallel_for(50, [](std::size_t i) {
            if (i % 7 == 3) throw ParameterError("index " + std::to_string(i));
        });
        FAIL();
    } catch (const ParameterError& e) {
        EXPECT_STREQ(e.what(), "index 3");
    }
    ::unsetenv("SPECFUSE_THREADS");
}

TEST(Parallel, ThreadCountFromEnvironment) {
    ::setenv("SPECFUSE_THREADS", "5", 1);
    EXPECT_EQ(thread_count(), 5u);
    ::unsetenv("SPECFUSE_THREADS");
    EXPECT_GE(thread_count(), 1u);
}
