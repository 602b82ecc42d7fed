// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The specfuse Authors

#include <gtest/gtest.h>

#include <random>
#include <string>

#include "oracles.hpp"
#include "specfuse/error.hpp"
#include "specfuse/fourier.hpp"
#include "specfuse/wasf.hpp"

using namespace specfuse;
using namespace specfuse::wasf;

namespace {

WasfParams random_params(std::mt19937_64& rng, std::size_t n, double lambda, std::size_t len) {
    auto p = WasfParams::identity(n, lambda, len);
    for (auto& level : p.dwt.level_kernels) {
        for (auto& k : level) k = oracle::random_tensor(rng, 1, 3, 3, -0.5, 0.5);
    }
    p.dwt.residual = oracle::random_tensor(rng, 1, 3, 3, -0.5, 0.5);
    p.sep_row = oracle::random_tensor(rng, 1, 1, len, -0.5, 0.5);
    p.sep_col = oracle::random_tensor(rng, 1, len, 1, -0.5, 0.5);
    return p;
}

}  // namespace

TEST(Wasf, IdentityHalfMixIsHalfInput) {
    std::mt19937_64 rng(51);
    const auto x = oracle::random_tensor(rng, 2, 16, 16);
    const auto y = wasf_forward(x, WasfParams::identity(2, 0.5));
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(y.data()[i], 0.5 * x.data()[i], 1e-10);
}

TEST(Wasf, IdentityFullLambdaIsLowPass) {
    std::mt19937_64 rng(52);
    const auto x = oracle::random_tensor(rng, 1, 16, 16);
    EXPECT_LE(oracle::max_diff(wasf_forward(x, WasfParams::identity(2, 1.0)), fourier::spf_split(x, 4.0).low), 1e-10);
}

TEST(Wasf, IdentityCollapsesToSpectralMix) {
    std::mt19937_64 rng(53);
    const auto x = oracle::random_tensor(rng, 3, 20, 16);
    for (double l : {0.0, 0.3, 0.8}) {
        for (std::size_t n : {1, 2, 3}) {
            const auto y = wasf_forward(x, WasfParams::identity(n, l, 5));
            EXPECT_LE(oracle::max_diff(y, fourier::spf_mix(x, {l, std::ldexp(1.0, static_cast<int>(n))})), 1e-10);
        }
    }
}

TEST(Wasf, MatchesStageCompositionOracle) {
    std::mt19937_64 rng(54);
    const auto p = random_params(rng, 2, 0.7, 5);
    const auto x = oracle::random_tensor(rng, 1, 16, 16);
    const auto expect = oracle::naive_wasf(x, p.dwt.level_kernels, p.dwt.residual, 0.7, 4.0, p.sep_row, p.sep_col);
    EXPECT_LE(oracle::max_diff(wasf_forward(x, p), expect), 1e-9);
}

TEST(Wasf, Linearity) {
    std::mt19937_64 rng(55);
    const auto p = random_params(rng, 3, 0.4, 7);
    const auto a = oracle::random_tensor(rng, 2, 16, 24);
    const auto b = oracle::random_tensor(rng, 2, 16, 24);
    const auto lhs = wasf_forward(axpby(2.0, a, 0.5, b), p);
    const auto rhs = axpby(2.0, wasf_forward(a, p), 0.5, wasf_forward(b, p));
    double scale = 0.0;
    for (double v : rhs.data()) scale = std::max(scale, std::abs(v));
    EXPECT_LE(oracle::max_diff(lhs, rhs) / scale, 1e-9);
}

TEST(Wasf, ShapePreserved) {
    std::mt19937_64 rng(56);
    for (std::size_t n : {1, 2, 3}) {
        const auto x = oracle::random_tensor(rng, 2, 17, 19);
        EXPECT_TRUE(wasf_forward(x, random_params(rng, n, 0.5, 3)).same_shape(x));
    }
}

TEST(Wasf, RadiusMustFit) {
    try {
        wasf_forward(Tensor(1, 8, 8), WasfParams::identity(3));
        FAIL();
    } catch (const ParameterError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("2^3"), std::string::npos) << msg;
        EXPECT_NE(msg.find("8x8"), std::string::npos) << msg;
    }
    EXPECT_NO_THROW(wasf_forward(Tensor(1, 8, 8), WasfParams::identity(2)));
}

TEST(Wasf, ParameterValidation) {
    EXPECT_THROW(WasfParams::identity(0).validate(), ParameterError);
    EXPECT_THROW(WasfParams::identity(1, 1.5).validate(), ParameterError);
    EXPECT_THROW(WasfParams::identity(1, 0.5, 4).validate(), ParameterError);
    auto p = WasfParams::identity(1);
    p.sep_row = Tensor(1, 3, 1);
    EXPECT_THROW(p.validate(), ParameterError);
}
