// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The specfuse Authors

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "specfuse/tensor.hpp"

namespace specfuse::metrics {

inline constexpr double kEpsilon = 1e-8;
inline constexpr double kBceClamp = 1e-7;
inline constexpr double kThreshold = 0.5;

/// Predicted probabilities in [0, 1].
class ProbMask {
public:
    ProbMask(std::size_t height, std::size_t width, std::vector<double> values);
    /// From a 1xHxW tensor; throws ParameterError if any value leaves [0, 1].
    explicit ProbMask(const Tensor& t);

    std::size_t height() const noexcept { return height_; }
    std::size_t width() const noexcept { return width_; }
    std::span<const double> values() const noexcept { return values_; }
    Tensor to_tensor() const;

private:
    std::size_t height_;
    std::size_t width_;
    std::vector<double> values_;
};

/// Ground truth with values in {0, 1}.
class BinMask {
public:
    BinMask(std::size_t height, std::size_t width, std::vector<double> values);
    /// From a 1xHxW tensor; values must be exactly 0 or 1.
    explicit BinMask(const Tensor& t);
    /// Thresholds an image tensor at 0.5 (ground-truth images stored as
    /// grayscale).
    static BinMask threshold(const Tensor& t);

    std::size_t height() const noexcept { return height_; }
    std::size_t width() const noexcept { return width_; }
    std::span<const double> values() const noexcept { return values_; }

private:
    std::size_t height_;
    std::size_t width_;
    std::vector<double> values_;
};

/// 1 - sum(w p g) / sum(w (p + g - p g)). Returns 0 when the weighted union
/// is at most kEpsilon (empty prediction against empty ground truth).
double loss_iou(const ProbMask& pred, const BinMask& gt,
                std::optional<std::span<const double>> weight = std::nullopt);

/// Weighted mean of -[g ln p + (1 - g) ln(1 - p)] with p clamped to
/// [1e-7, 1 - 1e-7]; uniform weights give the plain mean.
double loss_bce(const ProbMask& pred, const BinMask& gt,
                std::optional<std::span<const double>> weight = std::nullopt);

/// loss_iou + loss_bce.
double loss_level(const ProbMask& pred, const BinMask& gt,
                  std::optional<std::span<const double>> weight = std::nullopt);

/// Deep supervision: bilinearly upsample each of exactly three predictions
/// to the ground-truth size, then sum loss_level. The three terms are added
/// in ascending order so the result is independent of prediction order.
double loss_total(std::span<const ProbMask> preds, const BinMask& gt);

/// Bilinear resize with half-pixel centers (align_corners = false).
ProbMask resize_bilinear(const ProbMask& m, std::size_t height, std::size_t width);

/// |P and G| / |P or G| with P = pred >= 0.5; 1 when both are empty.
double metric_iou(const ProbMask& pred, const BinMask& gt);
/// 2 |P and G| / (|P| + |G|); 1 when both are empty.
double metric_dice(const ProbMask& pred, const BinMask& gt);
/// Mean |p - g| over the raw probabilities.
double metric_mae(const ProbMask& pred, const BinMask& gt);

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double v) noexcept;
    double value() const noexcept { return sum_ + correction_; }

private:
    double sum_ = 0.0;
    double correction_ = 0.0;
};

struct MetricRow {
    double iou = 0.0;
    double dice = 0.0;
    double mae = 0.0;
};

MetricRow evaluate(const ProbMask& pred, const BinMask& gt);

/// Column means with compensated summation.
MetricRow mean_rows(std::span<const MetricRow> rows);

}  // namespace specfuse::metrics
