// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The specfuse Authors

#include "specfuse/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "specfuse/error.hpp"

namespace specfuse::metrics {
namespace {

void check_shape(std::size_t h, std::size_t w, std::size_t n) {
    if (h == 0 || w == 0 || h * w != n) throw ParameterError("mask dimensions do not match value count");
}

std::vector<double> plane_values(const Tensor& t, const char* what) {
    if (t.channels() != 1) {
        throw ParameterError(std::string(what) + " needs a single-channel tensor");
    }
    return t.values();
}

void check_pair(const ProbMask& p, const BinMask& g) {
    if (p.height() != g.height() || p.width() != g.width()) {
        throw ParameterError("prediction is " + std::to_string(p.height()) + "x" + std::to_string(p.width()) +
                             " but ground truth is " + std::to_string(g.height()) + "x" +
                             std::to_string(g.width()));
    }
}

std::span<const double> weights_or_empty(const std::optional<std::span<const double>>& weight,
                                         std::size_t n) {
    if (!weight) return {};
    if (weight->size() != n) throw ParameterError("weight map size does not match the masks");
    for (double w : *weight) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw ParameterError("weights must be finite and non-negative");
    }
    return *weight;
}

struct Counts {
    double inter = 0.0;
    double pred = 0.0;
    double gt = 0.0;
};

Counts binary_counts(const ProbMask& p, const BinMask& g) {
    check_pair(p, g);
    Counts c;
    for (std::size_t i = 0; i < p.values().size(); ++i) {
        const bool pi = p.values()[i] >= kThreshold;
        const bool gi = g.values()[i] != 0.0;
        c.inter += pi && gi;
        c.pred += pi;
        c.gt += gi;
    }
    return c;
}

}  // namespace

ProbMask::ProbMask(std::size_t height, std::size_t width, std::vector<double> values)
    : height_(height), width_(width), values_(std::move(values)) {
    check_shape(height_, width_, values_.size());
    for (double v : values_) {
        if (!(v >= 0.0 && v <= 1.0)) throw ParameterError("probabilities must lie in [0, 1]");
    }
}

ProbMask::ProbMask(const Tensor& t) : ProbMask(t.height(), t.width(), plane_values(t, "ProbMask")) {}

Tensor ProbMask::to_tensor() const { return Tensor(1, height_, width_, values_); }

BinMask::BinMask(std::size_t height, std::size_t width, std::vector<double> values)
    : height_(height), width_(width), values_(std::move(values)) {
    check_shape(height_, width_, values_.size());
    for (double v : values_) {
        if (v != 0.0 && v != 1.0) throw ParameterError("ground-truth values must be 0 or 1");
    }
}

BinMask::BinMask(const Tensor& t) : BinMask(t.height(), t.width(), plane_values(t, "BinMask")) {}

BinMask BinMask::threshold(const Tensor& t) {
    auto v = plane_values(t, "BinMask");
    for (double& x : v) x = x >= kThreshold ? 1.0 : 0.0;
    return BinMask(t.height(), t.width(), std::move(v));
}

double loss_iou(const ProbMask& pred, const BinMask& gt, std::optional<std::span<const double>> weight) {
    check_pair(pred, gt);
    const auto w = weights_or_empty(weight, pred.values().size());
    CompensatedSum inter, uni;
    for (std::size_t i = 0; i < pred.values().size(); ++i) {
        const double p = pred.values()[i];
        const double g = gt.values()[i];
        const double wi = w.empty() ? 1.0 : w[i];
        inter.add(wi * p * g);
        uni.add(wi * (p + g - p * g));
    }
    if (uni.value() <= kEpsilon) return 0.0;
    return 1.0 - inter.value() / uni.value();
}

double loss_bce(const ProbMask& pred, const BinMask& gt, std::optional<std::span<const double>> weight) {
    check_pair(pred, gt);
    const auto w = weights_or_empty(weight, pred.values().size());
    CompensatedSum total, mass;
    for (std::size_t i = 0; i < pred.values().size(); ++i) {
        const double p = std::clamp(pred.values()[i], kBceClamp, 1.0 - kBceClamp);
        const double g = gt.values()[i];
        const double wi = w.empty() ? 1.0 : w[i];
        total.add(-wi * (g * std::log(p) + (1.0 - g) * std::log(1.0 - p)));
        mass.add(wi);
    }
    if (mass.value() <= 0.0) throw ParameterError("weight map sums to zero");
    return total.value() / mass.value();
}

double loss_level(const ProbMask& pred, const BinMask& gt, std::optional<std::span<const double>> weight) {
    return loss_iou(pred, gt, weight) + loss_bce(pred, gt, weight);
}

ProbMask resize_bilinear(const ProbMask& m, std::size_t height, std::size_t width) {
    if (height == 0 || width == 0) throw ParameterError("resize target must be non-empty");
    if (height == m.height() && width == m.width()) return m;
    const double sy = static_cast<double>(m.height()) / static_cast<double>(height);
    const double sx = static_cast<double>(m.width()) / static_cast<double>(width);
    auto source = [](double dst, double scale, std::size_t n, std::size_t& i0, std::size_t& i1, double& f) {
        const double s = std::max(0.0, (dst + 0.5) * scale - 0.5);
        i0 = std::min(static_cast<std::size_t>(s), n - 1);
        i1 = std::min(i0 + 1, n - 1);
        f = s - static_cast<double>(i0);
    };
    std::vector<double> out(height * width);
    const auto src = m.values();
    for (std::size_t y = 0; y < height; ++y) {
        std::size_t y0, y1;
        double fy;
        source(static_cast<double>(y), sy, m.height(), y0, y1, fy);
        for (std::size_t x = 0; x < width; ++x) {
            std::size_t x0, x1;
            double fx;
            source(static_cast<double>(x), sx, m.width(), x0, x1, fx);
            const double top = (1.0 - fx) * src[y0 * m.width() + x0] + fx * src[y0 * m.width() + x1];
            const double bottom = (1.0 - fx) * src[y1 * m.width() + x0] + fx * src[y1 * m.width() + x1];
            out[y * width + x] = std::clamp((1.0 - fy) * top + fy * bottom, 0.0, 1.0);
        }
    }
    return ProbMask(height, width, std::move(out));
}

double loss_total(std::span<const ProbMask> preds, const BinMask& gt) {
    if (preds.size() != 3) {
        throw ParameterError("deep supervision expects exactly 3 predictions, got " + std::to_string(preds.size()));
    }
    std::array<double, 3> terms{};
    for (std::size_t i = 0; i < 3; ++i) {
        terms[i] = loss_level(resize_bilinear(preds[i], gt.height(), gt.width()), gt);
    }
    std::sort(terms.begin(), terms.end());
    return terms[0] + terms[1] + terms[2];
}

double metric_iou(const ProbMask& pred, const BinMask& gt) {
    const auto c = binary_counts(pred, gt);
    const double uni = c.pred + c.gt - c.inter;
    return uni <= kEpsilon ? 1.0 : c.inter / uni;
}

double metric_dice(const ProbMask& pred, const BinMask& gt) {
    const auto c = binary_counts(pred, gt);
    const double denom = c.pred + c.gt;
    return denom <= kEpsilon ? 1.0 : 2.0 * c.inter / denom;
}

double metric_mae(const ProbMask& pred, const BinMask& gt) {
    check_pair(pred, gt);
    CompensatedSum s;
    for (std::size_t i = 0; i < pred.values().size(); ++i) s.add(std::abs(pred.values()[i] - gt.values()[i]));
    return s.value() / static_cast<double>(pred.values().size());
}

void CompensatedSum::add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
        correction_ += (sum_ - t) + v;
    } else {
        correction_ += (v - t) + sum_;
    }
    sum_ = t;
}

MetricRow evaluate(const ProbMask& pred, const BinMask& gt) {
    return {metric_iou(pred, gt), metric_dice(pred, gt), metric_mae(pred, gt)};
}

MetricRow mean_rows(std::span<const MetricRow> rows) {
    if (rows.empty()) throw ParameterError("no rows to average");
    CompensatedSum iou, dice, mae;
    for (const auto& r : rows) {
        iou.add(r.iou);
        dice.add(r.dice);
        mae.add(r.mae);
    }
    const auto n = static_cast<double>(rows.size());
    return {iou.value() / n, dice.value() / n, mae.value() / n};
}

}  // namespace specfuse::metrics
