// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The specfuse Authors

#pragma once

#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "specfuse/fourier.hpp"
#include "specfuse/tensor.hpp"

namespace specfuse::csf {

enum class CsfPreset { paper_literal, classic };

/// Coefficients of H(f) = a * (b + c * f) * exp(-(d * f)^e).
struct CsfModelParams {
    double a = 2.6;
    double b = 0.0192;
    double c = 0.114;
    double d = 0.114;
    double e = 1.1;

    /// classic: Mannos-Sakrison, 2.6 * (0.0192 + 0.114 f) * exp(-(0.114 f)^1.1).
    /// paper_literal: the constant-gain form 2.6 * (0.192 + 0.114) *
    /// exp(-(0.114 f)^1.1), whose bracket does not depend on f.
    static CsfModelParams preset(CsfPreset p);

    void validate() const;
};

CsfPreset parse_preset(const std::string& name);

/// Sensitivity at radial spatial frequency f >= 0.
double hvs_csf(double f, const CsfModelParams& p);

/// Sensitivity at f = sqrt(fx^2 + fy^2).
double hvs_csf(double fx, double fy, const CsfModelParams& p);

struct CsfPoint {
    double cutoff = 0.0;
    double sensitivity = 0.0;
};

struct CsfCurve {
    std::vector<CsfPoint> points;
    std::string label;
};

/// Samples hvs_csf on [0, f_max] with `samples` evenly spaced points.
CsfCurve model_curve(const CsfModelParams& p, double f_max, std::size_t samples,
                     const std::string& label);

/// Ideal circular low-pass of every channel at the given cutoff.
Tensor bandlimit(const Tensor& t, const fourier::CutoffSpec& spec);

/// Same filter with an absolute radius in bins; radii beyond the grid
/// diagonal pass every bin (the all-pass path).
Tensor bandlimit_radius(const Tensor& t, double radius);

/// Scores a batch of filtered images against their targets. Implementations
/// must return a value in [0, 1] and be deterministic.
class Scorer {
public:
    virtual ~Scorer() = default;
    virtual double score(std::span<const Tensor> images, std::span<const Tensor> targets) = 0;
};

/// Mean over images of retained energy sum(filtered^2) / sum(target^2).
/// Targets are the unfiltered originals. Values are clamped into [0, 1].
class EnergyRetentionScorer final : public Scorer {
public:
    double score(std::span<const Tensor> images, std::span<const Tensor> targets) override;
};

/// Mean over images of 1 / (1 + MSE(filtered, target)).
class SimilarityScorer final : public Scorer {
public:
    double score(std::span<const Tensor> images, std::span<const Tensor> targets) override;
};

/// Out-of-process scorer. Each call writes the images as 16-bit PGM files
/// (image_0000.pgm, ...) into a fresh temporary directory, runs
/// `<command> <directory>` through the shell, and parses one decimal number
/// from its standard output. Targets are not transmitted; the external
/// program is expected to know its own labels.
class SubprocessScorer final : public Scorer {
public:
    explicit SubprocessScorer(std::string command) : command_(std::move(command)) {}
    double score(std::span<const Tensor> images, std::span<const Tensor> targets) override;

private:
    std::string command_;
};

struct Sample {
    Tensor image;
    Tensor target;
};

/// For each cutoff (sorted ascending), bandlimits every image and records
/// score(filtered) / score(unfiltered). The baseline is scored twice; a
/// mismatch or any score outside [0, 1] raises ContractError, a zero
/// baseline raises ContractError as a degenerate scorer.
CsfCurve csf_sweep(std::span<const Sample> dataset, Scorer& scorer,
                   std::span<const fourier::CutoffSpec> cutoffs, const std::string& label = "");

/// "cutoff,sensitivity" header then one row per point.
std::string curve_to_csv(const CsfCurve& curve);

/// Self-contained line plot with axes and tick labels. Byte-identical for
/// identical curves.
std::string curve_to_svg(std::span<const CsfCurve> curves, const std::string& x_label,
                         const std::string& y_label);

}  // namespace specfuse::csf
