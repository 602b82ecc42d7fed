// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The specfuse Authors

#include "specfuse/csf.hpp"

#include <stdlib.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

#include "specfuse/error.hpp"
#include "specfuse/io.hpp"
#include "specfuse/parallel.hpp"

namespace specfuse::csf {
namespace {

double checked_score(Scorer& scorer, std::span<const Tensor> images, std::span<const Tensor> targets) {
    const double s = scorer.score(images, targets);
    if (!(s >= 0.0 && s <= 1.0)) {
        throw ContractError("scorer returned " + std::to_string(s) + ", outside [0, 1]");
    }
    return s;
}

void check_batch(std::span<const Tensor> images, std::span<const Tensor> targets) {
    if (images.size() != targets.size() || images.empty()) {
        throw ParameterError("scorer needs equally many (nonzero) images and targets");
    }
}

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

// Removes a directory tree on scope exit.
struct TempDir {
    std::filesystem::path path;
    ~TempDir() {
        std::error_code ec;
        if (!path.empty()) std::filesystem::remove_all(path, ec);
    }
};

}  // namespace

CsfModelParams CsfModelParams::preset(CsfPreset p) {
    if (p == CsfPreset::classic) return {2.6, 0.0192, 0.114, 0.114, 1.1};
    // Printed bracket (0.192 + 0.114) carries no f; kept as printed.
    return {2.6, 0.192 + 0.114, 0.0, 0.114, 1.1};
}

void CsfModelParams::validate() const {
    if (!(a > 0.0)) throw ParameterError("CSF coefficient a must be positive");
    if (!(e > 0.0)) throw ParameterError("CSF exponent e must be positive");
}

CsfPreset parse_preset(const std::string& name) {
    if (name == "classic") return CsfPreset::classic;
    if (name == "paper-literal" || name == "paper_literal") return CsfPreset::paper_literal;
    throw ParameterError("unknown CSF preset '" + name + "' (expected classic or paper-literal)");
}

double hvs_csf(double f, const CsfModelParams& p) {
    p.validate();
    if (!(f >= 0.0)) throw ParameterError("spatial frequency must be non-negative");
    return p.a * (p.b + p.c * f) * std::exp(-std::pow(p.d * f, p.e));
}

double hvs_csf(double fx, double fy, const CsfModelParams& p) {
    return hvs_csf(std::hypot(fx, fy), p);
}

CsfCurve model_curve(const CsfModelParams& p, double f_max, std::size_t samples,
                     const std::string& label) {
    if (samples < 2 || !(f_max > 0.0)) throw ParameterError("model curve needs f_max > 0 and >= 2 samples");
    CsfCurve curve;
    curve.label = label;
    curve.points.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double f = f_max * static_cast<double>(i) / static_cast<double>(samples - 1);
        curve.points.push_back({f, hvs_csf(f, p)});
    }
    return curve;
}

Tensor bandlimit(const Tensor& t, const fourier::CutoffSpec& spec) {
    spec.validate();
    return fourier::mask_filter(t, fourier::cutoff_mask(t.height(), t.width(), spec), 1.0, 0.0);
}

Tensor bandlimit_radius(const Tensor& t, double radius) {
    return fourier::mask_filter(t, fourier::radial_mask(t.height(), t.width(), radius), 1.0, 0.0);
}

double EnergyRetentionScorer::score(std::span<const Tensor> images, std::span<const Tensor> targets) {
    check_batch(images, targets);
    double sum = 0.0;
    for (std::size_t i = 0; i < images.size(); ++i) {
        const double total = energy(targets[i]);
        const double kept = energy(images[i]);
        sum += total > 0.0 ? std::clamp(kept / total, 0.0, 1.0) : 1.0;
    }
    return sum / static_cast<double>(images.size());
}

double SimilarityScorer::score(std::span<const Tensor> images, std::span<const Tensor> targets) {
    check_batch(images, targets);
    double sum = 0.0;
    for (std::size_t i = 0; i < images.size(); ++i) {
        const auto diff = axpby(1.0, images[i], -1.0, targets[i]);
        sum += 1.0 / (1.0 + energy(diff) / static_cast<double>(diff.size()));
    }
    return sum / static_cast<double>(images.size());
}

double SubprocessScorer::score(std::span<const Tensor> images, std::span<const Tensor>) {
    auto pattern = (std::filesystem::temp_directory_path() / "specfuse-score-XXXXXX").string();
    if (!::mkdtemp(pattern.data())) throw IoError("cannot create temporary directory " + pattern);
    TempDir dir{pattern};
    for (std::size_t i = 0; i < images.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "image_%04zu.pgm", i);
        io::write_file_atomic(dir.path / name, io::encode_pgm(images[i], 16));
    }
    const std::string cmd = command_ + " '" + dir.path.string() + "'";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) throw IoError("cannot start scorer command: " + command_);
    std::string output;
    std::array<char, 256> buf{};
    while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) output += buf.data();
    const int status = ::pclose(pipe);
    if (status != 0) {
        throw ContractError("scorer command exited with status " + std::to_string(status) + ": " + command_);
    }
    char* end = nullptr;
    const double v = std::strtod(output.c_str(), &end);
    if (end == output.c_str()) {
        throw ContractError("scorer command printed no number: " + command_);
    }
    return v;
}

CsfCurve csf_sweep(std::span<const Sample> dataset, Scorer& scorer,
                   std::span<const fourier::CutoffSpec> cutoffs, const std::string& label) {
    if (dataset.empty()) throw ParameterError("csf_sweep: dataset is empty");
    if (cutoffs.empty()) throw ParameterError("csf_sweep: no cutoffs given");
    std::vector<double> fractions;
    for (const auto& c : cutoffs) {
        c.validate();
        fractions.push_back(c.radius_fraction);
    }
    std::sort(fractions.begin(), fractions.end());
    if (std::adjacent_find(fractions.begin(), fractions.end()) != fractions.end()) {
        throw ParameterError("csf_sweep: duplicate cutoff");
    }

    std::vector<Tensor> originals;
    std::vector<Tensor> targets;
    for (const auto& s : dataset) {
        originals.push_back(s.image);
        targets.push_back(s.target);
    }
    const double baseline = checked_score(scorer, originals, targets);
    if (checked_score(scorer, originals, targets) != baseline) {
        throw ContractError("scorer is nondeterministic: repeated baseline scores differ");
    }
    if (baseline == 0.0) throw ContractError("degenerate scorer: unfiltered baseline score is 0");

    CsfCurve curve;
    curve.label = label;
    std::vector<Tensor> filtered(originals.size());
    for (double fraction : fractions) {
        const fourier::CutoffSpec spec{fraction};
        parallel_for(originals.size(), [&](std::size_t i) { filtered[i] = bandlimit(originals[i], spec); });
        curve.points.push_back({fraction, checked_score(scorer, filtered, targets) / baseline});
    }
    return curve;
}

std::string curve_to_csv(const CsfCurve& curve) {
    std::string out = "cutoff,sensitivity\n";
    for (const auto& p : curve.points) out += fmt("%.12g", p.cutoff) + "," + fmt("%.12g", p.sensitivity) + "\n";
    return out;
}

std::string curve_to_svg(std::span<const CsfCurve> curves, const std::string& x_label,
                         const std::string& y_label) {
    constexpr double kWidth = 640, kHeight = 400;
    constexpr double kLeft = 70, kRight = 20, kTop = 20, kBottom = 60;
    constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#d62728", "#2ca02c",
                                                    "#ff7f0e", "#9467bd", "#8c564b"};
    double x_max = 0.0, y_max = 0.0;
    for (const auto& c : curves) {
        for (const auto& p : c.points) {
            x_max = std::max(x_max, p.cutoff);
            y_max = std::max(y_max, p.sensitivity);
        }
    }
    if (x_max <= 0.0) x_max = 1.0;
    y_max = y_max > 0.0 ? y_max * 1.05 : 1.0;
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto sx = [&](double x) { return kLeft + pw * x / x_max; };
    auto sy = [&](double y) { return kTop + ph * (1.0 - y / y_max); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" viewBox=\"0 0 640 400\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"400\" fill=\"white\"/>\n";
    svg += "<g stroke=\"black\" stroke-width=\"1\">\n";
    svg += "<line x1=\"" + fmt("%.2f", kLeft) + "\" y1=\"" + fmt("%.2f", kTop + ph) + "\" x2=\"" +
           fmt("%.2f", kLeft + pw) + "\" y2=\"" + fmt("%.2f", kTop + ph) + "\"/>\n";
    svg += "<line x1=\"" + fmt("%.2f", kLeft) + "\" y1=\"" + fmt("%.2f", kTop) + "\" x2=\"" +
           fmt("%.2f", kLeft) + "\" y2=\"" + fmt("%.2f", kTop + ph) + "\"/>\n";
    svg += "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = x_max * i / 5.0;
        const double yv = y_max * i / 5.0;
        svg += "<text x=\"" + fmt("%.2f", sx(xv)) + "\" y=\"" + fmt("%.2f", kTop + ph + 16) +
               "\" text-anchor=\"middle\">" + fmt("%.3g", xv) + "</text>\n";
        svg += "<text x=\"" + fmt("%.2f", kLeft - 6) + "\" y=\"" + fmt("%.2f", sy(yv) + 4) +
               "\" text-anchor=\"end\">" + fmt("%.3g", yv) + "</text>\n";
    }
    svg += "<text x=\"" + fmt("%.2f", kLeft + pw / 2) + "\" y=\"" + fmt("%.2f", kHeight - 14) +
           "\" text-anchor=\"middle\">" + xml_escape(x_label) + "</text>\n";
    svg += "<text x=\"16\" y=\"" + fmt("%.2f", kTop + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           fmt("%.2f", kTop + ph / 2) + ")\">" + xml_escape(y_label) + "</text>\n";
    svg += "</g>\n";
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const char* color = kColors[c % kColors.size()];
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"2\" points=\"";
        bool first = true;
        for (const auto& p : curves[c].points) {
            if (!first) svg += " ";
            first = false;
            svg += fmt("%.2f", sx(p.cutoff)) + "," + fmt("%.2f", sy(p.sensitivity));
        }
        svg += "\"/>\n";
        if (!curves[c].label.empty()) {
            const double ly = kTop + 14.0 * static_cast<double>(c + 1);
            svg += "<text x=\"" + fmt("%.2f", kLeft + pw - 4) + "\" y=\"" + fmt("%.2f", ly) +
                   "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" + color + "\">" +
                   xml_escape(curves[c].label) + "</text>\n";
        }
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace specfuse::csf
