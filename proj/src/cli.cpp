// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The specfuse Authors

#include "specfuse/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "specfuse/conv.hpp"
#include "specfuse/csf.hpp"
#include "specfuse/error.hpp"
#include "specfuse/fourier.hpp"
#include "specfuse/io.hpp"
#include "specfuse/metrics.hpp"
#include "specfuse/pfb.hpp"
#include "specfuse/wasf.hpp"
#include "specfuse/wavelet.hpp"

namespace specfuse::cli {
namespace fs = std::filesystem;
namespace {

std::string lower_ext(const fs::path& p) {
    auto ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext;
}

Tensor read_input(const fs::path& p) {
    return lower_ext(p) == ".sft" ? io::tensor_read(p) : io::image_read_gray(p);
}

void write_output(const Tensor& t, const fs::path& p, int bits) {
    if (lower_ext(p) == ".sft") {
        io::tensor_write(t, p);
    } else {
        io::image_write_gray(t, p, bits);
    }
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::vector<fs::path> expand_inputs(const std::vector<std::string>& items) {
    std::vector<fs::path> out;
    for (const auto& item : items) {
        if (fs::is_directory(item)) {
            std::vector<fs::path> files;
            for (const auto& e : fs::directory_iterator(item)) {
                if (e.is_regular_file()) files.push_back(e.path());
            }
            std::sort(files.begin(), files.end());
            out.insert(out.end(), files.begin(), files.end());
        } else {
            out.emplace_back(item);
        }
    }
    return out;
}

wavelet::DwtConvParams make_dwt_params(const std::string& init, std::size_t depth, std::size_t kernel,
                                       std::uint64_t seed) {
    if (init == "identity") return wavelet::DwtConvParams::identity(depth, kernel);
    if (init == "zeros") return wavelet::DwtConvParams::zeros(depth, kernel);
    if (init == "seeded") {
        auto p = wavelet::DwtConvParams::zeros(depth, kernel);
        pfb::SeededUniform rng(seed);
        for (auto& level : p.level_kernels) {
            for (auto& k : level) {
                for (double& v : k.data()) v = rng.next_weight();
            }
        }
        for (double& v : p.residual.data()) v = rng.next_weight();
        return p;
    }
    throw ParameterError("unknown --init '" + init + "' (expected identity, zeros or seeded)");
}

// Pattern generator for the bundled synthetic set; values stay in [0, 1].
double synthetic_pixel(int kind, int variant, int x, int y, int n, pfb::SeededUniform& rng) {
    const double fx = static_cast<double>(x);
    const double fy = static_cast<double>(y);
    const double fn = static_cast<double>(n);
    const double cx = fx - fn / 2.0;
    const double cy = fy - fn / 2.0;
    const double r2 = cx * cx + cy * cy;
    const double tau = 2.0 * std::numbers::pi;
    const double k = 1.0 + variant;
    switch (kind) {
        case 0: return 0.5 + 0.4 * std::sin(tau * 2.0 * k * fx / fn);
        case 1: return 0.5 + 0.4 * std::sin(tau * (5.0 * k * fx + 3.0 * fy) / fn);
        case 2: {
            const double sigma = fn / (8.0 * k);
            return std::exp(-r2 / (2.0 * sigma * sigma));
        }
        case 3: return r2 < (fn / 4.0) * (fn / 4.0) / k ? 0.8 : 0.2;
        case 4: return ((x / (4 * static_cast<int>(k)) + y / (4 * static_cast<int>(k))) % 2) ? 0.9 : 0.1;
        case 5: return 0.5 + 0.4 * std::cos(std::numbers::pi * k * r2 / fn);
        case 6: return rng.next_unit();
        default: return 0.7 * fx / (fn - 1.0) + 0.15 + 0.15 * std::sin(tau * 12.0 * k * fy / fn);
    }
}

}  // namespace

void write_synthetic_images(const fs::path& dir, int count, int size) {
    if (count <= 0 || size < 4) throw ParameterError("synthetic set needs count > 0 and size >= 4");
    fs::create_directories(dir);
    for (int i = 0; i < count; ++i) {
        pfb::SeededUniform rng(static_cast<std::uint64_t>(i) + 1);
        Tensor img(1, static_cast<std::size_t>(size), static_cast<std::size_t>(size));
        for (int y = 0; y < size; ++y) {
            for (int x = 0; x < size; ++x) {
                img.at(0, y, x) = std::clamp(synthetic_pixel(i % 8, i / 8, x, y, size, rng), 0.0, 1.0);
            }
        }
        char name[32];
        std::snprintf(name, sizeof name, "synthetic_%02d.pgm", i);
        io::image_write_gray(img, dir / name, 8);
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"specfuse: frequency-domain feature toolkit (spectral pooling, wavelets, WASF/PFB, CSF)"};
    app.name(args.empty() ? "specfuse" : fs::path(args[0]).filename().string());
    app.set_config("--config", "", "key=value file whose entries map onto command-line flags");
    app.require_subcommand(1);
    std::function<void()> action;
    int bits = 8;
    app.add_option("--bits", bits, "Bit depth for image outputs (8 or 16)")->check(CLI::IsMember({8, 16}));

    // filter
    auto* filter = app.add_subcommand("filter", "Ideal circular low-pass (band-limit) filter");
    double filter_fraction = 1.0;
    double filter_radius = -1.0;
    std::string filter_in, filter_out;
    auto* frac_opt = filter->add_option("--radius-fraction", filter_fraction,
                                        "Cutoff as a fraction of min(H, W)/2, in (0, 1]");
    filter->add_option("--radius", filter_radius, "Absolute cutoff radius in bins (overrides the fraction)")
        ->excludes(frac_opt);
    filter->add_option("input", filter_in)->required();
    filter->add_option("output", filter_out)->required();
    filter->callback([&] {
        action = [&] {
            const auto t = read_input(filter_in);
            const auto y = filter_radius >= 0.0 ? csf::bandlimit_radius(t, filter_radius)
                                                : csf::bandlimit(t, fourier::CutoffSpec{filter_fraction});
            write_output(y, filter_out, bits);
        };
    });

    // split
    auto* split = app.add_subcommand("split", "Split into low- and high-frequency components");
    double split_radius = 0.0;
    std::string split_in, split_low, split_high;
    split->add_option("--radius", split_radius, "Low-frequency disk radius in bins")->required();
    split->add_option("input", split_in)->required();
    split->add_option("low", split_low)->required();
    split->add_option("high", split_high)->required();
    split->callback([&] {
        action = [&] {
            const auto parts = fourier::spf_split(read_input(split_in), split_radius);
            write_output(parts.low, split_low, bits);
            write_output(parts.high, split_high, bits);
        };
    });

    // mix
    auto* mix = app.add_subcommand("mix", "Spectral pooling mix lambda*low + (1-lambda)*high");
    fourier::SpectralMixParams mix_params;
    std::string mix_in, mix_out;
    mix->add_option("--lambda", mix_params.lambda, "Balance weight in [0, 1]")->required();
    mix->add_option("--radius", mix_params.radius, "Low-frequency disk radius in bins")->required();
    mix->add_option("input", mix_in)->required();
    mix->add_option("output", mix_out)->required();
    mix->callback([&] {
        action = [&] {
            mix_params.validate();
            write_output(fourier::spf_mix(read_input(mix_in), mix_params), mix_out, bits);
        };
    });

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "Dump the centered spectrum as a 2-channel SFT1 tensor");
    std::string spec_in, spec_out;
    spectrum->add_option("input", spec_in)->required();
    spectrum->add_option("output", spec_out)->required();
    spectrum->callback([&] {
        action = [&] {
            const auto t = read_input(spec_in);
            if (t.channels() != 1) throw ParameterError("spectrum expects a single-channel input");
            io::tensor_write(fourier::spectrum_to_tensor(center(fourier::dft2(t))), spec_out);
        };
    });

    // dwt / idwt
    auto* dwt = app.add_subcommand("dwt", "Haar wavelet pyramid into a directory of SFT1 subbands");
    std::size_t dwt_depth = 1;
    std::string dwt_in, dwt_dir;
    dwt->add_option("--depth", dwt_depth, "Number of levels")->required();
    dwt->add_option("input", dwt_in)->required();
    dwt->add_option("outdir", dwt_dir)->required();
    dwt->callback([&] {
        action = [&] {
            const auto p = wavelet::dwt_pyramid(read_input(dwt_in), dwt_depth);
            fs::create_directories(dwt_dir);
            std::string manifest = "depth " + std::to_string(p.depth()) + "\n";
            for (std::size_t l = 0; l < p.depth(); ++l) {
                const auto& level = p.levels[l];
                manifest += "level " + std::to_string(l + 1) + " " + std::to_string(level.height) + " " +
                            std::to_string(level.width) + "\n";
                for (std::size_t b = 0; b < 4; ++b) {
                    io::tensor_write(level.band(static_cast<wavelet::Band>(b)),
                                     fs::path(dwt_dir) / ("level" + std::to_string(l + 1) + "_" +
                                                          wavelet::kBandNames[b] + ".sft"));
                }
            }
            io::write_file_atomic(fs::path(dwt_dir) / "pyramid.txt", manifest);
        };
    });
    auto* idwt = app.add_subcommand("idwt", "Reconstruct from a directory written by dwt");
    std::string idwt_dir, idwt_out;
    idwt->add_option("indir", idwt_dir)->required();
    idwt->add_option("output", idwt_out)->required();
    idwt->callback([&] {
        action = [&] {
            std::istringstream manifest(io::read_file(fs::path(idwt_dir) / "pyramid.txt"));
            std::string word;
            std::size_t depth = 0;
            if (!(manifest >> word >> depth) || word != "depth" || depth == 0) {
                throw FormatError("pyramid.txt: expected 'depth <n>'");
            }
            wavelet::WaveletPyramid p;
            for (std::size_t l = 0; l < depth; ++l) {
                std::size_t index = 0;
                wavelet::Subbands s;
                if (!(manifest >> word >> index >> s.height >> s.width) || word != "level" || index != l + 1) {
                    throw FormatError("pyramid.txt: malformed entry for level " + std::to_string(l + 1));
                }
                for (std::size_t b = 0; b < 4; ++b) {
                    s.band(static_cast<wavelet::Band>(b)) = io::tensor_read(
                        fs::path(idwt_dir) / ("level" + std::to_string(l + 1) + "_" + wavelet::kBandNames[b] + ".sft"));
                }
                p.levels.push_back(std::move(s));
            }
            write_output(wavelet::idwt_pyramid(p), idwt_out, bits);
        };
    });

    // dwtconv
    auto* dwtconv = app.add_subcommand("dwtconv", "Cascaded wavelet convolution");
    std::size_t dc_depth = 2, dc_kernel = 3;
    std::string dc_init = "identity";
    std::uint64_t dc_seed = 0;
    std::string dc_in, dc_out;
    dwtconv->add_option("--depth", dc_depth, "Cascade depth")->capture_default_str();
    dwtconv->add_option("--kernel-size", dc_kernel, "Odd kernel size")->capture_default_str();
    dwtconv->add_option("--init", dc_init, "identity | zeros | seeded")->capture_default_str();
    dwtconv->add_option("--seed", dc_seed, "Seed for --init seeded");
    dwtconv->add_option("input", dc_in)->required();
    dwtconv->add_option("output", dc_out)->required();
    dwtconv->callback([&] {
        action = [&] {
            const auto params = make_dwt_params(dc_init, dc_depth, dc_kernel, dc_seed);
            write_output(wavelet::dwtconv(read_input(dc_in), params), dc_out, bits);
        };
    });

    // wasf
    auto* wasf_cmd = app.add_subcommand("wasf", "Wavelet-adaptive spectral fusion forward pass");
    std::size_t wasf_n = 1, wasf_sep = 3, wasf_depth = 2, wasf_kernel = 3;
    double wasf_lambda = 0.5;
    std::string wasf_init = "identity";
    std::uint64_t wasf_seed = 0;
    std::string wasf_in, wasf_out;
    wasf_cmd->add_option("--n", wasf_n, "Radius exponent (radius = 2^n)")->capture_default_str();
    wasf_cmd->add_option("--lambda", wasf_lambda, "Balance weight in [0, 1]")->capture_default_str();
    wasf_cmd->add_option("--sep-len", wasf_sep, "Separable kernel length")->capture_default_str();
    wasf_cmd->add_option("--dwt-depth", wasf_depth, "DWT cascade depth")->capture_default_str();
    wasf_cmd->add_option("--dwt-kernel", wasf_kernel, "DWT kernel size")->capture_default_str();
    wasf_cmd->add_option("--init", wasf_init, "identity | seeded")->capture_default_str();
    wasf_cmd->add_option("--seed", wasf_seed, "Seed for --init seeded");
    wasf_cmd->add_option("input", wasf_in)->required();
    wasf_cmd->add_option("output", wasf_out)->required();
    wasf_cmd->callback([&] {
        action = [&] {
            auto p = wasf::WasfParams::identity(wasf_n, wasf_lambda, wasf_sep, wasf_depth, wasf_kernel);
            if (wasf_init == "seeded") {
                p.dwt = make_dwt_params("seeded", wasf_depth, wasf_kernel, wasf_seed);
                pfb::SeededUniform rng(wasf_seed ^ 0x9E3779B97F4A7C15ULL);
                for (double& v : p.sep_row.data()) v = rng.next_weight();
                for (double& v : p.sep_col.data()) v = rng.next_weight();
            } else if (wasf_init != "identity") {
                throw ParameterError("unknown --init '" + wasf_init + "' (expected identity or seeded)");
            }
            write_output(wasf::wasf_forward(read_input(wasf_in), p), wasf_out, bits);
        };
    });

    // pfb
    auto* pfb_cmd = app.add_subcommand("pfb", "Perception frequency block weights and forward pass");
    pfb_cmd->require_subcommand(1);
    auto* pfb_init = pfb_cmd->add_subcommand("init", "Create a weight bundle");
    pfb::PfbConfig pfb_config;
    std::uint64_t pfb_seed = 0;
    bool pfb_identity = false;
    std::string pfb_nl = "relu";
    std::vector<std::size_t> pfb_exponents{1, 2, 3, 4};
    std::vector<std::size_t> pfb_seps{3, 5, 7, 9};
    std::string pfb_init_out;
    pfb_init->add_option("--seed", pfb_seed, "Seed for the documented LCG");
    pfb_init->add_flag("--identity", pfb_identity, "Identity configuration instead of seeded weights");
    pfb_init->add_option("--in-channels", pfb_config.in_channels)->capture_default_str();
    pfb_init->add_option("--mid-channels", pfb_config.mid_channels)->capture_default_str();
    pfb_init->add_option("--out-channels", pfb_config.out_channels)->capture_default_str();
    pfb_init->add_option("--radius-exponents", pfb_exponents, "Four radius exponents")->delimiter(',')->expected(4);
    pfb_init->add_option("--sep-lens", pfb_seps, "Four separable kernel lengths")->delimiter(',')->expected(4);
    pfb_init->add_option("--dwt-depth", pfb_config.dwt_depth)->capture_default_str();
    pfb_init->add_option("--dwt-kernel", pfb_config.dwt_kernel)->capture_default_str();
    pfb_init->add_option("--lambda", pfb_config.lambda)->capture_default_str();
    pfb_init->add_option("--nonlinearity", pfb_nl, "relu | none")->check(CLI::IsMember({"relu", "none"}));
    pfb_init->add_option("--out", pfb_init_out, "Bundle path")->required();
    pfb_init->callback([&] {
        action = [&] {
            std::copy(pfb_exponents.begin(), pfb_exponents.end(), pfb_config.radius_exponents.begin());
            std::copy(pfb_seps.begin(), pfb_seps.end(), pfb_config.sep_kernel_lens.begin());
            pfb_config.nonlinearity = pfb_nl == "relu" ? pfb::Nonlinearity::relu : pfb::Nonlinearity::none;
            const auto w = pfb_identity ? pfb::weights_identity(pfb_config) : pfb::weights_seeded(pfb_seed, pfb_config);
            pfb::weights_save(w, pfb_init_out);
        };
    });
    auto* pfb_forward = pfb_cmd->add_subcommand("forward", "Run the block on a tensor or image");
    std::string pfb_weights, pfb_in, pfb_out;
    pfb_forward->add_option("--weights", pfb_weights)->required();
    pfb_forward->add_option("--in", pfb_in)->required();
    pfb_forward->add_option("--out", pfb_out)->required();
    pfb_forward->callback([&] {
        action = [&] {
            const auto w = pfb::weights_load(pfb_weights);
            write_output(pfb::pfb_forward(read_input(pfb_in), w), pfb_out, bits);
        };
    });

    // csf
    auto* csf_cmd = app.add_subcommand("csf", "Contrast sensitivity model and cutoff sweeps");
    csf_cmd->require_subcommand(1);
    auto* csf_model = csf_cmd->add_subcommand("model", "Evaluate or plot the analytic CSF");
    std::string csf_preset = "classic";
    std::optional<double> csf_f, csf_fx, csf_fy;
    double csf_fmax = 60.0;
    std::size_t csf_samples = 601;
    std::string model_csv, model_svg;
    csf_model->add_option("--preset", csf_preset, "classic | paper-literal")->capture_default_str();
    auto* f_opt = csf_model->add_option("--f", csf_f, "Radial spatial frequency");
    auto* fx_opt = csf_model->add_option("--fx", csf_fx, "Horizontal frequency")->excludes(f_opt);
    csf_model->add_option("--fy", csf_fy, "Vertical frequency")->excludes(f_opt)->needs(fx_opt);
    fx_opt->needs(csf_model->get_option("--fy"));
    csf_model->add_option("--fmax", csf_fmax, "Curve upper frequency")->capture_default_str();
    csf_model->add_option("--samples", csf_samples, "Curve sample count")->capture_default_str();
    csf_model->add_option("--csv", model_csv, "Write the curve as CSV");
    csf_model->add_option("--svg", model_svg, "Write the curve as SVG");
    csf_model->callback([&] {
        action = [&] {
            const auto params = csf::CsfModelParams::preset(csf::parse_preset(csf_preset));
            if (csf_f) {
                out << num(csf::hvs_csf(*csf_f, params)) << "\n";
                return;
            }
            if (csf_fx) {
                out << num(csf::hvs_csf(*csf_fx, *csf_fy, params)) << "\n";
                return;
            }
            const auto curve = csf::model_curve(params, csf_fmax, csf_samples, "HVS-CSF (" + csf_preset + ")");
            if (!model_svg.empty()) {
                io::write_file_atomic(model_svg, csf::curve_to_svg(std::span(&curve, 1), "spatial frequency", "sensitivity"));
            }
            if (!model_csv.empty()) {
                io::write_file_atomic(model_csv, csf::curve_to_csv(curve));
            } else if (model_svg.empty()) {
                out << csf::curve_to_csv(curve);
            }
        };
    });
    auto* csf_sweep = csf_cmd->add_subcommand("sweep", "Profile a scorer's sensitivity across cutoffs");
    std::vector<double> sweep_cutoffs;
    std::size_t sweep_steps = 20;
    std::string sweep_scorer = "energy";
    std::string sweep_cmd;
    std::string sweep_csv, sweep_svg, sweep_label;
    std::vector<std::string> sweep_inputs;
    auto* cut_opt = csf_sweep->add_option("--cutoffs", sweep_cutoffs, "Comma-separated radius fractions")->delimiter(',');
    csf_sweep->add_option("--steps", sweep_steps, "Use cutoffs k/steps, k = 1..steps")->excludes(cut_opt)->capture_default_str();
    auto* scorer_opt = csf_sweep->add_option("--scorer", sweep_scorer, "energy | similarity")
                           ->check(CLI::IsMember({"energy", "similarity"}))->capture_default_str();
    csf_sweep->add_option("--scorer-cmd", sweep_cmd, "External scorer command (receives a directory of PGMs)")
        ->excludes(scorer_opt);
    csf_sweep->add_option("--csv", sweep_csv, "CSV output path (stdout if omitted)");
    csf_sweep->add_option("--svg", sweep_svg, "SVG output path");
    csf_sweep->add_option("--label", sweep_label, "Curve label");
    csf_sweep->add_option("inputs", sweep_inputs, "Image/tensor files or directories")->required();
    csf_sweep->callback([&] {
        action = [&] {
            std::vector<fourier::CutoffSpec> cutoffs;
            if (!sweep_cutoffs.empty()) {
                for (double c : sweep_cutoffs) cutoffs.push_back({c});
            } else {
                if (sweep_steps == 0) throw ParameterError("--steps must be positive");
                for (std::size_t k = 1; k <= sweep_steps; ++k) {
                    cutoffs.push_back({static_cast<double>(k) / static_cast<double>(sweep_steps)});
                }
            }
            std::vector<csf::Sample> dataset;
            for (const auto& p : expand_inputs(sweep_inputs)) {
                auto t = read_input(p);
                dataset.push_back({t, t});
            }
            std::unique_ptr<csf::Scorer> scorer;
            if (!sweep_cmd.empty()) {
                scorer = std::make_unique<csf::SubprocessScorer>(sweep_cmd);
            } else if (sweep_scorer == "similarity") {
                scorer = std::make_unique<csf::SimilarityScorer>();
            } else {
                scorer = std::make_unique<csf::EnergyRetentionScorer>();
            }
            const auto label = sweep_label.empty() ? (sweep_cmd.empty() ? sweep_scorer : "external") : sweep_label;
            const auto curve = csf::csf_sweep(dataset, *scorer, cutoffs, label);
            if (!sweep_svg.empty()) {
                io::write_file_atomic(sweep_svg, csf::curve_to_svg(std::span(&curve, 1), "normalized spatial frequency",
                                                                   "sensitivity"));
            }
            if (!sweep_csv.empty()) {
                io::write_file_atomic(sweep_csv, csf::curve_to_csv(curve));
            } else {
                out << csf::curve_to_csv(curve);
            }
        };
    });

    // metrics
    auto* metrics_cmd = app.add_subcommand("metrics", "IoU / Dice / MAE for prediction and ground-truth masks");
    std::string m_pred, m_gt, m_out;
    metrics_cmd->add_option("--pred", m_pred, "Prediction image or directory")->required();
    metrics_cmd->add_option("--gt", m_gt, "Ground-truth image or directory")->required();
    metrics_cmd->add_option("--out", m_out, "CSV output path (stdout if omitted)");
    metrics_cmd->callback([&] {
        action = [&] {
            std::vector<std::pair<std::string, std::pair<fs::path, fs::path>>> pairs;
            if (fs::is_directory(m_pred) != fs::is_directory(m_gt)) {
                throw ParameterError("--pred and --gt must both be files or both be directories");
            }
            if (fs::is_directory(m_pred)) {
                for (const auto& p : expand_inputs({m_pred})) {
                    const auto g = fs::path(m_gt) / p.filename();
                    if (!fs::exists(g)) throw IoError("no ground truth for " + p.filename().string() + " in " + m_gt);
                    pairs.push_back({p.filename().string(), {p, g}});
                }
                if (pairs.empty()) throw ParameterError("prediction directory is empty");
            } else {
                pairs.push_back({fs::path(m_pred).filename().string(), {m_pred, m_gt}});
            }
            std::vector<metrics::MetricRow> rows(pairs.size());
            std::string csv = "name,iou,dice,mae\n";
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                const metrics::ProbMask pred(read_input(pairs[i].second.first));
                const auto gt = metrics::BinMask::threshold(read_input(pairs[i].second.second));
                rows[i] = metrics::evaluate(pred, gt);
                csv += pairs[i].first + "," + num(rows[i].iou) + "," + num(rows[i].dice) + "," + num(rows[i].mae) + "\n";
            }
            const auto mean = metrics::mean_rows(rows);
            csv += "mean," + num(mean.iou) + "," + num(mean.dice) + "," + num(mean.mae) + "\n";
            if (m_out.empty()) {
                out << csv;
            } else {
                io::write_file_atomic(m_out, csv);
            }
        };
    });

    // synth
    auto* synth = app.add_subcommand("synth", "Write the deterministic synthetic image set");
    int synth_count = 8, synth_size = 64;
    std::string synth_dir;
    synth->add_option("--count", synth_count)->capture_default_str();
    synth->add_option("--size", synth_size)->capture_default_str();
    synth->add_option("outdir", synth_dir)->required();
    synth->callback([&] { action = [&] { write_synthetic_images(synth_dir, synth_count, synth_size); }; });

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    if (argv.empty()) argv.push_back("specfuse");
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        if (code == 0) return kExitOk;
        err << app.help();
        return kExitUsage;
    }
    try {
        if (action) action();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace specfuse::cli
