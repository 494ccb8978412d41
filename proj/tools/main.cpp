// rial: recognizes the value printed on Iranian banknotes in photographs,
// plus the training / synthesis / evaluation commands around it.
//
// Exit codes: 0 success, 1 usage or configuration problem, 2 recognition
// failure on the given image.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rial/error.hpp"
#include "rial/eval.hpp"
#include "rial/mlp.hpp"
#include "rial/pipeline.hpp"
#include "rial/pnm.hpp"

namespace fs = std::filesystem;
using namespace rial;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitRecognition = 2;

struct CommonOptions {
    std::string config_path;
    std::uint32_t seed = 1;

    std::string threshold_window;
    std::string threshold_bias;
    std::string wiener_window;
    std::string closing_se;
    std::string connectivity;
    std::string line_tolerance;
    std::string model;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--config", opt.config_path, "key=value configuration file");
    cmd->add_option("--seed", opt.seed, "seed for every random draw");
    cmd->add_option("--threshold-window", opt.threshold_window,
                    "local threshold window (odd)");
    cmd->add_option("--threshold-bias", opt.threshold_bias, "local threshold bias");
    cmd->add_option("--wiener-window", opt.wiener_window, "denoise window (odd)");
    cmd->add_option("--closing-se", opt.closing_se, "closing element WxH override");
    cmd->add_option("--connectivity", opt.connectivity, "component connectivity, 4 or 8");
    cmd->add_option("--line-tolerance", opt.line_tolerance, "zero line tolerance in pixels");
    cmd->add_option("--model", opt.model, "model file path");
}

std::pair<int, int> parse_se(const std::string& text) {
    auto x = text.find('x');
    if (x == std::string::npos) {
        x = text.find('X');
    }
    if (x == std::string::npos || x == 0 || x + 1 >= text.size()) {
        throw std::invalid_argument("closing element must look like WxH, e.g. 9x5");
    }
    return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
}

// Defaults, then the config file, then explicit flags.
PipelineConfig build_config(const CommonOptions& opt) {
    PipelineConfig cfg;
    auto apply = [&](const std::string& key, const std::string& value) {
        if (key == "threshold_window") {
            cfg.threshold_window = std::stoi(value);
        } else if (key == "threshold_bias") {
            cfg.threshold_bias = std::stod(value);
        } else if (key == "wiener_window") {
            cfg.wiener_window = std::stoi(value);
        } else if (key == "closing_se") {
            cfg.closing_se = parse_se(value);
        } else if (key == "connectivity") {
            cfg.connectivity = std::stoi(value);
        } else if (key == "line_tolerance") {
            cfg.line_tolerance = std::stod(value);
        } else if (key == "model") {
            cfg.model_path = value;
        } else {
            throw std::invalid_argument("unknown configuration key '" + key + "'");
        }
    };
    if (!opt.config_path.empty()) {
        std::ifstream in(opt.config_path);
        if (!in) {
            throw std::invalid_argument("cannot read config file " + opt.config_path);
        }
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') {
                continue;
            }
            auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw std::invalid_argument("config line without '=': " + line);
            }
            apply(line.substr(0, eq), line.substr(eq + 1));
        }
    }
    if (!opt.threshold_window.empty()) apply("threshold_window", opt.threshold_window);
    if (!opt.threshold_bias.empty()) apply("threshold_bias", opt.threshold_bias);
    if (!opt.wiener_window.empty()) apply("wiener_window", opt.wiener_window);
    if (!opt.closing_se.empty()) apply("closing_se", opt.closing_se);
    if (!opt.connectivity.empty()) apply("connectivity", opt.connectivity);
    if (!opt.line_tolerance.empty()) apply("line_tolerance", opt.line_tolerance);
    if (!opt.model.empty()) apply("model", opt.model);
    return cfg;
}

double tidy_angle(double deg) {
    double rounded = std::round(deg * 10.0) / 10.0;
    if (rounded == 0.0) {
        rounded = 0.0;  // drop a negative sign on -0.0
    }
    return rounded;
}

// Pipeline rows -> training samples; rows the pipeline cannot localize are
// skipped and reported.
std::vector<Sample> collect_samples(const std::vector<ManifestRow>& rows,
                                    const fs::path& base_dir, const PipelineConfig& cfg) {
    std::vector<Sample> samples;
    int skipped = 0;
    for (const auto& row : rows) {
        Denomination denom = denomination_from_value(row.denomination);
        ColorImage image = load_image((base_dir / row.path).string());
        try {
            LocalizationResult loc = localize(to_gray(image), cfg);
            samples.emplace_back(loc.features, denom.digit);
        } catch (const Error&) {
            ++skipped;
        }
    }
    if (skipped > 0) {
        std::cerr << "note: " << skipped << " image(s) failed localization and were skipped\n";
    }
    return samples;
}

int cmd_recognize(const std::string& image_path, const CommonOptions& opt, bool symmetry) {
    PipelineConfig cfg = build_config(opt);
    cfg.compute_symmetry = symmetry;
    if (cfg.model_path.empty()) {
        std::cerr << "error: no model file given (use --model)\n";
        return kExitUsage;
    }
    MlpModel model;
    try {
        model = load_model(cfg.model_path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.qualified() << "\n";
        return kExitUsage;
    }

    try {
        ColorImage image = load_image(image_path);
        Recognition rec = recognize(image, model, cfg);
        std::printf("value=%lld digit=%d zeros=%d angle=%.1f\n",
                    static_cast<long long>(rec.denom.value), digit_value(rec.denom.digit),
                    rec.denom.zeros, tidy_angle(rec.angle_deg));
        if (cfg.compute_symmetry) {
            SymmetryScores sym = symmetry_scores(rec.loc.crop);
            std::printf("symmetry_h=%.4f symmetry_v=%.4f\n", sym.horizontal, sym.vertical);
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.qualified() << "\n";
        return kExitRecognition;
    }
}

int cmd_train(const std::string& manifest_path, const std::string& out_path, double lr,
              int epochs, double train_fraction, const CommonOptions& opt) {
    PipelineConfig cfg = build_config(opt);
    auto rows = read_manifest(manifest_path);
    auto samples = collect_samples(rows, fs::path(manifest_path).parent_path(), cfg);

    TrainConfig tc;
    tc.learning_rate = lr;
    tc.epochs = epochs;
    tc.seed = opt.seed;
    tc.train_fraction = train_fraction;
    auto [model, report] = train_mlp(samples, tc);
    save_model(model, out_path);

    std::printf("Digit   Train accuracy   Test accuracy\n");
    for (int k = 0; k < 3; ++k) {
        std::printf("%-7d %6.2f%% (%4d)   %6.2f%% (%4d)\n", digit_value(kAllDigits[k]),
                    100.0 * report.train_accuracy[k], report.train_count[k],
                    100.0 * report.test_accuracy[k], report.test_count[k]);
    }
    std::printf("Average %6.2f%%          %6.2f%%\n", 100.0 * report.train_average,
                100.0 * report.test_average);
    std::printf("model written to %s\n", out_path.c_str());
    return 0;
}

int cmd_synth(const std::string& out_dir, int count, double rot_max, double scale_min,
              double scale_max, double noise_max, const std::string& backgrounds,
              const CommonOptions& opt) {
    if (count < 1) {
        throw std::invalid_argument("--count must be at least 1");
    }
    std::vector<BackgroundKind> kinds;
    {
        std::stringstream ss(backgrounds);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item == "plain") {
                kinds.push_back(BackgroundKind::Plain);
            } else if (item == "textured") {
                kinds.push_back(BackgroundKind::Textured);
            } else if (item == "cluttered") {
                kinds.push_back(BackgroundKind::Cluttered);
            } else {
                throw std::invalid_argument("unknown background '" + item + "'");
            }
        }
        if (kinds.empty()) {
            throw std::invalid_argument("--backgrounds must name at least one kind");
        }
    }

    fs::create_directories(out_dir);
    std::mt19937 rng(opt.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::ofstream manifest(fs::path(out_dir) / "manifest.csv");
    if (!manifest) {
        throw std::invalid_argument("cannot write manifest in " + out_dir);
    }
    const auto& denoms = all_denominations();
    for (int i = 0; i < count; ++i) {
        SynthSpec spec;
        spec.denom = denoms[i % denoms.size()];
        spec.rotation_deg = (unit(rng) * 2.0 - 1.0) * rot_max;
        spec.scale = scale_min + unit(rng) * (scale_max - scale_min);
        spec.noise = unit(rng) * noise_max;
        spec.background = kinds[i % kinds.size()];
        spec.illumination = 0.85 + unit(rng) * 0.3;
        spec.seed = rng();

        SynthSample sample = generate_sample(spec);
        char name[32];
        std::snprintf(name, sizeof name, "img_%05d.ppm", i);
        save_ppm(sample.image, (fs::path(out_dir) / name).string());

        ManifestRow row;
        row.path = name;
        row.denomination = spec.denom.value;
        row.rotation = spec.rotation_deg;
        row.scale = spec.scale;
        row.noise = spec.noise;
        row.seed = spec.seed;
        manifest << manifest_line(row) << "\n";
    }
    std::printf("wrote %d images and manifest.csv to %s\n", count, out_dir.c_str());
    return 0;
}

int cmd_evaluate(const std::string& manifest_path, const std::string& csv_path,
                 const CommonOptions& opt) {
    PipelineConfig cfg = build_config(opt);
    if (cfg.model_path.empty()) {
        std::cerr << "error: no model file given (use --model)\n";
        return kExitUsage;
    }
    MlpModel model;
    try {
        model = load_model(cfg.model_path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.qualified() << "\n";
        return kExitUsage;
    }

    auto rows = read_manifest(manifest_path);
    fs::path base = fs::path(manifest_path).parent_path();
    std::vector<EvalItem> items;
    for (const auto& row : rows) {
        EvalItem item;
        item.image = load_image((base / row.path).string());
        item.truth =
            layout_ground_truth(denomination_from_value(row.denomination), row.rotation,
                                row.scale);
        items.push_back(std::move(item));
    }

    EvalReport report = evaluate(items, model, cfg);
    std::fputs(render_report(report).c_str(), stdout);
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) {
            throw std::invalid_argument("cannot write " + csv_path);
        }
        out << render_report_csv(report);
        std::printf("csv written to %s\n", csv_path.c_str());
    }
    return 0;
}

int cmd_debug_stages(const std::string& image_path, const std::string& out_dir,
                     const CommonOptions& opt) {
    PipelineConfig cfg = build_config(opt);
    fs::create_directories(out_dir);

    int index = 0;
    auto dump = [&](const std::string& name, const LocalizationResult& r) {
        ++index;
        char prefix[16];
        std::snprintf(prefix, sizeof prefix, "%02d-", index);
        fs::path base = fs::path(out_dir) / (prefix + name);
        if (name == "gray") {
            save_pgm(r.gray, base.string() + ".pgm");
        } else if (name == "wiener") {
            save_pgm(r.denoised, base.string() + ".pgm");
        } else if (name == "binary") {
            save_pgm(binary_to_gray(r.binary), base.string() + ".pgm");
        } else if (name == "median") {
            save_pgm(binary_to_gray(r.median), base.string() + ".pgm");
        } else if (name == "shape-filtered") {
            save_ppm(colorize_labels(r.filtered), base.string() + ".ppm");
        } else if (name == "closed") {
            save_ppm(colorize_labels(r.closed), base.string() + ".ppm");
        } else if (name == "lines") {
            ColorImage vis = colorize_labels(r.filtered);
            for (const auto& cand : r.candidates) {
                // Trace the candidate line across the canvas.
                for (int step = -2 * vis.width; step <= 2 * vis.width; ++step) {
                    int x = static_cast<int>(std::lround(cand.point.x + step * cand.dir.x * 0.5));
                    int y = static_cast<int>(std::lround(cand.point.y + step * cand.dir.y * 0.5));
                    if (x >= 0 && x < vis.width && y >= 0 && y < vis.height) {
                        std::uint8_t* px = vis.at(x, y);
                        px[0] = 255;
                        px[1] = 255;
                        px[2] = 0;
                    }
                }
            }
            save_ppm(vis, base.string() + ".ppm");
        } else if (name == "selected") {
            ColorImage vis = colorize_labels(r.filtered);
            for (const auto& z : r.line.zeros) {
                for (int x = z.min_x; x <= z.max_x; ++x) {
                    for (int yy : {z.min_y, z.max_y}) {
                        std::uint8_t* px = vis.at(x, yy);
                        px[0] = 255;
                        px[1] = 64;
                        px[2] = 64;
                    }
                }
                for (int y = z.min_y; y <= z.max_y; ++y) {
                    for (int xx : {z.min_x, z.max_x}) {
                        std::uint8_t* px = vis.at(xx, y);
                        px[0] = 255;
                        px[1] = 64;
                        px[2] = 64;
                    }
                }
            }
            save_ppm(vis, base.string() + ".ppm");
        } else if (name == "rotated") {
            save_pgm(binary_to_gray(r.levelled), base.string() + ".pgm");
        } else if (name == "crop") {
            save_pgm(binary_to_gray(r.crop.image), base.string() + ".pgm");
        }
    };

    try {
        ColorImage image = load_image(image_path);
        localize(to_gray(image), cfg, dump);
        std::printf("wrote %d stage files to %s\n", index, out_dir.c_str());
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.qualified() << "\n";
        std::cerr << "wrote " << index << " stage files before failing\n";
        return kExitRecognition;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Iranian banknote value recognition"};
    app.require_subcommand(1);

    CommonOptions opt;

    auto* recognize_cmd = app.add_subcommand("recognize", "recognize one note image");
    std::string image_path;
    recognize_cmd->add_option("--image", image_path, "input image (pgm/ppm)")->required();
    bool symmetry = false;
    recognize_cmd->add_flag("--symmetry", symmetry, "also print mirror-overlap scores");
    add_common_flags(recognize_cmd, opt);

    auto* train_cmd = app.add_subcommand("train", "train the digit classifier");
    std::string manifest_path, model_out;
    double lr = 0.5, train_fraction = 0.70;
    int epochs = 2000;
    train_cmd->add_option("--manifest", manifest_path, "dataset manifest")->required();
    train_cmd->add_option("--out", model_out, "model file to write")->required();
    train_cmd->add_option("--learning-rate", lr, "gradient step size");
    train_cmd->add_option("--epochs", epochs, "full-batch epochs");
    train_cmd->add_option("--train-fraction", train_fraction, "training split fraction");
    add_common_flags(train_cmd, opt);

    auto* synth_cmd = app.add_subcommand("synth", "write a synthetic dataset");
    std::string out_dir = "synth_out";
    int count = 70;
    double rot_max = 30.0, scale_min = 0.6, scale_max = 1.4, noise_max = 0.25;
    std::string backgrounds = "plain,textured";
    synth_cmd->add_option("--out", out_dir, "output directory");
    synth_cmd->add_option("--count", count, "number of images");
    synth_cmd->add_option("--rot-max", rot_max, "max |rotation| in degrees");
    synth_cmd->add_option("--scale-min", scale_min, "min glyph scale");
    synth_cmd->add_option("--scale-max", scale_max, "max glyph scale");
    synth_cmd->add_option("--noise-max", noise_max, "max noise level");
    synth_cmd->add_option("--backgrounds", backgrounds,
                          "comma list of plain/textured/cluttered");
    add_common_flags(synth_cmd, opt);

    auto* eval_cmd = app.add_subcommand("evaluate", "run the accuracy tables on a dataset");
    std::string eval_manifest, csv_path;
    eval_cmd->add_option("--manifest", eval_manifest, "dataset manifest")->required();
    eval_cmd->add_option("--csv", csv_path, "also write machine-readable rows here");
    add_common_flags(eval_cmd, opt);

    auto* stages_cmd = app.add_subcommand("debug-stages", "dump every pipeline stage image");
    std::string stages_image, stages_dir = "stages";
    stages_cmd->add_option("--image", stages_image, "input image")->required();
    stages_cmd->add_option("--out", stages_dir, "output directory");
    add_common_flags(stages_cmd, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        if (recognize_cmd->parsed()) {
            return cmd_recognize(image_path, opt, symmetry);
        }
        if (train_cmd->parsed()) {
            return cmd_train(manifest_path, model_out, lr, epochs, train_fraction, opt);
        }
        if (synth_cmd->parsed()) {
            return cmd_synth(out_dir, count, rot_max, scale_min, scale_max, noise_max,
                             backgrounds, opt);
        }
        if (eval_cmd->parsed()) {
            return cmd_evaluate(eval_manifest, csv_path, opt);
        }
        if (stages_cmd->parsed()) {
            return cmd_debug_stages(stages_image, stages_dir, opt);
        }
    } catch (const Error& e) {
        if (e.code() == "BadManifestRow") {
            std::cerr << "error: " << e.detail() << "\n";
        } else {
            std::cerr << "error: " << e.qualified() << "\n";
        }
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
