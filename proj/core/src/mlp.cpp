#include "rial/mlp.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "rial/error.hpp"

namespace rial {

namespace {

constexpr const char* kModule = "classifier";

double logistic(double x) {
    return 1.0 / (1.0 + std::exp(-x));
}

struct Forward {
    std::array<double, MlpModel::kHidden> hidden;
    std::array<double, MlpModel::kOutputs> pre;
    std::array<double, MlpModel::kOutputs> probs;
};

Forward forward_pass(const MlpModel& m, const std::array<double, 4>& x) {
    Forward f;
    for (int h = 0; h < MlpModel::kHidden; ++h) {
        double a = m.hidden_bias[h];
        for (int i = 0; i < MlpModel::kInputs; ++i) {
            a += m.hidden_weights[h][i] * x[i];
        }
        f.hidden[h] = logistic(a);
    }
    double max_pre = -1e300;
    for (int o = 0; o < MlpModel::kOutputs; ++o) {
        double a = m.output_bias[o];
        for (int h = 0; h < MlpModel::kHidden; ++h) {
            a += m.output_weights[o][h] * f.hidden[h];
        }
        f.pre[o] = a;
        max_pre = std::max(max_pre, a);
    }
    double sum = 0.0;
    for (int o = 0; o < MlpModel::kOutputs; ++o) {
        f.probs[o] = std::exp(f.pre[o] - max_pre);
        sum += f.probs[o];
    }
    for (auto& p : f.probs) {
        p /= sum;
    }
    return f;
}

std::array<double, 4> standardize(const MlpModel& m, const FeatureVector& f) {
    auto raw = f.as_array();
    std::array<double, 4> x;
    for (int i = 0; i < 4; ++i) {
        x[i] = (raw[i] - m.feature_mean[i]) / m.feature_std[i];
    }
    return x;
}

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& tok) {
    double v = 0.0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
        throw Error(kModule, "CorruptModel", "bad number '" + tok + "'");
    }
    return v;
}

}  // namespace

int digit_value(DigitClass d) {
    switch (d) {
        case DigitClass::One: return 1;
        case DigitClass::Two: return 2;
        case DigitClass::Five: return 5;
    }
    return 0;
}

DigitClass digit_from_value(int v) {
    switch (v) {
        case 1: return DigitClass::One;
        case 2: return DigitClass::Two;
        case 5: return DigitClass::Five;
    }
    throw std::invalid_argument("digit must be 1, 2 or 5");
}

int digit_index(DigitClass d) {
    switch (d) {
        case DigitClass::One: return 0;
        case DigitClass::Two: return 1;
        case DigitClass::Five: return 2;
    }
    return -1;
}

namespace mlp_detail {

std::size_t parameter_count() {
    return MlpModel::kHidden * MlpModel::kInputs + MlpModel::kHidden +
           MlpModel::kOutputs * MlpModel::kHidden + MlpModel::kOutputs;
}

std::vector<double> pack_parameters(const MlpModel& m) {
    std::vector<double> theta;
    theta.reserve(parameter_count());
    for (const auto& row : m.hidden_weights) {
        theta.insert(theta.end(), row.begin(), row.end());
    }
    theta.insert(theta.end(), m.hidden_bias.begin(), m.hidden_bias.end());
    for (const auto& row : m.output_weights) {
        theta.insert(theta.end(), row.begin(), row.end());
    }
    theta.insert(theta.end(), m.output_bias.begin(), m.output_bias.end());
    return theta;
}

void unpack_parameters(const std::vector<double>& theta, MlpModel& m) {
    std::size_t k = 0;
    for (auto& row : m.hidden_weights) {
        for (auto& w : row) {
            w = theta[k++];
        }
    }
    for (auto& b : m.hidden_bias) {
        b = theta[k++];
    }
    for (auto& row : m.output_weights) {
        for (auto& w : row) {
            w = theta[k++];
        }
    }
    for (auto& b : m.output_bias) {
        b = theta[k++];
    }
}

double loss(const MlpModel& m, const std::vector<std::array<double, 4>>& inputs,
            const std::vector<int>& labels) {
    double total = 0.0;
    for (std::size_t n = 0; n < inputs.size(); ++n) {
        Forward f = forward_pass(m, inputs[n]);
        total += -std::log(std::max(f.probs[labels[n]], 1e-300));
    }
    return total / double(inputs.size());
}

std::vector<double> loss_gradient(const MlpModel& m,
                                  const std::vector<std::array<double, 4>>& inputs,
                                  const std::vector<int>& labels) {
    MlpModel grad{};  // reuse the layout for accumulation
    grad.hidden_weights = {};
    grad.hidden_bias = {};
    grad.output_weights = {};
    grad.output_bias = {};

    const double inv_n = 1.0 / double(inputs.size());
    for (std::size_t n = 0; n < inputs.size(); ++n) {
        Forward f = forward_pass(m, inputs[n]);

        // Softmax + cross-entropy: d loss / d pre_o = p_o - [o == label].
        std::array<double, MlpModel::kOutputs> dpre;
        for (int o = 0; o < MlpModel::kOutputs; ++o) {
            dpre[o] = (f.probs[o] - (o == labels[n] ? 1.0 : 0.0)) * inv_n;
        }
        std::array<double, MlpModel::kHidden> dhidden{};
        for (int o = 0; o < MlpModel::kOutputs; ++o) {
            grad.output_bias[o] += dpre[o];
            for (int h = 0; h < MlpModel::kHidden; ++h) {
                grad.output_weights[o][h] += dpre[o] * f.hidden[h];
                dhidden[h] += dpre[o] * m.output_weights[o][h];
            }
        }
        for (int h = 0; h < MlpModel::kHidden; ++h) {
            double da = dhidden[h] * f.hidden[h] * (1.0 - f.hidden[h]);
            grad.hidden_bias[h] += da;
            for (int i = 0; i < MlpModel::kInputs; ++i) {
                grad.hidden_weights[h][i] += da * inputs[n][i];
            }
        }
    }
    return pack_parameters(grad);
}

}  // namespace mlp_detail

std::pair<MlpModel, TrainReport> train_mlp(const std::vector<Sample>& samples,
                                           const TrainConfig& cfg) {
    if (cfg.train_fraction <= 0.0 || cfg.train_fraction >= 1.0) {
        throw std::invalid_argument("train_fraction must lie in (0, 1)");
    }
    if (cfg.epochs < 1) {
        throw std::invalid_argument("epochs must be >= 1");
    }

    std::array<int, 3> per_class{};
    for (const auto& [f, d] : samples) {
        per_class[digit_index(d)] += 1;
        for (double v : f.as_array()) {
            if (!std::isfinite(v)) {
                throw Error(kModule, "NonFiniteInput", "non-finite feature in training data");
            }
        }
    }
    for (int k = 0; k < 3; ++k) {
        if (per_class[k] < 10) {
            throw Error(kModule, "InsufficientData",
                        "need >= 10 samples per class, digit " +
                            std::to_string(digit_value(kAllDigits[k])) + " has " +
                            std::to_string(per_class[k]));
        }
    }

    std::mt19937 rng(cfg.seed);

    // Seeded shuffle, then the leading fraction trains.
    std::vector<std::size_t> order(samples.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    for (std::size_t i = order.size(); i > 1; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        std::swap(order[i - 1], order[pick(rng)]);
    }
    const std::size_t train_n =
        std::max<std::size_t>(1, static_cast<std::size_t>(samples.size() * cfg.train_fraction));

    std::vector<std::array<double, 4>> train_x, test_x;
    std::vector<int> train_y, test_y;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto& [f, d] = samples[order[i]];
        if (i < train_n) {
            train_x.push_back(f.as_array());
            train_y.push_back(digit_index(d));
        } else {
            test_x.push_back(f.as_array());
            test_y.push_back(digit_index(d));
        }
    }

    MlpModel model;
    for (int i = 0; i < 4; ++i) {
        double mean = 0.0;
        for (const auto& x : train_x) {
            mean += x[i];
        }
        mean /= double(train_x.size());
        double var = 0.0;
        for (const auto& x : train_x) {
            var += (x[i] - mean) * (x[i] - mean);
        }
        var /= double(train_x.size());
        double sd = std::sqrt(var);
        if (sd <= 0.0) {
            throw Error(kModule, "DegenerateFeatures",
                        "feature " + std::to_string(i) + " is constant on the training split");
        }
        model.feature_mean[i] = mean;
        model.feature_std[i] = sd;
    }
    for (auto& x : train_x) {
        for (int i = 0; i < 4; ++i) {
            x[i] = (x[i] - model.feature_mean[i]) / model.feature_std[i];
        }
    }
    for (auto& x : test_x) {
        for (int i = 0; i < 4; ++i) {
            x[i] = (x[i] - model.feature_mean[i]) / model.feature_std[i];
        }
    }

    std::uniform_real_distribution<double> init(-0.5, 0.5);
    for (auto& row : model.hidden_weights) {
        for (auto& w : row) {
            w = init(rng);
        }
    }
    for (auto& b : model.hidden_bias) {
        b = init(rng);
    }
    for (auto& row : model.output_weights) {
        for (auto& w : row) {
            w = init(rng);
        }
    }
    for (auto& b : model.output_bias) {
        b = init(rng);
    }

    std::vector<double> theta = mlp_detail::pack_parameters(model);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::vector<double> grad = mlp_detail::loss_gradient(model, train_x, train_y);
        for (std::size_t k = 0; k < theta.size(); ++k) {
            theta[k] -= cfg.learning_rate * grad[k];
        }
        mlp_detail::unpack_parameters(theta, model);
    }

    auto accuracy = [&](const std::vector<std::array<double, 4>>& xs, const std::vector<int>& ys,
                        std::array<double, 3>& per_digit, std::array<int, 3>& counts) {
        std::array<int, 3> correct{};
        counts = {};
        for (std::size_t n = 0; n < xs.size(); ++n) {
            Forward f = forward_pass(model, xs[n]);
            int arg = 0;
            for (int o = 1; o < 3; ++o) {
                if (f.probs[o] > f.probs[arg]) {
                    arg = o;
                }
            }
            counts[ys[n]] += 1;
            if (arg == ys[n]) {
                correct[ys[n]] += 1;
            }
        }
        for (int k = 0; k < 3; ++k) {
            per_digit[k] = counts[k] > 0 ? double(correct[k]) / counts[k] : 0.0;
        }
    };

    TrainReport report;
    accuracy(train_x, train_y, report.train_accuracy, report.train_count);
    accuracy(test_x, test_y, report.test_accuracy, report.test_count);
    report.train_average =
        (report.train_accuracy[0] + report.train_accuracy[1] + report.train_accuracy[2]) / 3.0;
    report.test_average =
        (report.test_accuracy[0] + report.test_accuracy[1] + report.test_accuracy[2]) / 3.0;
    return {model, report};
}

Prediction predict(const MlpModel& model, const FeatureVector& features) {
    for (double v : features.as_array()) {
        if (!std::isfinite(v)) {
            throw Error(kModule, "NonFiniteInput");
        }
    }
    Forward f = forward_pass(model, standardize(model, features));
    int arg = 0;
    for (int o = 1; o < MlpModel::kOutputs; ++o) {
        if (f.probs[o] > f.probs[arg]) {
            arg = o;
        }
    }
    Prediction p;
    p.digit = kAllDigits[arg];
    p.scores = f.probs;
    return p;
}

void save_model(const MlpModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(kModule, "UnreadableFile", path);
    }
    out << "RIALMLP v1\n";
    out << "sizes 4 20 3\n";
    out << "mean";
    for (double v : model.feature_mean) {
        out << ' ' << format_double(v);
    }
    out << "\nstd";
    for (double v : model.feature_std) {
        out << ' ' << format_double(v);
    }
    out << '\n';
    for (int h = 0; h < MlpModel::kHidden; ++h) {
        out << 'h';
        for (double w : model.hidden_weights[h]) {
            out << ' ' << format_double(w);
        }
        out << ' ' << format_double(model.hidden_bias[h]) << '\n';
    }
    for (int o = 0; o < MlpModel::kOutputs; ++o) {
        out << 'o';
        for (double w : model.output_weights[o]) {
            out << ' ' << format_double(w);
        }
        out << ' ' << format_double(model.output_bias[o]) << '\n';
    }
    if (!out) {
        throw Error(kModule, "UnreadableFile", "write failed: " + path);
    }
}

MlpModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(kModule, "UnreadableFile", path);
    }

    auto next_line_tokens = [&](const char* what) {
        std::string line;
        if (!std::getline(in, line)) {
            throw Error(kModule, "CorruptModel", std::string("missing ") + what);
        }
        std::istringstream ss(line);
        std::vector<std::string> toks;
        std::string t;
        while (ss >> t) {
            toks.push_back(t);
        }
        if (toks.empty()) {
            throw Error(kModule, "CorruptModel", std::string("empty line for ") + what);
        }
        return toks;
    };

    auto header = next_line_tokens("header");
    if (header.size() != 2 || header[0] != "RIALMLP") {
        throw Error(kModule, "CorruptModel", "not a model file");
    }
    if (header[1] != "v1") {
        throw Error(kModule, "VersionMismatch", "version '" + header[1] + "', expected v1");
    }
    auto sizes = next_line_tokens("sizes");
    if (sizes.size() != 4 || sizes[0] != "sizes" || sizes[1] != "4" || sizes[2] != "20" ||
        sizes[3] != "3") {
        throw Error(kModule, "CorruptModel", "unexpected layer sizes");
    }

    MlpModel model;
    auto mean = next_line_tokens("mean");
    if (mean.size() != 5 || mean[0] != "mean") {
        throw Error(kModule, "CorruptModel", "bad mean line");
    }
    for (int i = 0; i < 4; ++i) {
        model.feature_mean[i] = parse_double(mean[i + 1]);
    }
    auto sd = next_line_tokens("std");
    if (sd.size() != 5 || sd[0] != "std") {
        throw Error(kModule, "CorruptModel", "bad std line");
    }
    for (int i = 0; i < 4; ++i) {
        model.feature_std[i] = parse_double(sd[i + 1]);
        if (!(model.feature_std[i] > 0.0)) {
            throw Error(kModule, "CorruptModel", "non-positive feature deviation");
        }
    }
    for (int h = 0; h < MlpModel::kHidden; ++h) {
        auto row = next_line_tokens("hidden row");
        if (row.size() != 6 || row[0] != "h") {
            throw Error(kModule, "CorruptModel", "bad hidden row");
        }
        for (int i = 0; i < 4; ++i) {
            model.hidden_weights[h][i] = parse_double(row[i + 1]);
        }
        model.hidden_bias[h] = parse_double(row[5]);
    }
    for (int o = 0; o < MlpModel::kOutputs; ++o) {
        auto row = next_line_tokens("output row");
        if (row.size() != 22 || row[0] != "o") {
            throw Error(kModule, "CorruptModel", "bad output row");
        }
        for (int h = 0; h < MlpModel::kHidden; ++h) {
            model.output_weights[o][h] = parse_double(row[h + 1]);
        }
        model.output_bias[o] = parse_double(row[21]);
    }
    for (double v : mlp_detail::pack_parameters(model)) {
        if (!std::isfinite(v)) {
            throw Error(kModule, "CorruptModel", "non-finite weight");
        }
    }
    return model;
}

}  // namespace rial
