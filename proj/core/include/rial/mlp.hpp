#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rial/digit.hpp"

namespace rial {

// The nonzero digit printed on a note is always one of these.
enum class DigitClass { One, Two, Five };

constexpr std::array<DigitClass, 3> kAllDigits{DigitClass::One, DigitClass::Two,
                                               DigitClass::Five};

int digit_value(DigitClass d);             // 1, 2 or 5
DigitClass digit_from_value(int v);        // inverse, throws on anything else
int digit_index(DigitClass d);             // 0, 1, 2

// Fixed 4-20-3 perceptron: logistic hidden units, normalised-exponential
// output layer, features standardised with training-set statistics.
struct MlpModel {
    static constexpr int kInputs = 4;
    static constexpr int kHidden = 20;
    static constexpr int kOutputs = 3;

    std::array<double, 4> feature_mean{};
    std::array<double, 4> feature_std{};
    std::array<std::array<double, kInputs>, kHidden> hidden_weights{};
    std::array<double, kHidden> hidden_bias{};
    std::array<std::array<double, kHidden>, kOutputs> output_weights{};
    std::array<double, kOutputs> output_bias{};
};

struct TrainConfig {
    double learning_rate = 0.5;
    int epochs = 2000;
    std::uint32_t seed = 1;
    double train_fraction = 0.70;
};

// Per-class accuracy on the train/test split.
struct TrainReport {
    std::array<double, 3> train_accuracy{};  // indexed by digit_index
    std::array<double, 3> test_accuracy{};
    std::array<int, 3> train_count{};
    std::array<int, 3> test_count{};
    double train_average = 0.0;  // mean of the per-class accuracies
    double test_average = 0.0;
};

struct Prediction {
    DigitClass digit = DigitClass::One;
    std::array<double, 3> scores{};  // positive, sum to 1
};

using Sample = std::pair<FeatureVector, DigitClass>;

// Seeded shuffle, 70/30 split by default, feature standardisation from the
// training part, then full-batch gradient descent on cross-entropy. Bitwise
// deterministic for a fixed seed.
// Throws classifier.InsufficientData (< 10 samples of some class) and
// classifier.DegenerateFeatures (a feature constant on the training split).
std::pair<MlpModel, TrainReport> train_mlp(const std::vector<Sample>& samples,
                                           const TrainConfig& cfg);

// Throws classifier.NonFiniteInput.
Prediction predict(const MlpModel& model, const FeatureVector& features);

// Line-oriented text format "RIALMLP v1", weights as decimal text with 17
// significant digits so a round trip is bit exact.
// Throws classifier.UnreadableFile / VersionMismatch / CorruptModel.
void save_model(const MlpModel& model, const std::string& path);
MlpModel load_model(const std::string& path);

// Internals exposed for gradient verification in tests: the training loss
// (mean cross-entropy) and its analytic gradient laid out as one flat
// parameter vector in model field order.
namespace mlp_detail {
std::size_t parameter_count();
std::vector<double> pack_parameters(const MlpModel& model);
void unpack_parameters(const std::vector<double>& theta, MlpModel& model);
double loss(const MlpModel& model, const std::vector<std::array<double, 4>>& inputs,
            const std::vector<int>& labels);
std::vector<double> loss_gradient(const MlpModel& model,
                                  const std::vector<std::array<double, 4>>& inputs,
                                  const std::vector<int>& labels);
}  // namespace mlp_detail

}  // namespace rial
