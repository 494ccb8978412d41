#pragma once

#include <array>
#include <string>
#include <vector>

#include "rial/pipeline.hpp"
#include "rial/synth.hpp"

namespace rial {

// Two-phase accuracy composition: a% of notes localize correctly and b% of
// those classify correctly, so a*b/100 percent succeed overall.
// Throws synth-eval.OutOfRange outside [0, 100].
double conditional_accuracy(double a, double b);

struct DenomResult {
    Denomination denom;
    int images = 0;
    int phase1_ok = 0;       // zero count right and crop over the true digit
    int value_ok = 0;        // end-to-end value correct
    double phase1_accuracy = 0.0;  // percent
    double total_accuracy = 0.0;   // percent, phase1 * phase2(digit) / 100
};

struct DigitResult {
    DigitClass digit = DigitClass::One;
    int cases = 0;    // phase-1 successes carrying this digit
    int correct = 0;
    double accuracy = 0.0;  // percent
};

struct EvalReport {
    std::vector<DenomResult> denominations;   // ordered by value
    std::array<DigitResult, 3> digits;        // indexed by digit_index
    double phase1_average = 0.0;              // percent, mean over denominations
    double phase2_average = 0.0;              // percent, mean over digits with cases
    double total_average = 0.0;               // percent, mean of total_accuracy rows
    // Straight end-to-end measurements over all images.
    int images = 0;
    int zero_count_ok = 0;
    int value_ok = 0;
    double zero_count_accuracy = 0.0;  // percent
    double value_accuracy = 0.0;       // percent
    // confusion[t][p]: true digit t classified as p (phase-1 successes only).
    std::array<std::array<int, 3>, 3> digit_confusion{};
    // zero_confusion[t][p]: true zero count 3+t, recovered 3+p; p == 3 is a
    // localization failure.
    std::array<std::array<int, 4>, 3> zero_confusion{};
};

struct EvalItem {
    ColorImage image;
    GroundTruth truth;
};

// Runs the full pipeline on every image. Phase-1 success requires the right
// zero count and a digit window covering at least half of the true digit
// box (measured in the levelled frame); phase-2 is judged on phase-1
// successes only. Table totals follow the conditional-accuracy product.
// Throws synth-eval.EmptyDataset.
EvalReport evaluate(const std::vector<EvalItem>& items, const MlpModel& model,
                    const PipelineConfig& cfg);

/// Human-readable report: the three accuracy tables plus confusion counts.
std::string render_report(const EvalReport& report);

/// Machine-readable lines, "table,key,value".
std::string render_report_csv(const EvalReport& report);

}  // namespace rial
