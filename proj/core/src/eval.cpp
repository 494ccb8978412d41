#include "rial/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "rial/error.hpp"

namespace rial {

namespace {

constexpr const char* kModule = "synth-eval";

std::string pct(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f%%", v);
    return buf;
}

double box_overlap(const BoxF& a, const BoxF& b) {
    double w = std::min(a.max_x, b.max_x) - std::max(a.min_x, b.min_x);
    double h = std::min(a.max_y, b.max_y) - std::max(a.min_y, b.min_y);
    if (w <= 0.0 || h <= 0.0) {
        return 0.0;
    }
    return w * h;
}

BoxF map_truth_box(const BoxF& box, const RotationMap& map) {
    Point2 ps[4] = {
        map.map({box.min_x, box.min_y}),
        map.map({box.max_x, box.min_y}),
        map.map({box.min_x, box.max_y}),
        map.map({box.max_x, box.max_y}),
    };
    BoxF out{ps[0].x, ps[0].y, ps[0].x, ps[0].y};
    for (int i = 1; i < 4; ++i) {
        out.min_x = std::min(out.min_x, ps[i].x);
        out.min_y = std::min(out.min_y, ps[i].y);
        out.max_x = std::max(out.max_x, ps[i].x);
        out.max_y = std::max(out.max_y, ps[i].y);
    }
    return out;
}

}  // namespace

double conditional_accuracy(double a, double b) {
    if (!(a >= 0.0 && a <= 100.0) || !(b >= 0.0 && b <= 100.0)) {
        throw Error(kModule, "OutOfRange", "accuracies must lie in [0, 100]");
    }
    return a * b / 100.0;
}

EvalReport evaluate(const std::vector<EvalItem>& items, const MlpModel& model,
                    const PipelineConfig& cfg) {
    if (items.empty()) {
        throw Error(kModule, "EmptyDataset");
    }

    struct DenomAccum {
        int images = 0;
        int phase1 = 0;
        int value = 0;
    };
    std::map<long long, DenomAccum> by_denom;
    std::array<int, 3> digit_cases{};
    std::array<int, 3> digit_correct{};

    EvalReport report;
    report.images = static_cast<int>(items.size());

    for (const auto& item : items) {
        const GroundTruth& truth = item.truth;
        DenomAccum& acc = by_denom[truth.denom.value];
        acc.images += 1;

        bool phase1 = false;
        int true_zero_idx = truth.denom.zeros - 3;
        int pred_zero_idx = 3;  // localization failure bucket
        try {
            LocalizationResult loc = localize(to_gray(item.image), cfg);
            int zeros = count_zeros(loc.line);
            if (zeros >= 3 && zeros <= 5) {
                pred_zero_idx = zeros - 3;
            }
            if (zeros == truth.denom.zeros) {
                report.zero_count_ok += 1;
            }

            BoxF crop_box{double(loc.crop.src_min_x), double(loc.crop.src_min_y),
                          double(loc.crop.src_max_x + 1), double(loc.crop.src_max_y + 1)};
            BoxF truth_box = map_truth_box(truth.digit_box, loc.map);
            bool covered = box_overlap(crop_box, truth_box) >= 0.5 * truth_box.area();
            phase1 = (zeros == truth.denom.zeros) && covered;

            Prediction p = predict(model, loc.features);
            if (phase1) {
                int t = digit_index(truth.denom.digit);
                digit_cases[t] += 1;
                report.digit_confusion[t][digit_index(p.digit)] += 1;
                if (p.digit == truth.denom.digit) {
                    digit_correct[t] += 1;
                }
            }
            if (p.digit == truth.denom.digit && zeros == truth.denom.zeros) {
                acc.value += 1;
                report.value_ok += 1;
            }
        } catch (const Error&) {
            // A failed pipeline counts against phase 1 and the totals.
        }
        if (phase1) {
            acc.phase1 += 1;
        }
        report.zero_confusion[true_zero_idx][pred_zero_idx] += 1;
    }

    for (int k = 0; k < 3; ++k) {
        DigitResult d;
        d.digit = kAllDigits[k];
        d.cases = digit_cases[k];
        d.correct = digit_correct[k];
        d.accuracy = d.cases > 0 ? 100.0 * d.correct / d.cases : 0.0;
        report.digits[k] = d;
    }

    double phase1_sum = 0.0;
    double total_sum = 0.0;
    for (const auto& denom : all_denominations()) {
        auto it = by_denom.find(denom.value);
        if (it == by_denom.end()) {
            continue;
        }
        DenomResult row;
        row.denom = denom;
        row.images = it->second.images;
        row.phase1_ok = it->second.phase1;
        row.value_ok = it->second.value;
        row.phase1_accuracy = 100.0 * row.phase1_ok / row.images;
        row.total_accuracy = conditional_accuracy(
            row.phase1_accuracy, report.digits[digit_index(denom.digit)].accuracy);
        phase1_sum += row.phase1_accuracy;
        total_sum += row.total_accuracy;
        report.denominations.push_back(row);
    }
    report.phase1_average =
        report.denominations.empty() ? 0.0 : phase1_sum / report.denominations.size();
    report.total_average =
        report.denominations.empty() ? 0.0 : total_sum / report.denominations.size();

    double phase2_sum = 0.0;
    int phase2_rows = 0;
    for (const auto& d : report.digits) {
        if (d.cases > 0) {
            phase2_sum += d.accuracy;
            ++phase2_rows;
        }
    }
    report.phase2_average = phase2_rows > 0 ? phase2_sum / phase2_rows : 0.0;

    report.zero_count_accuracy = 100.0 * report.zero_count_ok / report.images;
    report.value_accuracy = 100.0 * report.value_ok / report.images;
    return report;
}

std::string render_report(const EvalReport& report) {
    std::ostringstream out;
    out << "Table 1. Zero localization accuracy\n";
    out << "  Cash             Accuracy\n";
    for (const auto& row : report.denominations) {
        char line[80];
        std::snprintf(line, sizeof line, "  %-16s %s\n",
                      (std::to_string(row.denom.value) + " Riyals").c_str(),
                      pct(row.phase1_accuracy).c_str());
        out << line;
    }
    out << "  Average          " << pct(report.phase1_average) << "\n\n";

    out << "Table 2. Nonzero digit identification accuracy\n";
    out << "  Digit            Accuracy\n";
    for (const auto& d : report.digits) {
        char line[80];
        std::snprintf(line, sizeof line, "  %-16d %s  (%d of %d)\n", digit_value(d.digit),
                      pct(d.accuracy).c_str(), d.correct, d.cases);
        out << line;
    }
    out << "  Average          " << pct(report.phase2_average) << "\n\n";

    out << "Table 3. Total recognition accuracy\n";
    out << "  Cash             Accuracy\n";
    for (const auto& row : report.denominations) {
        char line[80];
        std::snprintf(line, sizeof line, "  %-16s %s\n",
                      (std::to_string(row.denom.value) + " Riyals").c_str(),
                      pct(row.total_accuracy).c_str());
        out << line;
    }
    out << "  Average          " << pct(report.total_average) << "\n\n";

    out << "Measured on " << report.images << " images: value accuracy "
        << pct(report.value_accuracy) << ", zero-count accuracy "
        << pct(report.zero_count_accuracy) << "\n\n";

    out << "Digit confusion (rows true 1/2/5, columns predicted 1/2/5)\n";
    for (int t = 0; t < 3; ++t) {
        char line[80];
        std::snprintf(line, sizeof line, "  %d: %5d %5d %5d\n", digit_value(kAllDigits[t]),
                      report.digit_confusion[t][0], report.digit_confusion[t][1],
                      report.digit_confusion[t][2]);
        out << line;
    }
    out << "Zero-count confusion (rows true 3/4/5, columns recovered 3/4/5/fail)\n";
    for (int t = 0; t < 3; ++t) {
        char line[80];
        std::snprintf(line, sizeof line, "  %d: %5d %5d %5d %5d\n", t + 3,
                      report.zero_confusion[t][0], report.zero_confusion[t][1],
                      report.zero_confusion[t][2], report.zero_confusion[t][3]);
        out << line;
    }
    return out.str();
}

std::string render_report_csv(const EvalReport& report) {
    std::ostringstream out;
    char line[120];
    for (const auto& row : report.denominations) {
        std::snprintf(line, sizeof line, "phase1,%lld,%.2f\n",
                      static_cast<long long>(row.denom.value), row.phase1_accuracy);
        out << line;
    }
    for (const auto& d : report.digits) {
        std::snprintf(line, sizeof line, "phase2,%d,%.2f\n", digit_value(d.digit), d.accuracy);
        out << line;
    }
    for (const auto& row : report.denominations) {
        std::snprintf(line, sizeof line, "total,%lld,%.2f\n",
                      static_cast<long long>(row.denom.value), row.total_accuracy);
        out << line;
    }
    std::snprintf(line, sizeof line, "average,phase1,%.2f\n", report.phase1_average);
    out << line;
    std::snprintf(line, sizeof line, "average,phase2,%.2f\n", report.phase2_average);
    out << line;
    std::snprintf(line, sizeof line, "average,total,%.2f\n", report.total_average);
    out << line;
    std::snprintf(line, sizeof line, "measured,value,%.2f\n", report.value_accuracy);
    out << line;
    std::snprintf(line, sizeof line, "measured,zeros,%.2f\n", report.zero_count_accuracy);
    out << line;
    return out.str();
}

}  // namespace rial
