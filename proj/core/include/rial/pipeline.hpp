#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rial/components.hpp"
#include "rial/digit.hpp"
#include "rial/image.hpp"
#include "rial/mlp.hpp"
#include "rial/morphology.hpp"
#include "rial/preprocess.hpp"
#include "rial/synth.hpp"
#include "rial/zero_localizer.hpp"

namespace rial {

struct PipelineConfig {
    int threshold_window = 31;
    double threshold_bias = 0.10;
    int wiener_window = 5;
    // Closing element override; by default it adapts to the candidate
    // component scale (see adaptive_closing_se).
    std::optional<std::pair<int, int>> closing_se;  // width x height
    int connectivity = 8;
    double line_tolerance = 1.5;
    std::string model_path;
    bool compute_symmetry = false;
};

// Width/height tied to the median candidate height h: round(0.6 h) by
// round(0.3 h), bumped to odd, wider than tall because zeros sit side by
// side. Falls back to 9x5 when there are no candidates.
StructuringElement adaptive_closing_se(const ComponentSet& candidates);

// Everything the localization pass produced, kept for stage dumps,
// evaluation overlap checks and feature extraction.
struct LocalizationResult {
    GrayImage gray;
    GrayImage denoised;
    BinaryImage binary;
    BinaryImage median;
    ComponentSet labelled;
    ComponentSet filtered;
    ComponentSet closed;
    std::vector<Region> regions;
    std::vector<LineCandidate> candidates;  // one per usable region
    ZeroLine line;                          // in source coordinates
    RotationMap map;
    BinaryImage levelled;
    ZeroLine levelled_line;  // zeros remapped into the levelled frame
    DigitCrop crop;
    FeatureVector features;
};

// Stage callback for debug dumps; receives stages in pipeline order even
// when a later stage throws.
using StageObserver = std::function<void(const std::string& name, const LocalizationResult&)>;

LocalizationResult localize(const GrayImage& gray, const PipelineConfig& cfg,
                            const StageObserver& observer = {});

struct Recognition {
    Denomination denom;
    double angle_deg = 0.0;
    std::array<double, 3> scores{};
    LocalizationResult loc;
};

Recognition recognize(const ColorImage& image, const MlpModel& model,
                      const PipelineConfig& cfg);

}  // namespace rial
