#pragma once

#include "rial/image.hpp"
#include "rial/zero_localizer.hpp"

namespace rial {

// Square cut-out holding the nonzero digit. The window side is
// 3 * line length / zero count (never below 8) and everything but the
// largest connected component inside it has been erased.
struct DigitCrop {
    BinaryImage image;  // side x side, zero padded where the window left the source
    int side = 0;
    int src_min_x = 0, src_min_y = 0;  // window position in the levelled image
    int src_max_x = 0, src_max_y = 0;
};

// The four classifier inputs, measured over the digit's tight bounding box.
struct FeatureVector {
    double fill = 0.0;            // digit pixels / bounding box pixels
    double aspect = 0.0;          // bounding box height / width
    double left_right = 0.0;      // mass in left half / mass in right half
    double top_bottom = 0.0;      // mass in top half / mass in bottom half

    std::array<double, 4> as_array() const { return {fill, aspect, left_right, top_bottom}; }
};

// Overlap of the digit with its own mirror image, an optional extra pair of
// measurements; not part of the classifier input.
struct SymmetryScores {
    double horizontal = 0.0;  // overlap with the top-bottom mirror
    double vertical = 0.0;    // overlap with the left-right mirror
};

// Walks outward one pixel per step from the two extreme zeros of a levelled
// line (right ray checked first, so simultaneous hits fall to the right
// side) until a foreground run that is not part of the batch is met, then
// cuts the digit window adjacent to the extreme zero of that side,
// vertically centred on the line.
// Throws digit-pipeline.DigitNotFound / EmptyCrop.
DigitCrop find_nonzero_digit(const BinaryImage& levelled, const ZeroLine& line);

// Throws digit-pipeline.EmptyCrop when the crop holds no foreground.
FeatureVector extract_features(const DigitCrop& crop);

SymmetryScores symmetry_scores(const DigitCrop& crop);

}  // namespace rial
