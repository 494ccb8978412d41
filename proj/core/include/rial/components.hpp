#pragma once

#include <vector>

#include "rial/image.hpp"

namespace rial {

struct Component {
    int label = 0;
    int area = 0;
    int min_x = 0, min_y = 0, max_x = 0, max_y = 0;  // inclusive bounds
    double centroid_x = 0.0, centroid_y = 0.0;

    int bbox_width() const { return max_x - min_x + 1; }
    int bbox_height() const { return max_y - min_y + 1; }
    long long bbox_area() const { return static_cast<long long>(bbox_width()) * bbox_height(); }
};

// Label raster plus per-component stats. Labels are assigned 1..N in
// row-major first-encounter order; after shape filtering survivors keep
// their original labels, so label ids are stable across stages.
struct ComponentSet {
    int width = 0;
    int height = 0;
    std::vector<int> labels;  // 0 = background
    std::vector<Component> components;

    int label_at(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
    const Component* find(int label) const;
};

ComponentSet label_components(const BinaryImage& img, int connectivity = 8);

// Drops every component whose bounding box is more than twice as long as it
// is wide (either orientation), and every component covering less than half
// of its bounding box. The label raster is updated in step.
ComponentSet filter_by_shape(const ComponentSet& set);

BinaryImage to_binary(const ComponentSet& set);

/// Deterministic colour mapping of the label raster, for stage dumps.
ColorImage colorize_labels(const ComponentSet& set);

}  // namespace rial
