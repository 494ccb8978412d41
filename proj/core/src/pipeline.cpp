#include "rial/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "rial/error.hpp"

namespace rial {

namespace {

int round_to_odd(double v) {
    int r = static_cast<int>(std::lround(v));
    if (r % 2 == 0) {
        ++r;
    }
    return std::max(r, 1);
}

// Rebuilds the zero components in the levelled frame: centroids follow the
// rotation map exactly, bounding boxes become the boxes of their mapped
// corners.
ZeroLine remap_line(const ZeroLine& line, const RotationMap& map) {
    ZeroLine out = line;
    for (auto& z : out.zeros) {
        Point2 c = map.map({z.centroid_x, z.centroid_y});
        Point2 corners[4] = {
            map.map({double(z.min_x), double(z.min_y)}),
            map.map({double(z.max_x), double(z.min_y)}),
            map.map({double(z.min_x), double(z.max_y)}),
            map.map({double(z.max_x), double(z.max_y)}),
        };
        double min_x = corners[0].x, max_x = corners[0].x;
        double min_y = corners[0].y, max_y = corners[0].y;
        for (int i = 1; i < 4; ++i) {
            min_x = std::min(min_x, corners[i].x);
            max_x = std::max(max_x, corners[i].x);
            min_y = std::min(min_y, corners[i].y);
            max_y = std::max(max_y, corners[i].y);
        }
        z.centroid_x = c.x;
        z.centroid_y = c.y;
        z.min_x = static_cast<int>(std::lround(min_x));
        z.max_x = static_cast<int>(std::lround(max_x));
        z.min_y = static_cast<int>(std::lround(min_y));
        z.max_y = static_cast<int>(std::lround(max_y));
    }
    std::sort(out.zeros.begin(), out.zeros.end(),
              [](const Component& a, const Component& b) { return a.centroid_x < b.centroid_x; });
    out.angle_deg = 0.0;
    return out;
}

}  // namespace

StructuringElement adaptive_closing_se(const ComponentSet& candidates) {
    if (candidates.components.empty()) {
        return StructuringElement::full_rect(9, 5);
    }
    std::vector<int> heights;
    heights.reserve(candidates.components.size());
    for (const auto& c : candidates.components) {
        heights.push_back(c.bbox_height());
    }
    std::nth_element(heights.begin(), heights.begin() + heights.size() / 2, heights.end());
    double h = heights[heights.size() / 2];
    return StructuringElement::full_rect(round_to_odd(0.6 * h), round_to_odd(0.3 * h));
}

LocalizationResult localize(const GrayImage& gray, const PipelineConfig& cfg,
                            const StageObserver& observer) {
    LocalizationResult r;
    auto stage = [&](const char* name) {
        if (observer) {
            observer(name, r);
        }
    };

    r.gray = gray;
    stage("gray");

    r.denoised = wiener_denoise(r.gray, cfg.wiener_window);
    stage("wiener");

    r.binary = adaptive_threshold(r.denoised, {cfg.threshold_window, cfg.threshold_bias});
    stage("binary");

    r.median = median3x3(r.binary);
    stage("median");

    r.labelled = label_components(r.median, cfg.connectivity);
    r.filtered = filter_by_shape(r.labelled);
    stage("shape-filtered");

    StructuringElement se = cfg.closing_se
                                ? StructuringElement::full_rect(cfg.closing_se->first,
                                                                cfg.closing_se->second)
                                : adaptive_closing_se(r.filtered);
    BinaryImage closed_img = close(to_binary(r.filtered), se);
    r.closed = label_components(closed_img, cfg.connectivity);
    stage("closed");

    r.regions = group_regions(r.filtered, r.closed);
    for (const auto& region : r.regions) {
        try {
            LineCandidate cand = candidate_lines(r.filtered, region, cfg.line_tolerance);
            if (cand.on_line.size() >= 3) {
                r.candidates.push_back(std::move(cand));
            }
        } catch (const Error&) {
            // A region whose centroids all coincide cannot carry a line;
            // the remaining regions still compete.
        }
    }
    stage("lines");

    r.line = select_zero_line(r.filtered, r.candidates);
    stage("selected");

    double angle = rotation_angle(r.line);
    r.map = make_rotation_map(r.median.width, r.median.height, angle);
    r.levelled = rotate(r.median, angle);
    r.levelled_line = remap_line(r.line, r.map);
    stage("rotated");

    r.crop = find_nonzero_digit(r.levelled, r.levelled_line);
    stage("crop");

    r.features = extract_features(r.crop);
    return r;
}

Recognition recognize(const ColorImage& image, const MlpModel& model,
                      const PipelineConfig& cfg) {
    Recognition rec;
    rec.loc = localize(to_gray(image), cfg);
    rec.angle_deg = rotation_angle(rec.loc.line);
    Prediction p = predict(model, rec.loc.features);
    rec.scores = p.scores;
    rec.denom = value_of(p.digit, count_zeros(rec.loc.line));
    return rec;
}

}  // namespace rial
