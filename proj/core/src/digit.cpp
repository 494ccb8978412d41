#include "rial/digit.hpp"

#include <algorithm>
#include <cmath>

#include "rial/components.hpp"
#include "rial/error.hpp"

namespace rial {

namespace {

constexpr const char* kModule = "digit-pipeline";

// One marching ray. The ray starts on (or inside) its own extreme zero, so
// foreground is skipped until the first background pixel; the next
// foreground after that is the hit.
struct Ray {
    int x;
    int y;
    int step;      // +1 right, -1 left
    bool leaving;  // still inside the starting zero
    bool alive = true;

    bool advance(const BinaryImage& img) {  // true on hit
        x += step;
        if (x < 0 || x >= img.width) {
            alive = false;
            return false;
        }
        bool fg = img.at(x, y) != 0;
        if (leaving) {
            if (!fg) {
                leaving = false;
            }
            return false;
        }
        return fg;
    }
};

}  // namespace

DigitCrop find_nonzero_digit(const BinaryImage& levelled, const ZeroLine& line) {
    double mean_y = 0.0;
    for (const auto& z : line.zeros) {
        mean_y += z.centroid_y;
    }
    mean_y /= double(line.zeros.size());
    const int ray_y = std::clamp(static_cast<int>(std::lround(mean_y)), 0, levelled.height - 1);

    const Component& left_zero = line.first();
    const Component& right_zero = line.last();

    Ray right{static_cast<int>(std::lround(right_zero.centroid_x)), ray_y, +1, true};
    Ray left{static_cast<int>(std::lround(left_zero.centroid_x)), ray_y, -1, true};
    right.x = std::clamp(right.x, 0, levelled.width - 1);
    left.x = std::clamp(left.x, 0, levelled.width - 1);
    right.leaving = levelled.at(right.x, ray_y) != 0;
    left.leaving = levelled.at(left.x, ray_y) != 0;

    bool digit_on_right = false;
    bool found = false;
    while (right.alive || left.alive) {
        if (right.alive && right.advance(levelled)) {
            digit_on_right = true;
            found = true;
            break;
        }
        if (left.alive && left.advance(levelled)) {
            digit_on_right = false;
            found = true;
            break;
        }
    }
    if (!found) {
        throw Error(kModule, "DigitNotFound", "both scans left the image");
    }

    const int side = std::max(8L, std::lround(3.0 * line.length_px / line.count));

    int win_min_x;
    if (digit_on_right) {
        win_min_x = right_zero.max_x + 1;
    } else {
        win_min_x = left_zero.min_x - side;
    }
    const int win_min_y = ray_y - side / 2;

    DigitCrop crop;
    crop.side = side;
    crop.src_min_x = win_min_x;
    crop.src_min_y = win_min_y;
    crop.src_max_x = win_min_x + side - 1;
    crop.src_max_y = win_min_y + side - 1;
    crop.image = BinaryImage(side, side, 0);

    bool any = false;
    for (int y = 0; y < side; ++y) {
        int sy = win_min_y + y;
        if (sy < 0 || sy >= levelled.height) {
            continue;
        }
        for (int x = 0; x < side; ++x) {
            int sx = win_min_x + x;
            if (sx < 0 || sx >= levelled.width) {
                continue;
            }
            crop.image.at(x, y) = levelled.at(sx, sy);
            any = any || crop.image.at(x, y) != 0;
        }
    }
    if (!any) {
        throw Error(kModule, "EmptyCrop", "digit window holds no foreground");
    }

    // Keep the largest connected component, erase the rest.
    ComponentSet labelled = label_components(crop.image, 8);
    const Component* largest = &labelled.components.front();
    for (const auto& c : labelled.components) {
        if (c.area > largest->area) {
            largest = &c;
        }
    }
    for (std::size_t i = 0; i < crop.image.pixels.size(); ++i) {
        crop.image.pixels[i] = labelled.labels[i] == largest->label ? 1 : 0;
    }
    return crop;
}

FeatureVector extract_features(const DigitCrop& crop) {
    int min_x = crop.image.width, min_y = crop.image.height, max_x = -1, max_y = -1;
    int area = 0;
    for (int y = 0; y < crop.image.height; ++y) {
        for (int x = 0; x < crop.image.width; ++x) {
            if (crop.image.at(x, y) == 0) {
                continue;
            }
            ++area;
            min_x = std::min(min_x, x);
            max_x = std::max(max_x, x);
            min_y = std::min(min_y, y);
            max_y = std::max(max_y, y);
        }
    }
    if (area == 0) {
        throw Error(kModule, "EmptyCrop", "no digit pixels to measure");
    }

    const int bw = max_x - min_x + 1;
    const int bh = max_y - min_y + 1;

    // Odd sides put the middle column/row in the left/top half.
    const int left_cols = (bw + 1) / 2;
    const int top_rows = (bh + 1) / 2;
    int left_mass = 0, right_mass = 0, top_mass = 0, bottom_mass = 0;
    for (int y = min_y; y <= max_y; ++y) {
        for (int x = min_x; x <= max_x; ++x) {
            if (crop.image.at(x, y) == 0) {
                continue;
            }
            (x - min_x < left_cols ? left_mass : right_mass) += 1;
            (y - min_y < top_rows ? top_mass : bottom_mass) += 1;
        }
    }

    FeatureVector f;
    f.fill = double(area) / (double(bw) * bh);
    f.aspect = double(bh) / bw;
    f.left_right = right_mass > 0 ? double(left_mass) / right_mass : 1.0;
    f.top_bottom = bottom_mass > 0 ? double(top_mass) / bottom_mass : 1.0;
    return f;
}

SymmetryScores symmetry_scores(const DigitCrop& crop) {
    int min_x = crop.image.width, min_y = crop.image.height, max_x = -1, max_y = -1;
    int area = 0;
    for (int y = 0; y < crop.image.height; ++y) {
        for (int x = 0; x < crop.image.width; ++x) {
            if (crop.image.at(x, y) != 0) {
                ++area;
                min_x = std::min(min_x, x);
                max_x = std::max(max_x, x);
                min_y = std::min(min_y, y);
                max_y = std::max(max_y, y);
            }
        }
    }
    if (area == 0) {
        throw Error(kModule, "EmptyCrop", "no digit pixels to measure");
    }
    int h_match = 0, v_match = 0;
    for (int y = min_y; y <= max_y; ++y) {
        for (int x = min_x; x <= max_x; ++x) {
            if (crop.image.at(x, y) == 0) {
                continue;
            }
            int mirror_y = min_y + (max_y - y);
            int mirror_x = min_x + (max_x - x);
            if (crop.image.at(x, mirror_y) != 0) {
                ++h_match;
            }
            if (crop.image.at(mirror_x, y) != 0) {
                ++v_match;
            }
        }
    }
    return {double(h_match) / area, double(v_match) / area};
}

}  // namespace rial
