#include "rial/morphology.hpp"

#include <algorithm>
#include <stdexcept>

namespace rial {

namespace {

void check_se(const StructuringElement& se) {
    if (se.width < 1 || se.height < 1 || se.width % 2 == 0 || se.height % 2 == 0) {
        throw std::invalid_argument("structuring element sides must be odd and positive");
    }
    if (se.mask.size() != static_cast<std::size_t>(se.width) * se.height) {
        throw std::invalid_argument("structuring element mask size mismatch");
    }
    if (!se.at(se.width / 2, se.height / 2)) {
        throw std::invalid_argument("structuring element origin must be set");
    }
    bool any = false;
    for (auto v : se.mask) {
        any = any || v != 0;
    }
    if (!any) {
        throw std::invalid_argument("structuring element must have a set cell");
    }
}

}  // namespace

StructuringElement StructuringElement::full_rect(int width, int height) {
    StructuringElement se;
    se.width = width;
    se.height = height;
    se.mask.assign(static_cast<std::size_t>(width) * height, 1);
    check_se(se);
    return se;
}

StructuringElement StructuringElement::reflected() const {
    StructuringElement out;
    out.width = width;
    out.height = height;
    out.mask.resize(mask.size());
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            out.mask[static_cast<std::size_t>(y) * width + x] =
                mask[static_cast<std::size_t>(height - 1 - y) * width + (width - 1 - x)];
        }
    }
    return out;
}

BinaryImage erode(const BinaryImage& img, const StructuringElement& se) {
    check_se(se);
    const int cx = se.width / 2;
    const int cy = se.height / 2;
    BinaryImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            bool all = true;
            for (int j = 0; all && j < se.height; ++j) {
                for (int i = 0; i < se.width; ++i) {
                    if (!se.at(i, j)) {
                        continue;
                    }
                    int sx = x + i - cx;
                    int sy = y + j - cy;
                    if (!img.in_bounds(sx, sy) || img.at(sx, sy) == 0) {
                        all = false;
                        break;
                    }
                }
            }
            out.at(x, y) = all ? 1 : 0;
        }
    }
    return out;
}

BinaryImage dilate(const BinaryImage& img, const StructuringElement& se) {
    check_se(se);
    const int cx = se.width / 2;
    const int cy = se.height / 2;
    BinaryImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            bool any = false;
            for (int j = 0; !any && j < se.height; ++j) {
                for (int i = 0; i < se.width; ++i) {
                    if (!se.at(i, j)) {
                        continue;
                    }
                    int sx = x + i - cx;
                    int sy = y + j - cy;
                    if (img.in_bounds(sx, sy) && img.at(sx, sy) != 0) {
                        any = true;
                        break;
                    }
                }
            }
            out.at(x, y) = any ? 1 : 0;
        }
    }
    return out;
}

BinaryImage close(const BinaryImage& img, const StructuringElement& se) {
    check_se(se);
    const int px = se.width / 2;
    const int py = se.height / 2;

    BinaryImage padded(img.width + 2 * px, img.height + 2 * py, 0);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            padded.at(x + px, y + py) = img.at(x, y);
        }
    }
    BinaryImage closed = erode(dilate(padded, se), se);

    BinaryImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            out.at(x, y) = closed.at(x + px, y + py);
        }
    }
    return out;
}

}  // namespace rial
