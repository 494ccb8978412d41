#pragma once

#include <cstdint>
#include <vector>

#include "rial/image.hpp"

namespace rial {

// Flat structuring element with the origin at its centre cell. Width and
// height must be odd and the origin cell must be set.
struct StructuringElement {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> mask;  // row-major bits

    bool at(int x, int y) const { return mask[static_cast<std::size_t>(y) * width + x] != 0; }

    static StructuringElement full_rect(int width, int height);
    StructuringElement reflected() const;
};

// Out-of-image cells count as background for both operators; erode therefore
// eats a margin at the image border.
BinaryImage erode(const BinaryImage& img, const StructuringElement& se);
BinaryImage dilate(const BinaryImage& img, const StructuringElement& se);

// Dilation followed by erosion with the same element. Computed on a canvas
// padded by the element's half-extent and cropped back, which keeps the
// operator extensive and idempotent up to the image border.
BinaryImage close(const BinaryImage& img, const StructuringElement& se);

}  // namespace rial
