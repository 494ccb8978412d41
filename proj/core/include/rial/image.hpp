#pragma once

#include <cstdint>
#include <vector>

namespace rial {

// Raster frame used everywhere in this library: x = column index growing
// rightward, y = row index growing downward, row-major storage. Centroids,
// line fits and angles all live in this frame.

struct ColorImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // interleaved r,g,b

    ColorImage() = default;
    ColorImage(int w, int h)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3, 0) {}

    std::uint8_t* at(int x, int y) {
        return &pixels[(static_cast<std::size_t>(y) * width + x) * 3];
    }
    const std::uint8_t* at(int x, int y) const {
        return &pixels[(static_cast<std::size_t>(y) * width + x) * 3];
    }
};

struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

    std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
};

struct BinaryImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // strictly 0 or 1, 1 = foreground

    BinaryImage() = default;
    BinaryImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

    std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

// Geometry of rotate(): forward-maps points of the source frame into the
// enlarged destination canvas so ground truth and centroids can follow the
// pixels they describe.
struct RotationMap {
    double angle_deg = 0.0;
    int src_width = 0;
    int src_height = 0;
    int dst_width = 0;
    int dst_height = 0;

    Point2 map(Point2 src) const;
};

/// Luma conversion, round(0.299 r + 0.587 g + 0.114 b).
GrayImage to_gray(const ColorImage& img);

RotationMap make_rotation_map(int width, int height, double angle_deg);

// Rotates by -angle_deg about the image centre, so a feature line lying at
// +angle_deg becomes horizontal. Nearest-neighbour sampling; the canvas is
// enlarged to contain every source pixel and new area is background.
BinaryImage rotate(const BinaryImage& img, double angle_deg);

/// Foreground as 255 on black, for stage dumps.
GrayImage binary_to_gray(const BinaryImage& img);

}  // namespace rial
