#include "rial/image.hpp"

#include <algorithm>
#include <cmath>

namespace rial {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Rot {
    double c, s;
    Rot(double deg) : c(std::cos(deg * kPi / 180.0)), s(std::sin(deg * kPi / 180.0)) {}
    Point2 apply(Point2 p) const { return {c * p.x - s * p.y, s * p.x + c * p.y}; }
};

}  // namespace

GrayImage to_gray(const ColorImage& img) {
    GrayImage out(img.width, img.height);
    const std::uint8_t* src = img.pixels.data();
    for (std::size_t i = 0; i < out.pixels.size(); ++i, src += 3) {
        double luma = 0.299 * src[0] + 0.587 * src[1] + 0.114 * src[2];
        long v = std::lround(luma);
        out.pixels[i] = static_cast<std::uint8_t>(std::clamp(v, 0L, 255L));
    }
    return out;
}

Point2 RotationMap::map(Point2 src) const {
    // rotate() levels a +angle feature line, i.e. applies R(-angle).
    Rot r(-angle_deg);
    Point2 cs{(src_width - 1) / 2.0, (src_height - 1) / 2.0};
    Point2 cd{(dst_width - 1) / 2.0, (dst_height - 1) / 2.0};
    Point2 v = r.apply({src.x - cs.x, src.y - cs.y});
    return {v.x + cd.x, v.y + cd.y};
}

RotationMap make_rotation_map(int width, int height, double angle_deg) {
    RotationMap m;
    m.angle_deg = angle_deg;
    m.src_width = width;
    m.src_height = height;
    if (angle_deg == 0.0) {
        m.dst_width = width;
        m.dst_height = height;
        return m;
    }
    Rot r(-angle_deg);
    Point2 c{(width - 1) / 2.0, (height - 1) / 2.0};
    double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
    const Point2 corners[4] = {{0, 0},
                               {double(width - 1), 0},
                               {0, double(height - 1)},
                               {double(width - 1), double(height - 1)}};
    for (int i = 0; i < 4; ++i) {
        Point2 v = r.apply({corners[i].x - c.x, corners[i].y - c.y});
        if (i == 0) {
            min_x = max_x = v.x;
            min_y = max_y = v.y;
        } else {
            min_x = std::min(min_x, v.x);
            max_x = std::max(max_x, v.x);
            min_y = std::min(min_y, v.y);
            max_y = std::max(max_y, v.y);
        }
    }
    m.dst_width = static_cast<int>(std::ceil(max_x - min_x)) + 1;
    m.dst_height = static_cast<int>(std::ceil(max_y - min_y)) + 1;
    return m;
}

BinaryImage rotate(const BinaryImage& img, double angle_deg) {
    if (angle_deg == 0.0) {
        return img;  // exact identity
    }
    RotationMap m = make_rotation_map(img.width, img.height, angle_deg);
    BinaryImage out(m.dst_width, m.dst_height, 0);

    // Inverse map per destination pixel, nearest-neighbour pick.
    Rot inv(angle_deg);
    Point2 cs{(img.width - 1) / 2.0, (img.height - 1) / 2.0};
    Point2 cd{(m.dst_width - 1) / 2.0, (m.dst_height - 1) / 2.0};
    for (int y = 0; y < out.height; ++y) {
        for (int x = 0; x < out.width; ++x) {
            Point2 v = inv.apply({x - cd.x, y - cd.y});
            int sx = static_cast<int>(std::lround(v.x + cs.x));
            int sy = static_cast<int>(std::lround(v.y + cs.y));
            if (img.in_bounds(sx, sy)) {
                out.at(x, y) = img.at(sx, sy);
            }
        }
    }
    return out;
}

GrayImage binary_to_gray(const BinaryImage& img) {
    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        out.pixels[i] = img.pixels[i] ? 255 : 0;
    }
    return out;
}

}  // namespace rial
