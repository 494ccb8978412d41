#include "rial/preprocess.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rial/error.hpp"

namespace rial {

namespace {

constexpr const char* kModule = "preprocess";

void check_window(const GrayImage& img, int window) {
    if (window < 3 || window % 2 == 0) {
        throw std::invalid_argument("window must be odd and >= 3");
    }
    if (window > img.width || window > img.height) {
        throw Error(kModule, "WindowTooLarge",
                    std::to_string(window) + " on " + std::to_string(img.width) + "x" +
                        std::to_string(img.height));
    }
}

GrayImage pad_replicate(const GrayImage& img, int half) {
    GrayImage out(img.width + 2 * half, img.height + 2 * half);
    for (int y = 0; y < out.height; ++y) {
        int sy = std::min(std::max(y - half, 0), img.height - 1);
        for (int x = 0; x < out.width; ++x) {
            int sx = std::min(std::max(x - half, 0), img.width - 1);
            out.at(x, y) = img.at(sx, sy);
        }
    }
    return out;
}

// Summed-area table with a zero top row/left column; sums are exact in
// 64-bit for any 8-bit image this library will ever see.
struct Integral {
    int width = 0;
    int height = 0;
    std::vector<std::uint64_t> table;

    Integral(const GrayImage& img, bool squared) : width(img.width), height(img.height) {
        table.assign(static_cast<std::size_t>(width + 1) * (height + 1), 0);
        for (int y = 0; y < height; ++y) {
            std::uint64_t row = 0;
            for (int x = 0; x < width; ++x) {
                std::uint64_t v = img.at(x, y);
                row += squared ? v * v : v;
                at(x + 1, y + 1) = at(x + 1, y) + row;
            }
        }
    }

    std::uint64_t& at(int x, int y) { return table[static_cast<std::size_t>(y) * (width + 1) + x]; }
    std::uint64_t at(int x, int y) const {
        return table[static_cast<std::size_t>(y) * (width + 1) + x];
    }

    // Sum over the inclusive rectangle [x0, x1] x [y0, y1].
    std::uint64_t sum(int x0, int y0, int x1, int y1) const {
        return at(x1 + 1, y1 + 1) - at(x0, y1 + 1) - at(x1 + 1, y0) + at(x0, y0);
    }
};

}  // namespace

GrayImage wiener_denoise(const GrayImage& img, int window) {
    check_window(img, window);
    const int half = window / 2;
    const GrayImage padded = pad_replicate(img, half);
    const Integral isum(padded, false);
    const Integral isq(padded, true);
    const double area = double(window) * window;

    // Pass 1: local means/variances plus the overall noise power estimate.
    std::vector<double> means(img.pixels.size());
    std::vector<double> vars(img.pixels.size());
    double noise = 0.0;
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            // Window in padded coordinates is the plain rectangle at (x, y).
            double s = double(isum.sum(x, y, x + window - 1, y + window - 1));
            double q = double(isq.sum(x, y, x + window - 1, y + window - 1));
            double m = s / area;
            double v = q / area - m * m;
            if (v < 0.0) {
                v = 0.0;
            }
            std::size_t i = static_cast<std::size_t>(y) * img.width + x;
            means[i] = m;
            vars[i] = v;
            noise += v;
        }
    }
    noise /= double(img.pixels.size());
    if (noise == 0.0) {
        return img;
    }

    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        double m = means[i];
        double v = vars[i];
        double gain = std::max(0.0, v - noise) / std::max(v, noise);
        double value = m + gain * (double(img.pixels[i]) - m);
        long r = std::lround(value);
        out.pixels[i] = static_cast<std::uint8_t>(std::clamp(r, 0L, 255L));
    }
    return out;
}

BinaryImage adaptive_threshold(const GrayImage& img, const ThresholdConfig& cfg) {
    check_window(img, cfg.window);
    const int half = cfg.window / 2;
    const GrayImage padded = pad_replicate(img, half);
    const Integral isum(padded, false);
    const double area = double(cfg.window) * cfg.window;

    BinaryImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            double mean = double(isum.sum(x, y, x + cfg.window - 1, y + cfg.window - 1)) / area;
            double threshold = mean * (1.0 - cfg.bias);
            out.at(x, y) = double(img.at(x, y)) >= threshold ? 1 : 0;
        }
    }
    return out;
}

BinaryImage median3x3(const BinaryImage& img) {
    BinaryImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            int ones = 0;
            for (int dy = -1; dy <= 1; ++dy) {
                int sy = std::min(std::max(y + dy, 0), img.height - 1);
                for (int dx = -1; dx <= 1; ++dx) {
                    int sx = std::min(std::max(x + dx, 0), img.width - 1);
                    ones += img.at(sx, sy);
                }
            }
            out.at(x, y) = ones >= 5 ? 1 : 0;
        }
    }
    return out;
}

}  // namespace rial
