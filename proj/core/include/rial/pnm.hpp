#pragma once

#include <string>

#include "rial/image.hpp"

namespace rial {

// Loads P2/P3 (plain) and P5/P6 (raw) netpbm files with maxval <= 255.
// Grayscale inputs are replicated into three channels.
// Errors: image-core.UnreadableFile, image-core.UnsupportedFormat,
// image-core.CorruptData.
ColorImage load_image(const std::string& path);

void save_pgm(const GrayImage& img, const std::string& path, bool binary = true);
void save_ppm(const ColorImage& img, const std::string& path, bool binary = true);

}  // namespace rial
