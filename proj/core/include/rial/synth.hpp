#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rial/image.hpp"
#include "rial/mlp.hpp"

namespace rial {

// One of the seven circulating notes; value = digit * 10^zeros.
struct Denomination {
    DigitClass digit = DigitClass::One;
    int zeros = 3;
    long long value = 1000;
};

// Validates (digit, zeros) against the seven real notes; e.g. a 2 with five
// zeros names no note. Throws synth-eval.InvalidDenomination.
Denomination value_of(DigitClass digit, int zeros);

Denomination denomination_from_value(long long value);  // same validation

const std::vector<Denomination>& all_denominations();

enum class BackgroundKind { Plain, Textured, Cluttered };

struct SynthSpec {
    Denomination denom;
    double rotation_deg = 0.0;  // |rotation| <= 45
    double scale = 1.0;         // in [0.3, 2]
    double noise = 0.0;         // in [0, 1]
    BackgroundKind background = BackgroundKind::Plain;
    double illumination = 1.0;  // multiplicative gain
    std::uint32_t seed = 1;
};

// Axis-aligned box in image coordinates, pixel-corner convention
// (max is exclusive).
struct BoxF {
    double min_x = 0, min_y = 0, max_x = 0, max_y = 0;

    double area() const { return (max_x - min_x) * (max_y - min_y); }
};

struct GroundTruth {
    Denomination denom;
    double angle_deg = 0.0;
    int zero_count = 0;
    BoxF digit_box;
    std::vector<BoxF> zero_boxes;
};

struct SynthSample {
    ColorImage image;
    GroundTruth truth;
};

// Glyph geometry only; independent of background, gain, noise and seed, so
// truth can be rebuilt from a manifest row.
GroundTruth layout_ground_truth(const Denomination& denom, double rotation_deg, double scale);

// Draws the note value in a built-in 16x24 bitmap face as bright ink over a
// darker background, rotated and scaled about the canvas centre, then
// applies gain and seeded noise. Deterministic per spec.
SynthSample generate_sample(const SynthSpec& spec);

// Dataset manifest: one line per image,
//   path,denomination,rotation,scale,noise,seed
struct ManifestRow {
    std::string path;
    long long denomination = 0;
    double rotation = 0.0;
    double scale = 1.0;
    double noise = 0.0;
    std::uint32_t seed = 0;
};

std::string manifest_line(const ManifestRow& row);

// Throws synth-eval.BadManifestRow with detail "manifest line N".
std::vector<ManifestRow> read_manifest(const std::string& path);

}  // namespace rial
