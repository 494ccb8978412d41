#include "rial/synth.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "rial/error.hpp"

namespace rial {

namespace {

constexpr const char* kModule = "synth-eval";
constexpr double kPi = 3.14159265358979323846;

constexpr int kCanvasW = 360;
constexpr int kCanvasH = 260;

// ---------------------------------------------------------------------
// Built-in 16x24 face for the Persian digits that appear in note values.
// Strokes are at least three design pixels wide so the glyphs stay
// connected down to half scale under nearest-neighbour sampling.
// ---------------------------------------------------------------------

constexpr int kCellW = 16;
constexpr int kCellH = 24;
constexpr int kDigitZeroGap = 8;  // extra design pixels between digit and first zero

using GlyphRows = std::array<const char*, kCellH>;

// Small filled disc around the vertical middle of the cell.
constexpr GlyphRows kGlyphZero = {
    "................",
    "................",
    "................",
    "................",
    "................",
    "................",
    "......####......",
    "....########....",
    "...##########...",
    "...##########...",
    "..############..",
    "..############..",
    "..############..",
    "..############..",
    "...##########...",
    "...##########...",
    "....########....",
    "......####......",
    "................",
    "................",
    "................",
    "................",
    "................",
    "................",
};

// Tall stroke with a short top serif.
constexpr GlyphRows kGlyphOne = {
    "................",
    "................",
    "...########.....",
    "....#######.....",
    ".....######.....",
    "......#####.....",
    "......#####.....",
    "......#####.....",
    "......#####.....",
    "......#####.....",
    "......#####.....",
    "......#####.....",
    "......#####.....",
    "......#####.....",
    "......#####.....",
    "......#####.....",
    "......#####.....",
    "......#####.....",
    "......#####.....",
    "......#####.....",
    "......#####.....",
    "......#####.....",
    "................",
    "................",
};

// Wavy head over a descending right-hand stem.
constexpr GlyphRows kGlyphTwo = {
    "................",
    "................",
    "..####...#####..",
    "..#####.######..",
    "...###########..",
    "...........###..",
    "...........###..",
    "...........###..",
    "...........###..",
    "...........###..",
    "...........###..",
    "...........###..",
    "...........###..",
    "...........###..",
    "...........###..",
    "...........###..",
    "...........###..",
    "...........###..",
    "...........###..",
    "...........###..",
    "...........###..",
    "...........###..",
    "................",
    "................",
};

// Closed loop with a short riser.
constexpr GlyphRows kGlyphFive = {
    "................",
    "................",
    "........###.....",
    "........###.....",
    "........###.....",
    "........###.....",
    "........###.....",
    "......####......",
    "....########....",
    "...##########...",
    "..####....####..",
    "..###......###..",
    ".###........###.",
    ".###........###.",
    ".###........###.",
    ".###........###.",
    ".###........###.",
    ".###........###.",
    "..###......###..",
    "..####....####..",
    "...##########...",
    "....########....",
    "......####......",
    "................",
};

const GlyphRows& glyph_for(DigitClass d) {
    switch (d) {
        case DigitClass::One: return kGlyphOne;
        case DigitClass::Two: return kGlyphTwo;
        case DigitClass::Five: return kGlyphFive;
    }
    return kGlyphOne;
}

bool glyph_ink(const GlyphRows& g, int x, int y) {
    if (x < 0 || x >= kCellW || y < 0 || y >= kCellH) {
        return false;
    }
    return g[y][x] == '#';
}

// Tight design-space bounds of a glyph's ink within its cell.
struct DesignBox {
    int min_x, min_y, max_x, max_y;  // inclusive
};

DesignBox tight_box(const GlyphRows& g) {
    DesignBox b{kCellW, kCellH, -1, -1};
    for (int y = 0; y < kCellH; ++y) {
        for (int x = 0; x < kCellW; ++x) {
            if (g[y][x] == '#') {
                b.min_x = std::min(b.min_x, x);
                b.max_x = std::max(b.max_x, x);
                b.min_y = std::min(b.min_y, y);
                b.max_y = std::max(b.max_y, y);
            }
        }
    }
    return b;
}

struct Placement {
    const GlyphRows* glyph;
    int x_offset;  // design x of the cell's left edge
};

// Digit leftmost, zeros to its right with a wider digit-to-zero gap so the
// closing step can merge the zeros without ever reaching the digit.
std::vector<Placement> layout_glyphs(const Denomination& denom) {
    std::vector<Placement> cells;
    cells.push_back({&glyph_for(denom.digit), 0});
    for (int k = 0; k < denom.zeros; ++k) {
        cells.push_back({&kGlyphZero, kCellW + kDigitZeroGap + k * kCellW});
    }
    return cells;
}

int text_width(const Denomination& denom) {
    return kCellW + kDigitZeroGap + denom.zeros * kCellW;
}

struct Transform {
    double c, s, scale;
    double text_cx, text_cy;
    double img_cx, img_cy;

    Point2 to_image(double tx, double ty) const {
        double dx = (tx - text_cx) * scale;
        double dy = (ty - text_cy) * scale;
        return {c * dx - s * dy + img_cx, s * dx + c * dy + img_cy};
    }
    Point2 to_text(double ix, double iy) const {
        double dx = ix - img_cx;
        double dy = iy - img_cy;
        return {(c * dx + s * dy) / scale + text_cx, (-s * dx + c * dy) / scale + text_cy};
    }
};

Transform make_transform(const Denomination& denom, double rotation_deg, double scale) {
    Transform t;
    t.c = std::cos(rotation_deg * kPi / 180.0);
    t.s = std::sin(rotation_deg * kPi / 180.0);
    t.scale = scale;
    t.text_cx = text_width(denom) / 2.0;
    t.text_cy = kCellH / 2.0;
    t.img_cx = (kCanvasW - 1) / 2.0;
    t.img_cy = (kCanvasH - 1) / 2.0;
    return t;
}

BoxF map_box(const Transform& t, double min_x, double min_y, double max_x, double max_y) {
    Point2 ps[4] = {t.to_image(min_x, min_y), t.to_image(max_x, min_y),
                    t.to_image(min_x, max_y), t.to_image(max_x, max_y)};
    BoxF b{ps[0].x, ps[0].y, ps[0].x, ps[0].y};
    for (int i = 1; i < 4; ++i) {
        b.min_x = std::min(b.min_x, ps[i].x);
        b.min_y = std::min(b.min_y, ps[i].y);
        b.max_x = std::max(b.max_x, ps[i].x);
        b.max_y = std::max(b.max_y, ps[i].y);
    }
    return b;
}

void check_spec(const SynthSpec& spec) {
    if (spec.scale < 0.3 || spec.scale > 2.0) {
        throw std::invalid_argument("scale must lie in [0.3, 2]");
    }
    if (std::abs(spec.rotation_deg) > 45.0) {
        throw std::invalid_argument("|rotation| must be <= 45 degrees");
    }
    if (spec.noise < 0.0 || spec.noise > 1.0) {
        throw std::invalid_argument("noise must lie in [0, 1]");
    }
}

}  // namespace

Denomination value_of(DigitClass digit, int zeros) {
    static const std::array<std::pair<int, int>, 7> valid = {{
        {1, 3}, {2, 3}, {5, 3}, {1, 4}, {2, 4}, {5, 4}, {1, 5},
    }};
    for (const auto& [d, z] : valid) {
        if (d == digit_value(digit) && z == zeros) {
            Denomination out;
            out.digit = digit;
            out.zeros = zeros;
            out.value = d;
            for (int k = 0; k < zeros; ++k) {
                out.value *= 10;
            }
            return out;
        }
    }
    throw Error(kModule, "InvalidDenomination",
                "digit " + std::to_string(digit_value(digit)) + " with " +
                    std::to_string(zeros) + " zeros names no note");
}

Denomination denomination_from_value(long long value) {
    for (const auto& d : all_denominations()) {
        if (d.value == value) {
            return d;
        }
    }
    throw Error(kModule, "InvalidDenomination", std::to_string(value) + " Riyals");
}

const std::vector<Denomination>& all_denominations() {
    static const std::vector<Denomination> all = [] {
        std::vector<Denomination> v;
        v.push_back(value_of(DigitClass::One, 3));
        v.push_back(value_of(DigitClass::Two, 3));
        v.push_back(value_of(DigitClass::Five, 3));
        v.push_back(value_of(DigitClass::One, 4));
        v.push_back(value_of(DigitClass::Two, 4));
        v.push_back(value_of(DigitClass::Five, 4));
        v.push_back(value_of(DigitClass::One, 5));
        return v;
    }();
    return all;
}

GroundTruth layout_ground_truth(const Denomination& denom, double rotation_deg, double scale) {
    Transform t = make_transform(denom, rotation_deg, scale);
    GroundTruth truth;
    truth.denom = denom;
    truth.angle_deg = rotation_deg;
    truth.zero_count = denom.zeros;
    auto cells = layout_glyphs(denom);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        DesignBox d = tight_box(*cells[i].glyph);
        BoxF box = map_box(t, cells[i].x_offset + d.min_x, d.min_y,
                           cells[i].x_offset + d.max_x + 1, d.max_y + 1);
        if (i == 0) {
            truth.digit_box = box;
        } else {
            truth.zero_boxes.push_back(box);
        }
    }
    return truth;
}

SynthSample generate_sample(const SynthSpec& spec) {
    check_spec(spec);

    std::mt19937 rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    auto cells = layout_glyphs(spec.denom);
    Transform t = make_transform(spec.denom, spec.rotation_deg, spec.scale);
    const int tw = text_width(spec.denom);

    // Per-glyph ink shade, slightly jittered so zero areas are not all
    // bit-identical.
    std::vector<double> ink(cells.size());
    for (auto& v : ink) {
        v = 235.0 + (unit(rng) - 0.5) * 8.0;
    }

    // Background field.
    double plain_base = 64.0 + unit(rng) * 12.0;
    double tex_amp1 = 10.0 + unit(rng) * 6.0;
    double tex_amp2 = 6.0 + unit(rng) * 4.0;
    double tex_p1 = 90.0 + unit(rng) * 60.0;
    double tex_p2 = 90.0 + unit(rng) * 60.0;
    double tex_p3 = 110.0 + unit(rng) * 60.0;
    double tex_ph1 = unit(rng) * 2.0 * kPi;
    double tex_ph2 = unit(rng) * 2.0 * kPi;
    double tex_ph3 = unit(rng) * 2.0 * kPi;

    struct Blob {
        double cx, cy, rx, ry, shade;
        bool rect;
    };
    std::vector<Blob> clutter;
    if (spec.background == BackgroundKind::Cluttered) {
        int count = 6 + int(unit(rng) * 6.0);
        for (int i = 0; i < count; ++i) {
            Blob b;
            b.cx = unit(rng) * kCanvasW;
            b.cy = unit(rng) * kCanvasH;
            b.rx = 4.0 + unit(rng) * 18.0;
            b.ry = 4.0 + unit(rng) * 18.0;
            b.shade = 190.0 + unit(rng) * 45.0;
            b.rect = unit(rng) < 0.5;
            clutter.push_back(b);
        }
    }

    auto background_at = [&](int x, int y) {
        double v = plain_base;
        if (spec.background != BackgroundKind::Plain) {
            v = plain_base + 4.0 +
                tex_amp1 * std::sin(2.0 * kPi * x / tex_p1 + tex_ph1) *
                    std::sin(2.0 * kPi * y / tex_p2 + tex_ph2) +
                tex_amp2 * std::sin(2.0 * kPi * (x + y) / tex_p3 + tex_ph3);
        }
        for (const auto& b : clutter) {
            double dx = (x - b.cx) / b.rx;
            double dy = (y - b.cy) / b.ry;
            bool inside = b.rect ? (std::abs(dx) <= 1.0 && std::abs(dy) <= 1.0)
                                 : (dx * dx + dy * dy <= 1.0);
            if (inside) {
                v = b.shade;
            }
        }
        return v;
    };

    ColorImage image(kCanvasW, kCanvasH);
    std::normal_distribution<double> gauss(0.0, 25.0 * spec.noise);
    for (int y = 0; y < kCanvasH; ++y) {
        for (int x = 0; x < kCanvasW; ++x) {
            double v = background_at(x, y);

            Point2 p = t.to_text(x, y);
            if (p.x >= 0.0 && p.x < tw && p.y >= 0.0 && p.y < kCellH) {
                int ty = static_cast<int>(std::floor(p.y));
                int tx = static_cast<int>(std::floor(p.x));
                for (std::size_t i = 0; i < cells.size(); ++i) {
                    if (glyph_ink(*cells[i].glyph, tx - cells[i].x_offset, ty)) {
                        v = ink[i];
                        break;
                    }
                }
            }

            v *= spec.illumination;
            if (spec.noise > 0.0) {
                v += gauss(rng);
            }
            auto q = static_cast<std::uint8_t>(std::clamp<long>(std::lround(v), 0, 255));
            std::uint8_t* px = image.at(x, y);
            // Mild fixed tint; luma stays within a count of the gray level.
            px[0] = static_cast<std::uint8_t>(std::min<int>(255, q + (q > 8 ? 2 : 0)));
            px[1] = q;
            px[2] = static_cast<std::uint8_t>(q > 4 ? q - 4 : 0);
        }
    }

    SynthSample sample;
    sample.image = std::move(image);
    sample.truth = layout_ground_truth(spec.denom, spec.rotation_deg, spec.scale);
    return sample;
}

std::string manifest_line(const ManifestRow& row) {
    auto fmt = [](double v) {
        char buf[40];
        auto res = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, res.ptr);
    };
    std::ostringstream out;
    out << row.path << ',' << row.denomination << ',' << fmt(row.rotation) << ','
        << fmt(row.scale) << ',' << fmt(row.noise) << ',' << row.seed;
    return out.str();
}

std::vector<ManifestRow> read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(kModule, "UnreadableFile", path);
    }
    std::vector<ManifestRow> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) {
            fields.push_back(field);
        }
        auto bad = [&]() {
            return Error(kModule, "BadManifestRow", "manifest line " + std::to_string(line_no));
        };
        if (fields.size() != 6 || fields[0].empty()) {
            throw bad();
        }
        ManifestRow row;
        row.path = fields[0];
        auto parse_ll = [&](const std::string& s, long long& out_v) {
            auto res = std::from_chars(s.data(), s.data() + s.size(), out_v);
            if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
                throw bad();
            }
        };
        auto parse_d = [&](const std::string& s, double& out_v) {
            auto res = std::from_chars(s.data(), s.data() + s.size(), out_v);
            if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
                throw bad();
            }
        };
        long long seed_ll = 0;
        parse_ll(fields[1], row.denomination);
        parse_d(fields[2], row.rotation);
        parse_d(fields[3], row.scale);
        parse_d(fields[4], row.noise);
        parse_ll(fields[5], seed_ll);
        if (seed_ll < 0 || seed_ll > 0xFFFFFFFFLL) {
            throw bad();
        }
        row.seed = static_cast<std::uint32_t>(seed_ll);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace rial
