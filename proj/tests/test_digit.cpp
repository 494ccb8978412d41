#include <doctest.h>

#include <cmath>

#include "rial/digit.hpp"
#include "rial/error.hpp"

using namespace rial;

namespace {

// A levelled scene: square zero dots on a horizontal line plus a digit
// block on the left, positioned by centre.
struct Scene {
    BinaryImage img;
    ZeroLine line;
};

Component square_component(BinaryImage& img, int label, int cx, int cy, int half) {
    for (int y = cy - half; y <= cy + half; ++y) {
        for (int x = cx - half; x <= cx + half; ++x) {
            img.at(x, y) = 1;
        }
    }
    Component c;
    c.label = label;
    c.area = (2 * half + 1) * (2 * half + 1);
    c.centroid_x = cx;
    c.centroid_y = cy;
    c.min_x = cx - half;
    c.max_x = cx + half;
    c.min_y = cy - half;
    c.max_y = cy + half;
    return c;
}

Scene make_scene(int zero_count, double spacing, int digit_x, int w = 420, int h = 220) {
    Scene s;
    s.img = BinaryImage(w, h);
    const int y = h / 2;
    const int first_x = 120;
    for (int k = 0; k < zero_count; ++k) {
        int cx = first_x + static_cast<int>(std::lround(k * spacing));
        s.line.zeros.push_back(square_component(s.img, k + 1, cx, y, 2));
    }
    // Digit block, 20 wide and 30 tall.
    for (int yy = y - 15; yy < y + 15; ++yy) {
        for (int xx = digit_x; xx < digit_x + 20; ++xx) {
            s.img.at(xx, yy) = 1;
        }
    }
    s.line.count = zero_count;
    s.line.length_px = std::hypot(s.line.zeros.back().centroid_x - s.line.zeros.front().centroid_x,
                                  0.0);
    s.line.angle_deg = 0.0;
    return s;
}

DigitCrop crop_of(const BinaryImage& img) {
    DigitCrop crop;
    crop.image = img;
    crop.side = img.width;
    crop.src_min_x = 0;
    crop.src_min_y = 0;
    crop.src_max_x = img.width - 1;
    crop.src_max_y = img.height - 1;
    return crop;
}

BinaryImage upscale(const BinaryImage& img, int k) {
    BinaryImage out(img.width * k, img.height * k);
    for (int y = 0; y < out.height; ++y) {
        for (int x = 0; x < out.width; ++x) {
            out.at(x, y) = img.at(x / k, y / k);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("window side follows 3 * length / count") {
    // 4 zeros spanning 200 px -> side 150.
    Scene s = make_scene(4, 200.0 / 3.0, 30);
    DigitCrop crop = find_nonzero_digit(s.img, s.line);
    CHECK(crop.side == 150);

    // 3 zeros spanning 150 px -> side 150 as well (3 * 150 / 3).
    Scene t = make_scene(3, 75.0, 30);
    DigitCrop crop3 = find_nonzero_digit(t.img, t.line);
    CHECK(crop3.side == 150);
}

TEST_CASE("window side scales linearly with the line length") {
    Scene a = make_scene(4, 60.0, 30);     // length 180 -> side 135
    Scene b = make_scene(4, 30.0, 60);     // length 90  -> side 68 (rounded)
    CHECK(find_nonzero_digit(a.img, a.line).side == 135);
    CHECK(find_nonzero_digit(b.img, b.line).side == 68);
}

TEST_CASE("the crop contains the digit and excludes the zeros") {
    Scene s = make_scene(4, 200.0 / 3.0, 30);
    DigitCrop crop = find_nonzero_digit(s.img, s.line);
    int fg = 0;
    for (auto p : crop.image.pixels) {
        fg += p;
    }
    CHECK(fg == 20 * 30);  // exactly the digit block survived the cleanup
    CHECK(crop.src_max_x < s.line.zeros.front().min_x);
}

TEST_CASE("a digit on the right is found by the outward scan") {
    Scene s = make_scene(3, 70.0, 30);
    // Add a second block on the right, closer than the left one.
    int y = s.img.height / 2;
    int right_x = static_cast<int>(s.line.zeros.back().centroid_x) + 12;
    for (int yy = y - 10; yy < y + 10; ++yy) {
        for (int xx = right_x; xx < right_x + 14; ++xx) {
            s.img.at(xx, yy) = 1;
        }
    }
    DigitCrop crop = find_nonzero_digit(s.img, s.line);
    CHECK(crop.src_min_x > s.line.zeros.back().max_x);
}

TEST_CASE("an empty scene raises DigitNotFound") {
    BinaryImage img(200, 80);
    ZeroLine line;
    line.zeros = {square_component(img, 1, 60, 40, 2), square_component(img, 2, 90, 40, 2),
                  square_component(img, 3, 120, 40, 2)};
    line.count = 3;
    line.length_px = 60.0;
    CHECK_THROWS_WITH_AS(find_nonzero_digit(img, line), doctest::Contains("DigitNotFound"),
                         Error);
}

TEST_CASE("features of a solid square are all one") {
    BinaryImage img(12, 12);
    for (int y = 2; y < 10; ++y) {
        for (int x = 2; x < 10; ++x) {
            img.at(x, y) = 1;
        }
    }
    FeatureVector f = extract_features(crop_of(img));
    CHECK(f.fill == doctest::Approx(1.0));
    CHECK(f.aspect == doctest::Approx(1.0));
    CHECK(f.left_right == doctest::Approx(1.0));
    CHECK(f.top_bottom == doctest::Approx(1.0));
}

TEST_CASE("aspect of a 10 by 20 rectangle is two") {
    BinaryImage img(30, 30);
    for (int y = 4; y < 24; ++y) {
        for (int x = 10; x < 20; ++x) {
            img.at(x, y) = 1;
        }
    }
    FeatureVector f = extract_features(crop_of(img));
    CHECK(f.aspect == doctest::Approx(2.0));
    CHECK(f.fill == doctest::Approx(1.0));
}

TEST_CASE("hand counted L shape features") {
    // Left column plus bottom row of a 4x4 box: 7 pixels.
    BinaryImage img(6, 6);
    for (int y = 1; y <= 4; ++y) {
        img.at(1, y) = 1;
    }
    for (int x = 1; x <= 4; ++x) {
        img.at(x, 4) = 1;
    }
    FeatureVector f = extract_features(crop_of(img));
    CHECK(f.fill == doctest::Approx(7.0 / 16.0));
    CHECK(f.aspect == doctest::Approx(1.0));
    CHECK(f.left_right == doctest::Approx(5.0 / 2.0));
    CHECK(f.top_bottom == doctest::Approx(2.0 / 5.0));
}

TEST_CASE("features survive integer upscaling within five percent") {
    BinaryImage img(8, 8);
    for (int y = 1; y <= 6; ++y) {
        img.at(2, y) = 1;
    }
    for (int x = 2; x <= 6; ++x) {
        img.at(x, 6) = 1;
    }
    img.at(5, 2) = img.at(5, 3) = img.at(6, 2) = 1;
    FeatureVector base = extract_features(crop_of(img));
    for (int k : {2, 3, 5}) {
        FeatureVector f = extract_features(crop_of(upscale(img, k)));
        CHECK(f.fill == doctest::Approx(base.fill).epsilon(0.05));
        CHECK(f.aspect == doctest::Approx(base.aspect).epsilon(0.05));
        CHECK(f.left_right == doctest::Approx(base.left_right).epsilon(0.05));
        CHECK(f.top_bottom == doctest::Approx(base.top_bottom).epsilon(0.05));
    }
}

TEST_CASE("mirroring an even glyph inverts the mass ratios exactly") {
    BinaryImage img(10, 10);
    // Asymmetric blob with an even tight box (6 wide, 4 tall).
    for (int y = 2; y <= 5; ++y) {
        for (int x = 2; x <= 4; ++x) {
            img.at(x, y) = 1;
        }
    }
    img.at(5, 2) = img.at(6, 2) = img.at(7, 2) = img.at(7, 3) = 1;

    BinaryImage mirrored_x(10, 10);
    BinaryImage mirrored_y(10, 10);
    for (int y = 0; y < 10; ++y) {
        for (int x = 0; x < 10; ++x) {
            mirrored_x.at(9 - x, y) = img.at(x, y);
            mirrored_y.at(x, 9 - y) = img.at(x, y);
        }
    }
    FeatureVector base = extract_features(crop_of(img));
    FeatureVector fx = extract_features(crop_of(mirrored_x));
    FeatureVector fy = extract_features(crop_of(mirrored_y));
    CHECK(fx.left_right == doctest::Approx(1.0 / base.left_right).epsilon(1e-12));
    CHECK(fy.top_bottom == doctest::Approx(1.0 / base.top_bottom).epsilon(1e-12));
}

TEST_CASE("an empty crop cannot be measured") {
    BinaryImage img(9, 9);
    CHECK_THROWS_WITH_AS(extract_features(crop_of(img)), doctest::Contains("EmptyCrop"), Error);
}

TEST_CASE("symmetry scores are one for symmetric glyphs") {
    BinaryImage img(9, 9);
    for (int y = 2; y <= 6; ++y) {
        for (int x = 2; x <= 6; ++x) {
            img.at(x, y) = 1;
        }
    }
    SymmetryScores s = symmetry_scores(crop_of(img));
    CHECK(s.horizontal == doctest::Approx(1.0));
    CHECK(s.vertical == doctest::Approx(1.0));
}
