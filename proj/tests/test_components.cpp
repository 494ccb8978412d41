#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rial/components.hpp"

using namespace rial;

TEST_CASE("two isolated pixels become two unit components") {
    BinaryImage img(5, 5);
    img.at(0, 0) = 1;
    img.at(4, 4) = 1;
    ComponentSet set = label_components(img, 8);
    REQUIRE(set.components.size() == 2);
    CHECK(set.components[0].area == 1);
    CHECK(set.components[1].area == 1);
    CHECK(set.label_at(0, 0) == 1);
    CHECK(set.label_at(4, 4) == 2);
}

TEST_CASE("a diagonal pair joins under 8 and splits under 4 connectivity") {
    BinaryImage img(4, 4);
    img.at(1, 1) = 1;
    img.at(2, 2) = 1;
    CHECK(label_components(img, 8).components.size() == 1);
    CHECK(label_components(img, 4).components.size() == 2);
}

TEST_CASE("an empty image has no components") {
    BinaryImage img(6, 3);
    CHECK(label_components(img, 8).components.empty());
    CHECK(label_components(img, 4).components.empty());
}

TEST_CASE("labelling matches the flood fill oracle on random images") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        BinaryImage img = oracle::random_binary(rng, 32, 32);
        for (int connectivity : {4, 8}) {
            ComponentSet set = label_components(img, connectivity);
            auto expected = oracle::flood_fill_labels(img, connectivity);
            REQUIRE(oracle::same_partition(set.labels, expected));
        }
    }
}

TEST_CASE("component stats match brute force recomputation") {
    std::mt19937 rng(55);
    BinaryImage img = oracle::random_binary(rng, 24, 18, 0.4);
    ComponentSet set = label_components(img, 8);
    long long total = 0;
    for (const auto& c : set.components) {
        int area = 0, min_x = set.width, min_y = set.height, max_x = -1, max_y = -1;
        double sx = 0, sy = 0;
        for (int y = 0; y < set.height; ++y) {
            for (int x = 0; x < set.width; ++x) {
                if (set.label_at(x, y) != c.label) {
                    continue;
                }
                ++area;
                sx += x;
                sy += y;
                min_x = std::min(min_x, x);
                max_x = std::max(max_x, x);
                min_y = std::min(min_y, y);
                max_y = std::max(max_y, y);
            }
        }
        REQUIRE(area == c.area);
        CHECK(min_x == c.min_x);
        CHECK(max_x == c.max_x);
        CHECK(min_y == c.min_y);
        CHECK(max_y == c.max_y);
        CHECK(c.centroid_x == doctest::Approx(sx / area).epsilon(1e-12));
        CHECK(c.centroid_y == doctest::Approx(sy / area).epsilon(1e-12));
        total += area;
    }
    long long foreground = 0;
    for (auto p : img.pixels) {
        foreground += p;
    }
    CHECK(total == foreground);
}

TEST_CASE("shape filter drops elongated and hollow components") {
    BinaryImage img(60, 40);
    // 30x10 solid bar: aspect 3, removed.
    for (int y = 2; y < 12; ++y) {
        for (int x = 2; x < 32; ++x) {
            img.at(x, y) = 1;
        }
    }
    // 10x10 solid square: kept.
    for (int y = 20; y < 30; ++y) {
        for (int x = 5; x < 15; ++x) {
            img.at(x, y) = 1;
        }
    }
    // 14x12 outline with a notch: one connected component of exactly 40
    // pixels in a 168 pixel box, removed because 168 > 2 * 40.
    for (int x = 40; x <= 53; ++x) {
        img.at(x, 20) = 1;
        img.at(x, 31) = 1;
    }
    for (int y = 21; y <= 30; ++y) {
        img.at(40, y) = 1;
        img.at(53, y) = 1;
    }
    for (int x = 43; x <= 50; ++x) {
        img.at(x, 20) = 0;  // open the ring without losing the corners
    }

    ComponentSet set = label_components(img, 8);
    ComponentSet filtered = filter_by_shape(set);
    REQUIRE(filtered.components.size() == 1);
    CHECK(filtered.components[0].bbox_width() == 10);
    CHECK(filtered.components[0].bbox_height() == 10);
}

TEST_CASE("shape filter keeps survivor stats and labels intact") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        BinaryImage img = oracle::random_binary(rng, 28, 28, 0.35);
        ComponentSet set = label_components(img, 8);
        ComponentSet filtered = filter_by_shape(set);
        CHECK(filtered.components.size() <= set.components.size());
        for (const auto& c : filtered.components) {
            const Component* original = set.find(c.label);
            REQUIRE(original != nullptr);
            CHECK(original->area == c.area);
            CHECK(original->centroid_x == c.centroid_x);
            CHECK(original->min_x == c.min_x);
            CHECK(original->max_y == c.max_y);
        }
        // Raster agrees with the survivor list.
        long long raster_fg = 0;
        for (auto l : filtered.labels) {
            if (l != 0) {
                REQUIRE(filtered.find(l) != nullptr);
                ++raster_fg;
            }
        }
        long long survivor_area = 0;
        for (const auto& c : filtered.components) {
            survivor_area += c.area;
        }
        CHECK(raster_fg == survivor_area);
    }
}
