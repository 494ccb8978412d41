#pragma once

#include <array>
#include <vector>

#include "rial/components.hpp"

namespace rial {

// A post-closing blob together with the pre-closing components whose
// centroids it swallowed. Only regions of at least three members are
// candidates for a batch of zeros.
struct Region {
    int id = 0;                      // post-closing blob label
    std::vector<int> member_labels;  // pre-closing labels, ascending
};

struct LineCandidate {
    int region_id = 0;
    std::array<int, 2> anchors{0, 0};  // member labels whose centroids define the line
    std::vector<int> on_line;          // member labels intersected by the line, ascending
    Point2 point;                      // a point on the line
    Point2 dir;                        // unit direction
};

// The accepted batch of zeros: members sorted by projection along the line.
struct ZeroLine {
    std::vector<Component> zeros;
    double angle_deg = 0.0;  // canonical (-90, 90]
    double length_px = 0.0;  // first to last zero centre
    int count = 0;

    const Component& first() const { return zeros.front(); }
    const Component& last() const { return zeros.back(); }
};

// Assigns every pre-closing component to the post-closing blob containing
// its centroid (nearest blob when the rounded centroid lands on background)
// and keeps the groups with three or more members. Groups with more than
// five members are kept: extra components may have fused with real zeros
// and are pruned by the line test instead.
std::vector<Region> group_regions(const ComponentSet& pre_close, const ComponentSet& post_close);

// Examines the line through every pair of member centroids and returns the
// candidate covering the most members, where a member counts as on the line
// if any of its pixels lies within tolerance_px of it. Ties fall to the
// smaller sum of squared centroid distances, then to the lowest anchor
// labels. Throws zero-localizer.DegenerateRegion when every centroid
// coincides.
LineCandidate candidate_lines(const ComponentSet& set, const Region& region, double tolerance_px);

// Picks the candidate whose on-line members have the most uniform areas
// (smallest coefficient of variation; ties to the lowest region id) and
// checks the zero-count range 3..5.
// Throws zero-localizer.NoCandidates / TooFewZeros / TooManyZeros.
ZeroLine select_zero_line(const ComponentSet& set, const std::vector<LineCandidate>& candidates);

// Angle of the line through the first and last zero centres, degrees in
// (-90, 90]; a zero line is undirected so 180-degree turns are folded away.
double rotation_angle(const ZeroLine& line);

int count_zeros(const ZeroLine& line);

}  // namespace rial
