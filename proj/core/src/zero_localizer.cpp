#include "rial/zero_localizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "rial/error.hpp"

namespace rial {

namespace {

constexpr const char* kModule = "zero-localizer";
constexpr double kPi = 3.14159265358979323846;

double point_line_distance(Point2 p, Point2 a, Point2 dir) {
    // |cross(p - a, dir)| with dir unit length.
    return std::abs((p.x - a.x) * dir.y - (p.y - a.y) * dir.x);
}

// Any pixel of the component within tolerance of the line?
bool component_on_line(const ComponentSet& set, const Component& c, Point2 a, Point2 dir,
                       double tolerance) {
    for (int y = c.min_y; y <= c.max_y; ++y) {
        for (int x = c.min_x; x <= c.max_x; ++x) {
            if (set.label_at(x, y) != c.label) {
                continue;
            }
            if (point_line_distance({double(x), double(y)}, a, dir) <= tolerance) {
                return true;
            }
        }
    }
    return false;
}

double canonical_angle(double deg) {
    while (deg > 90.0) {
        deg -= 180.0;
    }
    while (deg <= -90.0) {
        deg += 180.0;
    }
    return deg;
}

}  // namespace

std::vector<Region> group_regions(const ComponentSet& pre_close, const ComponentSet& post_close) {
    std::map<int, Region> by_blob;
    for (const auto& c : pre_close.components) {
        int cx = static_cast<int>(std::lround(c.centroid_x));
        int cy = static_cast<int>(std::lround(c.centroid_y));
        cx = std::clamp(cx, 0, post_close.width - 1);
        cy = std::clamp(cy, 0, post_close.height - 1);
        int blob = post_close.label_at(cx, cy);
        if (blob == 0) {
            // Rounded centroid fell between pixels of the closed blob;
            // attach to the nearest labelled pixel instead.
            long long best = std::numeric_limits<long long>::max();
            for (int y = 0; y < post_close.height; ++y) {
                for (int x = 0; x < post_close.width; ++x) {
                    int l = post_close.label_at(x, y);
                    if (l == 0) {
                        continue;
                    }
                    long long dx = x - cx;
                    long long dy = y - cy;
                    long long d = dx * dx + dy * dy;
                    if (d < best) {
                        best = d;
                        blob = l;
                    }
                }
            }
            if (blob == 0) {
                continue;  // empty closed image
            }
        }
        Region& r = by_blob[blob];
        r.id = blob;
        r.member_labels.push_back(c.label);
    }

    std::vector<Region> regions;
    for (auto& [blob, region] : by_blob) {
        if (region.member_labels.size() < 3) {
            continue;
        }
        std::sort(region.member_labels.begin(), region.member_labels.end());
        regions.push_back(std::move(region));
    }
    return regions;
}

LineCandidate candidate_lines(const ComponentSet& set, const Region& region,
                              double tolerance_px) {
    std::vector<const Component*> members;
    for (int label : region.member_labels) {
        const Component* c = set.find(label);
        if (c != nullptr) {
            members.push_back(c);
        }
    }

    bool have_best = false;
    LineCandidate best;
    double best_sumsq = 0.0;

    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            Point2 a{members[i]->centroid_x, members[i]->centroid_y};
            Point2 b{members[j]->centroid_x, members[j]->centroid_y};
            double len = std::hypot(b.x - a.x, b.y - a.y);
            if (len < 1e-9) {
                continue;  // coincident centroids define no line
            }
            Point2 dir{(b.x - a.x) / len, (b.y - a.y) / len};

            LineCandidate cand;
            cand.region_id = region.id;
            cand.anchors = {members[i]->label, members[j]->label};
            cand.point = a;
            cand.dir = dir;
            double sumsq = 0.0;
            for (const Component* m : members) {
                if (component_on_line(set, *m, a, dir, tolerance_px)) {
                    cand.on_line.push_back(m->label);
                    double d = point_line_distance({m->centroid_x, m->centroid_y}, a, dir);
                    sumsq += d * d;
                }
            }

            bool better = false;
            if (!have_best) {
                better = true;
            } else if (cand.on_line.size() != best.on_line.size()) {
                better = cand.on_line.size() > best.on_line.size();
            } else if (sumsq != best_sumsq) {
                better = sumsq < best_sumsq;
            } else {
                better = cand.anchors < best.anchors;
            }
            if (better) {
                best = std::move(cand);
                best_sumsq = sumsq;
                have_best = true;
            }
        }
    }

    if (!have_best) {
        throw Error(kModule, "DegenerateRegion",
                    "region " + std::to_string(region.id) + " has coincident centroids");
    }
    return best;
}

ZeroLine select_zero_line(const ComponentSet& set,
                          const std::vector<LineCandidate>& candidates) {
    if (candidates.empty()) {
        throw Error(kModule, "NoCandidates");
    }

    const LineCandidate* best = nullptr;
    double best_cv = 0.0;
    for (const auto& cand : candidates) {
        double mean = 0.0;
        for (int label : cand.on_line) {
            mean += set.find(label)->area;
        }
        mean /= double(cand.on_line.size());
        double var = 0.0;
        for (int label : cand.on_line) {
            double d = set.find(label)->area - mean;
            var += d * d;
        }
        var /= double(cand.on_line.size());
        double cv = std::sqrt(var) / mean;  // areas are >= 1, mean never 0
        if (best == nullptr || cv < best_cv ||
            (cv == best_cv && cand.region_id < best->region_id)) {
            best = &cand;
            best_cv = cv;
        }
    }

    if (best->on_line.size() < 3) {
        throw Error(kModule, "TooFewZeros",
                    std::to_string(best->on_line.size()) + " members on the winning line");
    }
    if (best->on_line.size() > 5) {
        throw Error(kModule, "TooManyZeros",
                    std::to_string(best->on_line.size()) + " members on the winning line");
    }

    ZeroLine line;
    for (int label : best->on_line) {
        line.zeros.push_back(*set.find(label));
    }
    std::sort(line.zeros.begin(), line.zeros.end(), [&](const Component& a, const Component& b) {
        double pa = a.centroid_x * best->dir.x + a.centroid_y * best->dir.y;
        double pb = b.centroid_x * best->dir.x + b.centroid_y * best->dir.y;
        return pa < pb;
    });
    line.count = static_cast<int>(line.zeros.size());
    line.length_px = std::hypot(line.last().centroid_x - line.first().centroid_x,
                                line.last().centroid_y - line.first().centroid_y);
    line.angle_deg = rotation_angle(line);
    return line;
}

double rotation_angle(const ZeroLine& line) {
    double dy = line.last().centroid_y - line.first().centroid_y;
    double dx = line.last().centroid_x - line.first().centroid_x;
    return canonical_angle(std::atan2(dy, dx) * 180.0 / kPi);
}

int count_zeros(const ZeroLine& line) {
    return line.count;
}

}  // namespace rial
