#include "rial/components.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rial {

namespace {

int find_root(std::vector<int>& parent, int a) {
    while (parent[a] != a) {
        parent[a] = parent[parent[a]];
        a = parent[a];
    }
    return a;
}

void unite(std::vector<int>& parent, int a, int b) {
    a = find_root(parent, a);
    b = find_root(parent, b);
    if (a != b) {
        parent[std::max(a, b)] = std::min(a, b);
    }
}

}  // namespace

const Component* ComponentSet::find(int label) const {
    for (const auto& c : components) {
        if (c.label == label) {
            return &c;
        }
    }
    return nullptr;
}

ComponentSet label_components(const BinaryImage& img, int connectivity) {
    if (connectivity != 4 && connectivity != 8) {
        throw std::invalid_argument("connectivity must be 4 or 8");
    }

    ComponentSet set;
    set.width = img.width;
    set.height = img.height;
    set.labels.assign(img.pixels.size(), 0);

    // First pass: provisional labels with union-find over the
    // already-visited neighbours (W, N and for 8-connectivity NW, NE).
    std::vector<int> provisional(img.pixels.size(), 0);
    std::vector<int> parent(1, 0);
    int next = 1;
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            if (img.at(x, y) == 0) {
                continue;
            }
            int neighbours[4];
            int n = 0;
            auto consider = [&](int nx, int ny) {
                if (nx >= 0 && nx < img.width && ny >= 0) {
                    int p = provisional[static_cast<std::size_t>(ny) * img.width + nx];
                    if (p != 0) {
                        neighbours[n++] = p;
                    }
                }
            };
            consider(x - 1, y);
            consider(x, y - 1);
            if (connectivity == 8) {
                consider(x - 1, y - 1);
                consider(x + 1, y - 1);
            }
            int label;
            if (n == 0) {
                label = next++;
                parent.push_back(label);
            } else {
                label = *std::min_element(neighbours, neighbours + n);
                for (int i = 0; i < n; ++i) {
                    unite(parent, label, neighbours[i]);
                }
            }
            provisional[static_cast<std::size_t>(y) * img.width + x] = label;
        }
    }

    // Second pass: final labels in row-major first-encounter order of each
    // root, with stats accumulated in the same sweep.
    std::vector<int> final_of_root(parent.size(), 0);
    int count = 0;
    std::vector<double> sum_x, sum_y;
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            std::size_t i = static_cast<std::size_t>(y) * img.width + x;
            if (provisional[i] == 0) {
                continue;
            }
            int root = find_root(parent, provisional[i]);
            int label = final_of_root[root];
            if (label == 0) {
                label = ++count;
                final_of_root[root] = label;
                Component c;
                c.label = label;
                c.min_x = c.max_x = x;
                c.min_y = c.max_y = y;
                set.components.push_back(c);
                sum_x.push_back(0.0);
                sum_y.push_back(0.0);
            }
            set.labels[i] = label;
            Component& c = set.components[label - 1];
            c.area += 1;
            c.min_x = std::min(c.min_x, x);
            c.max_x = std::max(c.max_x, x);
            c.min_y = std::min(c.min_y, y);
            c.max_y = std::max(c.max_y, y);
            sum_x[label - 1] += x;
            sum_y[label - 1] += y;
        }
    }
    for (auto& c : set.components) {
        c.centroid_x = sum_x[c.label - 1] / c.area;
        c.centroid_y = sum_y[c.label - 1] / c.area;
    }
    return set;
}

ComponentSet filter_by_shape(const ComponentSet& set) {
    std::vector<char> keep_label;
    ComponentSet out;
    out.width = set.width;
    out.height = set.height;
    out.labels.assign(set.labels.size(), 0);

    int max_label = 0;
    for (const auto& c : set.components) {
        max_label = std::max(max_label, c.label);
    }
    keep_label.assign(static_cast<std::size_t>(max_label) + 1, 0);

    for (const auto& c : set.components) {
        long long longer = std::max(c.bbox_width(), c.bbox_height());
        long long shorter = std::min(c.bbox_width(), c.bbox_height());
        if (longer > 2 * shorter) {
            continue;  // too elongated to be a zero
        }
        if (c.bbox_area() > 2LL * c.area) {
            continue;  // too hollow to be a zero
        }
        out.components.push_back(c);
        keep_label[c.label] = 1;
    }
    for (std::size_t i = 0; i < set.labels.size(); ++i) {
        int l = set.labels[i];
        if (l != 0 && keep_label[l]) {
            out.labels[i] = l;
        }
    }
    return out;
}

BinaryImage to_binary(const ComponentSet& set) {
    BinaryImage out(set.width, set.height);
    for (std::size_t i = 0; i < set.labels.size(); ++i) {
        out.pixels[i] = set.labels[i] != 0 ? 1 : 0;
    }
    return out;
}

ColorImage colorize_labels(const ComponentSet& set) {
    ColorImage out(set.width, set.height);
    for (std::size_t i = 0; i < set.labels.size(); ++i) {
        int l = set.labels[i];
        if (l == 0) {
            continue;
        }
        // Scrambled but deterministic palette; neighbouring labels differ.
        std::uint32_t h = static_cast<std::uint32_t>(l) * 2654435761u;
        out.pixels[i * 3 + 0] = static_cast<std::uint8_t>(64 + (h & 0xBF));
        out.pixels[i * 3 + 1] = static_cast<std::uint8_t>(64 + ((h >> 8) & 0xBF));
        out.pixels[i * 3 + 2] = static_cast<std::uint8_t>(64 + ((h >> 16) & 0xBF));
    }
    return out;
}

}  // namespace rial
