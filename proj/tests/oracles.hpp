#pragma once

// Brute-force references used by the tests. Nothing here calls into the
// detector; neighbor offsets are spelled out independently.

#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "discont/raster.hpp"

namespace discont::oracle {

inline std::vector<std::pair<int, int>> spatial_offsets(Topology t) {
    if (t == Topology::N8)
        return {{-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1}};
    return {{0, -1}, {-1, 0}, {1, 0}, {0, 1}};
}

/// Values of a grid as a plain nested vector [t][y][x].
struct Plain {
    int w, h, f;
    std::vector<int> v;
    int at(int x, int y, int t = 0) const { return v[std::size_t((t * h + y) * w + x)]; }
};

inline Plain plain(const IntensityGrid& g) {
    Plain p{g.width(), g.height(), g.frames(), {}};
    for (int t = 0; t < p.f; ++t)
        for (int y = 0; y < p.h; ++y)
            for (int x = 0; x < p.w; ++x) p.v.push_back(g({x, y, t}));
    return p;
}

inline std::vector<std::tuple<int, int, int>> neighbors_of(const Plain& g, int x, int y, int t, Topology top) {
    std::vector<std::tuple<int, int, int>> out;
    for (auto [dx, dy] : spatial_offsets(top)) {
        const int nx = x + dx, ny = y + dy;
        if (nx >= 0 && nx < g.w && ny >= 0 && ny < g.h) out.emplace_back(nx, ny, t);
    }
    if (top == Topology::N4T) {
        if (t > 0) out.emplace_back(x, y, t - 1);
        if (t + 1 < g.f) out.emplace_back(x, y, t + 1);
    }
    return out;
}

/// p in I_c straight from the definition.
inline bool in_level_set(const Plain& g, int x, int y, int t, long c, Topology top) {
    if (g.at(x, y, t) < c) return false;
    for (auto [nx, ny, nt] : neighbors_of(g, x, y, t, top))
        if (g.at(nx, ny, nt) < c) return true;
    return false;
}

/// Per-pixel count of thresholds in `levels` whose level set contains the pixel.
inline std::vector<int> level_counts(const Plain& g, const std::vector<long>& levels, Topology top) {
    std::vector<int> counts(g.v.size(), 0);
    for (int t = 0; t < g.f; ++t)
        for (int y = 0; y < g.h; ++y)
            for (int x = 0; x < g.w; ++x)
                for (long c : levels)
                    if (in_level_set(g, x, y, t, c, top)) ++counts[std::size_t((t * g.h + y) * g.w + x)];
    return counts;
}

inline std::vector<long> arithmetic_levels(long offset, long increment, long ceiling) {
    std::vector<long> out;
    for (long c = offset; c <= ceiling; c += increment) out.push_back(c);
    return out;
}

inline IntensityGrid random_grid(std::mt19937& rng, int max_w, int max_h, Intensity max_value) {
    std::uniform_int_distribution<int> w(1, max_w), h(1, max_h), v(0, max_value);
    const int width = w(rng), height = h(rng);
    return IntensityGrid::generate(width, height, max_value, [&](int, int) { return v(rng); });
}

/// Pixels connected under N4 or N8, by flood fill from a std::set.
inline int component_count(const std::set<std::pair<int, int>>& pixels, Topology top) {
    std::set<std::pair<int, int>> left = pixels;
    int count = 0;
    while (!left.empty()) {
        ++count;
        std::vector<std::pair<int, int>> stack{*left.begin()};
        left.erase(left.begin());
        while (!stack.empty()) {
            auto [x, y] = stack.back();
            stack.pop_back();
            for (auto [dx, dy] : spatial_offsets(top)) {
                auto it = left.find({x + dx, y + dy});
                if (it != left.end()) {
                    stack.push_back(*it);
                    left.erase(it);
                }
            }
        }
    }
    return count;
}

}  // namespace discont::oracle
