#include "discont/field.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <deque>

namespace discont {

namespace {

// Doubled derivative along one axis of a row/column of length n at index i.
template <typename At>
std::int32_t doubled_difference(int i, int n, At&& at) {
    if (n == 1) return 0;
    if (i == 0) return 2 * (at(1) - at(0));
    if (i == n - 1) return 2 * (at(n - 1) - at(n - 2));
    return at(i + 1) - at(i - 1);
}

// Moore ring, clockwise on screen (y grows downwards), starting east.
constexpr std::array<NeighborOffset, 8> kRing8{{{1, 0, 0},
                                                {1, 1, 0},
                                                {0, 1, 0},
                                                {-1, 1, 0},
                                                {-1, 0, 0},
                                                {-1, -1, 0},
                                                {0, -1, 0},
                                                {1, -1, 0}}};
constexpr std::array<NeighborOffset, 4> kRing4{{{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}}};

bool adjacent(const PixelCoord& a, const PixelCoord& b, Topology topology) {
    const int dx = std::abs(a.x - b.x);
    const int dy = std::abs(a.y - b.y);
    if (topology == Topology::N8) return std::max(dx, dy) == 1;
    return dx + dy == 1;
}

bool on_border(const PixelCoord& p, const GridShape& shape) {
    return p.x == 0 || p.y == 0 || p.x == shape.width - 1 || p.y == shape.height - 1;
}

}  // namespace

VectorFieldGrid discrete_gradient(const IntensityGrid& grid) {
    const auto& shape = grid.shape();
    VectorFieldGrid g{PixelGrid<std::int32_t>(shape, 0), PixelGrid<std::int32_t>(shape, 0)};
    for (int t = 0; t < shape.frames; ++t)
        for (int y = 0; y < shape.height; ++y)
            for (int x = 0; x < shape.width; ++x) {
                g.x({x, y, t}) = doubled_difference(x, shape.width,
                                                    [&](int i) { return grid({i, y, t}); });
                g.y({x, y, t}) = doubled_difference(y, shape.height,
                                                    [&](int j) { return grid({x, j, t}); });
            }
    return g;
}

VectorFieldGrid hamiltonian(const IntensityGrid& grid) {
    auto g = discrete_gradient(grid);
    VectorFieldGrid h{std::move(g.y), std::move(g.x)};
    h.x.matrix() = -h.x.matrix();
    return h;
}

Mask zero_mask(const VectorFieldGrid& field, std::int32_t tolerance) {
    if (tolerance < 0) throw InputError("zero tolerance must be non-negative");
    Mask::Storage zeros =
        ((field.x.matrix().array().abs() + field.y.matrix().array().abs()) <= tolerance).matrix();
    return Mask(field.shape(), std::move(zeros));
}

DetectionMask filter_zeros(const DetectionMask& mask, const Mask& zeros) {
    if (!(zeros.shape() == mask.shape())) throw InputError("zero mask shape differs from detection");
    DetectionMask out = mask;
    for (Eigen::Index i = 0; i < mask.shape().pixel_count(); ++i) {
        if (!zeros[i] || !mask.flagged[i]) continue;
        out.flagged[i] = false;
        out.level_count[i] = 0;
        out.witnesses[std::size_t(i)].reset();
    }
    return out;
}

std::vector<Contour> trace_level_contours(const IntensityGrid& grid, Intensity c,
                                          Topology topology) {
    if (grid.frames() != 1) throw InputError("contour tracing needs a single-frame grid");
    if (topology == Topology::N4T) topology = Topology::N4;
    const auto& shape = grid.shape();
    const Mask curve = level_curve_mask(grid, c, topology);
    const std::span<const NeighborOffset> ring =
        topology == Topology::N8 ? std::span<const NeighborOffset>(kRing8) : kRing4;
    const int west = topology == Topology::N8 ? 4 : 2;

    // Connected components of the level-curve set, labelled in raster order.
    PixelGrid<int> label(shape, -1);
    std::vector<std::vector<PixelCoord>> components;
    for (Eigen::Index i = 0; i < shape.pixel_count(); ++i) {
        if (!curve[i] || label[i] >= 0) continue;
        const int id = int(components.size());
        auto& members = components.emplace_back();
        std::deque<PixelCoord> queue{shape.coord(i)};
        label[i] = id;
        while (!queue.empty()) {
            const auto p = queue.front();
            queue.pop_front();
            members.push_back(p);
            for_each_neighbor(shape, p, topology, [&](const PixelCoord& q) {
                if (curve(q) && label(q) < 0) {
                    label(q) = id;
                    queue.push_back(q);
                }
            });
        }
        std::sort(members.begin(), members.end(), raster_less);
    }

    Mask visited(shape, false);
    std::vector<Contour> contours;
    for (const auto& members : components) {
        std::size_t remaining = members.size();
        auto next_start = members.begin();
        while (remaining > 0) {
            while (visited(*next_start)) ++next_start;
            Contour contour;
            PixelCoord here = *next_start;
            // The pixel west of a raster-first start is never unvisited in
            // this component, so the scan starts just clockwise of west.
            int backtrack = west;
            for (;;) {
                visited(here) = true;
                --remaining;
                contour.pixels.push_back(here);
                bool moved = false;
                for (std::size_t k = 1; k <= ring.size(); ++k) {
                    const auto d = (std::size_t(backtrack) + k) % ring.size();
                    const PixelCoord q{here.x + ring[d].dx, here.y + ring[d].dy, 0};
                    if (!shape.contains(q) || !curve(q) || visited(q)) continue;
                    here = q;
                    backtrack = int((d + ring.size() / 2) % ring.size());
                    moved = true;
                    break;
                }
                if (!moved) break;
            }
            const auto& px = contour.pixels;
            contour.closed = px.size() == members.size() && px.size() >= 3 &&
                             adjacent(px.back(), px.front(), topology) &&
                             std::none_of(px.begin(), px.end(), [&](const PixelCoord& p) {
                                 return on_border(p, shape);
                             });
            contours.push_back(std::move(contour));
        }
    }
    return contours;
}

IntensityGrid apply_operator(const IntensityGrid& grid, DifferenceOperator op) {
    if (op == DifferenceOperator::Identity) return grid;
    const auto& shape = grid.shape();
    const Intensity bias = grid.max_value();
    PixelGrid<Intensity> out(shape, 0);
    for (int t = 0; t < shape.frames; ++t)
        for (int y = 0; y < shape.height; ++y)
            for (int x = 0; x < shape.width; ++x) {
                Intensity diff = 0;
                if (op == DifferenceOperator::Dx && shape.width > 1) {
                    const int x0 = x + 1 < shape.width ? x : x - 1;
                    diff = grid({x0 + 1, y, t}) - grid({x0, y, t});
                } else if (op == DifferenceOperator::Dy && shape.height > 1) {
                    const int y0 = y + 1 < shape.height ? y : y - 1;
                    diff = grid({x, y0 + 1, t}) - grid({x, y0, t});
                }
                out({x, y, t}) = diff + bias;
            }
    return IntensityGrid(std::move(out), 2 * bias);
}

}  // namespace discont
