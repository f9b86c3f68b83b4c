#include "discont/raster.hpp"

#include <string>

namespace discont {

namespace {

constexpr std::array<NeighborOffset, 4> kN4{{{0, -1, 0}, {-1, 0, 0}, {1, 0, 0}, {0, 1, 0}}};

constexpr std::array<NeighborOffset, 8> kN8{{{-1, -1, 0},
                                             {0, -1, 0},
                                             {1, -1, 0},
                                             {-1, 0, 0},
                                             {1, 0, 0},
                                             {-1, 1, 0},
                                             {0, 1, 0},
                                             {1, 1, 0}}};

constexpr std::array<NeighborOffset, 6> kN4T{
    {{0, -1, 0}, {-1, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, -1}, {0, 0, 1}}};

}  // namespace

std::span<const NeighborOffset> neighbor_offsets(Topology topology) {
    switch (topology) {
        case Topology::N4: return kN4;
        case Topology::N8: return kN8;
        case Topology::N4T: return kN4T;
    }
    return {};
}

IntensityGrid::IntensityGrid(PixelGrid<Intensity> values, Intensity max_value)
    : values_(std::move(values)), max_value_(max_value) {
    if (max_value_ < 0) throw InputError("max_value must be non-negative");
    const auto& m = values_.matrix();
    if (m.size() == 0) throw InputError("grid has no pixels");
    if (m.minCoeff() < 0 || m.maxCoeff() > max_value_)
        throw InputError("intensity outside [0, " + std::to_string(max_value_) + "]");
}

IntensityGrid::IntensityGrid(int width, int height, Intensity max_value,
                             std::span<const Intensity> row_major)
    : IntensityGrid(
          [&] {
              if (width < 1 || height < 1) throw InputError("grid dimensions must be at least 1");
              if (row_major.size() != std::size_t(width) * std::size_t(height))
                  throw InputError("value count does not match width * height");
              Storage s = Eigen::Map<const Storage>(row_major.data(), height, width);
              return PixelGrid<Intensity>(GridShape{width, height, 1}, std::move(s));
          }(),
          max_value) {}

IntensityGrid IntensityGrid::constant(int width, int height, Intensity max_value, Intensity value) {
    return IntensityGrid(PixelGrid<Intensity>(GridShape{width, height, 1}, value), max_value);
}

IntensityGrid IntensityGrid::frame(int t) const {
    if (t < 0 || t >= frames()) throw InputError("frame index out of range");
    Storage s = values_.frame(t);
    return IntensityGrid(PixelGrid<Intensity>(GridShape{width(), height(), 1}, std::move(s)),
                         max_value_);
}

std::vector<PixelCoord> neighbors(const PixelCoord& p, const GridShape& shape, Topology topology) {
    if (!shape.contains(p)) throw InputError("pixel outside grid");
    std::vector<PixelCoord> out;
    out.reserve(8);
    for_each_neighbor(shape, p, topology, [&](const PixelCoord& q) { out.push_back(q); });
    return out;
}

IntensityGrid frame_stack(std::span<const IntensityGrid> frames) {
    if (frames.size() < 2) throw InputError("frame stack needs at least two frames");
    const auto& first = frames.front();
    for (const auto& f : frames) {
        if (f.frames() != 1) throw InputError("frame stack inputs must be single frames");
        if (f.width() != first.width() || f.height() != first.height() ||
            f.max_value() != first.max_value())
            throw InputError("frame stack inputs differ in size or range");
    }
    const GridShape shape{first.width(), first.height(), int(frames.size())};
    PixelGrid<Intensity> stacked(shape);
    for (int t = 0; t < shape.frames; ++t) stacked.frame(t) = frames[std::size_t(t)].matrix();
    return IntensityGrid(std::move(stacked), first.max_value());
}

}  // namespace discont
