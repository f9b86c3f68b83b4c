#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "discont/errors.hpp"

namespace discont {

using Intensity = std::int32_t;

/// Pixel address. `t` selects the frame of a stacked grid and is 0 for
/// ordinary images.
struct PixelCoord {
    int x = 0;
    int y = 0;
    int t = 0;

    friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

/// Raster order: frame, then row, then column.
inline bool raster_less(const PixelCoord& a, const PixelCoord& b) {
    if (a.t != b.t) return a.t < b.t;
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
}

/// N4: north, west, east, south. N8: the full 3x3 ring. N4T: N4 plus the
/// same pixel in the previous and next frame of a stacked grid.
enum class Topology { N4, N8, N4T };

struct GridShape {
    int width = 0;
    int height = 0;
    int frames = 1;

    bool contains(const PixelCoord& p) const {
        return p.x >= 0 && p.x < width && p.y >= 0 && p.y < height && p.t >= 0 &&
               p.t < frames;
    }
    Eigen::Index pixel_count() const {
        return Eigen::Index(width) * height * frames;
    }
    Eigen::Index index(const PixelCoord& p) const {
        return (Eigen::Index(p.t) * height + p.y) * width + p.x;
    }
    PixelCoord coord(Eigen::Index i) const {
        const auto per_frame = Eigen::Index(width) * height;
        const auto t = int(i / per_frame);
        const auto r = i % per_frame;
        return {int(r % width), int(r / width), t};
    }
    friend bool operator==(const GridShape&, const GridShape&) = default;
};

struct NeighborOffset {
    int dx, dy, dt;
};

/// Neighbor offsets in their fixed enumeration order.
std::span<const NeighborOffset> neighbor_offsets(Topology topology);

/// Calls `f(q)` for every in-grid neighbor q of p, in the documented order.
/// Out-of-grid offsets are dropped. No bounds check on p itself.
template <typename F>
void for_each_neighbor(const GridShape& shape, const PixelCoord& p, Topology topology, F&& f) {
    for (const auto& o : neighbor_offsets(topology)) {
        const PixelCoord q{p.x + o.dx, p.y + o.dy, p.t + o.dt};
        if (shape.contains(q)) f(q);
    }
}

/// True if pred(q) holds for some in-grid neighbor q; stops at the first hit.
template <typename Pred>
bool any_neighbor(const GridShape& shape, const PixelCoord& p, Topology topology, Pred&& pred) {
    for (const auto& o : neighbor_offsets(topology)) {
        const PixelCoord q{p.x + o.dx, p.y + o.dy, p.t + o.dt};
        if (shape.contains(q) && pred(q)) return true;
    }
    return false;
}

/// Dense per-pixel storage. Frames of a stacked grid are stacked vertically in
/// one row-major matrix, so frame t occupies rows [t*height, (t+1)*height).
template <typename Scalar>
class PixelGrid {
public:
    using Storage = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

    PixelGrid() = default;

    PixelGrid(const GridShape& shape, Scalar fill = Scalar{})
        : shape_(shape), data_(Storage::Constant(shape.height * shape.frames, shape.width, fill)) {
        check_shape(shape);
    }

    PixelGrid(const GridShape& shape, Storage data) : shape_(shape), data_(std::move(data)) {
        check_shape(shape);
        if (data_.rows() != Eigen::Index(shape.height) * shape.frames || data_.cols() != shape.width)
            throw InputError("pixel storage does not match grid shape");
    }

    const GridShape& shape() const { return shape_; }
    int width() const { return shape_.width; }
    int height() const { return shape_.height; }
    int frames() const { return shape_.frames; }
    bool contains(const PixelCoord& p) const { return shape_.contains(p); }

    Scalar& operator()(const PixelCoord& p) { return data_(row(p), p.x); }
    const Scalar& operator()(const PixelCoord& p) const { return data_(row(p), p.x); }
    Scalar& operator[](Eigen::Index i) { return data_.data()[i]; }
    const Scalar& operator[](Eigen::Index i) const { return data_.data()[i]; }

    Storage& matrix() { return data_; }
    const Storage& matrix() const { return data_; }

    auto frame(int t) { return data_.middleRows(Eigen::Index(t) * shape_.height, shape_.height); }
    auto frame(int t) const {
        return data_.middleRows(Eigen::Index(t) * shape_.height, shape_.height);
    }

    friend bool operator==(const PixelGrid& a, const PixelGrid& b) {
        return a.shape_ == b.shape_ && a.data_ == b.data_;
    }

private:
    static void check_shape(const GridShape& s) {
        if (s.width < 1 || s.height < 1 || s.frames < 1)
            throw InputError("grid dimensions must be at least 1");
    }
    Eigen::Index row(const PixelCoord& p) const {
        return Eigen::Index(p.t) * shape_.height + p.y;
    }

    GridShape shape_;
    Storage data_;
};

using Mask = PixelGrid<bool>;

/// Image intensities: exact non-negative integers bounded by max_value.
/// Immutable once constructed.
class IntensityGrid {
public:
    using Storage = PixelGrid<Intensity>::Storage;

    IntensityGrid(PixelGrid<Intensity> values, Intensity max_value);
    IntensityGrid(int width, int height, Intensity max_value, std::span<const Intensity> row_major);

    static IntensityGrid constant(int width, int height, Intensity max_value, Intensity value);

    /// Samples f(x, y) at every pixel of a single-frame grid.
    template <typename F>
    static IntensityGrid generate(int width, int height, Intensity max_value, F&& f) {
        PixelGrid<Intensity> values(GridShape{width, height, 1});
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x) values({x, y}) = static_cast<Intensity>(f(x, y));
        return IntensityGrid(std::move(values), max_value);
    }

    const GridShape& shape() const { return values_.shape(); }
    int width() const { return values_.width(); }
    int height() const { return values_.height(); }
    int frames() const { return values_.frames(); }
    Intensity max_value() const { return max_value_; }
    bool contains(const PixelCoord& p) const { return values_.contains(p); }

    Intensity operator()(const PixelCoord& p) const { return values_(p); }
    Intensity operator[](Eigen::Index i) const { return values_[i]; }
    const PixelGrid<Intensity>& values() const { return values_; }
    const Storage& matrix() const { return values_.matrix(); }

    /// Copy of a single frame as its own grid.
    IntensityGrid frame(int t) const;

    friend bool operator==(const IntensityGrid& a, const IntensityGrid& b) {
        return a.max_value_ == b.max_value_ && a.values_ == b.values_;
    }

private:
    PixelGrid<Intensity> values_;
    Intensity max_value_;
};

/// In-grid neighbors of p in the topology's fixed order (N, W, E, S for N4;
/// raster order over the 3x3 ring for N8; N4 then previous, next frame for
/// N4T). Throws InputError when p lies outside the grid.
std::vector<PixelCoord> neighbors(const PixelCoord& p, const GridShape& shape, Topology topology);

inline std::vector<PixelCoord> neighbors(const PixelCoord& p, const IntensityGrid& grid,
                                         Topology topology) {
    return neighbors(p, grid.shape(), topology);
}

/// Stacks single-frame grids of identical size and range along time so the
/// N4T topology can connect each pixel to its temporal neighbors.
IntensityGrid frame_stack(std::span<const IntensityGrid> frames);

}  // namespace discont
