#pragma once

#include <cstdint>
#include <vector>

#include "discont/detector.hpp"
#include "discont/raster.hpp"

namespace discont {

/// Integer vector per pixel. Derivatives are taken as doubled central
/// differences, I(x+1) - I(x-1), so no division is ever needed; border
/// pixels use the doubled one-sided difference. Frames are handled
/// independently (spatial derivatives only).
struct VectorFieldGrid {
    PixelGrid<std::int32_t> x;
    PixelGrid<std::int32_t> y;

    const GridShape& shape() const { return x.shape(); }
};

VectorFieldGrid discrete_gradient(const IntensityGrid& grid);

/// (-dI/dy, dI/dx) on the same difference scheme as discrete_gradient, so
/// the two fields are exactly orthogonal at every pixel.
VectorFieldGrid hamiltonian(const IntensityGrid& grid);

/// Pixels where |h_x| + |h_y| <= tolerance.
Mask zero_mask(const VectorFieldGrid& field, std::int32_t tolerance);

/// Drops flags on pixels of `zeros`. Removed pixels get a zero level count
/// and no witness; nothing is ever added.
DetectionMask filter_zeros(const DetectionMask& mask, const Mask& zeros);

/// Ordered pixel chain. Consecutive pixels are adjacent under the topology it
/// was traced with; when closed, the last pixel is adjacent to the first.
struct Contour {
    std::vector<PixelCoord> pixels;
    bool closed = false;
};

/// Splits the level-curve set I_c of a single-frame grid into pixel chains.
/// Components are visited in raster order of their first pixel. Inside a
/// component, chains start from the first unvisited pixel in raster order and
/// follow unvisited neighbors clockwise (Moore order). A thin loop yields one
/// closed chain; branching or thick components yield several open chains.
/// Chains touching the image border are never closed.
std::vector<Contour> trace_level_contours(const IntensityGrid& grid, Intensity c,
                                          Topology topology);

enum class DifferenceOperator { Identity, Dx, Dy };

/// Forward difference along x or y (backward on the last column/row),
/// shifted by +max_value into [0, 2 * max_value]. The result records the
/// doubled max_value.
IntensityGrid apply_operator(const IntensityGrid& grid, DifferenceOperator op);

}  // namespace discont
