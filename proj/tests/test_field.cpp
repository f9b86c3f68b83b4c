#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "discont/field.hpp"
#include "oracles.hpp"

namespace discont {
namespace {

bool interior(const GridShape& s, int x, int y) {
    return x > 0 && y > 0 && x < s.width - 1 && y < s.height - 1;
}

IntensityGrid block_scene(int w, int h, std::vector<std::array<int, 4>> blocks) {
    return IntensityGrid::generate(w, h, 255, [&](int x, int y) {
        for (auto [x0, y0, x1, y1] : blocks)
            if (x >= x0 && x < x1 && y >= y0 && y < y1) return 200;
        return 20;
    });
}

void expect_valid_chains(const std::vector<Contour>& contours, const IntensityGrid& g, Intensity c,
                         Topology top) {
    std::set<std::pair<int, int>> seen;
    for (const auto& contour : contours) {
        ASSERT_FALSE(contour.pixels.empty());
        for (std::size_t i = 0; i < contour.pixels.size(); ++i) {
            const auto& p = contour.pixels[i];
            EXPECT_TRUE(seen.insert({p.x, p.y}).second) << "pixel repeated";
            if (i + 1 < contour.pixels.size()) {
                const auto& q = contour.pixels[i + 1];
                const int dx = std::abs(p.x - q.x), dy = std::abs(p.y - q.y);
                EXPECT_TRUE(top == Topology::N8 ? std::max(dx, dy) == 1 : dx + dy == 1);
            }
        }
        if (contour.closed) {
            const auto& a = contour.pixels.front();
            const auto& b = contour.pixels.back();
            const int dx = std::abs(a.x - b.x), dy = std::abs(a.y - b.y);
            EXPECT_TRUE(top == Topology::N8 ? std::max(dx, dy) == 1 : dx + dy == 1);
        }
    }
    std::set<std::pair<int, int>> expected;
    for (const auto& p : level_curve_set(g, c, top).members) expected.insert({p.x, p.y});
    EXPECT_EQ(seen, expected);
}

TEST(Hamiltonian, ConstantGridIsZero) {
    const auto h = hamiltonian(IntensityGrid::constant(5, 4, 255, 100));
    EXPECT_EQ(h.x.matrix().cwiseAbs().sum() + h.y.matrix().cwiseAbs().sum(), 0);
}

TEST(Hamiltonian, RampAlongX) {
    const auto g = IntensityGrid::generate(6, 5, 255, [](int x, int) { return x; });
    const auto h = hamiltonian(g);
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 6; ++x) {
            EXPECT_EQ(h.x({x, y}), 0);
            EXPECT_EQ(h.y({x, y}), 2);
        }
}

TEST(Hamiltonian, DiagonalRampAndItsExponential) {
    const auto f = IntensityGrid::generate(8, 8, 255, [](int x, int y) { return x + y; });
    const auto g = IntensityGrid::generate(8, 8, 255, [](int x, int y) { return std::lround(std::exp((x + y) / 3.0)); });
    const auto hf = hamiltonian(f), hg = hamiltonian(g);
    for (int y = 1; y < 7; ++y)
        for (int x = 1; x < 7; ++x) {
            EXPECT_EQ(hf.x({x, y}), -2);
            EXPECT_EQ(hf.y({x, y}), 2);
            // Same distribution: the two fields are collinear.
            EXPECT_EQ(hf.x({x, y}) * hg.y({x, y}) - hf.y({x, y}) * hg.x({x, y}), 0);
        }
}

TEST(Hamiltonian, AffineGridsGiveExactRotatedGradient) {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> coef(-6, 6);
    for (int trial = 0; trial < 50; ++trial) {
        const int a = coef(rng), b = coef(rng);
        const auto g = IntensityGrid::generate(9, 7, 1000, [&](int x, int y) { return 500 + a * x + b * y; });
        const auto h = hamiltonian(g);
        for (int y = 1; y < 6; ++y)
            for (int x = 1; x < 8; ++x) {
                EXPECT_EQ(h.x({x, y}), -2 * b);
                EXPECT_EQ(h.y({x, y}), 2 * a);
            }
    }
}

TEST(Hamiltonian, OrthogonalToGradient) {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = oracle::random_grid(rng, 20, 20, 255);
        const auto h = hamiltonian(g);
        const auto d = discrete_gradient(g);
        const auto dot = (h.x.matrix().array() * d.x.matrix().array() + h.y.matrix().array() * d.y.matrix().array());
        EXPECT_EQ(dot.abs().maxCoeff(), 0);
    }
}

TEST(ZeroMask, ConstantGridIsAllZero) {
    const auto g = IntensityGrid::constant(4, 4, 255, 3);
    EXPECT_EQ(zero_mask(hamiltonian(g), 0).matrix().count(), 16);
    EXPECT_THROW(zero_mask(hamiltonian(g), -1), InputError);
}

TEST(ZeroMask, RampHasNoInteriorZeros) {
    const auto g = IntensityGrid::generate(7, 7, 255, [](int x, int) { return 10 * x; });
    const auto z = zero_mask(hamiltonian(g), 0);
    for (int y = 0; y < 7; ++y)
        for (int x = 0; x < 7; ++x)
            if (interior(g.shape(), x, y)) EXPECT_FALSE(z({x, y}));
}

TEST(ZeroMask, BlobExtremumIsAZero) {
    const auto g = IntensityGrid::generate(9, 9, 255, [](int x, int y) {
        const int dx = x - 4, dy = y - 4;
        return 100 - (dx * dx + dy * dy);
    });
    const auto h = hamiltonian(g);
    const auto z = zero_mask(h, 0);
    EXPECT_TRUE(z({4, 4}));
    // Nowhere else in the interior: differences are 2*dx, 2*dy scaled.
    EXPECT_EQ(z.matrix().block(1, 1, 7, 7).count(), 1);
}

TEST(FilterZeros, OnlyRemovesFlags) {
    std::mt19937 rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = oracle::random_grid(rng, 16, 16, 60);
        const auto mask = detect_pointwise(g, ThresholdSchedule(2), Topology::N4);
        for (int tol : {0, 4, 40}) {
            const auto zeros = zero_mask(hamiltonian(g), tol);
            const auto filtered = filter_zeros(mask, zeros);
            for (Eigen::Index i = 0; i < g.shape().pixel_count(); ++i) {
                EXPECT_EQ(filtered.flagged[i], mask.flagged[i] && !zeros[i]);
                EXPECT_EQ(filtered.flagged[i], filtered.level_count[i] >= 2);
            }
        }
    }
}

TEST(TraceLevelContours, SingleBlockIsOneClosedRing) {
    const auto g = block_scene(10, 9, {{3, 2, 7, 6}});
    for (auto top : {Topology::N4, Topology::N8}) {
        const auto contours = trace_level_contours(g, 100, top);
        ASSERT_EQ(contours.size(), 1u);
        EXPECT_TRUE(contours[0].closed);
        EXPECT_EQ(contours[0].pixels.size(), 12u);  // perimeter of a 4x4 block
        EXPECT_EQ(contours[0].pixels[0], (PixelCoord{3, 2}));
        EXPECT_EQ(contours[0].pixels[1], (PixelCoord{4, 2}));  // clockwise: east first
        expect_valid_chains(contours, g, 100, top);
    }
}

TEST(TraceLevelContours, ConstantGridIsEmpty) {
    EXPECT_TRUE(trace_level_contours(IntensityGrid::constant(6, 6, 255, 9), 5, Topology::N4).empty());
}

TEST(TraceLevelContours, TwoBlocksTwoContours) {
    const auto g = block_scene(16, 10, {{1, 1, 5, 5}, {8, 3, 14, 8}});
    for (auto top : {Topology::N4, Topology::N8}) {
        const auto contours = trace_level_contours(g, 150, top);
        std::set<std::pair<int, int>> pixels;
        for (const auto& p : level_curve_set(g, 150, top).members) pixels.insert({p.x, p.y});
        EXPECT_EQ(int(contours.size()), oracle::component_count(pixels, top));
        EXPECT_EQ(contours.size(), 2u);
        for (const auto& c : contours) EXPECT_TRUE(c.closed);
        expect_valid_chains(contours, g, 150, top);
    }
}

TEST(TraceLevelContours, BorderTouchingChainsStayOpen) {
    const auto g = block_scene(8, 8, {{0, 2, 4, 6}});
    const auto contours = trace_level_contours(g, 100, Topology::N4);
    ASSERT_FALSE(contours.empty());
    for (const auto& c : contours) EXPECT_FALSE(c.closed);
    expect_valid_chains(contours, g, 100, Topology::N4);
}

TEST(TraceLevelContours, PartitionOnRandomGrids) {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const auto g = oracle::random_grid(rng, 14, 14, 15);
        for (auto top : {Topology::N4, Topology::N8})
            for (int c : {3, 8, 12}) expect_valid_chains(trace_level_contours(g, c, top), g, c, top);
    }
    const std::vector<IntensityGrid> frames{IntensityGrid::constant(2, 2, 9, 0), IntensityGrid::constant(2, 2, 9, 0)};
    EXPECT_THROW(trace_level_contours(frame_stack(frames), 1, Topology::N4), InputError);
}

TEST(ApplyOperator, Identity) {
    std::mt19937 rng(2);
    const auto g = oracle::random_grid(rng, 9, 9, 255);
    EXPECT_EQ(apply_operator(g, DifferenceOperator::Identity), g);
}

TEST(ApplyOperator, DxOnConstantIsTheBias) {
    const auto out = apply_operator(IntensityGrid::constant(5, 3, 255, 40), DifferenceOperator::Dx);
    EXPECT_EQ(out.max_value(), 510);
    EXPECT_EQ(out, IntensityGrid::constant(5, 3, 510, 255));
}

TEST(ApplyOperator, DxAndDyOnRamps) {
    const auto ramp = IntensityGrid::generate(6, 4, 255, [](int x, int) { return x; });
    EXPECT_EQ(apply_operator(ramp, DifferenceOperator::Dx), IntensityGrid::constant(6, 4, 510, 256));
    EXPECT_EQ(apply_operator(ramp, DifferenceOperator::Dy), IntensityGrid::constant(6, 4, 510, 255));
    const auto down = IntensityGrid::generate(3, 5, 100, [](int, int y) { return 100 - 7 * y; });
    EXPECT_EQ(apply_operator(down, DifferenceOperator::Dy), IntensityGrid::constant(3, 5, 200, 93));
}

TEST(ApplyOperator, PreservesDetectorStructureOnSteps) {
    // A step in x becomes an impulse in dx, which the detector still sees.
    const auto step = IntensityGrid::generate(10, 4, 255, [](int x, int) { return x < 5 ? 0 : 120; });
    const auto dx = apply_operator(step, DifferenceOperator::Dx);
    const auto m = detect_pointwise(dx, ThresholdSchedule(8), Topology::N4);
    for (int y = 0; y < 4; ++y) {
        EXPECT_TRUE(m.flagged({4, y}));
        EXPECT_EQ(m.flagged_count() % 4, 0);
    }
}

}  // namespace
}  // namespace discont
