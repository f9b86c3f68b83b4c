#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "discont/raster.hpp"

namespace discont {

/// Arithmetic threshold sequence {offset + k * increment : k >= 0}, cut at
/// min(upper, max_value + 1) for a grid with the given max_value. Levels above
/// max_value + 1 can never contain a pixel, so the cut loses nothing.
class ThresholdSchedule {
public:
    /// Starts at c = increment.
    explicit ThresholdSchedule(Intensity increment);
    ThresholdSchedule(Intensity offset, Intensity increment,
                      std::optional<Intensity> upper = std::nullopt);

    Intensity offset() const { return offset_; }
    Intensity increment() const { return increment_; }
    std::optional<Intensity> upper() const { return upper_; }

    /// Largest admissible threshold for a grid with this max_value.
    std::int64_t ceiling(Intensity max_value) const;
    std::vector<Intensity> levels(Intensity max_value) const;
    bool contains(std::int64_t c, Intensity max_value) const;

    /// Number of levels c with lo < c <= hi.
    std::int64_t count_between(std::int64_t lo, std::int64_t hi, Intensity max_value) const;
    /// Largest level c <= hi, if any.
    std::optional<std::int64_t> largest_at_most(std::int64_t hi, Intensity max_value) const;

private:
    Intensity offset_;
    Intensity increment_;
    std::optional<Intensity> upper_;
};

/// Outer boundary of the sublevel set {I < c}: pixels with I(p) >= c that have
/// a neighbor q with I(q) < c. Members are stored in raster order.
struct LevelCurveSet {
    Intensity c = 0;
    std::vector<PixelCoord> members;
};

/// The two largest thresholds whose level-curve sets contain a pixel.
struct Witness {
    Intensity upper_level = 0;
    Intensity lower_level = 0;
    friend bool operator==(const Witness&, const Witness&) = default;
};

/// Result of a detector run. A pixel is flagged exactly when at least two
/// schedule levels contain it; flagged pixels carry a witness pair.
struct DetectionMask {
    PixelGrid<std::int32_t> level_count;
    Mask flagged;
    std::vector<std::optional<Witness>> witnesses;

    explicit DetectionMask(const GridShape& shape);

    const GridShape& shape() const { return flagged.shape(); }
    Eigen::Index flagged_count() const { return flagged.matrix().count(); }

    friend bool operator==(const DetectionMask& a, const DetectionMask& b) {
        return a.level_count == b.level_count && a.flagged == b.flagged &&
               a.witnesses == b.witnesses;
    }
};

/// Flags and counts agree; witnesses are not compared (they carry threshold
/// values, which change under intensity scaling or translation).
bool same_detection(const DetectionMask& a, const DetectionMask& b);

/// Half-open integer interval (lower, upper].
struct MembershipInterval {
    Intensity lower = 0;
    Intensity upper = 0;

    bool contains(std::int64_t c) const { return c > lower && c <= upper; }
    friend bool operator==(const MembershipInterval&, const MembershipInterval&) = default;
};

struct DetectOptions {
    /// Worker threads; results are identical for every value.
    unsigned threads = 1;
};

/// {p : I(p) < c}.
Mask sublevel(const IntensityGrid& grid, std::int64_t c);

Mask level_curve_mask(const IntensityGrid& grid, std::int64_t c, Topology topology);
LevelCurveSet level_curve_set(const IntensityGrid& grid, Intensity c, Topology topology);

/// Counts, for every pixel, the schedule levels whose level-curve set contains
/// it, by building each level-curve set in turn. Integer arithmetic only.
DetectionMask detect_multilevel(const IntensityGrid& grid, const ThresholdSchedule& schedule,
                                Topology topology, const DetectOptions& options = {});

/// The thresholds c with p in I_c form the interval (min neighbor, I(p)].
/// Empty when no neighbor is strictly darker than p.
std::optional<MembershipInterval> membership_interval(const IntensityGrid& grid,
                                                      const PixelCoord& p, Topology topology);

enum class CountMethod {
    ClosedForm,  ///< divide the interval by the increment
    Enumerate,   ///< walk the schedule and test each level against the interval
};

/// Pointwise detector: flags p when two schedule levels fall inside its
/// membership interval. Always equal to detect_multilevel.
DetectionMask detect_pointwise(const IntensityGrid& grid, const ThresholdSchedule& schedule,
                               Topology topology, CountMethod method = CountMethod::ClosedForm,
                               const DetectOptions& options = {});

/// Neighbor-difference test I(p) - I(q) > |c - c2| for some neighbor q.
/// Necessary for p to lie in two level-curve sets, but not sufficient.
/// Throws InputError when c == c2 or p is outside the grid.
bool check_necessary_condition(const IntensityGrid& grid, const PixelCoord& p, Intensity c,
                               Intensity c2, Topology topology);

}  // namespace discont
