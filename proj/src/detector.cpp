#include "discont/detector.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "parallel.hpp"

namespace discont {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    const auto q = a / b;
    return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

// Keeps the two largest levels seen, largest first.
struct TopTwo {
    std::int64_t first = std::numeric_limits<std::int64_t>::min();
    std::int64_t second = std::numeric_limits<std::int64_t>::min();
    int seen = 0;

    void push(std::int64_t c) {
        if (seen == 0 || c > first) {
            second = first;
            first = c;
        } else if (seen == 1 || c > second) {
            second = c;
        }
        ++seen;
    }
};

void assign(DetectionMask& mask, Eigen::Index i, std::int32_t count, const TopTwo& top) {
    mask.level_count[i] = count;
    const bool flagged = count >= 2;
    mask.flagged[i] = flagged;
    if (flagged)
        mask.witnesses[std::size_t(i)] = Witness{Intensity(top.first), Intensity(top.second)};
    else
        mask.witnesses[std::size_t(i)].reset();
}

std::optional<Intensity> min_neighbor(const IntensityGrid& grid, const PixelCoord& p,
                                      Topology topology) {
    std::optional<Intensity> m;
    for_each_neighbor(grid.shape(), p, topology, [&](const PixelCoord& q) {
        const auto v = grid(q);
        if (!m || v < *m) m = v;
    });
    return m;
}

}  // namespace

ThresholdSchedule::ThresholdSchedule(Intensity increment)
    : ThresholdSchedule(increment, increment) {}

ThresholdSchedule::ThresholdSchedule(Intensity offset, Intensity increment,
                                     std::optional<Intensity> upper)
    : offset_(offset), increment_(increment), upper_(upper) {
    if (increment_ < 1) throw InputError("threshold increment must be at least 1");
}

std::int64_t ThresholdSchedule::ceiling(Intensity max_value) const {
    std::int64_t top = std::int64_t(max_value) + 1;
    if (upper_) top = std::min<std::int64_t>(top, *upper_);
    return top;
}

std::vector<Intensity> ThresholdSchedule::levels(Intensity max_value) const {
    std::vector<Intensity> out;
    const auto top = ceiling(max_value);
    for (std::int64_t c = offset_; c <= top; c += increment_) out.push_back(Intensity(c));
    return out;
}

bool ThresholdSchedule::contains(std::int64_t c, Intensity max_value) const {
    return c >= offset_ && c <= ceiling(max_value) && (c - offset_) % increment_ == 0;
}

std::int64_t ThresholdSchedule::count_between(std::int64_t lo, std::int64_t hi,
                                              Intensity max_value) const {
    hi = std::min(hi, ceiling(max_value));
    if (hi <= lo) return 0;
    const auto k_max = floor_div(hi - offset_, increment_);
    if (k_max < 0) return 0;
    const auto k_min = std::max<std::int64_t>(0, floor_div(lo - offset_, increment_) + 1);
    return std::max<std::int64_t>(0, k_max - k_min + 1);
}

std::optional<std::int64_t> ThresholdSchedule::largest_at_most(std::int64_t hi,
                                                               Intensity max_value) const {
    hi = std::min(hi, ceiling(max_value));
    const auto k = floor_div(hi - offset_, increment_);
    if (k < 0) return std::nullopt;
    return offset_ + k * increment_;
}

DetectionMask::DetectionMask(const GridShape& shape)
    : level_count(shape, 0), flagged(shape, false), witnesses(std::size_t(shape.pixel_count())) {}

bool same_detection(const DetectionMask& a, const DetectionMask& b) {
    return a.level_count == b.level_count && a.flagged == b.flagged;
}

Mask sublevel(const IntensityGrid& grid, std::int64_t c) {
    Mask::Storage below = (grid.matrix().cast<std::int64_t>().array() < c).matrix();
    return Mask(grid.shape(), std::move(below));
}

Mask level_curve_mask(const IntensityGrid& grid, std::int64_t c, Topology topology) {
    const Mask below = sublevel(grid, c);
    const auto& shape = grid.shape();
    Mask out(shape, false);
    for (int t = 0; t < shape.frames; ++t)
        for (int y = 0; y < shape.height; ++y)
            for (int x = 0; x < shape.width; ++x) {
                const PixelCoord p{x, y, t};
                if (below(p)) continue;
                out(p) = any_neighbor(shape, p, topology,
                                      [&](const PixelCoord& q) { return below(q); });
            }
    return out;
}

LevelCurveSet level_curve_set(const IntensityGrid& grid, Intensity c, Topology topology) {
    const Mask m = level_curve_mask(grid, c, topology);
    LevelCurveSet set{c, {}};
    for (Eigen::Index i = 0; i < m.shape().pixel_count(); ++i)
        if (m[i]) set.members.push_back(m.shape().coord(i));
    return set;
}

DetectionMask detect_multilevel(const IntensityGrid& grid, const ThresholdSchedule& schedule,
                                Topology topology, const DetectOptions& options) {
    const auto& shape = grid.shape();
    const auto levels = schedule.levels(grid.max_value());
    const auto n = shape.pixel_count();
    const auto workers = std::max(1u, options.threads);

    // Each worker takes a contiguous, ascending run of levels.
    std::vector<std::vector<std::int32_t>> counts(workers);
    std::vector<std::vector<TopTwo>> tops(workers);
    detail::for_chunks(levels.size(), workers, [&](std::size_t k, std::size_t begin, std::size_t end) {
        counts[k].assign(std::size_t(n), 0);
        tops[k].assign(std::size_t(n), TopTwo{});
        for (std::size_t l = begin; l < end; ++l) {
            const Mask curve = level_curve_mask(grid, levels[l], topology);
            for (Eigen::Index i = 0; i < n; ++i) {
                if (!curve[i]) continue;
                ++counts[k][std::size_t(i)];
                tops[k][std::size_t(i)].push(levels[l]);
            }
        }
    });

    DetectionMask mask(shape);
    for (Eigen::Index i = 0; i < n; ++i) {
        std::int32_t total = 0;
        TopTwo top;
        for (std::size_t k = 0; k < counts.size(); ++k) {
            if (counts[k].empty()) continue;
            total += counts[k][std::size_t(i)];
            const auto& t = tops[k][std::size_t(i)];
            if (t.seen >= 2) top.push(t.second);
            if (t.seen >= 1) top.push(t.first);
        }
        assign(mask, i, total, top);
    }
    return mask;
}

std::optional<MembershipInterval> membership_interval(const IntensityGrid& grid,
                                                      const PixelCoord& p, Topology topology) {
    if (!grid.contains(p)) throw InputError("pixel outside grid");
    const auto m = min_neighbor(grid, p, topology);
    if (!m || *m >= grid(p)) return std::nullopt;
    return MembershipInterval{*m, grid(p)};
}

DetectionMask detect_pointwise(const IntensityGrid& grid, const ThresholdSchedule& schedule,
                               Topology topology, CountMethod method,
                               const DetectOptions& options) {
    const auto& shape = grid.shape();
    const auto max_value = grid.max_value();
    const auto n = shape.pixel_count();
    std::vector<Intensity> levels;
    if (method == CountMethod::Enumerate) levels = schedule.levels(max_value);

    DetectionMask mask(shape);
    // Workers write disjoint pixel ranges.
    detail::for_chunks(std::size_t(n), options.threads, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (auto i = Eigen::Index(begin); i < Eigen::Index(end); ++i) {
            const auto p = shape.coord(i);
            TopTwo top;
            std::int32_t count = 0;
            if (const auto interval = membership_interval(grid, p, topology)) {
                if (method == CountMethod::ClosedForm) {
                    count = std::int32_t(
                        schedule.count_between(interval->lower, interval->upper, max_value));
                    if (const auto hi = schedule.largest_at_most(interval->upper, max_value)) {
                        top.push(*hi - schedule.increment());
                        top.push(*hi);
                    }
                } else {
                    for (const auto c : levels) {
                        if (!interval->contains(c)) continue;
                        ++count;
                        top.push(c);
                    }
                }
            }
            assign(mask, i, count, top);
        }
    });
    return mask;
}

bool check_necessary_condition(const IntensityGrid& grid, const PixelCoord& p, Intensity c,
                               Intensity c2, Topology topology) {
    if (c == c2) throw InputError("necessary-condition check needs two distinct thresholds");
    if (!grid.contains(p)) throw InputError("pixel outside grid");
    const std::int64_t gap = std::abs(std::int64_t(c) - c2);
    const std::int64_t here = grid(p);
    return any_neighbor(grid.shape(), p, topology,
                        [&](const PixelCoord& q) { return here - grid(q) > gap; });
}

}  // namespace discont
