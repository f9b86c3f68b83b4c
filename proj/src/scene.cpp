#include "discont/scene.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <string>

namespace discont {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Quarter discriminant of |l d - C|^2 = r^2 in l; positive when the ray
// crosses the sphere, zero on the silhouette.
double quarter_discriminant(const Sphere& s, const Point3& d) {
    const double b = d.dot(s.center);
    return b * b - d.squaredNorm() * (s.center.squaredNorm() - s.radius * s.radius);
}

std::optional<double> hit_sphere(const Sphere& s, const Point3& d) {
    const double disc = quarter_discriminant(s, d);
    if (disc < 0.0) return std::nullopt;
    const double a = d.squaredNorm();
    const double b = d.dot(s.center);
    const double root = std::sqrt(disc);
    for (const double l : {(b - root) / a, (b + root) / a})
        if (l > 0.0) return l;
    return std::nullopt;
}

std::optional<double> hit_plane(const Plane& p, const Point3& d) {
    const double denom = p.normal.dot(d);
    if (denom == 0.0) return std::nullopt;
    const double l = p.normal.dot(p.point) / denom;
    if (l > 0.0) return l;
    return std::nullopt;
}

struct Hit {
    int id = -1;
    double ray_parameter = kInf;
};

Hit nearest_hit(const SceneSpec& spec, const Point3& d) {
    Hit best;
    int id = 0;
    for (const auto& s : spec.spheres) {
        if (const auto l = hit_sphere(s, d); l && *l < best.ray_parameter) best = {id, *l};
        ++id;
    }
    for (const auto& p : spec.planes) {
        if (const auto l = hit_plane(p, d); l && *l < best.ray_parameter) best = {id, *l};
        ++id;
    }
    return best;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw InputError(what);
}

}  // namespace

void validate(const SceneSpec& spec) {
    const auto& cam = spec.camera;
    require(cam.width >= 1 && cam.height >= 1, "camera image size must be at least 1x1");
    require(cam.focal > 0.0 && std::isfinite(cam.focal), "camera focal scale must be positive");
    require(cam.max_value >= 1, "camera max_value must be at least 1");
    require(spec.ambient >= 0.0 && spec.ambient <= 1.0, "ambient must lie in [0, 1]");
    require(spec.light_direction.norm() > 0.0 && spec.light_direction.allFinite(),
            "light direction must be a nonzero vector");
    for (const auto& s : spec.spheres) {
        require(s.radius > 0.0 && std::isfinite(s.radius), "sphere radius must be positive");
        require(s.center.allFinite(), "sphere center must be finite");
        require(std::abs(s.center.z()) > s.radius, "sphere meets the focal plane z = 0");
        require(s.albedo >= 0.0 && s.albedo <= 1.0, "albedo must lie in [0, 1]");
    }
    for (const auto& p : spec.planes) {
        require(p.normal.norm() > 0.0 && p.normal.allFinite(), "plane normal must be nonzero");
        require(p.point.allFinite(), "plane point must be finite");
        require(p.normal.dot(p.point) != 0.0, "plane passes through the optical centre");
        require(p.albedo >= 0.0 && p.albedo <= 1.0, "albedo must lie in [0, 1]");
    }
}

Rendering render(const SceneSpec& spec) {
    validate(spec);
    const auto& cam = spec.camera;
    const GridShape shape{cam.width, cam.height, 1};
    const Point3 light = spec.light_direction.normalized();
    const int sphere_count = int(spec.spheres.size());

    PixelGrid<Intensity> image(shape, 0);
    GroundTruth truth{Mask(shape, false), Mask(shape, false), PixelGrid<double>(shape, kInf),
                      PixelGrid<int>(shape, -1)};

    for (int y = 0; y < cam.height; ++y)
        for (int x = 0; x < cam.width; ++x) {
            const PixelCoord p{x, y};
            const Point3 d = cam.pixel_ray(x, y);
            const Hit hit = nearest_hit(spec, d);
            if (hit.id < 0) continue;
            const Point3 point = hit.ray_parameter * d;
            Point3 normal;
            double albedo;
            if (hit.id < sphere_count) {
                const auto& s = spec.spheres[std::size_t(hit.id)];
                normal = (point - s.center).normalized();
                albedo = s.albedo;
            } else {
                const auto& pl = spec.planes[std::size_t(hit.id - sphere_count)];
                normal = pl.normal.normalized();
                if (normal.dot(d) > 0.0) normal = -normal;
                albedo = pl.albedo;
            }
            const double shade = std::clamp(
                spec.ambient + (1.0 - spec.ambient) * albedo * std::max(0.0, normal.dot(light)),
                0.0, 1.0);
            image(p) = Intensity(std::lround(cam.max_value * shade));
            truth.object_id(p) = hit.id;
            truth.depth(p) = point.norm();

            if (hit.id < sphere_count) {
                const auto& s = spec.spheres[std::size_t(hit.id)];
                const std::array<Point3, 8> probes{
                    cam.ray(x, y),           cam.ray(x + 1, y),       cam.ray(x, y + 1),
                    cam.ray(x + 1, y + 1),   cam.ray(x + 0.5, y - 0.5), cam.ray(x - 0.5, y + 0.5),
                    cam.ray(x + 1.5, y + 0.5), cam.ray(x + 0.5, y + 1.5)};
                truth.occluding(p) = std::any_of(probes.begin(), probes.end(), [&](const Point3& r) {
                    return quarter_discriminant(s, r) < 0.0;
                });
            }
        }

    for (int y = 0; y < cam.height; ++y)
        for (int x = 0; x < cam.width; ++x) {
            const PixelCoord p{x, y};
            for_each_neighbor(shape, p, spec.truth_topology, [&](const PixelCoord& q) {
                if (truth.object_id(q) != truth.object_id(p)) {
                    truth.discontinuity(p) = true;
                    truth.discontinuity(q) = true;
                }
            });
        }

    return {IntensityGrid(std::move(image), cam.max_value), std::move(truth)};
}

SceneSpec displaced(const SceneSpec& spec, const SceneMotion& motion, int frame) {
    if (!motion.per_object.empty() && int(motion.per_object.size()) != spec.object_count())
        throw InputError("per-object motion needs one displacement per object");
    SceneSpec out = spec;
    int id = 0;
    const auto step = [&](int k) {
        Point3 v = motion.translation;
        if (!motion.per_object.empty()) v += motion.per_object[std::size_t(k)];
        return Point3(double(frame) * v);
    };
    for (auto& s : out.spheres) s.center += step(id++);
    for (auto& p : out.planes) p.point += step(id++);
    return out;
}

RenderedSequence render_sequence(const SceneSpec& spec, const SceneMotion& motion, int frames) {
    if (frames < 2) throw InputError("a sequence needs at least two frames");
    RenderedSequence seq;
    for (int i = 0; i < frames; ++i) {
        auto r = render(displaced(spec, motion, i));
        seq.frames.push_back(std::move(r.image));
        seq.truths.push_back(std::move(r.truth));
    }
    return seq;
}

}  // namespace discont
