#pragma once

#include <Eigen/Core>

#include <cmath>
#include <optional>
#include <vector>

#include "discont/errors.hpp"
#include "discont/raster.hpp"

namespace discont {

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

using Point3 = Vector3<double>;

namespace detail {
template <typename Derived>
void require_off_focal_plane(const Eigen::MatrixBase<Derived>& p) {
    if (p(2) == typename Derived::Scalar(0)) throw FocalPlaneError("point lies on the focal plane z = 0");
}
}  // namespace detail

/// Pinhole projection onto the retina z = 1: (x, y, z) -> (x/z, y/z).
template <typename Derived>
Vector2<typename Derived::Scalar> project(const Eigen::MatrixBase<Derived>& p) {
    EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 3);
    detail::require_off_focal_plane(p);
    return p.template head<2>() / p(2);
}

/// 2x3 Jacobian of the projection at p.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 2, 3> projection_jacobian(const Eigen::MatrixBase<Derived>& p) {
    EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 3);
    using Scalar = typename Derived::Scalar;
    detail::require_off_focal_plane(p);
    const Scalar z = p(2);
    Eigen::Matrix<Scalar, 2, 3> j;
    j << Scalar(1) / z, Scalar(0), -p(0) / (z * z),
         Scalar(0), Scalar(1) / z, -p(1) / (z * z);
    return j;
}

/// Pushes a tangent vector v at p forward to the image:
/// (v1/z - v3 x/z^2, v2/z - v3 y/z^2). Vanishes exactly when v is parallel to p.
template <typename DerivedP, typename DerivedV>
Vector2<typename DerivedP::Scalar> differential(const Eigen::MatrixBase<DerivedP>& p,
                                               const Eigen::MatrixBase<DerivedV>& v) {
    EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(DerivedV, 3);
    return projection_jacobian(p) * v;
}

/// A surface point is occluding when its tangent plane passes through the
/// optical centre, i.e. the viewing ray is orthogonal to the normal:
/// |p . n| <= tolerance * |p| * |n|.
template <typename DerivedP, typename DerivedN>
bool is_occluding(const Eigen::MatrixBase<DerivedP>& surface_point,
                  const Eigen::MatrixBase<DerivedN>& normal,
                  typename DerivedP::Scalar tolerance) {
    using Scalar = typename DerivedP::Scalar;
    const Scalar n = normal.norm();
    if (n == Scalar(0)) throw InputError("surface normal must be nonzero");
    detail::require_off_focal_plane(surface_point);
    using std::abs;
    return abs(surface_point.dot(normal)) <= tolerance * surface_point.norm() * n;
}

struct Sphere {
    Point3 center = Point3::Zero();
    double radius = 1.0;
    double albedo = 1.0;
};

/// Infinite plane through `point` with normal `normal`.
struct Plane {
    Point3 point = Point3::Zero();
    Point3 normal = Point3::UnitZ();
    double albedo = 1.0;
};

/// Retina-to-pixel mapping. Pixel (x, y) looks along the ray through
/// t = (x + 1/2 - cx) / focal, s = (y + 1/2 - cy) / focal on the retina z = 1.
/// The principal point (cx, cy) defaults to the image centre.
struct Camera {
    int width = 64;
    int height = 64;
    double focal = 64.0;
    std::optional<Eigen::Vector2d> principal_point;
    Intensity max_value = 255;

    Eigen::Vector2d principal() const {
        return principal_point.value_or(Eigen::Vector2d(width / 2.0, height / 2.0));
    }
    /// Unnormalized ray direction (t, s, 1) through pixel-space point (u, v).
    Point3 ray(double u, double v) const {
        const auto c = principal();
        return {(u - c.x()) / focal, (v - c.y()) / focal, 1.0};
    }
    Point3 pixel_ray(int x, int y) const { return ray(x + 0.5, y + 0.5); }
};

/// Lambertian scene seen from a camera at the origin. Object ids: spheres
/// first, then planes, in declaration order; -1 is the background.
struct SceneSpec {
    std::vector<Sphere> spheres;
    std::vector<Plane> planes;
    /// Direction from the surface towards the light; normalized on use.
    Point3 light_direction = -Point3::UnitZ();
    double ambient = 0.0;
    Camera camera;
    /// Adjacency for the object-identity change mask.
    Topology truth_topology = Topology::N4;

    int object_count() const { return int(spheres.size() + planes.size()); }
};

/// Throws InputError for degenerate objects, out-of-range shading parameters,
/// surfaces meeting the focal plane, or a bad camera.
void validate(const SceneSpec& spec);

struct GroundTruth {
    /// Visible sphere pixels within one pixel of that sphere's silhouette: a
    /// footprint corner or a 4-neighbor centre ray misses the sphere. This
    /// keeps the ring 8-connected.
    Mask occluding;
    /// Both pixels of every neighbor pair with different object ids.
    Mask discontinuity;
    /// Distance from the optical centre to the nearest hit; +inf on a miss.
    PixelGrid<double> depth;
    PixelGrid<int> object_id;
};

struct Rendering {
    IntensityGrid image;
    GroundTruth truth;
};

/// Casts one ray per pixel centre. Hits are shaded as
/// round(max * clamp(ambient + (1 - ambient) * albedo * max(0, n . l))),
/// misses are 0.
Rendering render(const SceneSpec& spec);

/// Per-frame displacement. Object k moves by translation + per_object[k]
/// each frame; per_object is either empty or one entry per object.
struct SceneMotion {
    Point3 translation = Point3::Zero();
    std::vector<Point3> per_object;
};

SceneSpec displaced(const SceneSpec& spec, const SceneMotion& motion, int frame);

struct RenderedSequence {
    std::vector<IntensityGrid> frames;
    std::vector<GroundTruth> truths;
};

/// Frame i renders the scene displaced by i * motion. Needs frames >= 2.
RenderedSequence render_sequence(const SceneSpec& spec, const SceneMotion& motion, int frames);

}  // namespace discont
