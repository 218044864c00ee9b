#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace perfo {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

enum class Base { Sphere, Disk };

constexpr double kPi = 3.14159265358979323846;

inline double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

// Geodesic distance on S^2, Euclidean distance in the disk.  Uses atan2 so
// that tiny separations keep full relative accuracy.
inline double distance(Base base, const Vec3& a, const Vec3& b) {
    if (base == Base::Disk) return (a - b).norm();
    return std::atan2(a.cross(b).norm(), a.dot(b));
}

// Any unit vector orthogonal to n.
inline Vec3 orthogonal_unit(const Vec3& n) {
    Vec3 t = std::abs(n.x()) < 0.9 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
    t -= t.dot(n) * n;
    return t.normalized();
}

// Tangent frame (e1, e2) at c with e1 x e2 = c.
inline void tangent_frame(const Vec3& c, Vec3& e1, Vec3& e2) {
    e1 = orthogonal_unit(c);
    e2 = c.cross(e1);
}

inline double cap_area(double r) { return 2.0 * kPi * (1.0 - std::cos(r)); }

// Stereographic chart from pole p onto the plane through the origin orthogonal to p.
struct StereoChart {
    Vec3 p, u, v;
    explicit StereoChart(const Vec3& pole) : p(pole.normalized()) {
        u = orthogonal_unit(p);
        v = p.cross(u);
    }
    Vec2 to_plane(const Vec3& x) const {
        double d = 1.0 - x.dot(p);
        return Vec2(x.dot(u) / d, x.dot(v) / d);
    }
    Vec3 to_sphere(const Vec2& y) const {
        double s = y.squaredNorm();
        Vec3 x = (2.0 * y.x() * u + 2.0 * y.y() * v + (s - 1.0) * p) / (s + 1.0);
        return x.normalized();
    }
    // plane length per unit sphere length at y
    double plane_scale(const Vec2& y) const { return 0.5 * (1.0 + y.squaredNorm()); }
};

}  // namespace perfo
