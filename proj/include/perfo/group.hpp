#pragma once

#include "perfo/geometry.hpp"

#include <string>
#include <vector>

namespace perfo {

// Portion of mirror i bounding the chamber.  Sphere: great-circle arc from a
// through the chamber (closed full circle when the mirror meets no other
// mirror).  Disk: segment from a to b.
struct ChamberEdge {
    Base base = Base::Sphere;
    int mirror = -1;
    Vec3 a, b, w;
    double angle = 0;
    bool closed = false;
    Vec3 at(double t) const {
        if (base == Base::Disk) return a + t * (b - a);
        return std::cos(t * angle) * a + std::sin(t * angle) * w;
    }
    double length() const { return base == Base::Disk ? (b - a).norm() : angle; }
};

enum class GroupKind { Trivial, Z2, Dk, Z2xDk, Tetrahedral, Octahedral, Icosahedral };

// Finite reflection group acting on S^2, or on the disk (embedded in the
// z = 0 plane so that both cases use 3x3 matrices).
//
// The fundamental chamber is { x : normals[i].x >= 0 for all generators i }.
struct ReflectionGroup {
    Base base = Base::Sphere;
    GroupKind kind = GroupKind::Trivial;
    int k = 0;
    std::vector<Vec3> normals;  // mirror normals of the generators
    std::vector<Mat3> generators;
    std::vector<Mat3> elements;

    static ReflectionGroup make(Base base, GroupKind kind, int k = 0);

    int order() const { return static_cast<int>(elements.size()); }
    int generator_count() const { return static_cast<int>(generators.size()); }
    bool in_chamber(const Vec3& x, double tol = 1e-12) const;
    // Mirrors (generator indices) containing x, assuming x is in the closed chamber.
    std::vector<int> mirrors_through(const Vec3& x, double tol = 1e-10) const;
    // Element g with g*x in the closed chamber.
    const Mat3& to_chamber(const Vec3& x) const;
    // Chamber vertices (mirror intersections in the closed chamber), sphere only.
    std::vector<Vec3> chamber_vertices() const;
    ChamberEdge mirror_edge(int i) const;
    std::string name() const;
};

std::string to_string(GroupKind kind);
GroupKind group_kind_from_string(const std::string& s);

}  // namespace perfo
