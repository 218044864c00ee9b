#pragma once

#include "perfo/domain.hpp"

#include <array>
#include <string>
#include <vector>

namespace perfo {

struct MeshError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class VertexClass { Interior, HoleBoundary, OuterBoundary, Cut };

// component: hole index (>= 0), -1 for the unit circle, -2 for a straight cut
struct BoundaryEdge {
    int a, b;
    int component;
};

struct Mesh {
    Base base = Base::Sphere;
    std::vector<Vec3> vertices;                 // disk meshes use z = 0
    std::vector<std::array<int, 3>> triangles;  // outward (sphere) / counter-clockwise (disk)
    std::vector<VertexClass> vclass;
    std::vector<int> vhole;                     // hole index for HoleBoundary vertices, else -1
    std::vector<BoundaryEdge> boundary;
    std::vector<HoleSpec> holes;                // exact geometry used for reprojection
    double h = 0;
    int level = 0;

    size_t vertex_count() const { return vertices.size(); }
    int euler_characteristic() const;
    double area() const;
    // Length of the boundary edges with the given component, or of all of them.
    double boundary_length(std::optional<int> component = std::nullopt) const;
    // Closed loops (first == last) or open arcs of boundary vertices, one per connected chain.
    std::vector<std::vector<int>> polylines() const;
};

struct MeshOptions {
    double h = 0.1;
    double holeFactor = 0.25;   // boundary size at a hole is min(h, holeFactor * r)
    double grading = 0.3;       // size growth per unit distance from a hole
    double minRadius = 1e-9;    // meshable floor
    size_t maxVertices = 3'000'000;
    bool replicate = true;      // false: keep a single chamber and expose mirror cuts
};

struct MeshQuality {
    double minAngleDeg = 0, maxAngleDeg = 0;
    size_t belowFloor = 0;      // triangles with an angle under the floor
    double maxSphereError = 0;  // max | |x| - 1 | on the sphere
    double maxCircleError = 0;  // max distance of hole vertices from their circle
};

Mesh mesh_domain(const PerforatedDomain& d, const MeshOptions& opt);
Mesh mesh_sphere(const PerforatedDomain& d, double h);
Mesh mesh_disk(const PerforatedDomain& d, double h);
// Upper hemisphere with the equator as a straight cut, and the upper half-disk
// with the diameter as a cut.
Mesh mesh_hemisphere(double h);
Mesh mesh_half_disk(double h);

// Uniform 1:4 subdivision; new boundary vertices are put back on their exact curves.
Mesh refine(const Mesh& m);

MeshQuality quality(const Mesh& m, double floorDeg = 15.0);

// ASCII OFF plus a JSON sidecar with classes and boundary edges.
void write_off(const Mesh& m, const std::string& offPath, const std::string& sidecarPath);
Mesh read_off(const std::string& offPath, const std::string& sidecarPath);
Json mesh_summary(const Mesh& m);

}  // namespace perfo
