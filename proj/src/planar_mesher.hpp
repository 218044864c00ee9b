#pragma once

#include "perfo/geometry.hpp"

#include <array>
#include <functional>
#include <vector>

namespace perfo::detail {

// Curve piece with parameter range [t0, t1]; boundary vertices are always
// evaluated on the curve, never on chords.
struct PlanarCurve {
    std::function<Vec2(double)> eval;
};

struct PlanarPiece {
    int curve = -1;
    double t0 = 0, t1 = 0;
    int n0 = -1, n1 = -1;  // node indices of the endpoints (equal for a closed loop)
    int minSegments = 1;
};

struct PlanarInput {
    std::vector<PlanarCurve> curves;
    std::vector<Vec2> nodes;
    std::vector<PlanarPiece> pieces;
    std::function<double(const Vec2&)> size;   // target edge length in the plane
    std::function<bool(const Vec2&)> inside;   // region membership
    size_t maxVertices = 4'000'000;
};

struct PlanarOutput {
    std::vector<Vec2> points;
    std::vector<std::array<int, 3>> triangles;  // counter-clockwise
    std::vector<int> curve;                     // -1 for interior points
    std::vector<double> param;
    std::vector<int> node;                      // input node index or -1
};

PlanarOutput triangulate_region(const PlanarInput& in);

}  // namespace perfo::detail
