#include <doctest.h>

#include <filesystem>
#include <map>
#include <set>

#include "perfo/constructions.hpp"
#include "perfo/mesh.hpp"

using namespace perfo;

namespace {

PerforatedDomain polar_caps(double r) {
    PerforatedDomain d;
    for (double z : {1.0, -1.0}) {
        HoleSpec h;
        h.center = Vec3(0, 0, z);
        h.radius = r;
        d.holes.push_back(h);
    }
    validate(d);
    return d;
}

// connected chains of boundary edges with the given component
size_t arcs_on(const Mesh& m, int component) {
    std::map<int, std::vector<int>> adj;
    for (const auto& e : m.boundary)
        if (e.component == component) {
            adj[e.a].push_back(e.b);
            adj[e.b].push_back(e.a);
        }
    std::set<int> seen;
    size_t n = 0;
    for (const auto& [v, nb] : adj) {
        if (seen.count(v)) continue;
        ++n;
        std::vector<int> stack{v};
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            if (!seen.insert(x).second) continue;
            for (int y : adj[x]) stack.push_back(y);
        }
    }
    return n;
}

}  // namespace

TEST_CASE("full sphere") {
    PerforatedDomain s;
    Mesh m = mesh_sphere(s, 0.1);
    CHECK(m.euler_characteristic() == 2);
    for (auto c : m.vclass) CHECK(c == VertexClass::Interior);
    CHECK(m.boundary.empty());
    auto q = quality(m);
    CHECK(q.maxSphereError < 1e-14);
    CHECK(q.minAngleDeg > 20);
}

TEST_CASE("cylinder from two caps") {
    Mesh m = mesh_sphere(polar_caps(0.3), 0.1);
    CHECK(m.euler_characteristic() == 0);
    CHECK(m.polylines().size() == 2);
    CHECK(quality(m).maxCircleError < 1e-12);
}

TEST_CASE("equator poles topology") {
    Mesh m = mesh_sphere(equator_poles(8, 0.4), 0.1);
    CHECK(m.euler_characteristic() == 2 - 10);
}

TEST_CASE("disk meshes") {
    PerforatedDomain d;
    d.base = Base::Disk;
    CHECK(mesh_disk(d, 0.05).euler_characteristic() == 1);

    Mesh b = mesh_disk(stek_boundary_holes(4, 0.3), 0.1);
    CHECK(b.euler_characteristic() == 1);
    CHECK(arcs_on(b, -1) == 4);

    CHECK(mesh_disk(stek_diameter(4), 0.1).euler_characteristic() == 1 - 4);
}

TEST_CASE("chamber meshes expose cuts") {
    Mesh h = mesh_hemisphere(0.1);
    bool cut = false;
    for (auto c : h.vclass) cut = cut || c == VertexClass::Cut;
    CHECK(cut);
    CHECK(h.area() == doctest::Approx(2 * kPi).epsilon(2e-3));
    Mesh hd = mesh_half_disk(0.1);
    CHECK(hd.area() == doctest::Approx(kPi / 2).epsilon(2e-3));
}

TEST_CASE("refinement") {
    auto d = polar_caps(0.3);
    Mesh m = mesh_sphere(d, 0.2);
    Mesh f = refine(m);
    double ratio = double(f.vertex_count()) / m.vertex_count();
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
    CHECK(f.euler_characteristic() == m.euler_characteristic());
    double hf = 0.1;
    CHECK(quality(f).maxCircleError <= hf * hf / 4);
    CHECK(quality(f).maxSphereError < 1e-14);
}

TEST_CASE("area and boundary length converge at second order") {
    auto d = polar_caps(0.4);
    auto ex = exact_measures(d);
    Mesh m = mesh_sphere(d, 0.2);
    std::vector<double> ea, el;
    for (int lvl = 0; lvl < 4; ++lvl) {
        ea.push_back(std::abs(m.area() - ex.area));
        el.push_back(std::abs(m.boundary_length() - ex.boundaryLength));
        m = refine(m);
    }
    for (size_t i = 0; i + 1 < ea.size(); ++i) {
        double pa = std::log2(ea[i] / ea[i + 1]), pl = std::log2(el[i] / el[i + 1]);
        CHECK(pa > 1.5);
        CHECK(pa < 2.5);
        CHECK(pl > 1.5);
        CHECK(pl < 2.5);
    }
}

TEST_CASE("tiny holes mesh on the trivial group") {
    PerforatedDomain d;
    for (const Vec3& c : {Vec3(0, 0, 1), Vec3(1, 0, 0), Vec3(0, 1, 0)}) {
        HoleSpec h;
        h.center = c;
        h.radius = 1e-6;
        d.holes.push_back(h);
    }
    validate(d);
    Mesh m = mesh_sphere(d, 0.2);
    CHECK(m.euler_characteristic() == 2 - 3);
    CHECK(quality(m).maxCircleError < 1e-15);
}

TEST_CASE("radius below floor is rejected") {
    PerforatedDomain d;
    HoleSpec h;
    h.center = Vec3(0, 0, 1);
    h.radius = 1e-12;
    d.holes.push_back(h);
    validate(d);
    MeshOptions o;
    CHECK_THROWS_AS(mesh_domain(d, o), MeshError);
}

TEST_CASE("off round trip") {
    Mesh m = mesh_disk(stek_diameter(4), 0.2);
    auto dir = std::filesystem::temp_directory_path() / "perfo-unit-mesh";
    std::filesystem::create_directories(dir);
    write_off(m, (dir / "m.off").string(), (dir / "m.json").string());
    Mesh r = read_off((dir / "m.off").string(), (dir / "m.json").string());
    CHECK(r.vertex_count() == m.vertex_count());
    CHECK(r.triangles == m.triangles);
    CHECK(r.boundary.size() == m.boundary.size());
    CHECK(r.area() == doctest::Approx(m.area()).epsilon(1e-12));
    std::filesystem::remove_all(dir);
}
