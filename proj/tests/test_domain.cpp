#include <doctest.h>

#include <random>

#include "perfo/domain.hpp"

using namespace perfo;

namespace {

HoleSpec cap(const Vec3& c, double r) {
    HoleSpec h;
    h.center = c.normalized();
    h.radius = r;
    return h;
}

TypeSignature type_of(int f, std::vector<int> e, std::map<std::pair<int, int>, int> v = {}) {
    TypeSignature t;
    t.f = f;
    t.e = std::move(e);
    t.v = std::move(v);
    return t;
}

}  // namespace

TEST_CASE("orbit sizes") {
    auto d6 = ReflectionGroup::make(Base::Sphere, GroupKind::Dk, 6);
    auto free = expand_orbit(d6, {cap(Vec3(0.3, 0.1, 0.5), 0.01)});
    CHECK(free.size() == 12);

    auto z2 = ReflectionGroup::make(Base::Sphere, GroupKind::Z2);
    CHECK(expand_orbit(z2, {cap(Vec3(1, 0, 0), 0.01)}).size() == 1);

    // mirror intersection: stabilizer of order 4 in Z2 x D_k (order 4k)
    auto z2d = ReflectionGroup::make(Base::Sphere, GroupKind::Z2xDk, 5);
    auto corner = expand_orbit(z2d, {cap(Vec3(1, 0, 0), 0.01)});
    CHECK(corner.size() == 5);
    CHECK(corner[0].stabilizer == 4);
}

TEST_CASE("expanded orbits are fixed by every group element") {
    for (auto kind : {GroupKind::Dk, GroupKind::Z2xDk, GroupKind::Octahedral, GroupKind::Icosahedral}) {
        auto g = ReflectionGroup::make(Base::Sphere, kind, 4);
        std::vector<HoleSpec> seeds;
        for (const Vec3& x : {Vec3(0.2, 0.05, 0.9), Vec3(0.7, 0.1, 0.3)}) {
            Vec3 y = x.normalized();
            seeds.push_back(cap(g.to_chamber(y) * y, 0.001));
        }
        auto holes = expand_orbit(g, seeds);
        for (const auto& el : g.elements) {
            auto moved = holes;
            for (auto& h : moved) h.center = el * h.center;
            CHECK(same_hole_set(Base::Sphere, holes, moved));
        }
    }
}

TEST_CASE("type round trip") {
    std::mt19937 rng(3);
    auto dk = ReflectionGroup::make(Base::Sphere, GroupKind::Dk, 4);
    auto z2d = ReflectionGroup::make(Base::Sphere, GroupKind::Z2xDk, 3);
    for (int trial = 0; trial < 12; ++trial) {
        std::uniform_int_distribution<int> u(0, 2);
        TypeSignature b = type_of(u(rng), {u(rng), u(rng)}, {{{0, 1}, u(rng) % 2}});
        if (b.total() == 0) b.f = 1;
        std::vector<double> radii(b.total(), 0.02);
        auto d = holes_from_type(dk, b, radii, 11 + trial);
        CHECK(recompute_type(d) == b);

        TypeSignature c = type_of(u(rng) % 2, {0, 0, u(rng)}, {{{0, 2}, u(rng) % 2}, {{1, 2}, u(rng) % 2}});
        if (c.total() == 0) c.e[2] = 1;
        auto d2 = holes_from_type(z2d, c, std::vector<double>(c.total(), 0.02), 5 + trial);
        CHECK(recompute_type(d2) == c);
    }
}

TEST_CASE("hole counts from type") {
    auto z2 = ReflectionGroup::make(Base::Sphere, GroupKind::Z2);
    auto d = holes_from_type(z2, type_of(0, {3}), {0.01, 0.01, 0.01}, 1);
    CHECK(d.holes.size() == 3);
    for (const auto& h : d.holes) CHECK(std::abs(h.center.z()) < 1e-12);

    int k = 5, f = 1, e1 = 2, e2 = 1, v12 = 1;
    auto dk = ReflectionGroup::make(Base::Sphere, GroupKind::Dk, k);
    auto b = type_of(f, {e1, e2}, {{{0, 1}, v12}});
    auto dd = holes_from_type(dk, b, std::vector<double>(b.total(), 0.01), 2);
    // free orbits have 2k elements
    CHECK(dd.holes.size() == size_t(k * (2 * f + e1 + e2) + v12));

    auto triv = ReflectionGroup::make(Base::Sphere, GroupKind::Trivial);
    CHECK(holes_from_type(triv, type_of(4, {}), {0.1, 0.1, 0.1, 0.1}, 3).holes.size() == 4);
    CHECK_THROWS_AS(holes_from_type(triv, type_of(4, {}), {0.1}, 3), DomainError);
}

TEST_CASE("scherk truth table") {
    auto z2 = ReflectionGroup::make(Base::Sphere, GroupKind::Z2);
    auto dk = ReflectionGroup::make(Base::Sphere, GroupKind::Dk, 4);
    auto z2d = ReflectionGroup::make(Base::Sphere, GroupKind::Z2xDk, 4);
    auto triv = ReflectionGroup::make(Base::Sphere, GroupKind::Trivial);
    auto tet = ReflectionGroup::make(Base::Sphere, GroupKind::Tetrahedral);
    auto oct = ReflectionGroup::make(Base::Sphere, GroupKind::Octahedral);
    auto ico = ReflectionGroup::make(Base::Sphere, GroupKind::Icosahedral);
    const auto S = ScherkClass::Scherk, G = ScherkClass::Generic;
    struct Row {
        const ReflectionGroup* g;
        TypeSignature b;
        ScherkClass want;
    };
    std::vector<Row> table{
        {&z2, type_of(0, {5}), S},
        {&z2, type_of(0, {1}), S},
        {&z2, type_of(1, {3}), G},
        {&z2, type_of(2, {}), G},
        {&dk, type_of(1, {}), S},
        {&dk, type_of(0, {1, 0}), S},
        {&dk, type_of(0, {0, 1}), S},
        {&dk, type_of(0, {}, {{{0, 1}, 1}}), G},
        {&dk, type_of(2, {}), G},
        {&dk, type_of(0, {1, 1}), G},
        {&z2d, type_of(0, {0, 0, 2}), S},
        {&z2d, type_of(0, {0, 0, 1}, {{{0, 2}, 1}}), S},
        {&z2d, type_of(0, {0, 0, 3}, {{{0, 2}, 1}, {{1, 2}, 1}}), S},
        {&z2d, type_of(0, {0, 0, 0}, {{{1, 2}, 1}}), S},
        {&z2d, type_of(1, {0, 0, 1}), G},
        {&z2d, type_of(0, {1, 0, 1}), G},
        {&z2d, type_of(0, {0, 0, 1}, {{{0, 1}, 1}}), G},
        {&triv, type_of(3, {}), G},
        {&tet, type_of(0, {1, 0, 0}), G},
        {&oct, type_of(1, {}), G},
        {&ico, type_of(0, {0, 0, 1}), G},
    };
    for (const auto& row : table) {
        CAPTURE(row.g->name());
        CAPTURE(row.b.str());
        CHECK(classify_scherk(*row.g, row.b) == row.want);
    }
}

TEST_CASE("exact measures") {
    PerforatedDomain hemi;
    hemi.holes.push_back(cap(Vec3(0, 0, 1), kPi / 2));
    validate(hemi);
    auto m = exact_measures(hemi);
    CHECK(m.holeArea == doctest::Approx(2 * kPi).epsilon(1e-14));
    CHECK(m.area == doctest::Approx(2 * kPi).epsilon(1e-14));

    PerforatedDomain disk;
    disk.base = Base::Disk;
    auto md = exact_measures(disk);
    CHECK(md.area == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(md.boundaryLength == doctest::Approx(2 * kPi).epsilon(1e-14));

    // sum of caps, and a Monte-Carlo estimate of the covered fraction
    PerforatedDomain d;
    int k = 6;
    double r = 0.3;
    for (int j = 0; j < k; ++j)
        d.holes.push_back(cap(Vec3(std::cos(2 * kPi * j / k), std::sin(2 * kPi * j / k), 0), r));
    validate(d, Disjointness::Simple);
    auto ms = exact_measures(d);
    CHECK(ms.holeArea == doctest::Approx(2 * kPi * k * (1 - std::cos(r))).epsilon(1e-13));
    CHECK(ms.area + ms.holeArea == doctest::Approx(4 * kPi).epsilon(1e-12));
    std::mt19937_64 rng(9);
    std::normal_distribution<double> nd;
    int hit = 0, n = 200000;
    for (int i = 0; i < n; ++i)
        if (in_holes(d, Vec3(nd(rng), nd(rng), nd(rng)).normalized())) ++hit;
    CHECK(4 * kPi * hit / n == doctest::Approx(ms.holeArea).epsilon(0.03));
}

TEST_CASE("topology records") {
    PerforatedDomain s;
    for (int j = 0; j < 5; ++j) s.holes.push_back(cap(Vec3(std::cos(1.2 * j), std::sin(1.2 * j), 0.2), 0.05));
    validate(s);
    auto t = topology(s);
    CHECK(t.boundaryComponents == 5);
    CHECK(t.doubledGenus == 4);

    PerforatedDomain d;
    d.base = Base::Disk;
    for (double a : {0.0, kPi}) {
        HoleSpec h;
        h.center = Vec3(std::cos(a), std::sin(a), 0);
        h.radius = 0.1;
        h.kind = HoleKind::BoundaryHalf;
        d.holes.push_back(h);
    }
    for (double a : {1.0, 2.0, 4.0}) {
        HoleSpec h;
        h.center = Vec3(0.5 * std::cos(a), 0.5 * std::sin(a), 0);
        h.radius = 0.05;
        d.holes.push_back(h);
    }
    validate(d);
    auto td = topology(d);
    CHECK(td.boundaryComponents == 2);
    CHECK(td.doubledGenus == 3);

    PerforatedDomain empty;
    empty.base = Base::Disk;
    CHECK_THROWS_AS(topology(empty), DomainError);
}

TEST_CASE("validation errors name the holes") {
    PerforatedDomain d;
    d.holes.push_back(cap(Vec3(0, 0, 1), 0.3));
    d.holes.push_back(cap(Vec3(0, 0.2, 1), 0.3));
    try {
        validate(d, Disjointness::Simple);
        FAIL("overlap not detected");
    } catch (const DomainError& e) {
        std::string msg = e.what();
        CHECK(msg.find("hole 0") != std::string::npos);
        CHECK(msg.find("hole 1") != std::string::npos);
    }

    PerforatedDomain near;
    near.holes.push_back(cap(Vec3(0, 0, 1), 0.1));
    near.holes.push_back(cap(Vec3(0, std::sin(0.3), std::cos(0.3)), 0.1));
    CHECK_NOTHROW(validate(near, Disjointness::Simple));
    CHECK_FALSE(near.doubledDisjoint);
    CHECK_THROWS_AS(validate(near, Disjointness::Doubled), DomainError);
}

TEST_CASE("json round trip keeps the hash") {
    auto dk = ReflectionGroup::make(Base::Sphere, GroupKind::Dk, 3);
    auto d = holes_from_type(dk, type_of(1, {1, 0}), {0.05, 0.03}, 4);
    auto back = domain_from_json(to_json(d));
    CHECK(blueprint_hash(back) == blueprint_hash(d));
    CHECK(same_hole_set(Base::Sphere, back.holes, d.holes));
}
