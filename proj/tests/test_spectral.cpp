#include <doctest.h>

#include "perfo/constructions.hpp"
#include "perfo/spectral.hpp"

using namespace perfo;

namespace {

PerforatedDomain one_cap(double r) {
    PerforatedDomain d;
    HoleSpec h;
    h.center = Vec3(0, 0, 1);
    h.radius = r;
    d.holes.push_back(h);
    validate(d);
    return d;
}

}  // namespace

TEST_CASE("richardson arithmetic") {
    auto c = richardson(2.1, 2.025);
    CHECK(c.value == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(c.margin == doctest::Approx(0.075).epsilon(1e-12));
}

TEST_CASE("full sphere spectrum") {
    PerforatedDomain s;
    Mesh m = mesh_sphere(s, 0.1);
    auto c = solve_laplace(m, BoundaryConditions::neumann(), 5);
    auto f = solve_laplace(refine(m), BoundaryConditions::neumann(), 5);
    auto r = richardson(c, f);
    const double want[] = {0, 2, 2, 2, 6};
    CHECK(std::abs(r[0].value) < 1e-8);
    for (int i = 1; i < 5; ++i) CHECK(r[i].value == doctest::Approx(want[i]).epsilon(1e-3));
    CHECK(c.nullspaceDeflated);
}

TEST_CASE("hemisphere with Dirichlet equator") {
    Mesh h = mesh_hemisphere(0.1);
    BoundaryConditions bc = BoundaryConditions::neumann();
    bc.cut = BC::Dirichlet;
    auto r = solve_laplace(h, bc, 1);
    CHECK(r.eigenvalues[0] == doctest::Approx(2).epsilon(5e-3));
}

TEST_CASE("disk and half-disk Steklov") {
    PerforatedDomain d;
    d.base = Base::Disk;
    Mesh m = mesh_disk(d, 0.1);
    auto r = richardson(solve_steklov(m, BoundaryConditions::neumann(), 5),
                        solve_steklov(refine(m), BoundaryConditions::neumann(), 5));
    const double want[] = {0, 1, 1, 2, 2};
    CHECK(std::abs(r[0].value) < 1e-8);
    for (int i = 1; i < 5; ++i) CHECK(r[i].value == doctest::Approx(want[i]).epsilon(1e-3));

    Mesh hd = mesh_half_disk(0.1);
    BoundaryConditions bc = BoundaryConditions::neumann();
    bc.cut = BC::Dirichlet;
    auto s = solve_steklov(hd, bc, 2);
    // r^n sin(n theta) gives sigma_n = n
    CHECK(s.eigenvalues[0] == doctest::Approx(1).epsilon(1e-2));
    CHECK(s.eigenvalues[1] == doctest::Approx(2).epsilon(1e-2));
}

TEST_CASE("normalized quantities without holes") {
    PerforatedDomain s;
    auto mb = mu_bar(s, mesh_sphere(s, 0.15));
    CHECK(std::isinf(mb.lambdaD));
    CHECK(mb.muBar == doctest::Approx(8 * kPi).epsilon(1e-2));

    PerforatedDomain d;
    d.base = Base::Disk;
    auto sb = sigma_bar(d, mesh_disk(d, 0.1));
    CHECK(sb.sigmaBar == doctest::Approx(2 * kPi).epsilon(1e-2));
}

TEST_CASE("a single shrinking hole") {
    // |Omega| lambda_1^N -> 8 pi while lambda_1^D -> 0, so mu bar itself collapses
    double prevErr = 1e9, prevD = 1e9;
    for (double r : {0.3, 0.1, 0.03}) {
        auto d = one_cap(r);
        auto mb = mu_bar(d, mesh_sphere(d, 0.1));
        double nbar = mb.area * mb.lambdaN;
        double err = std::abs(nbar - 8 * kPi);
        CHECK(err < prevErr);
        CHECK(mb.lambdaD < prevD);
        CHECK(mb.muBar == doctest::Approx(mb.area * mb.lambdaD));
        prevErr = err;
        prevD = mb.lambdaD;
    }
    CHECK(prevErr < 0.1);
}

TEST_CASE("dirichlet monotonicity in the hole radius") {
    auto small = equator_poles(8, 0.6), large = equator_poles(8, 0.4);
    double ls = solve_laplace(mesh_sphere(small, 0.1), BoundaryConditions::dirichlet(), 1).eigenvalues[0];
    double ll = solve_laplace(mesh_sphere(large, 0.1), BoundaryConditions::dirichlet(), 1).eigenvalues[0];
    CHECK(ll > ls);
}

TEST_CASE("certified values bracket the refined ones") {
    auto d = equator_poles(8, 0.5);
    Mesh m = mesh_sphere(d, 0.15);
    auto c = mu_bar_certified(d, m);
    REQUIRE(c.certMu);
    CHECK(c.certMu->margin >= 0);
    CHECK(std::abs(c.certMu->value - c.muBar) <= c.certMu->margin + 1e-12);
}

TEST_CASE("mixed per-hole conditions") {
    auto d = equator_poles(4, 1.0);
    Mesh m = mesh_sphere(d, 0.15);
    BoundaryConditions bc = BoundaryConditions::neumann();
    bc.perHole[0] = BC::Dirichlet;
    double mixed = solve_laplace(m, bc, 1).eigenvalues[0];
    double dir = solve_laplace(m, BoundaryConditions::dirichlet(), 1).eigenvalues[0];
    CHECK(mixed > 0);
    CHECK(mixed < dir);
}
