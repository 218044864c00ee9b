#include "perfo/pipelines.hpp"

#include <stdexcept>

namespace perfo {

double cap_radius_for_area(double area) {
    if (!(area > 0 && area < 4 * kPi)) throw std::invalid_argument("cap_radius_for_area: need 0 < area < 4 pi");
    return std::acos(1 - area / (2 * kPi));
}

PerforatedDomain single_cap(double radius) {
    PerforatedDomain d;
    d.base = Base::Sphere;
    HoleSpec h;
    h.center = Vec3(0, 0, 1);
    h.radius = radius;
    d.holes.push_back(h);
    validate(d, Disjointness::Simple);
    return d;
}

PerforatedDomain single_boundary_hole(double radius) {
    PerforatedDomain d;
    d.base = Base::Disk;
    HoleSpec h;
    h.center = Vec3(1, 0, 0);
    h.radius = radius;
    h.kind = HoleKind::BoundaryHalf;
    d.holes.push_back(h);
    validate(d, Disjointness::Simple);
    return d;
}

namespace {

StabilitySweep stability_run(bool sphere, const std::vector<double>& radii, const MeshOptions& mo, double slack,
                             size_t required) {
    StabilitySweep out;
    for (double r : radii) {
        PerforatedDomain d = sphere ? single_cap(r) : single_boundary_hole(r);
        Mesh m = mesh_domain(d, mo);
        Mesh f = refine(m);
        BoundaryConditions bc = BoundaryConditions::neumann();
        SpectralResult rc = sphere ? solve_laplace(m, bc, 5) : solve_steklov(m, bc, 4);
        SpectralResult rf = sphere ? solve_laplace(f, bc, 5) : solve_steklov(f, bc, 4);
        auto cert = richardson(rc, rf);
        BoundReport rep = sphere ? check_neumann_stability(d, rf, cert[1]) : check_steklov_stability(d, rf, cert[1]);
        rep.h = mo.h;
        out.perDomain.push_back(rep);
        out.domains.push_back(std::move(d));
    }
    out.bounded = stability_sweep(sphere ? "neumann-sweep" : "steklov-sweep", out.perDomain, 3.0);
    out.floor = fourth_level_floor(sphere ? "neumann-fourth-floor" : "steklov-fourth-floor", out.perDomain,
                                   sphere ? 4.0 : 1.5, slack, required);
    return out;
}

}  // namespace

StabilitySweep neumann_sweep(const std::vector<double>& radii, const MeshOptions& mo, double floorSlack,
                             size_t floorRequired) {
    return stability_run(true, radii, mo, floorSlack, floorRequired);
}

StabilitySweep steklov_sweep(const std::vector<double>& radii, const MeshOptions& mo, double floorSlack,
                             size_t floorRequired) {
    return stability_run(false, radii, mo, floorSlack, floorRequired);
}

std::vector<BoundReport> leqpol_grid(const std::vector<double>& rs, double c) {
    std::vector<BoundReport> out;
    for (double r : rs) {
        double sk = std::log(1 / r) / c;
        double R = 2 * kPi / (sk * sk);
        std::string tag = fnv1a_hex("leqpol:" + Json(r).dump() + ":" + Json(c).dump());
        if (!(r < R)) {
            // holes of radius r no longer fit at spacing R = 2 pi / k
            for (const char* id : {"leqpol-a", "leqpol-b", "leqpol-ode"}) {
                BoundReport x;
                x.id = id;
                x.hash = tag;
                x.verdict = Verdict::Violated;
                x.details = {{"r", r}, {"R", R}, {"k", sk * sk}, {"error", "inadmissible: r >= R under the coupling"}};
                out.push_back(x);
            }
            continue;
        }
        Leqpol L = leqpol_oracle(R, r);
        LeqpolNumeric N = leqpol_integrate(R, r);

        BoundReport a;
        a.id = "leqpol-a";
        a.hash = tag;
        a.lhs = std::abs(L.a + std::log(r));
        a.rhs = 5;
        a.details = {{"r", r}, {"R", R}, {"a", L.a}, {"Q", L.Q}};
        a.verdict = a.lhs <= a.rhs ? Verdict::Holds : Verdict::Violated;
        out.push_back(a);

        BoundReport b;
        b.id = "leqpol-b";
        b.hash = tag;
        b.lhs = std::abs(L.b - 1);
        b.rhs = 2 * std::sqrt(R);
        b.details = {{"r", r}, {"R", R}, {"b", L.b}};
        b.verdict = b.lhs <= b.rhs ? Verdict::Holds : Verdict::Violated;
        out.push_back(b);

        double diff = 0, resid = 0;
        for (size_t i = 1; i < N.t.size(); ++i) {
            diff = std::max(diff, std::abs(L.f(N.t[i]) - N.f[i]));
            resid = std::max(resid, std::abs(L.ode_residual(N.t[i])));
        }
        BoundReport o;
        o.id = "leqpol-ode";
        o.hash = tag;
        o.lhs = std::max(diff, resid);
        o.rhs = 1e-8;
        o.details = {{"r", r}, {"R", R}, {"maxDiff", diff}, {"maxResidual", resid},
                     {"Q", L.Q}, {"Qnumeric", N.Q}};
        o.verdict = o.lhs <= o.rhs ? Verdict::Holds : Verdict::Violated;
        out.push_back(o);
    }
    return out;
}

VitaliRun vitali_threshold(const std::string& group, int f0, unsigned seed, const MeshOptions& mo, double rMin) {
    VitaliRun run;
    auto g = ReflectionGroup::make(Base::Sphere, group_kind_from_string(group));
    run.R = vitali_R(g, f0);
    Json p{{"group", group}, {"f0", f0}, {"seed", seed}};
    for (double q : {1e-2, 1e-3, 1e-4}) {
        p["r"] = q * run.R;
        PerforatedDomain d = make_family("vitali", p);
        Mesh m = mesh_domain(d, mo);
        double l = solve_laplace(m, BoundaryConditions::dirichlet(), 1).eigenvalues[0];
        run.grid.push_back({run.R, q * run.R, l});
    }
    run.Cfit = fit_sphlower_constant(run.grid);
    double Cfloor = 1 / (2 * run.R * run.R * std::log(run.R / rMin));
    run.Cused = std::max(run.Cfit, Cfloor);
    run.r = run.R * std::exp(-1 / (2 * run.Cused * run.R * run.R));
    p["r"] = run.r;
    run.domain = make_family("vitali", p);
    run.mesh = mesh_domain(run.domain, mo);
    run.muBar = mu_bar_certified(run.domain, run.mesh);
    const MuBar& mb = run.muBar;
    run.report = dirichlet_margin(run.domain, *mb.certD, 2.0, run.R, run.Cused);
    run.report.h = mo.h;
    run.report.constants["C_fit"] = run.Cfit;
    run.report.constants["C_used"] = run.Cused;
    run.report.details["holes"] = run.domain.holes.size();
    run.report.details["lambdaN"] = mb.certN->value;
    return run;
}

}  // namespace perfo
