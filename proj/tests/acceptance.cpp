// Acceptance runner: one PASS/FAIL line per criterion.
//
//   acceptance [--only 1,2,...] [--expect-fail 3,...] [--json out.json]
//
// Exit status is 0 when the set of failing criteria equals the --expect-fail
// set (empty by default), 1 otherwise.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <iostream>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include "perfo/pipelines.hpp"

using namespace perfo;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::ostringstream note;
    Json data = Json::array();
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            note << " [failed: " << what << "]";
        }
    }
};

bool violated(const BoundReport& r) { return r.verdict == Verdict::Violated; }

// ---- shared, lazily computed results ------------------------------------------

struct SphereCase {
    PerforatedDomain domain;
    Mesh mesh;
    MuBar mb;
};
struct DiskCase {
    PerforatedDomain domain;
    Mesh mesh;
    SigmaBar sb;
};

GapSample sample_of(double x, const PerforatedDomain& d, const MuBar& mb) {
    return {x, 8 * kPi - mb.certMu->value, mb.certMu->margin, blueprint_hash(d)};
}
GapSample sample_of(double x, const PerforatedDomain& d, const SigmaBar& sb) {
    return {x, 2 * kPi - sb.certSigma->value, sb.certSigma->margin, blueprint_hash(d)};
}

struct Crit4 {
    StabilitySweep sweep;
    double seconds = 0;
};
struct Crit5 {
    std::vector<int> ks{8, 16, 32};
    std::vector<BalanceResult> balance;
    std::vector<SphereCase> cases;
    std::vector<GapSample> samples;
    double seconds = 0;
};
struct Crit6 {
    std::vector<VitaliRun> runs;
};
struct Crit7 {
    std::vector<int> ks{4, 8, 16};
    std::vector<double> cs;
    std::vector<DiskCase> cases;
    std::vector<GapSample> samples;
};
struct Crit8 {
    std::vector<int> ms{4, 8, 16, 32};
    std::vector<DiskCase> cases;
    std::vector<Certified> sigma3D;
    std::vector<GapSample> samples;
};

const double kH = 0.1;
const double kInf = std::numeric_limits<double>::infinity();

template <class T, class F>
const T& memo(std::unique_ptr<T>& slot, F make) {
    if (!slot) slot = std::make_unique<T>(make());
    return *slot;
}

std::unique_ptr<Crit4> g4;
std::unique_ptr<Crit5> g5;
std::unique_ptr<Crit6> g6;
std::unique_ptr<Crit7> g7;
std::unique_ptr<Crit8> g8;

const Crit4& crit4() {
    return memo(g4, [] {
        Crit4 c;
        auto t0 = Clock::now();
        std::vector<double> radii;
        for (double a : {1e-3, 1e-2, 1e-1}) radii.push_back(cap_radius_for_area(a));
        MeshOptions mo;
        mo.h = 0.04;
        c.sweep = neumann_sweep(radii, mo);
        c.seconds = since(t0);
        return c;
    });
}

const Crit5& crit5() {
    return memo(g5, [] {
        Crit5 c;
        auto t0 = Clock::now();
        EvalSettings es;
        es.mesh.h = kH;
        es.certify = true;
        for (int k : c.ks) {
            Json p{{"k", k}, {"c", 0.5}};
            BalanceResult b = balance_radius("equator-poles", p, std::exp(-8.0), std::exp(-1.0), 1e-4, es);
            p["r"] = b.r;
            SphereCase sc;
            sc.domain = make_family("equator-poles", p);
            sc.mesh = mesh_domain(sc.domain, es.mesh);
            sc.mb = mu_bar_certified(sc.domain, sc.mesh);
            c.samples.push_back(sample_of(k, sc.domain, sc.mb));
            c.balance.push_back(b);
            c.cases.push_back(std::move(sc));
        }
        c.seconds = since(t0);
        return c;
    });
}

const Crit6& crit6() {
    return memo(g6, [] {
        Crit6 c;
        MeshOptions mo;
        mo.h = kH;
        mo.grading = 0.5;
        for (int f0 : {30, 60}) c.runs.push_back(vitali_threshold("trivial", f0, 1, mo));
        return c;
    });
}

const Crit7& crit7() {
    return memo(g7, [] {
        Crit7 c;
        EvalSettings es;
        es.mesh.h = kH;
        es.certify = true;
        for (int k : c.ks) {
            Json p{{"k", k}};
            double hi = std::min(3.0, (std::log(1e8) - std::log(double(k))) / k);
            double cc = tune_to_threshold("stek-boundary", p, "c", 0.01, hi, 1.0, es, 25);
            p["c"] = cc;
            DiskCase dc;
            dc.domain = make_family("stek-boundary", p);
            dc.mesh = mesh_domain(dc.domain, es.mesh);
            dc.sb = sigma_bar_certified(dc.domain, dc.mesh);
            c.samples.push_back(sample_of(k, dc.domain, dc.sb));
            c.cs.push_back(cc);
            c.cases.push_back(std::move(dc));
        }
        return c;
    });
}

const Crit8& crit8() {
    return memo(g8, [] {
        Crit8 c;
        for (int m : c.ms) {
            DiskCase dc;
            dc.domain = make_family("stek-diameter", Json{{"m", m}});
            MeshOptions mo;
            mo.h = kH;
            dc.mesh = mesh_domain(dc.domain, mo);
            dc.sb = sigma_bar_certified(dc.domain, dc.mesh);
            auto bc = BoundaryConditions::dirichlet();
            auto s3 = richardson(solve_steklov(dc.mesh, bc, 3), solve_steklov(refine(dc.mesh), bc, 3));
            c.sigma3D.push_back(s3[2]);
            c.samples.push_back(sample_of(m, dc.domain, dc.sb));
            c.cases.push_back(std::move(dc));
        }
        return c;
    });
}

// ---- criteria -------------------------------------------------------------------

void c1(Outcome& o) {
    {
        auto t0 = Clock::now();
        PerforatedDomain s;
        Mesh m = mesh_sphere(s, 0.03);
        auto r = richardson(solve_laplace(m, BoundaryConditions::neumann(), 5),
                            solve_laplace(refine(m), BoundaryConditions::neumann(), 5));
        double secs = since(t0);
        const double want[] = {0, 2, 2, 2, 6};
        double worst = std::abs(r[0].value);
        for (int i = 1; i < 5; ++i) worst = std::max(worst, std::abs(r[i].value - want[i]) / want[i]);
        o.note << "sphere worst rel err " << worst << " in " << secs << " s;";
        o.require(worst <= 1e-3, "sphere spectrum");
        o.require(secs <= 60, "sphere runtime");
    }
    {
        auto t0 = Clock::now();
        PerforatedDomain d;
        d.base = Base::Disk;
        Mesh m = mesh_disk(d, 0.03);
        auto r = richardson(solve_steklov(m, BoundaryConditions::neumann(), 5),
                            solve_steklov(refine(m), BoundaryConditions::neumann(), 5));
        double secs = since(t0);
        const double want[] = {0, 1, 1, 2, 2};
        double worst = std::abs(r[0].value);
        for (int i = 1; i < 5; ++i) worst = std::max(worst, std::abs(r[i].value - want[i]) / want[i]);
        o.note << " disk worst rel err " << worst << " in " << secs << " s";
        o.require(worst <= 1e-3, "disk spectrum");
        o.require(secs <= 60, "disk runtime");
    }
}

void c2(Outcome& o) {
    Mesh m = mesh_half_disk(0.05);
    Mesh f = refine(m);
    auto bc = BoundaryConditions::neumann();
    bc.cut = BC::Dirichlet;
    auto rf = solve_steklov(f, bc, 2);
    auto r = richardson(solve_steklov(m, bc, 2), rf);
    o.note << "sigma1 " << r[0].value << " sigma2 " << r[1].value << " delta0 " << r[0].value / r[1].value;
    o.require(std::abs(r[0].value - 1) <= 1e-2, "sigma1");
    o.require(std::abs(r[1].value - 2) <= 1e-2, "sigma2");

    // separated solutions r^n sin(n theta): y and 2xy
    SpMat M = assemble(f).M;
    for (int n = 1; n <= 2; ++n) {
        Eigen::VectorXd u(f.vertex_count());
        for (size_t i = 0; i < f.vertex_count(); ++i) {
            const Vec3& x = f.vertices[i];
            u[i] = n == 1 ? x.y() : 2 * x.x() * x.y();
        }
        Eigen::VectorXd v = rf.eigenvectors.col(n - 1);
        double cosang = std::abs(u.dot(M * v)) / std::sqrt(u.dot(M * u) * v.dot(M * v));
        o.note << " corr" << n << " " << cosang;
        o.require(cosang >= 0.999, "eigenfunction " + std::to_string(n) + " matches r^n sin(n theta)");
    }
}

void c3(Outcome& o) {
    auto reps = leqpol_grid({1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8});
    int bad = 0;
    for (const auto& r : reps) {
        if (!violated(r)) continue;
        ++bad;
        o.note << r.id << "@r=" << r.details.value("r", 0.0) << " ";
        if (r.details.contains("error")) o.note << "(" << r.details["error"].get<std::string>() << ") ";
    }
    o.note << bad << " of " << reps.size() << " reports violated";
    for (const auto& r : reps) o.data.push_back(to_json(r));
    o.require(bad == 0, "all radii admissible and within bounds");
}

void c4(Outcome& o) {
    const auto& c = crit4();
    for (const auto& r : c.sweep.perDomain) o.note << "C_emp " << r.constants.value("C_emp", 0.0) << " ";
    o.note << "spread " << c.sweep.bounded.lhs << ", floor " << to_string(c.sweep.floor.verdict) << ", " << c.seconds
           << " s";
    o.require(!violated(c.sweep.bounded), "bounded C_emp");
    o.require(!violated(c.sweep.floor), "fourth-level floor");
    o.require(c.seconds <= 600, "runtime");
}

void c5(Outcome& o) {
    const auto& c = crit5();
    std::vector<double> x, y;
    for (size_t i = 0; i < c.ks.size(); ++i) {
        const auto& b = c.balance[i];
        o.note << "k=" << c.ks[i] << " r*=" << b.r << " |D-N|=" << std::abs(b.first - b.second)
               << " gap=" << c.samples[i].gap << "; ";
        o.require(std::abs(b.first - b.second) <= 1e-2, "balance at k=" + std::to_string(c.ks[i]));
        x.push_back(std::sqrt(double(c.ks[i])));
        y.push_back(std::log(1 / b.r));
    }
    DecayFit line = fit_line(x, y);
    DecayFit gaps = fit_decay(c.samples, DecayModel::ExpInSqrtX, 3);
    o.note << "log(1/r*) ~ sqrt k: slope " << line.rate << " R2 " << line.r2 << "; gap exp-sqrt R2 " << gaps.r2
           << "; " << c.seconds << " s";
    o.require(line.r2 >= 0.9 && line.rate > 0, "radius regression");
    o.require(gaps.r2 >= 0.85, "gap fit");
    o.require(c.seconds <= 1800, "runtime");
}

void c6(Outcome& o) {
    for (const auto& r : crit6().runs) {
        o.note << "holes=" << r.report.details.value("holes", 0) << " R=" << r.R << " r=" << r.r << " C_fit=" << r.Cfit
               << " C_used=" << r.Cused << " lambdaD=" << r.report.lhs << " +- " << r.report.margin << " ("
               << to_string(r.report.verdict) << "); ";
        o.data.push_back(to_json(r.report));
        o.require(!violated(r.report), "lambda_D >= 2 - margin");
    }
}

void c7(Outcome& o) {
    const auto& c = crit7();
    for (size_t i = 0; i < c.ks.size(); ++i) {
        double sD = c.cases[i].sb.certD->value;
        o.note << "k=" << c.ks[i] << " c=" << c.cs[i] << " sigmaD=" << sD << " gap=" << c.samples[i].gap << "; ";
        o.require(sD >= 0.98, "sigma_D at k=" + std::to_string(c.ks[i]));
    }
    DecayFit f = fit_decay(c.samples, DecayModel::ExpInX, 3);
    o.note << "exp-in-k rate " << f.rate << " R2 " << f.r2;
    o.require(f.r2 >= 0.85, "gap fit");
}

void c8(Outcome& o) {
    const auto& c = crit8();
    DecayFit f = fit_decay(c.samples, DecayModel::Power);
    for (size_t i = 0; i < c.ms.size(); ++i)
        o.note << "m=" << c.ms[i] << " gap=" << c.samples[i].gap << " sigma3D=" << c.sigma3D[i].value << "; ";
    o.note << "exponent " << f.rate << " R2 " << f.r2;
    o.require(f.rate >= -1.4 && f.rate <= -0.6, "power exponent");
    for (size_t i = c.ms.size() - 2; i < c.ms.size(); ++i)
        o.require(c.sigma3D[i].value >= 1.3, "sigma3D at m=" + std::to_string(c.ms[i]));
}

void c9(Outcome& o) {
    int checked = 0, bad = 0;
    auto tally = [&](const BoundReport& r, const std::string& where) {
        ++checked;
        bool finite = !r.constants.contains("C") || (r.constants["C"].is_number() &&
                                                      std::isfinite(r.constants["C"].get<double>()));
        if (violated(r) || !finite) {
            ++bad;
            o.note << r.id << " violated on " << where << "; ";
        }
        o.data.push_back(to_json(r));
    };
    auto sphere = [&](const PerforatedDomain& d, const Mesh& m, const MuBar& mb, const std::string& where) {
        tally(stab_ineq_check(d, m, mb), where);
        tally(hole_area_check(d, mb), where);
    };
    auto disk = [&](const PerforatedDomain& d, const Mesh& m, const SigmaBar& sb, const std::string& where) {
        tally(steklov_stab_check(d, m, sb), where);
        tally(steklov_hole_est(d, sb), where);
    };

    for (const auto& d : crit4().sweep.domains) {
        Mesh m = mesh_sphere(d, kH);
        sphere(d, m, mu_bar_certified(d, m), "single cap");
    }
    for (const auto& c : crit5().cases) sphere(c.domain, c.mesh, c.mb, "equator-poles");
    for (const auto& r : crit6().runs) sphere(r.domain, r.mesh, r.muBar, "vitali");
    for (const auto& c : crit7().cases) disk(c.domain, c.mesh, c.sb, "stek-boundary");
    for (const auto& c : crit8().cases) disk(c.domain, c.mesh, c.sb, "stek-diameter");
    o.note << checked << " reports, " << bad << " violated";
    o.require(bad == 0, "no violated stability reports");
}

void c10(Outcome& o) {
    // sphere: equator-poles samples plus a certified optimizer output
    {
        const auto& c = crit5();
        double c5 = fit_decay(c.samples, DecayModel::ExpInX, 3).rate;
        auto samples = c.samples;
        OptProblem p;
        p.family = "equator-poles";
        p.params = Json{{"k", 8}, {"c", 0.5}};
        p.lower = {-8.0};
        p.upper = {-1.0};
        p.x0 = {std::log(c.balance[0].r)};
        p.hSchedule = {kH};
        p.tol = 1e-3;
        p.maxEvals = 30;
        p.certifySearch = true;
        OptTrace t = maximize(p);
        if (t.certified.ok) samples.push_back({8, t.certified.gap, t.certified.margin, t.certified.hash});
        BoundReport r = gap_floor_check("gap-floor-sphere", samples, c5);
        o.note << "sphere c=" << c5 << " worst gap " << r.lhs << " vs floor " << r.rhs << " (optimizer gap "
               << (t.certified.ok ? t.certified.gap : NAN) << "); ";
        o.data.push_back(to_json(r));
        o.require(t.certified.ok, "optimizer output certified");
        o.require(!violated(r), "sphere floor");
    }
    // disk: boundary-hole rate applied to both Steklov families
    {
        double c7 = fit_decay(crit7().samples, DecayModel::ExpInX, 3).rate;
        auto samples = crit7().samples;
        for (const auto& s : crit8().samples) samples.push_back(s);
        BoundReport r = gap_floor_check("gap-floor-disk", samples, c7);
        o.note << "disk c=" << c7 << " worst gap " << r.lhs << " vs floor " << r.rhs;
        o.data.push_back(to_json(r));
        o.require(!violated(r), "disk floor");
    }
}

// -- criterion 11 helpers

TypeSignature type_of(int f, std::vector<int> e, std::map<std::pair<int, int>, int> v = {}) {
    TypeSignature t;
    t.f = f;
    t.e = std::move(e);
    t.v = std::move(v);
    return t;
}

bool scherk_table() {
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
        {&z2, type_of(1, {3}), G},
        {&z2, type_of(2, {}), G},
        {&dk, type_of(1, {}), S},
        {&dk, type_of(0, {1, 0}), S},
        {&dk, type_of(0, {0, 1}), S},
        {&dk, type_of(0, {}, {{{0, 1}, 1}}), G},
        {&dk, type_of(0, {1, 1}), G},
        {&z2d, type_of(0, {0, 0, 2}), S},
        {&z2d, type_of(0, {0, 0, 1}, {{{0, 2}, 1}}), S},
        {&z2d, type_of(0, {0, 0, 0}, {{{1, 2}, 1}}), S},
        {&z2d, type_of(1, {0, 0, 1}), G},
        {&z2d, type_of(0, {1, 0, 1}), G},
        {&triv, type_of(3, {}), G},
        {&tet, type_of(0, {1, 0, 0}), G},
        {&oct, type_of(1, {}), G},
        {&ico, type_of(0, {0, 0, 1}), G},
    };
    bool ok = true;
    for (const auto& row : table) ok = ok && classify_scherk(*row.g, row.b) == row.want;
    return ok;
}

bool round_trips() {
    bool ok = true;
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> u(0, 2);
    auto dk = ReflectionGroup::make(Base::Sphere, GroupKind::Dk, 4);
    auto z2d = ReflectionGroup::make(Base::Sphere, GroupKind::Z2xDk, 3);
    for (int trial = 0; trial < 12; ++trial) {
        TypeSignature b = type_of(u(rng), {u(rng), u(rng)}, {{{0, 1}, u(rng) % 2}});
        if (b.total() == 0) b.f = 1;
        ok = ok && recompute_type(holes_from_type(dk, b, std::vector<double>(b.total(), 0.02), 11 + trial)) == b;
        TypeSignature c = type_of(u(rng) % 2, {0, 0, u(rng)}, {{{0, 2}, u(rng) % 2}, {{1, 2}, u(rng) % 2}});
        if (c.total() == 0) c.e[2] = 1;
        ok = ok && recompute_type(holes_from_type(z2d, c, std::vector<double>(c.total(), 0.02), 5 + trial)) == c;
    }
    // orbits are group-invariant
    for (auto kind : {GroupKind::Dk, GroupKind::Z2xDk, GroupKind::Octahedral, GroupKind::Icosahedral}) {
        auto g = ReflectionGroup::make(Base::Sphere, kind, 4);
        std::vector<HoleSpec> seeds;
        for (const Vec3& x : {Vec3(0.2, 0.05, 0.9), Vec3(0.7, 0.1, 0.3)}) {
            HoleSpec h;
            Vec3 y = x.normalized();
            h.center = g.to_chamber(y) * y;
            h.radius = 0.001;
            seeds.push_back(h);
        }
        auto holes = expand_orbit(g, seeds);
        for (const auto& el : g.elements) {
            auto moved = holes;
            for (auto& h : moved) h.center = el * h.center;
            ok = ok && same_hole_set(Base::Sphere, holes, moved);
        }
    }
    return ok;
}

// Random caps and the same caps enlarged (plus sometimes an extra one): the
// smaller domain must have the larger lambda_1^D.
int monotone_pairs(int pairs, std::ostringstream& note) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> U(0, 1);
    std::normal_distribution<double> N;
    auto randomDir = [&] { return Vec3(N(rng), N(rng), N(rng)).normalized(); };
    int good = 0, done = 0;
    while (done < pairs) {
        PerforatedDomain big;
        int n = 1 + int(U(rng) * 3);
        for (int i = 0; i < n; ++i) {
            HoleSpec h;
            h.center = randomDir();
            h.radius = 0.12 + 0.2 * U(rng);
            big.holes.push_back(h);
        }
        PerforatedDomain small = big;
        for (auto& h : small.holes) h.radius *= 1.15 + 0.4 * U(rng);
        if (U(rng) < 0.5) {
            HoleSpec h;
            h.center = randomDir();
            h.radius = 0.15;
            small.holes.push_back(h);
        }
        try {
            validate(big, Disjointness::Simple);
            validate(small, Disjointness::Simple);
        } catch (const DomainError&) {
            continue;
        }
        auto bc = BoundaryConditions::dirichlet();
        double lb = solve_laplace(mesh_sphere(big, 0.15), bc, 1).eigenvalues[0];
        double ls = solve_laplace(mesh_sphere(small, 0.15), bc, 1).eigenvalues[0];
        ++done;
        if (ls > lb) ++good;
        else note << "[non-monotone pair " << done << ": " << lb << " vs " << ls << "] ";
    }
    return good;
}

// Max sine of the angle between g(E) and E over eigenspace clusters E and group elements g.
double invariance_angle(std::ostringstream& note) {
    auto d = equator_poles(6, 0.8);
    Mesh m = mesh_sphere(d, 0.2);
    int count = 10;
    auto res = solve_laplace(m, BoundaryConditions::neumann(), count);
    SpMat M = assemble(m).M;
    size_t n = m.vertex_count();

    std::vector<std::vector<int>> perms;
    for (const auto& g : d.group->elements) {
        std::vector<int> p(n, -1);
        for (size_t i = 0; i < n; ++i) {
            Vec3 y = g * m.vertices[i];
            double best = kInf;
            for (size_t j = 0; j < n; ++j) {
                double e = (m.vertices[j] - y).squaredNorm();
                if (e < best) best = e, p[i] = int(j);
            }
            if (best > 1e-18) return kInf;
        }
        perms.push_back(std::move(p));
    }

    double worst = 0;
    int clusters = 0;
    const auto& ev = res.eigenvalues;
    for (int a = 0; a < count;) {
        int b = a + 1;
        while (b < count && std::abs(ev[b] - ev[a]) <= 1e-7 * std::max(1.0, std::abs(ev[a]))) ++b;
        if (b == count) break;  // cluster may be cut off
        Eigen::MatrixXd V = res.eigenvectors.middleCols(a, b - a);
        Eigen::MatrixXd G = V.transpose() * (M * V);
        V = V * Eigen::LLT<Eigen::MatrixXd>(G).matrixU().solve(Eigen::MatrixXd::Identity(b - a, b - a));
        for (const auto& p : perms)
            for (int c = 0; c < V.cols(); ++c) {
                Eigen::VectorXd w(n);
                for (size_t i = 0; i < n; ++i) w[i] = V(p[i], c);
                Eigen::VectorXd r = w - V * (V.transpose() * (M * w));
                worst = std::max(worst, std::sqrt(std::max(0.0, r.dot(M * r)) / w.dot(M * w)));
            }
        ++clusters;
        a = b;
    }
    note << clusters << " clusters over " << perms.size() << " elements; ";
    return worst;
}

void mesh_orders(double& lo, double& hi) {
    PerforatedDomain d;
    for (double z : {1.0, -1.0}) {
        HoleSpec h;
        h.center = Vec3(0, 0, z);
        h.radius = 0.4;
        d.holes.push_back(h);
    }
    validate(d);
    auto ex = exact_measures(d);
    Mesh m = mesh_sphere(d, 0.2);
    std::vector<double> ea, el;
    for (int lvl = 0; lvl < 4; ++lvl) {
        ea.push_back(std::abs(m.area() - ex.area));
        el.push_back(std::abs(m.boundary_length() - ex.boundaryLength));
        m = refine(m);
    }
    lo = kInf;
    hi = -kInf;
    for (size_t i = 0; i + 1 < ea.size(); ++i)
        for (double p : {std::log2(ea[i] / ea[i + 1]), std::log2(el[i] / el[i + 1])}) {
            lo = std::min(lo, p);
            hi = std::max(hi, p);
        }
}

void c11(Outcome& o) {
    bool scherk = scherk_table();
    bool trips = round_trips();
    std::ostringstream extra;
    int mono = monotone_pairs(20, extra);
    double angle = invariance_angle(extra);
    double lo, hi;
    mesh_orders(lo, hi);
    o.note << "scherk " << (scherk ? "exact" : "MISMATCH") << ", round trips " << (trips ? "exact" : "MISMATCH")
           << ", monotone " << mono << "/20, invariance sin(angle) " << angle << ", mesh orders [" << lo << ", " << hi
           << "] " << extra.str();
    o.require(scherk, "scherk table");
    o.require(trips, "round trips");
    o.require(mono == 20, "dirichlet monotonicity");
    o.require(angle <= 1e-6, "group invariance");
    o.require(lo >= 1.5 && hi <= 2.5, "mesh convergence order");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::vector<int> only, expectFail;
    std::string jsonOut;
    app.add_option("--only", only, "Run only these criteria")->delimiter(',');
    app.add_option("--expect-fail", expectFail, "Criteria known to fail")->delimiter(',');
    app.add_option("--json", jsonOut, "Write per-criterion results here");
    CLI11_PARSE(app, argc, argv);

    std::vector<std::pair<int, void (*)(Outcome&)>> all{{1, c1}, {2, c2}, {3, c3}, {4, c4},  {5, c5}, {6, c6},
                                                        {7, c7}, {8, c8}, {9, c9}, {10, c10}, {11, c11}};
    std::set<int> want(only.begin(), only.end()), expected(expectFail.begin(), expectFail.end()), failed;
    Json report = Json::object();
    for (auto& [id, fn] : all) {
        if (!want.empty() && !want.count(id)) continue;
        Outcome o;
        auto t0 = Clock::now();
        try {
            fn(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.note << " [exception: " << e.what() << "]";
        }
        double secs = since(t0);
        if (!o.pass) failed.insert(id);
        std::cout << "CRITERION " << id << ": " << (o.pass ? "PASS" : "FAIL") << " (" << std::fixed
                  << std::setprecision(1) << secs << " s) " << std::defaultfloat << std::setprecision(6)
                  << o.note.str() << std::endl;
        report[std::to_string(id)] = {{"pass", o.pass}, {"seconds", secs}, {"note", o.note.str()}, {"data", o.data}};
    }
    if (!jsonOut.empty()) std::ofstream(jsonOut) << report.dump(2) << "\n";

    std::set<int> expectedRun;
    for (int id : expected)
        if (want.empty() || want.count(id)) expectedRun.insert(id);
    int passed = 0, total = 0;
    for (auto& [id, fn] : all)
        if (want.empty() || want.count(id)) ++total, passed += !failed.count(id);
    std::cout << passed << "/" << total << " criteria passed";
    if (!expectedRun.empty()) std::cout << " (expected to fail: " << expectedRun.size() << ")";
    std::cout << std::endl;
    return failed == expectedRun ? 0 : 1;
}
