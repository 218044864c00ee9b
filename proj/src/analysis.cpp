#include "perfo/analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace perfo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
using Vec = Eigen::VectorXd;

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Json jnum(double x) {
    if (std::isfinite(x)) return x;
    return std::isnan(x) ? Json("nan") : Json(x > 0 ? "inf" : "-inf");
}

double value_of(const std::optional<Certified>& c, double raw) { return c ? c->value : raw; }
double margin_of(const std::optional<Certified>& c) { return c ? c->margin : 0.0; }

// H^1 norm and integral of a nodal field.
struct Norms {
    SpMat K, M;
    double integral(const Vec& u) const { return Vec::Ones(u.size()).dot(M * u); }
    double h1(const Vec& u) const { return std::sqrt(u.dot(M * u) + u.dot(K * u)); }
};

Norms norms(const Mesh& m) {
    Operators ops = assemble(m);
    return {std::move(ops.K), std::move(ops.M)};
}

Vec nodal(const Mesh& m, const std::function<double(const Vec3&)>& f) {
    Vec u(m.vertices.size());
    for (size_t i = 0; i < m.vertices.size(); ++i) u[i] = f(m.vertices[i]);
    return u;
}

// One representative hole per radius class (up to `limit`), so the battery stays small.
std::vector<int> cutoff_holes(const Mesh& m, size_t limit) {
    std::vector<int> out;
    std::vector<double> seen;
    for (size_t i = 0; i < m.holes.size() && out.size() < limit; ++i) {
        double r = m.holes[i].radius;
        bool dup = false;
        for (double s : seen) dup = dup || std::abs(s - r) <= 1e-12 * r;
        if (dup) continue;
        seen.push_back(r);
        out.push_back(static_cast<int>(i));
    }
    return out;
}

struct BatteryItem {
    std::string name;
    Vec u;
};

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::HoldsWithFittedConstant: return "holds-with-fitted-constant";
        case Verdict::Violated: return "violated";
    }
    return "?";
}

Json to_json(const BoundReport& r) {
    Json j;
    j["id"] = r.id;
    j["lhs"] = jnum(r.lhs);
    j["rhs"] = jnum(r.rhs);
    j["margin"] = jnum(r.margin);
    j["constants"] = r.constants;
    j["verdict"] = to_string(r.verdict);
    j["provenance"] = {{"hash", r.hash}, {"h", r.h}, {"tol", r.tol}};
    j["details"] = r.details;
    return j;
}

std::string csv_header() { return "id,lhs,rhs,margin,verdict,hash"; }

std::string csv_row(const BoundReport& r) {
    return r.id + "," + num(r.lhs) + "," + num(r.rhs) + "," + num(r.margin) + "," + to_string(r.verdict) + "," +
           r.hash;
}

// ---- stability -------------------------------------------------------------------

BoundReport check_neumann_stability(const PerforatedDomain& d, const SpectralResult& neumann,
                                    const std::optional<Certified>& lambda1) {
    if (d.base != Base::Sphere) throw std::invalid_argument("check_neumann_stability: sphere domains only");
    if (neumann.eigenvalues.size() < 2) throw std::invalid_argument("check_neumann_stability: need lambda_1");
    Measures ms = exact_measures(d);
    double l1 = value_of(lambda1, neumann.eigenvalues[1]);
    BoundReport r;
    r.id = "neumann-stability";
    r.hash = blueprint_hash(d);
    r.h = neumann.h;
    r.margin = margin_of(lambda1) * ms.area;
    r.lhs = 8 * kPi - l1 * ms.area;
    r.details["lambda1"] = l1;
    r.details["area"] = ms.area;
    r.details["holeArea"] = ms.holeArea;
    if (neumann.eigenvalues.size() >= 5) r.details["lambda4"] = neumann.eigenvalues[4];
    if (ms.holeArea == 0) {
        r.rhs = 0;
        r.constants["C_emp"] = 0.0;
        r.verdict = std::abs(r.lhs) <= r.margin + 1e-6 * 8 * kPi ? Verdict::Holds : Verdict::Violated;
        return r;
    }
    double C = r.lhs / ms.holeArea;
    r.constants["C_emp"] = C;
    r.constants["C_emp_margin"] = r.margin / ms.holeArea;
    r.rhs = C * ms.holeArea;
    r.verdict = std::isfinite(C) ? Verdict::HoldsWithFittedConstant : Verdict::Violated;
    return r;
}

BoundReport check_steklov_stability(const PerforatedDomain& d, const SpectralResult& steklovN,
                                    const std::optional<Certified>& sigma1) {
    if (d.base != Base::Disk) throw std::invalid_argument("check_steklov_stability: disk domains only");
    if (steklovN.eigenvalues.size() < 2) throw std::invalid_argument("check_steklov_stability: need sigma_1");
    Measures ms = exact_measures(d);
    double s1 = value_of(sigma1, steklovN.eigenvalues[1]);
    double size = ms.holeArea + ms.holeCircleArc;
    BoundReport r;
    r.id = "steklov-stability";
    r.hash = blueprint_hash(d);
    r.h = steklovN.h;
    r.margin = margin_of(sigma1);
    r.lhs = 1 - s1;
    r.details["sigma1"] = s1;
    r.details["holeArea"] = size;
    r.details["area"] = ms.area;
    if (steklovN.eigenvalues.size() >= 4) r.details["lambda4"] = steklovN.eigenvalues[3];
    if (size == 0) {
        r.rhs = 0;
        r.constants["C_emp"] = 0.0;
        r.verdict = std::abs(r.lhs) <= r.margin + 1e-6 ? Verdict::Holds : Verdict::Violated;
        return r;
    }
    double C = r.lhs / size;
    r.constants["C_emp"] = C;
    r.constants["C_emp_margin"] = r.margin / size;
    r.rhs = C * size;
    r.verdict = std::isfinite(C) ? Verdict::HoldsWithFittedConstant : Verdict::Violated;
    return r;
}

BoundReport stability_sweep(const std::string& id, const std::vector<BoundReport>& perDomain, double factor) {
    BoundReport r;
    r.id = id;
    if (perDomain.empty()) throw std::invalid_argument("stability_sweep: empty sweep");
    double hi = -kInf, lo = kInf, hiSlack = 0, loSlack = 0;
    Json cs = Json::array();
    std::string digest;
    for (const auto& p : perDomain) {
        double c = p.constants.value("C_emp", 0.0);
        double s = p.constants.value("C_emp_margin", 0.0);
        cs.push_back(c);
        digest += p.hash;
        if (p.details.value("holeArea", 0.0) == 0) continue;
        if (std::abs(c) > hi) hi = std::abs(c), hiSlack = s;
        if (std::abs(c) < lo) lo = std::abs(c), loSlack = s;
    }
    r.hash = fnv1a_hex(digest);
    r.constants["C_emp"] = cs;
    if (!std::isfinite(hi)) {
        r.verdict = Verdict::Holds;
        return r;
    }
    double ratio = lo > 0 ? hi / lo : kInf;
    double best = std::max(0.0, hi - hiSlack) / (lo + loSlack);
    r.lhs = ratio;
    r.rhs = factor;
    r.margin = ratio - best;
    r.constants["C_max"] = hi;
    r.constants["C_min"] = lo;
    r.verdict = best < factor ? Verdict::HoldsWithFittedConstant : Verdict::Violated;
    return r;
}

BoundReport fourth_level_floor(const std::string& id, const std::vector<BoundReport>& perDomain, double floor,
                               double slack, size_t required) {
    std::vector<const BoundReport*> v;
    for (const auto& p : perDomain)
        if (p.details.contains("lambda4")) v.push_back(&p);
    std::sort(v.begin(), v.end(), [](auto* a, auto* b) {
        return a->details.value("holeArea", 0.0) < b->details.value("holeArea", 0.0);
    });
    BoundReport r;
    r.id = id;
    r.rhs = floor - slack;
    std::string digest;
    double eps0 = 0, worst = kInf;
    bool prefix = true, ok = v.size() >= required;
    Json levels = Json::array();
    for (size_t i = 0; i < v.size(); ++i) {
        double l4 = v[i]->details["lambda4"].get<double>();
        double a = v[i]->details.value("holeArea", 0.0);
        digest += v[i]->hash;
        levels.push_back({{"holeArea", a}, {"lambda4", l4}});
        bool pass = l4 >= floor - slack;
        if (i < required) {
            ok = ok && pass;
            worst = std::min(worst, l4);
        }
        if (prefix && pass) eps0 = a;
        prefix = prefix && pass;
    }
    r.hash = fnv1a_hex(digest);
    r.lhs = std::isfinite(worst) ? worst : 0.0;
    r.constants["epsilon0"] = eps0;
    r.details["levels"] = levels;
    r.verdict = ok ? Verdict::Holds : Verdict::Violated;
    return r;
}

// ---- Dirichlet --------------------------------------------------------------------

BoundReport dirichlet_margin(const PerforatedDomain& d, const Certified& lambda, double threshold,
                             std::optional<double> R, double C) {
    BoundReport r;
    r.id = "dirichlet-threshold";
    r.hash = blueprint_hash(d);
    r.lhs = lambda.value;
    r.rhs = threshold;
    r.margin = lambda.margin;
    r.details["excess"] = jnum(lambda.value - threshold);
    if (R && !d.holes.empty()) {
        double rmin = kInf;
        for (const auto& h : d.holes) rmin = std::min(rmin, h.radius);
        double pred = *R * *R * std::log(*R / rmin);
        r.details["R"] = *R;
        r.details["r"] = rmin;
        r.details["prediction"] = C * pred;
        r.details["predictionReciprocal"] = 1.0 / (C * pred);
        r.details["ratio"] = (1.0 / lambda.value) / pred;
    }
    r.verdict = lambda.value >= threshold - lambda.margin ? Verdict::Holds : Verdict::Violated;
    return r;
}

double fit_sphlower_constant(const std::vector<std::array<double, 3>>& grid) {
    double C = 0;
    for (const auto& [R, r, l] : grid) {
        if (!(r > 0 && R > r && l > 0)) throw std::invalid_argument("fit_sphlower_constant: need 0 < r < R, lambda > 0");
        C = std::max(C, (1.0 / l) / (R * R * std::log(R / r)));
    }
    return C;
}

// ---- radial solution --------------------------------------------------------------

double Leqpol::f(double t) const { return a * std::cos(t) + b * (1 + std::cos(t) * std::log(std::tan(t / 2))); }

double Leqpol::df(double t) const {
    return -a * std::sin(t) + b * (1 / std::tan(t) - std::sin(t) * std::log(std::tan(t / 2)));
}

double Leqpol::d2f(double t) const {
    double s = std::sin(t);
    return -a * std::cos(t) + b * (-1 / (s * s) - std::cos(t) * std::log(std::tan(t / 2)) - 1);
}

double Leqpol::ode_residual(double t) const {
    double f2 = d2f(t), f1 = df(t) / std::tan(t), f0 = 2 * f(t);
    double scale = std::abs(f2) + std::abs(f1) + std::abs(f0);
    return (f2 + f1 + f0) / (scale > 0 ? scale : 1.0);
}

Leqpol leqpol_oracle(double R, double r) {
    if (!(r > 0 && r < R && R < kPi / 40)) throw std::invalid_argument("leqpol_oracle: need 0 < r < R < pi/40");
    Leqpol L;
    L.T = kPi / 2 - 20 * R;
    if (!(L.T > r)) throw std::invalid_argument("leqpol_oracle: singular system (pi/2 - 20R <= r)");
    auto g = [](double t) { return 1 + std::cos(t) * std::log(std::tan(t / 2)); };
    Eigen::Matrix2d A;
    A << std::cos(r), g(r), std::cos(L.T), g(L.T);
    double det = A.determinant();
    if (!(std::abs(det) > 1e-14 * A.cwiseAbs().maxCoeff() * A.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("leqpol_oracle: singular system");
    Eigen::Vector2d x = A.fullPivLu().solve(Eigen::Vector2d(0, 1));
    L.a = x[0];
    L.b = x[1];
    L.Q = -L.df(L.T);
    return L;
}

LeqpolNumeric leqpol_integrate(double R, double r, int steps) {
    if (!(r > 0 && r < R && R < kPi / 40)) throw std::invalid_argument("leqpol_integrate: need 0 < r < R < pi/40");
    double T = kPi / 2 - 20 * R;
    if (!(T > r)) throw std::invalid_argument("leqpol_integrate: empty interval");
    // y = (f, f_s) in s = log t
    auto rhs = [](double s, const Eigen::Vector2d& y) {
        double t = std::exp(s);
        return Eigen::Vector2d(y[1], y[1] * (1 - t / std::tan(t)) - 2 * t * t * y[0]);
    };
    double s0 = std::log(r), s1 = std::log(T), ds = (s1 - s0) / steps;
    Eigen::Vector2d y(0, 1);
    LeqpolNumeric out;
    int every = std::max(1, steps / 200);
    out.t.push_back(r);
    out.f.push_back(0);
    for (int i = 0; i < steps; ++i) {
        double s = s0 + i * ds;
        Eigen::Vector2d k1 = rhs(s, y);
        Eigen::Vector2d k2 = rhs(s + ds / 2, y + ds / 2 * k1);
        Eigen::Vector2d k3 = rhs(s + ds / 2, y + ds / 2 * k2);
        Eigen::Vector2d k4 = rhs(s + ds, y + ds * k3);
        y += ds / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
        if ((i + 1) % every == 0 || i + 1 == steps) {
            out.t.push_back(i + 1 == steps ? T : std::exp(s + ds));
            out.f.push_back(y[0]);
        }
    }
    double scale = y[0];
    for (double& v : out.f) v /= scale;
    out.Q = -(y[1] / scale) / T;
    return out;
}

// ---- log cutoff ---------------------------------------------------------------------

double logcutoff_flat_energy(double r, int holes) {
    if (!(r > 0 && r < 1)) throw std::invalid_argument("logcutoff_flat_energy: need 0 < r < 1");
    return holes * 4 * kPi / std::abs(std::log(r));
}

Vec logcutoff_field(const Mesh& m, int hole) {
    if (hole < 0 || hole >= static_cast<int>(m.holes.size())) throw std::out_of_range("logcutoff_field: bad hole index");
    const HoleSpec& H = m.holes[hole];
    double L = std::abs(std::log(H.radius));
    return nodal(m, [&](const Vec3& x) {
        double d = std::max(distance(m.base, x, H.center), H.radius);
        return std::clamp(2 / L * std::log(d / H.radius), 0.0, 1.0);
    });
}

double logcutoff_fem_energy(const Mesh& m, int hole) {
    Vec u = logcutoff_field(m, hole);
    SpMat K = assemble(m).K;
    return u.dot(K * u);
}

// ---- stability inequalities -------------------------------------------------------

double coordinate_rayleigh_bound(const Mesh& m) {
    Norms N = norms(m);
    double area = N.integral(Vec::Ones(m.vertices.size()));
    double best = kInf;
    for (int c = 0; c < (m.base == Base::Sphere ? 3 : 2); ++c) {
        Vec u = nodal(m, [c](const Vec3& x) { return x[c]; });
        u.array() -= N.integral(u) / area;
        double den = u.dot(N.M * u);
        if (den > 0) best = std::min(best, u.dot(N.K * u) / den);
    }
    return best;
}

namespace {

BoundReport fit_battery(const std::string& id, const std::vector<BatteryItem>& items,
                        const std::function<double(const Vec&)>& lhsOf, const Norms& N, double delta,
                        double deltaMargin) {
    BoundReport r;
    r.id = id;
    Json per = Json::array();
    double C = 0, worst = 0;
    for (const auto& it : items) {
        double lhs = lhsOf(it.u);
        double nrm = N.h1(it.u);
        per.push_back({{"psi", it.name}, {"lhs", lhs}, {"norm", nrm}});
        if (nrm > 0) worst = std::max(worst, lhs / nrm);
    }
    r.lhs = worst;
    r.margin = deltaMargin;
    r.details["battery"] = per;
    r.details["delta"] = delta;
    if (delta < -deltaMargin) {
        r.verdict = Verdict::Violated;
        r.details["reason"] = "negative gap beyond margin";
        return r;
    }
    double sd = std::sqrt(std::max(delta, 0.0));
    if (sd > 0) {
        C = worst / sd;
        r.rhs = C * sd;
        r.constants["C"] = C;
        r.verdict = Verdict::HoldsWithFittedConstant;
    } else {
        // zero gap: every left side must vanish up to the margin
        r.rhs = 0;
        r.constants["C"] = 0.0;
        r.verdict = worst <= std::sqrt(deltaMargin) + 1e-6 ? Verdict::Holds : Verdict::Violated;
    }
    return r;
}

}  // namespace

BoundReport stab_ineq_check(const PerforatedDomain& d, const Mesh& m, const MuBar& mb) {
    if (d.base != Base::Sphere) throw std::invalid_argument("stab_ineq_check: sphere domains only");
    Norms N = norms(m);
    double lN = value_of(mb.certN, mb.lambdaN);
    double mu = value_of(mb.certMu, mb.muBar);
    double delta = 8 * kPi - mu;
    double dm = margin_of(mb.certMu);

    std::vector<BatteryItem> items;
    items.push_back({"1", Vec::Ones(m.vertices.size())});
    for (int c = 0; c < 3; ++c)
        items.push_back({"x" + std::to_string(c + 1), nodal(m, [c](const Vec3& x) { return x[c]; })});
    items.push_back({"x1*x2", nodal(m, [](const Vec3& x) { return x[0] * x[1]; })});
    items.push_back({"x3^2-1/3", nodal(m, [](const Vec3& x) { return x[2] * x[2] - 1.0 / 3; })});
    for (int h : cutoff_holes(m, 4)) items.push_back({"logcut" + std::to_string(h), logcutoff_field(m, h)});

    auto lhsOf = [&](const Vec& u) { return std::abs((2 - lN) * N.integral(u)); };
    BoundReport r = fit_battery("stab-ineq", items, lhsOf, N, delta, dm);
    r.hash = blueprint_hash(d);
    r.h = m.h;
    r.details["lambdaN"] = lN;
    r.details["muBar"] = mu;
    r.details["coordinateRayleigh"] = coordinate_rayleigh_bound(m);
    return r;
}

BoundReport hole_area_check(const PerforatedDomain& d, const MuBar& mb) {
    Measures ms = exact_measures(d);
    double mu = value_of(mb.certMu, mb.muBar);
    double delta = 8 * kPi - mu;
    BoundReport r;
    r.id = "hole-area";
    r.hash = blueprint_hash(d);
    r.lhs = ms.holeArea;
    r.margin = margin_of(mb.certMu);
    r.details["delta"] = delta;
    if (delta < -r.margin) {
        r.verdict = Verdict::Violated;
        return r;
    }
    if (ms.holeArea == 0) {
        r.verdict = Verdict::Holds;
        return r;
    }
    // a gap inside the margin only bounds C through delta + margin
    double C = delta > 0 ? ms.holeArea / delta : delta + r.margin > 0 ? ms.holeArea / (delta + r.margin) : kInf;
    r.constants["C"] = jnum(C);
    r.details["deltaWithinMargin"] = delta <= 0;
    r.details["halfDeltaHolds"] = ms.holeArea <= 0.5 * (delta + r.margin);
    r.rhs = C * delta;
    r.verdict = std::isfinite(C) ? Verdict::HoldsWithFittedConstant : Verdict::Violated;
    return r;
}

BoundReport steklov_stab_check(const PerforatedDomain& d, const Mesh& m, const SigmaBar& sb) {
    if (d.base != Base::Disk) throw std::invalid_argument("steklov_stab_check: disk domains only");
    Norms N = norms(m);
    double mu = std::min(value_of(sb.certD, sb.sigmaD), value_of(sb.certN, sb.sigmaN));
    double sig = value_of(sb.certSigma, sb.sigmaBar);
    double delta = 2 * kPi - sig;
    double dm = margin_of(sb.certSigma);

    std::vector<BatteryItem> items;
    items.push_back({"1", Vec::Ones(m.vertices.size())});
    items.push_back({"x1", nodal(m, [](const Vec3& x) { return x[0]; })});
    items.push_back({"x2", nodal(m, [](const Vec3& x) { return x[1]; })});
    items.push_back({"x1^2-x2^2", nodal(m, [](const Vec3& x) { return x[0] * x[0] - x[1] * x[1]; })});
    items.push_back({"x1*x2", nodal(m, [](const Vec3& x) { return x[0] * x[1]; })});
    for (int h : cutoff_holes(m, 4)) items.push_back({"logcut" + std::to_string(h), logcutoff_field(m, h)});

    // (1 - mu) int_{Gamma_1} phi + int_{Gamma_0} phi <x, nu>, nu outward from Omega
    auto lhsOf = [&](const Vec& u) {
        double s = 0;
        for (const auto& e : m.boundary) {
            const Vec3 &a = m.vertices[e.a], &b = m.vertices[e.b];
            double len = (a - b).norm();
            if (e.component == -1) {
                s += (1 - mu) * len * 0.5 * (u[e.a] + u[e.b]);
            } else if (e.component >= 0) {
                const HoleSpec& H = m.holes[e.component];
                auto g = [&](const Vec3& x) { return x.dot((H.center - x) / H.radius); };
                s += len * 0.5 * (u[e.a] * g(a) + u[e.b] * g(b));
            }
        }
        return std::abs(s);
    };
    BoundReport r = fit_battery("stek-stab", items, lhsOf, N, delta, dm);
    r.hash = blueprint_hash(d);
    r.h = m.h;
    r.details["mu"] = mu;
    r.details["sigmaBar"] = sig;
    return r;
}

BoundReport steklov_hole_est(const PerforatedDomain& d, const SigmaBar& sb) {
    Measures ms = exact_measures(d);
    double sig = value_of(sb.certSigma, sb.sigmaBar);
    double delta = 2 * kPi - sig;
    BoundReport r;
    r.id = "hole-est";
    r.hash = blueprint_hash(d);
    r.lhs = ms.holeArea;
    r.margin = margin_of(sb.certSigma);
    r.details["delta"] = delta;
    if (delta < -r.margin) {
        r.verdict = Verdict::Violated;
        return r;
    }
    if (ms.holeArea == 0) {
        r.verdict = Verdict::Holds;
        return r;
    }
    double C = delta > 0 ? ms.holeArea / delta : delta + r.margin > 0 ? ms.holeArea / (delta + r.margin) : kInf;
    r.constants["C"] = jnum(C);
    r.details["deltaWithinMargin"] = delta <= 0;
    r.rhs = C * delta;
    r.verdict = std::isfinite(C) ? Verdict::HoldsWithFittedConstant : Verdict::Violated;
    return r;
}

// ---- fits ------------------------------------------------------------------------------

DecayModel decay_model_from_string(const std::string& s) {
    if (s == "exp-in-x" || s == "exp") return DecayModel::ExpInX;
    if (s == "exp-in-sqrt-x" || s == "exp-sqrt") return DecayModel::ExpInSqrtX;
    if (s == "power") return DecayModel::Power;
    throw std::invalid_argument("unknown decay model '" + s + "' (exp-in-x, exp-in-sqrt-x, power)");
}

std::string to_string(DecayModel m) {
    switch (m) {
        case DecayModel::ExpInX: return "exp-in-x";
        case DecayModel::ExpInSqrtX: return "exp-in-sqrt-x";
        case DecayModel::Power: return "power";
    }
    return "?";
}

DecayFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    size_t n = x.size();
    if (n < 2 || y.size() != n) throw std::invalid_argument("fit_line: need at least two points");
    double mx = 0, my = 0;
    for (size_t i = 0; i < n; ++i) mx += x[i], my += y[i];
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0) throw std::invalid_argument("fit_line: regressor is constant");
    DecayFit f;
    f.rate = sxy / sxx;
    f.intercept = my - f.rate * mx;
    double ssr = 0;
    for (size_t i = 0; i < n; ++i) {
        double e = y[i] - (f.intercept + f.rate * x[i]);
        f.residuals.push_back(e);
        ssr += e * e;
    }
    f.r2 = syy > 0 ? 1 - ssr / syy : 1.0;
    return f;
}

DecayFit fit_decay(const std::vector<GapSample>& samples, DecayModel model, size_t minSamples) {
    if (samples.size() < minSamples)
        throw std::invalid_argument("fit_decay: need at least " + std::to_string(minSamples) + " samples, got " +
                                    std::to_string(samples.size()));
    std::vector<double> X, Y;
    for (size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        if (!(s.gap > 0)) throw std::invalid_argument("fit_decay: nonpositive gap at sample " + std::to_string(i));
        if (model != DecayModel::ExpInX && !(s.x > 0))
            throw std::invalid_argument("fit_decay: nonpositive parameter at sample " + std::to_string(i));
        double x = model == DecayModel::ExpInX ? s.x : model == DecayModel::ExpInSqrtX ? std::sqrt(s.x) : std::log(s.x);
        X.push_back(x);
        Y.push_back(std::log(s.gap));
    }
    DecayFit f = fit_line(X, Y);
    f.model = model;
    if (model != DecayModel::Power) f.rate = -f.rate;
    return f;
}

double lawson_area(double gamma) {
    if (!(gamma > 0)) throw std::invalid_argument("lawson_area: genus must be positive");
    return 8 * kPi - 4 * kPi * std::log(2.0) / gamma;
}

BoundReport gap_floor_check(const std::string& id, const std::vector<GapSample>& samples, double c) {
    BoundReport r;
    r.id = id;
    r.constants["c"] = c;
    std::string digest;
    Json bad = Json::array();
    double worst = kInf;
    for (size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        digest += s.hash;
        double floor = std::exp(-c * s.x);
        double ratio = (s.gap + s.margin) / floor;
        if (ratio < worst) {
            worst = ratio;
            r.lhs = s.gap;
            r.rhs = floor;
            r.margin = s.margin;
        }
        if (ratio < 1) bad.push_back({{"index", i}, {"x", s.x}, {"gap", s.gap}, {"floor", floor}});
    }
    r.hash = fnv1a_hex(digest);
    r.details["violators"] = bad;
    r.verdict = bad.empty() ? Verdict::HoldsWithFittedConstant : Verdict::Violated;
    return r;
}

}  // namespace perfo
