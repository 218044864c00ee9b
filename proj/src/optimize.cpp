#include "perfo/optimize.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <random>
#include <thread>

namespace perfo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PerforatedDomain build_at(const std::string& family, Json params, double r) {
    params["r"] = r;
    return make_family(family, params);
}

}  // namespace

Objective objective_from_string(const std::string& s) {
    if (s == "mu-bar" || s == "mu") return Objective::MuBar;
    if (s == "sigma-bar" || s == "sigma") return Objective::SigmaBar;
    throw std::invalid_argument("unknown objective '" + s + "' (mu-bar, sigma-bar)");
}

std::string to_string(Objective o) { return o == Objective::MuBar ? "mu-bar" : "sigma-bar"; }

Objective objective_for(Base base) { return base == Base::Sphere ? Objective::MuBar : Objective::SigmaBar; }

Evaluation evaluate(const PerforatedDomain& d, const EvalSettings& s) {
    Evaluation e;
    e.hash = blueprint_hash(d);
    try {
        Mesh m = mesh_domain(d, s.mesh);
        e.vertices = m.vertex_count();
        if (d.base == Base::Sphere) {
            MuBar mb = s.certify ? mu_bar_certified(d, m, s.solver) : mu_bar(d, m, s.solver);
            e.first = mb.certD ? mb.certD->value : mb.lambdaD;
            e.second = mb.certN ? mb.certN->value : mb.lambdaN;
            e.objective = mb.certMu ? mb.certMu->value : mb.muBar;
            e.margin = mb.certMu ? mb.certMu->margin : 0.0;
            e.gap = 8 * kPi - e.objective;
        } else {
            SigmaBar sb = s.certify ? sigma_bar_certified(d, m, s.solver) : sigma_bar(d, m, s.solver);
            e.first = sb.certD ? sb.certD->value : sb.sigmaD;
            e.second = sb.certN ? sb.certN->value : sb.sigmaN;
            e.objective = sb.certSigma ? sb.certSigma->value : sb.sigmaBar;
            e.margin = sb.certSigma ? sb.certSigma->margin : 0.0;
            e.gap = 2 * kPi - e.objective;
        }
        e.ok = std::isfinite(e.objective);
        if (!e.ok) e.error = "non-finite objective";
    } catch (const std::exception& ex) {
        e.ok = false;
        e.error = ex.what();
    }
    return e;
}

Json to_json(const Evaluation& e) {
    Json j;
    j["ok"] = e.ok;
    if (!e.ok) j["error"] = e.error;
    j["objective"] = e.objective;
    j["first"] = std::isfinite(e.first) ? Json(e.first) : Json("inf");
    j["second"] = e.second;
    j["gap"] = e.gap;
    j["margin"] = e.margin;
    j["hash"] = e.hash;
    j["vertices"] = e.vertices;
    return j;
}

// ---- balance -------------------------------------------------------------------

BalanceResult balance_radius(const std::string& family, const Json& params, double rLo, double rHi, double tol,
                             const EvalSettings& es, int maxIter) {
    if (!(rLo > 0 && rHi > rLo)) throw std::invalid_argument("balance_radius: need 0 < rLo < rHi");
    {
        PerforatedDomain probe = build_at(family, params, rLo);
        if (probe.holes.empty()) throw std::invalid_argument("balance_radius: domain has no holes");
    }
    BalanceResult out;

    auto eval = [&](double logr) {
        Evaluation e = evaluate(build_at(family, params, std::exp(logr)), es);
        out.trace.push_back({{"r", std::exp(logr)}, {"first", e.first}, {"second", e.second}, {"ok", e.ok}});
        if (!e.ok) throw std::runtime_error("balance_radius: evaluation failed at r = " +
                                           std::to_string(std::exp(logr)) + ": " + e.error);
        return e;
    };

    // pull the upper end in while the holes overlap
    double hi = std::log(rHi), lo = std::log(rLo);
    for (int i = 0;; ++i) {
        try {
            build_at(family, params, std::exp(hi));
            break;
        } catch (const DomainError&) {
            if (i >= 40 || hi - std::log(0.8) <= lo) throw;
            hi += std::log(0.8);
        }
    }
    Evaluation eLo = eval(lo), eHi = eval(hi);
    double fLo = eLo.first - eLo.second, fHi = eHi.first - eHi.second;
    if (!(fLo * fHi < 0)) {
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "balance_radius: invalid bracket: r=%.6g gives (%.6g, %.6g), r=%.6g gives (%.6g, %.6g)",
                      std::exp(lo), eLo.first, eLo.second, std::exp(hi), eHi.first, eHi.second);
        throw std::invalid_argument(buf);
    }
    Evaluation best = std::abs(fLo) < std::abs(fHi) ? eLo : eHi;
    double bestLog = std::abs(fLo) < std::abs(fHi) ? lo : hi;
    for (int it = 0; it < maxIter; ++it) {
        double mid = 0.5 * (lo + hi);
        Evaluation e = eval(mid);
        double f = e.first - e.second;
        ++out.iterations;
        if (std::abs(f) < std::abs(best.first - best.second)) best = e, bestLog = mid;
        if (std::abs(f) <= tol) {
            out.converged = true;
            break;
        }
        if ((f < 0) == (fLo < 0)) lo = mid, fLo = f;
        else hi = mid, fHi = f;
        if (hi - lo < 1e-12) break;
    }
    out.r = std::exp(bestLog);
    out.first = best.first;
    out.second = best.second;
    return out;
}

std::vector<std::array<double, 3>> scan_radius(const std::string& family, const Json& params, double rLo, double rHi,
                                               int n, const EvalSettings& es) {
    std::vector<std::array<double, 3>> out;
    for (int i = 0; i < n; ++i) {
        double lr = std::log(rLo) + (std::log(rHi) - std::log(rLo)) * i / std::max(1, n - 1);
        Evaluation e = evaluate(build_at(family, params, std::exp(lr)), es);
        if (e.ok) out.push_back({lr, e.first, e.second});
    }
    return out;
}

double tune_to_threshold(const std::string& family, const Json& params, const std::string& key, double lo, double hi,
                         double threshold, const EvalSettings& es, int iters) {
    auto first = [&](double v) {
        Json p = params;
        p[key] = v;
        Evaluation e = evaluate(make_family(family, p), es);
        if (!e.ok) throw std::runtime_error("tune_to_threshold: " + e.error);
        return e.first;
    };
    if (first(lo) < threshold) throw std::invalid_argument("tune_to_threshold: threshold not met at the lower end");
    if (first(hi) >= threshold) return hi;
    for (int i = 0; i < iters; ++i) {
        double mid = 0.5 * (lo + hi);
        if (first(mid) >= threshold) lo = mid;
        else hi = mid;
    }
    return lo;
}

// ---- maximize ------------------------------------------------------------------

OptProblem problem_from_json(const Json& j) {
    OptProblem p;
    p.family = j.value("family", std::string());
    p.params = j.value("params", Json::object());
    if (j.contains("coords")) p.coords = j["coords"].get<std::vector<std::string>>();
    if (j.contains("lower")) p.lower = j["lower"].get<std::vector<double>>();
    if (j.contains("upper")) p.upper = j["upper"].get<std::vector<double>>();
    if (j.contains("x0")) p.x0 = j["x0"].get<std::vector<double>>();
    if (j.contains("objective")) p.objective = objective_from_string(j["objective"]);
    if (j.contains("hSchedule")) p.hSchedule = j["hSchedule"].get<std::vector<double>>();
    p.tol = j.value("tol", p.tol);
    p.certifySearch = j.value("certifySearch", p.certifySearch);
    p.maxEvals = j.value("maxEvals", p.maxEvals);
    p.restarts = j.value("restarts", p.restarts);
    p.seed = j.value("seed", p.seed);
    return p;
}

Json to_json(const OptProblem& p) {
    return {{"family", p.family},  {"params", p.params},       {"coords", p.coords},
            {"lower", p.lower},    {"upper", p.upper},         {"x0", p.x0},
            {"objective", to_string(p.objective)}, {"hSchedule", p.hSchedule}, {"tol", p.tol},
            {"certifySearch", p.certifySearch}, {"maxEvals", p.maxEvals}, {"restarts", p.restarts}, {"seed", p.seed}};
}

namespace {

PerforatedDomain build_problem(const OptProblem& p, const std::vector<double>& x) {
    if (p.build) return p.build(x);
    Json q = p.params;
    for (size_t i = 0; i < p.coords.size(); ++i) {
        if (p.coords[i] == "logr") q["r"] = std::exp(x[i]);
        else q[p.coords[i]] = x[i];
    }
    return make_family(p.family, q);
}

}  // namespace

OptTrace maximize(const OptProblem& p) {
    size_t n = p.coords.size();
    if (n == 0 || p.lower.size() != n || p.upper.size() != n)
        throw std::invalid_argument("maximize: coords, lower and upper must have the same nonzero length");
    for (size_t i = 0; i < n; ++i)
        if (!(p.lower[i] < p.upper[i])) throw std::invalid_argument("maximize: empty bounds for " + p.coords[i]);
    if (p.hSchedule.empty()) throw std::invalid_argument("maximize: empty h schedule");

    EvalSettings es;
    es.mesh.h = p.hSchedule.front();
    es.certify = p.certifySearch;
    OptTrace t;
    t.bestObjective = -kInf;
    std::mt19937 rng(p.seed);
    int evals = 0;

    auto clampx = [&](std::vector<double> x) {
        for (size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i], p.lower[i], p.upper[i]);
        return x;
    };
    auto f = [&](const std::vector<double>& x) {
        ++evals;
        OptIterate it;
        it.x = x;
        Evaluation e;
        try {
            e = evaluate(build_problem(p, x), es);
        } catch (const std::exception& ex) {
            e.ok = false;
            e.error = ex.what();
        }
        if (e.ok) {
            it.objective = e.objective;
            it.first = e.first;
            it.second = e.second;
            if (e.objective > t.bestObjective) {
                it.accepted = true;
                t.bestObjective = e.objective;
                t.best = x;
            }
        } else {
            it.error = e.error;
        }
        t.iterates.push_back(it);
        return e.ok ? e.objective : -kInf;
    };

    std::vector<double> start = p.x0;
    if (start.size() != n) {
        start.resize(n);
        for (size_t i = 0; i < n; ++i) start[i] = 0.5 * (p.lower[i] + p.upper[i]);
    }
    start = clampx(start);

    bool converged = false;
    for (int restart = 0; restart <= p.restarts && evals < p.maxEvals; ++restart) {
        std::vector<double> center = restart == 0 || t.best.empty() ? start : t.best;
        std::uniform_real_distribution<double> jitter(-0.5, 0.5);
        std::vector<std::vector<double>> S{center};
        for (size_t i = 0; i < n; ++i) {
            auto v = center;
            double step = 0.1 * (p.upper[i] - p.lower[i]) * (restart == 0 ? 1.0 : 0.5 + jitter(rng));
            v[i] += (v[i] + step <= p.upper[i]) ? step : -step;
            S.push_back(clampx(v));
        }
        std::vector<double> F;
        for (auto& v : S) F.push_back(f(v));

        // maximization: keep S sorted by descending F
        converged = false;
        while (evals < p.maxEvals) {
            std::vector<size_t> idx(S.size());
            for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
            std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return F[a] > F[b]; });
            std::vector<std::vector<double>> S2;
            std::vector<double> F2;
            for (size_t i : idx) S2.push_back(S[i]), F2.push_back(F[i]);
            S = S2;
            F = F2;
            double diam = 0;
            for (size_t i = 1; i < S.size(); ++i)
                for (size_t c = 0; c < n; ++c) diam = std::max(diam, std::abs(S[i][c] - S[0][c]));
            if (diam <= p.tol) {
                converged = true;
                break;
            }
            std::vector<double> cen(n, 0.0);
            for (size_t i = 0; i < n; ++i)
                for (size_t c = 0; c < n; ++c) cen[c] += S[i][c] / n;
            auto along = [&](double a) {
                std::vector<double> v(n);
                for (size_t c = 0; c < n; ++c) v[c] = cen[c] + a * (S[n][c] - cen[c]);
                return clampx(v);
            };
            auto xr = along(-1.0);
            double fr = f(xr);
            if (fr > F[0]) {
                auto xe = along(-2.0);
                double fe = f(xe);
                if (fe > fr) S[n] = xe, F[n] = fe;
                else S[n] = xr, F[n] = fr;
            } else if (fr > F[n - 1]) {
                S[n] = xr, F[n] = fr;
            } else {
                bool outside = fr > F[n];
                auto xc = along(outside ? -0.5 : 0.5);
                double fc = f(xc);
                if (fc > (outside ? fr : F[n])) {
                    S[n] = xc, F[n] = fc;
                } else {
                    for (size_t i = 1; i <= n; ++i) {
                        for (size_t c = 0; c < n; ++c) S[i][c] = S[0][c] + 0.5 * (S[i][c] - S[0][c]);
                        F[i] = f(S[i]);
                    }
                }
            }
        }
    }
    if (t.best.empty()) throw std::runtime_error("maximize: every objective evaluation failed");
    t.status = converged ? "converged" : "max-evals";

    EvalSettings fin;
    fin.mesh.h = p.hSchedule.back();
    fin.certify = true;
    t.certified = evaluate(build_problem(p, t.best), fin);
    return t;
}

Json to_json(const OptTrace& t) {
    Json it = Json::array();
    for (const auto& x : t.iterates) {
        Json j{{"x", x.x}, {"objective", x.objective}, {"first", std::isfinite(x.first) ? Json(x.first) : Json("inf")},
               {"second", x.second}, {"accepted", x.accepted}};
        if (!x.error.empty()) j["error"] = x.error;
        it.push_back(j);
    }
    return {{"iterates", it},
            {"best", t.best},
            {"bestObjective", t.bestObjective},
            {"certified", to_json(t.certified)},
            {"bestIs", "lower bound for the supremum over invariant metrics"},
            {"status", t.status}};
}

void write_trace_jsonl(const OptTrace& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    Json j = to_json(t);
    for (const auto& it : j["iterates"]) out << it.dump() << "\n";
    Json summary = j;
    summary.erase("iterates");
    out << summary.dump() << "\n";
}

// ---- sweep -----------------------------------------------------------------------

std::vector<SweepPoint> sweep_points(const std::string& family, const std::vector<Json>& grid, const SweepOptions& o) {
    std::vector<SweepPoint> pts(grid.size());
    auto run = [&](size_t i) {
        SweepPoint& sp = pts[i];
        sp.params = grid[i];
        try {
            Json q = grid[i];
            if (o.optimizeEach) {
                BalanceResult b = balance_radius(family, q, o.rLo, o.rHi, o.balanceTol, o.eval);
                sp.radius = b.r;
                q["r"] = b.r;
            }
            PerforatedDomain d = make_family(family, q);
            EvalSettings es = o.eval;
            es.certify = true;
            sp.eval = evaluate(d, es);
            if (!sp.eval.ok) throw std::runtime_error(sp.eval.error);
            sp.sample.x = q.value(o.xKey, 0.0);
            sp.sample.gap = sp.eval.gap;
            sp.sample.margin = sp.eval.margin;
            sp.sample.hash = sp.eval.hash;
            sp.ok = true;
        } catch (const std::exception& ex) {
            sp.ok = false;
            sp.error = ex.what();
        }
    };
    int threads = std::max(1, std::min<int>(o.threads, static_cast<int>(grid.size())));
    if (threads == 1) {
        for (size_t i = 0; i < grid.size(); ++i) run(i);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (size_t i = t; i < grid.size(); i += threads) run(i);
            });
        for (auto& th : pool) th.join();
    }
    return pts;
}

std::vector<GapSample> sweep(const std::string& family, const std::vector<Json>& grid, const SweepOptions& o) {
    std::vector<GapSample> out;
    for (const auto& p : sweep_points(family, grid, o))
        if (p.ok) out.push_back(p.sample);
    return out;
}

}  // namespace perfo
