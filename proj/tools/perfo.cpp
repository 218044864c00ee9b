#include "perfo/pipelines.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#ifndef PERFO_VERSION
#define PERFO_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using namespace perfo;

namespace {

struct Global {
    std::string out;
    int threads = 1;
    unsigned seed = 1;
    double h = 0.1;
    double tol = 1e-8;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json provenance(const Global& g, const std::string& hash) {
    return {{"tool", "perfo"}, {"version", PERFO_VERSION}, {"hash", hash}, {"h", g.h},
            {"tol", g.tol},    {"seed", g.seed},           {"threads", g.threads}};
}

std::string csv_comment(const Json& prov) {
    std::string s = "#";
    for (auto& [k, v] : prov.items()) s += " " + k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
    return s;
}

fs::path out_path(const Global& g, const std::string& explicitPath, const std::string& fallback) {
    fs::path p = explicitPath.empty() ? fs::path(g.out) / fallback : fs::path(explicitPath);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    return p;
}

void write_text(const fs::path& p, const std::string& s) {
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << s;
}

Json read_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read " + path);
    return Json::parse(f);
}

// key=value with JSON-typed values when they parse
Json parse_sets(const std::vector<std::string>& sets) {
    Json j = Json::object();
    for (const auto& s : sets) {
        auto eq = s.find('=');
        if (eq == std::string::npos) throw UsageError("expected key=value, got '" + s + "'");
        std::string k = s.substr(0, eq), v = s.substr(eq + 1);
        try {
            j[k] = Json::parse(v);
        } catch (const Json::parse_error&) {
            j[k] = v;
        }
    }
    return j;
}

std::vector<Json> parse_grid(const std::string& spec, const Json& base) {
    std::vector<Json> grid;
    if (spec.empty()) return grid;
    auto eq = spec.find('=');
    if (eq == std::string::npos) throw UsageError("--grid expects key=v1,v2,...");
    std::string key = spec.substr(0, eq);
    std::stringstream ss(spec.substr(eq + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        Json p = base;
        p[key] = Json::parse(item);
        grid.push_back(p);
    }
    return grid;
}

int exit_for(const std::vector<BoundReport>& reports) {
    for (const auto& r : reports)
        if (r.verdict == Verdict::Violated) return 1;
    return 0;
}

void write_reports(const Global& g, const fs::path& csv, const std::vector<BoundReport>& reports) {
    std::string digest;
    for (const auto& r : reports) digest += r.hash;
    Json prov = provenance(g, fnv1a_hex(digest));
    std::ostringstream s;
    s << csv_comment(prov) << "\n" << csv_header() << "\n";
    for (const auto& r : reports) s << csv_row(r) << "\n";
    write_text(csv, s.str());
    Json j{{"provenance", prov}, {"reports", Json::array()}};
    for (const auto& r : reports) j["reports"].push_back(to_json(r));
    fs::path js = csv;
    js.replace_extension(".json");
    write_text(js, j.dump(2) + "\n");
    std::cout << s.str();
}

PerforatedDomain load_domain(const std::string& path) { return domain_from_json(read_json(path)); }

PerforatedDomain full_base(const std::string& base) {
    PerforatedDomain d;
    if (base == "sphere") d.base = Base::Sphere;
    else if (base == "disk") d.base = Base::Disk;
    else throw UsageError("--full expects sphere or disk");
    return d;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral experiments on perforated spheres and disks"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.set_version_flag("--version", PERFO_VERSION);
    app.require_subcommand(1);
    Global g;
    const char* env = std::getenv("PERFO_OUT_DIR");
    g.out = env && *env ? env : "perfo-out";
    app.add_option("--out", g.out, "Output directory (default $PERFO_OUT_DIR or ./perfo-out)");
    app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "Seed for stochastic constructions");
    app.add_option("--h", g.h, "Mesh size")->check(CLI::PositiveNumber);
    app.add_option("--tol", g.tol, "Eigensolver tolerance")->check(CLI::PositiveNumber);

    // construct
    auto* construct = app.add_subcommand("construct", "Build a domain blueprint from a family");
    std::string family, constructOut;
    std::vector<std::string> sets;
    construct->add_option("family", family, "Family name")->required()->check(CLI::IsMember(family_names()));
    Json cparams = Json::object();
    for (const char* key : {"k", "m", "n", "a", "f0", "i", "e", "n0"}) {
        construct->add_option_function<int>(std::string("--") + key, [&cparams, key](int v) { cparams[key] = v; },
                                            std::string("Family parameter ") + key);
    }
    for (const char* key : {"c", "c1", "r", "C"}) {
        construct->add_option_function<double>(std::string("--") + key,
                                               [&cparams, key](double v) { cparams[key] = v; },
                                               std::string("Family parameter ") + key);
    }
    construct->add_option_function<std::string>("--group", [&](const std::string& v) { cparams["group"] = v; },
                                                 "Reflection group");
    construct->add_flag_function("--doubled", [&](std::int64_t) { cparams["doubled"] = true; },
                                 "Enforce doubled-disk disjointness");
    construct->add_option("--set", sets, "Extra key=value parameters");
    construct->add_option("-o,--output", constructOut, "Blueprint path");

    // mesh
    auto* meshCmd = app.add_subcommand("mesh", "Mesh a blueprint");
    std::string meshDomain, meshOut;
    MeshOptions mo;
    int refineCount = 0;
    bool chamberOnly = false;
    meshCmd->add_option("--domain", meshDomain, "Blueprint JSON")->required()->check(CLI::ExistingFile);
    meshCmd->add_option("--hole-factor", mo.holeFactor, "Boundary size factor at holes");
    meshCmd->add_option("--grading", mo.grading, "Size growth away from holes");
    meshCmd->add_option("--refine", refineCount, "Uniform refinements after meshing");
    meshCmd->add_flag("--chamber-only", chamberOnly, "Keep one chamber with mirror cuts");
    meshCmd->add_option("-o,--output", meshOut, "Output prefix (writes .off and .json)");

    // solve
    auto* solveCmd = app.add_subcommand("solve", "Eigenvalues of a mesh or blueprint");
    std::string solveDomain, solveMesh, solveSidecar, solveFull, solveOut, bcName = "neumann";
    int count = 5;
    bool certify = false, vectors = false;
    solveCmd->add_option("--domain", solveDomain, "Blueprint JSON");
    solveCmd->add_option("--mesh", solveMesh, "OFF mesh (with its JSON sidecar)");
    solveCmd->add_option("--sidecar", solveSidecar, "Sidecar path (default: mesh path with .json)");
    solveCmd->add_option("--full", solveFull, "Unperforated base: sphere or disk");
    solveCmd->add_option("--bc", bcName, "neumann | dirichlet | steklov | steklov-neumann | steklov-dirichlet")
        ->check(CLI::IsMember({"neumann", "dirichlet", "steklov", "steklov-neumann", "steklov-dirichlet"}));
    solveCmd->add_option("--count", count, "Number of eigenvalues")->check(CLI::PositiveNumber);
    solveCmd->add_flag("--certify", certify, "Add a refined level and Richardson values");
    solveCmd->add_flag("--vectors", vectors, "Include eigenvectors");
    solveCmd->add_option("-o,--output", solveOut, "Result JSON");

    // verify
    auto* verifyCmd = app.add_subcommand("verify", "Run an inequality check and write a BoundReport CSV");
    static const std::vector<std::string> checks{"neumann-sweep", "steklov-sweep", "leqpol",  "vitali",
                                                 "stab-ineq",     "stek-stab",     "lawson",  "logcutoff",
                                                 "gap-floor"};
    std::string checkId, verifyDomain, verifyOut, verifySweep, floorFrom;
    std::vector<double> radii, rs, gammas;
    int f0 = 30;
    std::string group = "trivial";
    double floorC = -1;
    verifyCmd->add_option("--check", checkId, "Check id")->required();
    verifyCmd->add_option("--domain", verifyDomain, "Blueprint JSON (stab-ineq, stek-stab, logcutoff)");
    verifyCmd->add_option("--radii", radii, "Hole radii for the stability sweeps");
    verifyCmd->add_option("--r", rs, "Radii for the leqpol grid");
    verifyCmd->add_option("--gamma", gammas, "Genera for lawson");
    verifyCmd->add_option("--f0", f0, "Vitali count parameter");
    verifyCmd->add_option("--group", group, "Vitali group");
    verifyCmd->add_option("--sweep", verifySweep, "Sweep CSV for gap-floor");
    verifyCmd->add_option("--c", floorC, "Floor rate for gap-floor");
    verifyCmd->add_option("--fit-from", floorFrom, "Sweep CSV whose exp-in-x rate sets the floor");
    verifyCmd->add_option("-o,--output", verifyOut, "Report CSV");

    // sweep
    auto* sweepCmd = app.add_subcommand("sweep", "Gap samples over a parameter grid");
    std::string sweepFamily, gridSpec, sweepOut;
    std::vector<std::string> sweepSets;
    SweepOptions so;
    sweepCmd->add_option("--family", sweepFamily, "Family")->required()->check(CLI::IsMember(family_names()));
    sweepCmd->add_option("--grid", gridSpec, "key=v1,v2,... (empty grid gives an empty sweep)");
    sweepCmd->add_option("--set", sweepSets, "Fixed key=value parameters");
    sweepCmd->add_flag("--optimize", so.optimizeEach, "Balance the radius at every point");
    sweepCmd->add_option("--r-lo", so.rLo, "Lower radius of the balance bracket");
    sweepCmd->add_option("--r-hi", so.rHi, "Upper radius of the balance bracket");
    sweepCmd->add_option("--balance-tol", so.balanceTol, "Balance tolerance");
    auto* xKeyOpt = sweepCmd->add_option("--x-key", so.xKey, "Parameter recorded as x (default: the grid key)");
    sweepCmd->add_option("-o,--output", sweepOut, "Sweep CSV");

    // optimize
    auto* optCmd = app.add_subcommand("optimize", "Maximize mu-bar or sigma-bar over hole parameters");
    std::string optConfig, optOut;
    optCmd->add_option("--config", optConfig, "Optimization config JSON")->required()->check(CLI::ExistingFile);
    optCmd->add_option("-o,--output", optOut, "Trace JSONL");

    // report
    auto* reportCmd = app.add_subcommand("report", "Fit decay models over finished sweeps");
    std::string sweepDir, modelName = "exp-in-x", reportOut;
    reportCmd->add_option("--sweep-dir", sweepDir, "Directory with sweep-*.csv")->required();
    reportCmd->add_option("--model", modelName, "exp-in-x | exp-in-sqrt-x | power");
    reportCmd->add_option("-o,--output", reportOut, "Plot-data CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    SolverOptions sopt;
    sopt.tol = g.tol;
    sopt.seed = g.seed;
    mo.h = g.h;

    try {
        if (*construct) {
            Json p = cparams;
            Json extra = parse_sets(sets);
            for (auto& [k, v] : extra.items()) p[k] = v;
            if (family == "vitali" && !p.contains("seed")) p["seed"] = g.seed;
            PerforatedDomain d = make_family(family, p);
            Json j = to_json(d);
            j["provenance"] = provenance(g, blueprint_hash(d));
            j["provenance"]["family"] = family;
            j["provenance"]["params"] = p;
            fs::path path = out_path(g, constructOut, family + ".json");
            write_text(path, j.dump(2) + "\n");
            std::cout << path.string() << ": " << d.holes.size() << " holes, hash " << blueprint_hash(d) << "\n";
            return 0;
        }

        if (*meshCmd) {
            PerforatedDomain d = load_domain(meshDomain);
            mo.replicate = !chamberOnly;
            Mesh m = mesh_domain(d, mo);
            for (int i = 0; i < refineCount; ++i) m = refine(m);
            fs::path prefix = out_path(g, meshOut, "mesh");
            std::string off = prefix.string() + ".off", side = prefix.string() + ".json";
            write_off(m, off, side);
            Json s = mesh_summary(m);
            s["provenance"] = provenance(g, blueprint_hash(d));
            write_text(prefix.string() + ".summary.json", s.dump(2) + "\n");
            std::cout << s.dump(2) << "\n";
            return 0;
        }

        if (*solveCmd) {
            int sources = !solveDomain.empty() + !solveMesh.empty() + !solveFull.empty();
            if (sources != 1) throw UsageError("give exactly one of --domain, --mesh, --full");
            std::optional<PerforatedDomain> d;
            Mesh m;
            if (!solveMesh.empty()) {
                if (!fs::exists(solveMesh)) throw UsageError("mesh not found: " + solveMesh);
                std::string side = solveSidecar.empty() ? fs::path(solveMesh).replace_extension(".json").string()
                                                        : solveSidecar;
                if (!fs::exists(side)) throw UsageError("mesh sidecar not found: " + side);
                m = read_off(solveMesh, side);
            } else {
                d = solveDomain.empty() ? full_base(solveFull) : load_domain(solveDomain);
                m = mesh_domain(*d, mo);
            }
            bool steklov = bcName.rfind("steklov", 0) == 0;
            BoundaryConditions bc = bcName == "dirichlet" || bcName == "steklov-dirichlet"
                                        ? BoundaryConditions::dirichlet()
                                        : BoundaryConditions::neumann();
            auto run = [&](const Mesh& mm) {
                return steklov ? solve_steklov(mm, bc, count, sopt) : solve_laplace(mm, bc, count, sopt);
            };
            SpectralResult r = run(m);
            Json j = to_json(r, vectors);
            if (certify) {
                SpectralResult f = run(refine(m));
                Json c = Json::array();
                for (const auto& x : richardson(r, f))
                    c.push_back({{"coarse", x.coarse}, {"fine", x.fine}, {"value", x.value}, {"margin", x.margin}});
                j["certified"] = c;
            }
            j["provenance"] = provenance(g, d ? blueprint_hash(*d) : fnv1a_hex(solveMesh));
            fs::path path = out_path(g, solveOut, "solve.json");
            write_text(path, j.dump(2) + "\n");
            std::cout << "eigenvalues:";
            for (double v : r.eigenvalues) std::cout << " " << v;
            std::cout << "\n";
            return 0;
        }

        if (*verifyCmd) {
            if (std::find(checks.begin(), checks.end(), checkId) == checks.end()) {
                std::string list;
                for (const auto& c : checks) list += (list.empty() ? "" : ", ") + c;
                throw UsageError("unknown check '" + checkId + "'; valid ids: " + list);
            }
            std::vector<BoundReport> reports;
            auto needDomain = [&]() {
                if (verifyDomain.empty()) throw UsageError("--check " + checkId + " needs --domain");
                return load_domain(verifyDomain);
            };
            if (checkId == "neumann-sweep" || checkId == "steklov-sweep") {
                bool sphere = checkId == "neumann-sweep";
                std::vector<double> rr = radii;
                if (rr.empty()) rr = sphere ? std::vector<double>{0.02, 0.05, 0.1, 0.2} : std::vector<double>{0.02, 0.05, 0.1, 0.2};
                StabilitySweep s = sphere ? neumann_sweep(rr, mo) : steklov_sweep(rr, mo);
                reports = s.perDomain;
                reports.push_back(s.bounded);
                reports.push_back(s.floor);
            } else if (checkId == "leqpol") {
                std::vector<double> grid = rs.empty() ? std::vector<double>{1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8} : rs;
                reports = leqpol_grid(grid);
            } else if (checkId == "vitali") {
                reports.push_back(vitali_threshold(group, f0, g.seed, mo).report);
            } else if (checkId == "stab-ineq") {
                PerforatedDomain d = needDomain();
                Mesh m = mesh_domain(d, mo);
                MuBar mb = mu_bar_certified(d, m, sopt);
                reports.push_back(stab_ineq_check(d, m, mb));
                reports.push_back(hole_area_check(d, mb));
            } else if (checkId == "stek-stab") {
                PerforatedDomain d = needDomain();
                Mesh m = mesh_domain(d, mo);
                SigmaBar sb = sigma_bar_certified(d, m, sopt);
                reports.push_back(steklov_stab_check(d, m, sb));
                reports.push_back(steklov_hole_est(d, sb));
            } else if (checkId == "logcutoff") {
                PerforatedDomain d = needDomain();
                Mesh m = mesh_domain(d, mo);
                for (size_t i = 0; i < std::min<size_t>(m.holes.size(), 4); ++i) {
                    BoundReport r;
                    r.id = "logcutoff";
                    r.hash = blueprint_hash(d);
                    r.h = g.h;
                    r.lhs = logcutoff_fem_energy(m, static_cast<int>(i));
                    r.rhs = logcutoff_flat_energy(m.holes[i].radius);
                    r.details = {{"hole", i}, {"relativeDifference", std::abs(r.lhs / r.rhs - 1)}};
                    r.verdict = Verdict::Holds;
                    reports.push_back(r);
                }
            } else if (checkId == "lawson") {
                for (double gm : gammas.empty() ? std::vector<double>{2, 5, 10, 100} : gammas) {
                    BoundReport r;
                    r.id = "lawson-area";
                    r.hash = fnv1a_hex("lawson:" + std::to_string(gm));
                    r.lhs = lawson_area(gm);
                    r.rhs = 8 * kPi;
                    r.details = {{"gamma", gm}};
                    r.verdict = Verdict::Holds;
                    reports.push_back(r);
                }
            } else if (checkId == "gap-floor") {
                if (verifySweep.empty()) throw UsageError("--check gap-floor needs --sweep");
                auto load = [](const std::string& path) {
                    std::ifstream f(path);
                    if (!f) throw UsageError("cannot read " + path);
                    std::vector<GapSample> out;
                    std::string line;
                    bool header = false;
                    while (std::getline(f, line)) {
                        if (line.empty() || line[0] == '#') continue;
                        if (!header) {
                            header = true;
                            continue;
                        }
                        std::stringstream ss(line);
                        std::string x, gap, margin, hash, ok;
                        std::getline(ss, x, ',');
                        std::getline(ss, gap, ',');
                        std::getline(ss, margin, ',');
                        std::getline(ss, hash, ',');
                        std::getline(ss, ok, ',');
                        if (ok != "1") continue;
                        out.push_back({std::stod(x), std::stod(gap), std::stod(margin), hash});
                    }
                    return out;
                };
                auto samples = load(verifySweep);
                double c = floorC;
                if (!floorFrom.empty()) c = fit_decay(load(floorFrom), DecayModel::ExpInX, 3).rate;
                if (c < 0) c = fit_decay(samples, DecayModel::ExpInX, 3).rate;
                reports.push_back(gap_floor_check("gap-floor", samples, c));
            }
            for (auto& r : reports) {
                if (r.h == 0) r.h = g.h;
                if (r.tol == 0) r.tol = g.tol;
            }
            write_reports(g, out_path(g, verifyOut, "verify-" + checkId + ".csv"), reports);
            return exit_for(reports);
        }

        if (*sweepCmd) {
            so.eval.mesh = mo;
            so.eval.solver = sopt;
            so.threads = g.threads;
            Json base = parse_sets(sweepSets);
            if (sweepFamily == "vitali" && !base.contains("seed")) base["seed"] = g.seed;
            auto grid = parse_grid(gridSpec, base);
            if (xKeyOpt->count() == 0 && !gridSpec.empty()) so.xKey = gridSpec.substr(0, gridSpec.find('='));
            auto pts = sweep_points(sweepFamily, grid, so);
            std::string digest;
            for (const auto& p : pts) digest += p.eval.hash;
            Json prov = provenance(g, fnv1a_hex(digest));
            prov["family"] = sweepFamily;
            std::ostringstream s;
            s << csv_comment(prov) << "\n" << "x,gap,margin,hash,ok,r,error\n";
            s.precision(17);
            Json j{{"provenance", prov}, {"points", Json::array()}};
            for (const auto& p : pts) {
                s << p.sample.x << "," << p.sample.gap << "," << p.sample.margin << "," << p.eval.hash << ","
                  << (p.ok ? 1 : 0) << "," << (p.radius ? *p.radius : 0.0) << "," << '"' << p.error << '"' << "\n";
                Json q{{"params", p.params}, {"ok", p.ok}, {"eval", to_json(p.eval)}};
                if (p.radius) q["r"] = *p.radius;
                if (!p.error.empty()) q["error"] = p.error;
                j["points"].push_back(q);
            }
            fs::path path = out_path(g, sweepOut, "sweep-" + sweepFamily + ".csv");
            write_text(path, s.str());
            fs::path js = path;
            js.replace_extension(".json");
            write_text(js, j.dump(2) + "\n");
            std::cout << s.str();
            return 0;
        }

        if (*optCmd) {
            OptProblem p = problem_from_json(read_json(optConfig));
            if (p.family.empty()) throw UsageError("config needs a family");
            OptTrace t = maximize(p);
            fs::path path = out_path(g, optOut, "optimize-" + p.family + ".jsonl");
            write_trace_jsonl(t, path.string());
            std::ofstream(path, std::ios::app) << Json{{"provenance", provenance(g, t.certified.hash)},
                                                       {"problem", to_json(p)}}.dump()
                                                << "\n";
            std::cout << "best " << t.bestObjective << " at";
            for (double x : t.best) std::cout << " " << x;
            std::cout << " (" << t.status << "), certified " << t.certified.objective << " +- " << t.certified.margin
                      << "\n";
            return 0;
        }

        if (*reportCmd) {
            if (!fs::is_directory(sweepDir)) throw UsageError("not a directory: " + sweepDir);
            DecayModel model = decay_model_from_string(modelName);
            std::vector<fs::path> files;
            for (const auto& e : fs::directory_iterator(sweepDir)) {
                auto name = e.path().filename().string();
                if (name.rfind("sweep-", 0) == 0 && e.path().extension() == ".csv") files.push_back(e.path());
            }
            std::sort(files.begin(), files.end());
            if (files.empty()) throw UsageError("no sweep-*.csv files in " + sweepDir);
            std::ostringstream plot;
            plot.precision(17);
            Json summary{{"provenance", provenance(g, "")}, {"model", to_string(model)}, {"fits", Json::array()}};
            plot << "file,x,gap,fit\n";
            std::string digest;
            for (const auto& file : files) {
                std::ifstream f(file);
                std::vector<GapSample> samples;
                std::string line;
                bool header = false;
                while (std::getline(f, line)) {
                    if (line.empty() || line[0] == '#') continue;
                    if (!header) {
                        header = true;
                        continue;
                    }
                    std::stringstream ss(line);
                    std::string x, gap, margin, hash, ok;
                    std::getline(ss, x, ',');
                    std::getline(ss, gap, ',');
                    std::getline(ss, margin, ',');
                    std::getline(ss, hash, ',');
                    std::getline(ss, ok, ',');
                    digest += hash;
                    if (ok == "1") samples.push_back({std::stod(x), std::stod(gap), std::stod(margin), hash});
                }
                Json fit{{"file", file.filename().string()}, {"samples", samples.size()}};
                try {
                    DecayFit df = fit_decay(samples, model, 3);
                    fit["rate"] = df.rate;
                    fit["intercept"] = df.intercept;
                    fit["r2"] = df.r2;
                    fit["residuals"] = df.residuals;
                    for (const auto& s : samples) {
                        double X = model == DecayModel::ExpInX       ? s.x
                                   : model == DecayModel::ExpInSqrtX ? std::sqrt(s.x)
                                                                     : std::log(s.x);
                        double slope = model == DecayModel::Power ? df.rate : -df.rate;
                        plot << file.filename().string() << "," << s.x << "," << s.gap << ","
                             << std::exp(df.intercept + slope * X) << "\n";
                    }
                } catch (const std::invalid_argument& e) {
                    fit["error"] = e.what();
                }
                summary["fits"].push_back(fit);
            }
            summary["provenance"]["hash"] = fnv1a_hex(digest);
            fs::path path = out_path(g, reportOut, "report.csv");
            write_text(path, plot.str());
            fs::path js = path;
            js.replace_extension(".json");
            write_text(js, summary.dump(2) + "\n");
            std::cout << summary["fits"].dump(2) << "\n";
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "perfo: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "perfo: error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
