#pragma once

#include "perfo/analysis.hpp"
#include "perfo/constructions.hpp"

#include <functional>

namespace perfo {

enum class Objective { MuBar, SigmaBar };
Objective objective_from_string(const std::string& s);
std::string to_string(Objective o);
Objective objective_for(Base base);

struct EvalSettings {
    MeshOptions mesh;
    SolverOptions solver;
    bool certify = false;  // mesh + refine(mesh) with Richardson
};

// One objective evaluation: first/second are (lambda_D, lambda_N) or (sigma_D, sigma_N).
struct Evaluation {
    bool ok = false;
    std::string error;
    double objective = 0, first = 0, second = 0, margin = 0;
    double gap = 0;  // 8 pi - mu_bar or 2 pi - sigma_bar
    std::string hash;
    size_t vertices = 0;
};
Evaluation evaluate(const PerforatedDomain& d, const EvalSettings& s);
Json to_json(const Evaluation& e);

struct BalanceResult {
    double r = 0;
    double first = 0, second = 0;
    int iterations = 0;
    bool converged = false;
    Json trace = Json::array();
};
// Bisection on log r for first == second.  The bracket may have its sign
// change in either order; an upper end producing overlapping holes is pulled in.
BalanceResult balance_radius(const std::string& family, const Json& params, double rLo, double rHi, double tol,
                             const EvalSettings& s, int maxIter = 60);
// (log r, first, second) on a uniform log grid, for monotonicity checks.
std::vector<std::array<double, 3>> scan_radius(const std::string& family, const Json& params, double rLo, double rHi,
                                               int n, const EvalSettings& s);

// Largest value of params[key] in [lo, hi] with first >= threshold, assuming
// `first` decreases in the key.
double tune_to_threshold(const std::string& family, const Json& params, const std::string& key, double lo, double hi,
                         double threshold, const EvalSettings& s, int iters = 30);

struct OptProblem {
    std::string family;
    Json params = Json::object();
    // Varied parameters.  "logr" sets params["r"] = exp(x); anything else is written verbatim.
    std::vector<std::string> coords{"logr"};
    std::vector<double> lower, upper, x0;
    Objective objective = Objective::MuBar;
    std::vector<double> hSchedule{0.1};  // search on the first entry, certify on the last
    double tol = 1e-4;                   // simplex diameter in coordinate space
    bool certifySearch = false;          // search on Richardson values instead of raw ones
    int maxEvals = 200;
    int restarts = 1;
    unsigned seed = 1;
    std::function<PerforatedDomain(const std::vector<double>&)> build;  // overrides family/params when set
};
OptProblem problem_from_json(const Json& j);
Json to_json(const OptProblem& p);

struct OptIterate {
    std::vector<double> x;
    double objective = 0, first = 0, second = 0;
    bool accepted = false;
    std::string error;
};
struct OptTrace {
    std::vector<OptIterate> iterates;
    std::vector<double> best;
    double bestObjective = 0;
    Evaluation certified;
    std::string status;
};
OptTrace maximize(const OptProblem& p);
Json to_json(const OptTrace& t);
void write_trace_jsonl(const OptTrace& t, const std::string& path);

struct SweepOptions {
    EvalSettings eval;
    bool optimizeEach = false;
    std::string xKey = "k";           // topology parameter recorded in the samples
    double rLo = std::exp(-8.0), rHi = std::exp(-1.0);
    double balanceTol = 1e-2;
    int threads = 1;
};
struct SweepPoint {
    Json params;
    bool ok = false;
    std::string error;
    std::optional<double> radius;  // balanced radius when optimized
    Evaluation eval;
    GapSample sample;
};
std::vector<SweepPoint> sweep_points(const std::string& family, const std::vector<Json>& grid, const SweepOptions& o);
std::vector<GapSample> sweep(const std::string& family, const std::vector<Json>& grid, const SweepOptions& o);

}  // namespace perfo
