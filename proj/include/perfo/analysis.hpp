#pragma once

#include "perfo/spectral.hpp"

namespace perfo {

enum class Verdict { Holds, HoldsWithFittedConstant, Violated };
std::string to_string(Verdict v);

struct BoundReport {
    std::string id;
    double lhs = 0, rhs = 0, margin = 0;
    Json constants = Json::object();   // fitted C, c, ... and fit diagnostics
    Verdict verdict = Verdict::Holds;
    std::string hash;                  // blueprint hash of the domain (or sweep digest)
    double h = 0, tol = 0;
    Json details = Json::object();
};

Json to_json(const BoundReport& r);
std::string csv_header();
std::string csv_row(const BoundReport& r);

struct GapSample {
    double x = 0;       // topology parameter (k, m, n, ...)
    double gap = 0;     // 8pi - mu_bar or 2pi - sigma_bar
    double margin = 0;  // certified discretization margin
    std::string hash;
};

// ---- Neumann / Steklov stability ------------------------------------------

// C_emp = (8 pi - lambda_1^N |Omega|) / |D|; `neumann` must hold at least
// lambda_0..lambda_1 (lambda_4 is reported when present).
BoundReport check_neumann_stability(const PerforatedDomain& d, const SpectralResult& neumann,
                                    const std::optional<Certified>& lambda1 = std::nullopt);
// C_emp = (1 - sigma_1^N) / (|D| + |dDisk cap D|); the fourth level (index 3) is
// compared with 3/2.
BoundReport check_steklov_stability(const PerforatedDomain& d, const SpectralResult& steklovN,
                                    const std::optional<Certified>& sigma1 = std::nullopt);
// Sweep-level boundedness: max C_emp / min C_emp < factor.
BoundReport stability_sweep(const std::string& id, const std::vector<BoundReport>& perDomain, double factor = 3.0);
// Fourth-level floor on the `required` smallest |D|; epsilon_0 (largest |D|
// below which every domain meets the floor) goes in the constants.
BoundReport fourth_level_floor(const std::string& id, const std::vector<BoundReport>& perDomain,
                               double floor, double slack, size_t required);

// ---- Dirichlet thresholds ---------------------------------------------------

// lambda - threshold against the certified margin; `R` enables the
// C R^2 log(R/r) comparison in the details.
BoundReport dirichlet_margin(const PerforatedDomain& d, const Certified& lambda, double threshold,
                             std::optional<double> R = std::nullopt, double C = 1.0);
// Smallest C with 1/lambda <= C R^2 log(R/r) on every (R, r, lambda) triple.
double fit_sphlower_constant(const std::vector<std::array<double, 3>>& grid);

// ---- closed-form radial solution -------------------------------------------

struct Leqpol {
    double a = 0, b = 0, Q = 0, T = 0;
    double f(double t) const;
    double df(double t) const;
    double d2f(double t) const;
    // csc t (sin t f')' + 2 f, scaled by the size of the terms
    double ode_residual(double t) const;
};
Leqpol leqpol_oracle(double R, double r);

// Independent solution of the same two-point problem: RK4 in s = log t.
struct LeqpolNumeric {
    std::vector<double> t, f;
    double Q = 0;
};
LeqpolNumeric leqpol_integrate(double R, double r, int steps = 40000);

// ---- log cutoff -------------------------------------------------------------

// 4 pi / |log r| per hole (exact for the flat annulus r <= d <= sqrt r).
double logcutoff_flat_energy(double r, int holes = 1);
// Interpolated cutoff of hole `hole` on the mesh and its P1 energy.
double logcutoff_fem_energy(const Mesh& m, int hole);
Eigen::VectorXd logcutoff_field(const Mesh& m, int hole);

// ---- stability inequalities ------------------------------------------------

// Battery: 1, x1, x2, x3, x1 x2, x3^2 - 1/3 and a log cutoff per hole orbit (up to 4).
BoundReport stab_ineq_check(const PerforatedDomain& d, const Mesh& m, const MuBar& mb);
BoundReport hole_area_check(const PerforatedDomain& d, const MuBar& mb);
BoundReport steklov_stab_check(const PerforatedDomain& d, const Mesh& m, const SigmaBar& sb);
BoundReport steklov_hole_est(const PerforatedDomain& d, const SigmaBar& sb);
// Courant-Fischer bound by the best balanced coordinate.
double coordinate_rayleigh_bound(const Mesh& m);

// ---- fits and floors ------------------------------------------------------------

enum class DecayModel { ExpInX, ExpInSqrtX, Power };
DecayModel decay_model_from_string(const std::string& s);
std::string to_string(DecayModel m);

struct DecayFit {
    DecayModel model = DecayModel::ExpInX;
    double rate = 0;       // c (exp models) or exponent (power)
    double intercept = 0;  // log-gap intercept
    double r2 = 0;
    std::vector<double> residuals;
};
DecayFit fit_decay(const std::vector<GapSample>& samples, DecayModel model, size_t minSamples = 4);
// Least squares y = a + b x with R^2.
DecayFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

double lawson_area(double gamma);

// gap + margin >= exp(-c x) for every sample
BoundReport gap_floor_check(const std::string& id, const std::vector<GapSample>& samples, double c);

}  // namespace perfo
