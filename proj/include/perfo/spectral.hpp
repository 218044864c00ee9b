#pragma once

#include "perfo/mesh.hpp"

#include <Eigen/Sparse>

#include <map>
#include <optional>

namespace perfo {

using SpMat = Eigen::SparseMatrix<double>;

struct SpectralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class BC { Dirichlet, Neumann };

// Conditions per boundary class.  For Steklov problems the unit circle carries
// the Steklov measure and `outer` is ignored.
struct BoundaryConditions {
    BC holes = BC::Neumann;
    BC cut = BC::Dirichlet;
    BC outer = BC::Neumann;
    std::map<int, BC> perHole;

    static BoundaryConditions dirichlet();  // Dirichlet on every hole
    static BoundaryConditions neumann();
    BC for_hole(int h) const;
    std::string describe() const;
};

struct Operators {
    SpMat K, M;
    std::map<int, SpMat> B;  // boundary mass per component
};

struct SolverOptions {
    double tol = 1e-8;
    int block = 6;
    int maxBasis = 600;
    size_t denseLimit = 800;        // dense GEP below this many dofs
    size_t steklovDenseLimit = 300;
    unsigned seed = 12345;
};

struct SpectralResult {
    std::vector<double> eigenvalues;  // ascending; Neumann-type problems include the zero
    Eigen::MatrixXd eigenvectors;     // nodal, one column per eigenvalue, zero on Dirichlet vertices
    std::string bc;
    std::string problem;              // "laplace" or "steklov"
    size_t dofCount = 0;
    std::vector<double> residuals;
    double h = 0;
    int level = 0;
    bool nullspaceDeflated = false;
};

// Values from two nested meshes and their extrapolant.
struct Certified {
    double coarse = 0, fine = 0, value = 0, margin = 0;
};

Operators assemble(const Mesh& m);

SpectralResult solve_laplace(const Mesh& m, const BoundaryConditions& bc, int count,
                             const SolverOptions& opt = {});
SpectralResult solve_steklov(const Mesh& m, const BoundaryConditions& bc, int count,
                             const SolverOptions& opt = {});

// value = (4 fine - coarse)/3, margin = 3 |value - fine|
Certified richardson(double coarse, double fine);
std::vector<Certified> richardson(const SpectralResult& coarse, const SpectralResult& fine);

struct MuBar {
    double lambdaD = 0, lambdaN = 0, muBar = 0, area = 0;
    std::optional<Certified> certD, certN, certMu;
};
struct SigmaBar {
    double sigmaD = 0, sigmaN = 0, sigmaBar = 0, gamma1 = 0;
    std::optional<Certified> certD, certN, certSigma;
};

// Exact |Omega| (resp. L(Gamma_1)) from the blueprint; Dirichlet values are +inf without holes.
MuBar mu_bar(const PerforatedDomain& d, const Mesh& m, const SolverOptions& opt = {});
SigmaBar sigma_bar(const PerforatedDomain& d, const Mesh& m, const SolverOptions& opt = {});
// Same on m and refine(m), with Richardson extrapolation.
MuBar mu_bar_certified(const PerforatedDomain& d, const Mesh& m, const SolverOptions& opt = {});
SigmaBar sigma_bar_certified(const PerforatedDomain& d, const Mesh& m, const SolverOptions& opt = {});

Json to_json(const SpectralResult& r, bool withVectors = false);
// Coordinate format, one "row col value" per line, sorted by (row, col).
void write_matrix(const SpMat& A, const std::string& path);

}  // namespace perfo
