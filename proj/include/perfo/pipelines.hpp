#pragma once

// Composite checks shared by the CLI and the acceptance runner.

#include "perfo/optimize.hpp"

namespace perfo {

// Polar cap radius with the given area.
double cap_radius_for_area(double area);

PerforatedDomain single_cap(double radius);
PerforatedDomain single_boundary_hole(double radius);

struct StabilitySweep {
    std::vector<BoundReport> perDomain;
    BoundReport bounded;  // C_emp spread
    BoundReport floor;    // fourth-level floor
    std::vector<PerforatedDomain> domains;
};
// Neumann stability over single caps of the given radii (fourth level 4).
StabilitySweep neumann_sweep(const std::vector<double>& radii, const MeshOptions& mo, double floorSlack = 0.05,
                             size_t floorRequired = 2);
// Steklov analog over single boundary half-holes (fourth level 3/2).
StabilitySweep steklov_sweep(const std::vector<double>& radii, const MeshOptions& mo, double floorSlack = 0.05,
                             size_t floorRequired = 2);

// Radial-solution grid under the coupling R = 2 pi / k, r = exp(-c sqrt k):
// three reports per r (a, b, ODE agreement).  The b-bound constant 2 needs
// c <~ 0.04; radii with r >= R are reported as violated.
std::vector<BoundReport> leqpol_grid(const std::vector<double>& rs, double c = 0.038);

struct VitaliRun {
    double R = 0, r = 0, Cfit = 0, Cused = 0;
    PerforatedDomain domain;
    Mesh mesh;
    MuBar muBar;
    BoundReport report;
    std::vector<std::array<double, 3>> grid;  // (R, r, lambda_D) used for the fit
};
// Fit C on a radius grid, apply r = R exp(-1/(2 C R^2)) and certify lambda_D >= 2.
// C is raised when the rule would give a radius below `rMin`.
VitaliRun vitali_threshold(const std::string& group, int f0, unsigned seed, const MeshOptions& mo,
                           double rMin = 1e-6);

}  // namespace perfo
