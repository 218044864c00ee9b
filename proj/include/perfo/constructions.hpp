#pragma once

#include "perfo/domain.hpp"

#include <optional>

namespace perfo {

// Shared knobs.  `radius` overrides the family's formula radius.
struct FamilyOptions {
    std::optional<double> radius;
    Disjointness disjointness = Disjointness::Simple;
};

struct VitaliOptions {
    double packingC = 1.0;     // require f0 >= packingC * |G|
    unsigned seed = 1;
    double coverFactor = 6.0;  // D_{cover*R} must cover the sphere
};

// R = 1/sqrt(f0 |G|); greedy maximal R-packing in one chamber.
PerforatedDomain vitali_pack(const ReflectionGroup& g, int f0, double r, const VitaliOptions& opt = {});
double vitali_R(const ReflectionGroup& g, int f0);

PerforatedDomain equator_poles(int k, double c, const FamilyOptions& opt = {});
PerforatedDomain pole_latitude(int k, double c, const FamilyOptions& opt = {});
PerforatedDomain segmented(int n, int k, double c, double c1 = 1.0, const FamilyOptions& opt = {});
PerforatedDomain platonic_edges(const ReflectionGroup& g, int i, int ei, double c, const FamilyOptions& opt = {});
PerforatedDomain dk_wedges(int k, int n, double c, const FamilyOptions& opt = {});

PerforatedDomain stek_boundary_holes(int k, double c, const FamilyOptions& opt = {});
PerforatedDomain stek_interior_ring(int m, double c, const std::vector<HoleSpec>& boundarySeeds = {},
                                    const FamilyOptions& opt = {});
PerforatedDomain stek_wedge_rays(int n, int a, double c, int n0 = 2, const FamilyOptions& opt = {});
PerforatedDomain stek_diameter(int m, const std::vector<HoleSpec>& boundarySeeds = {},
                               const FamilyOptions& opt = {});

// Formula radius of a family at the given counts.
double family_radius(const std::string& family, const Json& params);

// Name-based dispatch used by the CLI and the optimizer.  Recognized keys:
// k, m, n, a, c, c1, f0, i, e, group, seed, r, doubled.
PerforatedDomain make_family(const std::string& family, const Json& params);
const std::vector<std::string>& family_names();

}  // namespace perfo
