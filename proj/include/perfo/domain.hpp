#pragma once

#include "perfo/group.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace perfo {

using Json = nlohmann::ordered_json;

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class HoleKind { Interior, BoundaryHalf };

struct HoleSpec {
    Vec3 center = Vec3::Zero();
    double radius = 0.0;
    HoleKind kind = HoleKind::Interior;
    int stabilizer = 1;  // order of the stabilizer of the center in the domain's group
};

// b = f + sum e_i rho_i + sum v_ij rho_i rho_j
struct TypeSignature {
    int f = 0;
    std::vector<int> e;                      // indexed by generator
    std::map<std::pair<int, int>, int> v;    // i < j

    int total() const;
    bool operator==(const TypeSignature& o) const;
    std::string str() const;
};

enum class Disjointness { Simple, Doubled };

struct PerforatedDomain {
    Base base = Base::Sphere;
    std::vector<HoleSpec> holes;
    std::optional<ReflectionGroup> group;
    std::optional<TypeSignature> type;
    bool doubledDisjoint = false;  // set by validate()
    Json meta = Json::object();
};

struct Measures {
    double area = 0;        // |Omega|
    double holeArea = 0;    // |D| (inside the base)
    double boundaryLength = 0;
    double gamma1Length = 0;    // disk: length of the unit circle outside the holes
    double holeCircleArc = 0;   // disk: length of the unit circle inside holes
};

struct TopologyRecord {
    int boundaryComponents = 0;  // m (sphere) or k of the double (disk)
    int doubledGenus = 0;
    int eulerChar = 0;           // of the doubled surface
    int domainEulerChar = 0;     // of Omega itself
    int interiorHoles = 0;
    int boundaryHoles = 0;
};

// Throws DomainError naming the offending holes.  Simple disjointness is
// always enforced; the doubled-disk hypothesis is enforced when `mode` is
// Doubled and otherwise just recorded in doubledDisjoint.
void validate(PerforatedDomain& d, Disjointness mode = Disjointness::Doubled);
bool doubled_disjoint(const PerforatedDomain& d, std::string* why = nullptr);

std::vector<HoleSpec> expand_orbit(const ReflectionGroup& g, const std::vector<HoleSpec>& seeds);
PerforatedDomain holes_from_type(const ReflectionGroup& g, const TypeSignature& b,
                                 const std::vector<double>& radii, unsigned placementSeed);
TypeSignature recompute_type(const PerforatedDomain& d);

enum class ScherkClass { Scherk, Generic };
ScherkClass classify_scherk(const ReflectionGroup& g, const TypeSignature& b);

Measures exact_measures(const PerforatedDomain& d);
TopologyRecord topology(const PerforatedDomain& d);

// True if x lies in one of the holes (closed), or outside the base disk.
bool in_holes(const PerforatedDomain& d, const Vec3& x, double tol = 0.0);

Json to_json(const PerforatedDomain& d);
PerforatedDomain domain_from_json(const Json& j);
std::string blueprint_hash(const PerforatedDomain& d);
std::string fnv1a_hex(const std::string& s);

// Two hole lists equal up to permutation.
bool same_hole_set(Base base, const std::vector<HoleSpec>& a, const std::vector<HoleSpec>& b,
                   double tol = 1e-10);

}  // namespace perfo
