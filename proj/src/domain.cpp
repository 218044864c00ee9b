#include "perfo/domain.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <random>
#include <sstream>

namespace perfo {

int TypeSignature::total() const {
    int s = f;
    for (int x : e) s += x;
    for (const auto& [k, x] : v) s += x;
    return s;
}

bool TypeSignature::operator==(const TypeSignature& o) const {
    if (f != o.f) return false;
    size_t n = std::max(e.size(), o.e.size());
    for (size_t i = 0; i < n; ++i) {
        int a = i < e.size() ? e[i] : 0, b = i < o.e.size() ? o.e[i] : 0;
        if (a != b) return false;
    }
    auto nz = [](const std::map<std::pair<int, int>, int>& m) {
        std::map<std::pair<int, int>, int> r;
        for (const auto& [k, x] : m)
            if (x) r[k] = x;
        return r;
    };
    return nz(v) == nz(o.v);
}

std::string TypeSignature::str() const {
    std::ostringstream os;
    os << f;
    for (size_t i = 0; i < e.size(); ++i)
        if (e[i]) os << " + " << e[i] << "r" << i + 1;
    for (const auto& [k, x] : v)
        if (x) os << " + " << x << "r" << k.first + 1 << "r" << k.second + 1;
    return os.str();
}

namespace {

std::string hole_name(size_t i, const HoleSpec& h) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "hole %zu (center %.6g,%.6g,%.6g r=%.6g)", i, h.center.x(),
                  h.center.y(), h.center.z(), h.radius);
    return buf;
}

}  // namespace

bool same_hole_set(Base base, const std::vector<HoleSpec>& a, const std::vector<HoleSpec>& b,
                   double tol) {
    if (a.size() != b.size()) return false;
    std::vector<char> used(b.size(), 0);
    for (const auto& h : a) {
        bool ok = false;
        for (size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            if (distance(base, h.center, b[j].center) <= tol &&
                std::abs(h.radius - b[j].radius) <= tol * std::max(1.0, h.radius)) {
                used[j] = 1;
                ok = true;
                break;
            }
        }
        if (!ok) return false;
    }
    return true;
}

// First pair (i < j, lexicographic) with dist < factor (r_i + r_j) - slack.
// Sweep along the widest axis: a coordinate gap bounds both distances from below.
static std::optional<std::pair<size_t, size_t>> first_close_pair(const PerforatedDomain& d, double factor, double slack) {
    const auto& H = d.holes;
    std::vector<size_t> order(H.size());
    double rmax = 0;
    Vec3 lo = Vec3::Constant(1e300), hi = Vec3::Constant(-1e300);
    for (size_t i = 0; i < H.size(); ++i) {
        order[i] = i;
        rmax = std::max(rmax, H[i].radius);
        lo = lo.cwiseMin(H[i].center);
        hi = hi.cwiseMax(H[i].center);
    }
    int ax = 0;
    if (!H.empty()) (hi - lo).maxCoeff(&ax);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return H[a].center[ax] < H[b].center[ax]; });
    std::optional<std::pair<size_t, size_t>> best;
    for (size_t p = 0; p < order.size(); ++p) {
        const auto& a = H[order[p]];
        for (size_t q = p + 1; q < order.size(); ++q) {
            const auto& b = H[order[q]];
            if (b.center[ax] - a.center[ax] > factor * (a.radius + rmax)) break;
            if (distance(d.base, a.center, b.center) < factor * (a.radius + b.radius) - slack) {
                std::pair<size_t, size_t> pr(std::min(order[p], order[q]), std::max(order[p], order[q]));
                if (!best || pr < *best) best = pr;
            }
        }
    }
    return best;
}

bool doubled_disjoint(const PerforatedDomain& d, std::string* why) {
    auto pr = first_close_pair(d, 2.0, 1e-12);
    if (!pr) return true;
    if (why)
        *why = "doubled disks of " + hole_name(pr->first, d.holes[pr->first]) + " and " +
               hole_name(pr->second, d.holes[pr->second]) + " overlap";
    return false;
}

void validate(PerforatedDomain& d, Disjointness mode) {
    for (size_t i = 0; i < d.holes.size(); ++i) {
        auto& h = d.holes[i];
        if (!(h.radius > 0)) throw DomainError(hole_name(i, h) + ": radius must be positive");
        if (d.base == Base::Sphere) {
            if (h.kind != HoleKind::Interior)
                throw DomainError(hole_name(i, h) + ": half-disk holes exist only in the disk");
            if (std::abs(h.center.norm() - 1.0) > 1e-12)
                throw DomainError(hole_name(i, h) + ": center not on the unit sphere");
            h.center.normalize();
            if (h.radius >= kPi) throw DomainError(hole_name(i, h) + ": radius must be < pi");
        } else {
            if (std::abs(h.center.z()) > 0) throw DomainError(hole_name(i, h) + ": disk centers need z = 0");
            double rho = h.center.norm();
            if (h.kind == HoleKind::BoundaryHalf) {
                if (std::abs(rho - 1.0) > 1e-12)
                    throw DomainError(hole_name(i, h) + ": half-disk center must lie on the unit circle");
                if (h.radius >= 1.0) throw DomainError(hole_name(i, h) + ": half-disk radius must be < 1");
            } else if (rho + h.radius >= 1.0) {
                throw DomainError(hole_name(i, h) + ": interior hole leaves the unit disk");
            }
        }
    }
    if (auto pr = first_close_pair(d, 1.0, 0.0))
        throw DomainError("overlap: " + hole_name(pr->first, d.holes[pr->first]) + " intersects " +
                          hole_name(pr->second, d.holes[pr->second]));
    std::string why;
    d.doubledDisjoint = doubled_disjoint(d, &why);
    if (mode == Disjointness::Doubled && !d.doubledDisjoint) throw DomainError("overlap: " + why);
    if (d.group) {
        if (d.group->base != d.base) throw DomainError("group acts on a different base");
        for (const auto& g : d.group->elements) {
            std::vector<HoleSpec> img = d.holes;
            for (auto& h : img) h.center = g * h.center;
            if (!same_hole_set(d.base, img, d.holes, 1e-10))
                throw DomainError("hole set is not invariant under " + d.group->name());
        }
        for (auto& h : d.holes) {
            int s = 0;
            for (const auto& g : d.group->elements)
                if (distance(d.base, g * h.center, h.center) <= 1e-10) ++s;
            h.stabilizer = s;
        }
    }
}

std::vector<HoleSpec> expand_orbit(const ReflectionGroup& g, const std::vector<HoleSpec>& seeds) {
    std::vector<HoleSpec> out;
    for (size_t s = 0; s < seeds.size(); ++s) {
        const auto& seed = seeds[s];
        if (!g.in_chamber(seed.center, 1e-10)) {
            std::ostringstream os;
            os << "seed " << s << " is not in the closed chamber of " << g.name() << ":";
            for (int i = 0; i < g.generator_count(); ++i) {
                double v = g.normals[i].dot(seed.center);
                if (v < -1e-10) os << " mirror " << i + 1 << " violated by " << -v;
            }
            throw DomainError(os.str());
        }
        size_t first = out.size();
        for (const auto& m : g.elements) {
            Vec3 c = m * seed.center;
            bool dup = false;
            for (size_t j = first; j < out.size(); ++j)
                if (distance(g.base, out[j].center, c) <= 1e-10) { dup = true; break; }
            if (!dup) {
                HoleSpec h = seed;
                h.center = c;
                out.push_back(h);
            }
        }
        int orbit = static_cast<int>(out.size() - first);
        for (size_t j = first; j < out.size(); ++j) out[j].stabilizer = g.order() / orbit;
    }
    return out;
}

namespace {

Vec3 vertex_of(const ReflectionGroup& g, int i, int j, int which) {
    std::vector<Vec3> vs;
    for (const auto& v : g.chamber_vertices())
        if (std::abs(g.normals[i].dot(v)) < 1e-10 && std::abs(g.normals[j].dot(v)) < 1e-10) vs.push_back(v);
    if (which >= static_cast<int>(vs.size()))
        throw DomainError("type requests more vertex holes than mirror intersections");
    // north pole first for dihedral groups
    std::sort(vs.begin(), vs.end(), [](const Vec3& a, const Vec3& b) { return a.z() > b.z(); });
    return vs[which];
}

double mirror_distance(const ReflectionGroup& g, const Vec3& x) {
    double m = 1e300;
    for (const auto& n : g.normals) {
        double s = std::abs(n.dot(x));
        m = std::min(m, g.base == Base::Sphere ? std::asin(std::min(1.0, s)) : s);
    }
    return m;
}

}  // namespace

PerforatedDomain holes_from_type(const ReflectionGroup& g, const TypeSignature& b,
                                 const std::vector<double>& radii, unsigned placementSeed) {
    if (static_cast<int>(radii.size()) != b.total())
        throw DomainError("radii list length " + std::to_string(radii.size()) + " does not match type total " +
                          std::to_string(b.total()));
    int ng = g.generator_count();
    if (static_cast<int>(b.e.size()) > ng) throw DomainError("type has more edge entries than generators");
    std::vector<HoleSpec> seeds;
    size_t ri = 0;
    std::vector<HoleSpec> free_seeds;
    std::mt19937_64 rng(placementSeed);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> ud(-1, 1);
    std::vector<HoleSpec> placed_orbits;
    auto fits = [&](const Vec3& c, double r) {
        for (const auto& h : placed_orbits)
            if (distance(g.base, h.center, c) < 2 * (r + h.radius)) return false;
        return true;
    };
    // structured holes first so that free holes avoid them
    for (int i = 0; i < static_cast<int>(b.e.size()); ++i) {
        int cnt = b.e[i];
        if (!cnt) continue;
        ChamberEdge e = g.mirror_edge(i);
        for (int j = 0; j < cnt; ++j) {
            double t = e.closed ? double(j) / cnt : (j + 0.5) / cnt;
            HoleSpec h;
            h.center = e.at(t);
            seeds.push_back(h);
        }
    }
    for (const auto& [ij, cnt] : b.v)
        for (int w = 0; w < cnt; ++w) {
            HoleSpec h;
            h.center = vertex_of(g, ij.first, ij.second, w);
            seeds.push_back(h);
        }
    // radii: free holes take the first f entries
    for (auto& s : seeds) s.radius = radii[b.f + ri++];
    for (const auto& h : expand_orbit(g, seeds)) placed_orbits.push_back(h);
    for (int j = 0; j < b.f; ++j) {
        double r = radii[j];
        bool ok = false;
        for (int tries = 0; tries < 200000 && !ok; ++tries) {
            Vec3 c;
            if (g.base == Base::Sphere) c = Vec3(nd(rng), nd(rng), nd(rng)).normalized();
            else {
                c = Vec3(ud(rng), ud(rng), 0);
                if (c.norm() + 2 * r >= 1.0) continue;
            }
            if (!g.in_chamber(c, 0)) continue;
            if (g.generator_count() && mirror_distance(g, c) < 2 * r) continue;
            if (!fits(c, r)) continue;
            HoleSpec h;
            h.center = c;
            h.radius = r;
            free_seeds.push_back(h);
            for (const auto& x : expand_orbit(g, {h})) placed_orbits.push_back(x);
            ok = true;
        }
        if (!ok) throw DomainError("could not place free hole " + std::to_string(j) + " without overlap");
    }
    PerforatedDomain d;
    d.base = g.base;
    d.group = g;
    d.type = b;
    std::vector<HoleSpec> all = free_seeds;
    all.insert(all.end(), seeds.begin(), seeds.end());
    d.holes = expand_orbit(g, all);
    validate(d, Disjointness::Doubled);
    return d;
}

TypeSignature recompute_type(const PerforatedDomain& d) {
    TypeSignature b;
    if (!d.group) {
        b.f = static_cast<int>(d.holes.size());
        return b;
    }
    const auto& g = *d.group;
    b.e.assign(g.generator_count(), 0);
    std::vector<char> seen(d.holes.size(), 0);
    for (size_t i = 0; i < d.holes.size(); ++i) {
        if (seen[i]) continue;
        const Vec3& c = d.holes[i].center;
        for (const auto& m : g.elements) {
            Vec3 x = m * c;
            for (size_t j = 0; j < d.holes.size(); ++j)
                if (!seen[j] && distance(d.base, d.holes[j].center, x) <= 1e-9) seen[j] = 1;
        }
        Vec3 rep = g.to_chamber(c) * c;
        auto ms = g.mirrors_through(rep);
        if (ms.empty()) ++b.f;
        else if (ms.size() == 1) ++b.e[ms[0]];
        else if (ms.size() == 2) ++b.v[{ms[0], ms[1]}];
        else throw DomainError("hole center fixed by more than two mirrors");
    }
    return b;
}

ScherkClass classify_scherk(const ReflectionGroup& g, const TypeSignature& b) {
    auto e = [&](int i) { return i < static_cast<int>(b.e.size()) ? b.e[i] : 0; };
    auto v = [&](int i, int j) {
        auto it = b.v.find({i, j});
        return it == b.v.end() ? 0 : it->second;
    };
    int total = b.total();
    switch (g.kind) {
        case GroupKind::Z2:
            return (b.f == 0 && total == e(0) && e(0) >= 1) ? ScherkClass::Scherk : ScherkClass::Generic;
        case GroupKind::Dk:
            if (total != 1) return ScherkClass::Generic;
            return (b.f == 1 || e(0) == 1 || e(1) == 1) ? ScherkClass::Scherk : ScherkClass::Generic;
        case GroupKind::Z2xDk: {
            if (b.f || e(0) || e(1) || v(0, 1)) return ScherkClass::Generic;
            if (v(0, 2) > 1 || v(1, 2) > 1) return ScherkClass::Generic;
            return total >= 1 ? ScherkClass::Scherk : ScherkClass::Generic;
        }
        default: return ScherkClass::Generic;
    }
}

Measures exact_measures(const PerforatedDomain& d) {
    Measures m;
    if (d.base == Base::Sphere) {
        for (const auto& h : d.holes) {
            m.holeArea += cap_area(h.radius);
            m.boundaryLength += 2 * kPi * std::sin(h.radius);
        }
        m.area = 4 * kPi - m.holeArea;
        return m;
    }
    double hole_arcs = 0;
    for (const auto& h : d.holes) {
        double r = h.radius;
        if (h.kind == HoleKind::Interior) {
            m.holeArea += kPi * r * r;
            hole_arcs += 2 * kPi * r;
        } else {
            // lens |D_r(x) ∩ unit disk| for |x| = 1
            m.holeArea += r * r * std::acos(r / 2) + std::acos(1 - r * r / 2) - 0.5 * r * std::sqrt(4 - r * r);
            hole_arcs += 2 * r * std::acos(r / 2);
            m.holeCircleArc += 4 * std::asin(r / 2);
        }
    }
    m.area = kPi - m.holeArea;
    m.gamma1Length = 2 * kPi - m.holeCircleArc;
    m.boundaryLength = m.gamma1Length + hole_arcs;
    return m;
}

TopologyRecord topology(const PerforatedDomain& d) {
    TopologyRecord t;
    if (d.base == Base::Sphere) {
        int m = static_cast<int>(d.holes.size());
        if (m == 0) throw DomainError("sphere without holes has no doubled surface");
        t.boundaryComponents = m;
        t.interiorHoles = m;
        t.doubledGenus = m - 1;
        t.eulerChar = 2 - 2 * t.doubledGenus;
        t.domainEulerChar = 2 - m;
        return t;
    }
    for (const auto& h : d.holes) (h.kind == HoleKind::Interior ? t.interiorHoles : t.boundaryHoles)++;
    if (d.holes.empty()) throw DomainError("disk without holes: doubling across an empty set is degenerate");
    t.domainEulerChar = 1 - t.interiorHoles;
    t.eulerChar = 2 * t.domainEulerChar - t.boundaryHoles;
    t.boundaryComponents = t.boundaryHoles > 0 ? t.boundaryHoles : 2;
    t.doubledGenus = (2 - t.boundaryComponents - t.eulerChar) / 2;
    return t;
}

bool in_holes(const PerforatedDomain& d, const Vec3& x, double tol) {
    if (d.base == Base::Disk && x.head<2>().norm() > 1.0 + tol) return true;
    for (const auto& h : d.holes)
        if (distance(d.base, x, h.center) < h.radius + tol) return true;
    return false;
}

Json to_json(const PerforatedDomain& d) {
    Json j;
    j["base"] = d.base == Base::Sphere ? "sphere" : "disk";
    if (d.group) j["group"] = Json{{"kind", to_string(d.group->kind)}, {"k", d.group->k}};
    else j["group"] = Json{{"kind", "trivial"}, {"k", 0}};
    TypeSignature b = d.type ? *d.type : recompute_type(d);
    Json v = Json::array();
    for (const auto& [k, x] : b.v)
        if (x) v.push_back(Json::array({k.first, k.second, x}));
    j["type"] = Json{{"f", b.f}, {"e", b.e}, {"v", v}};
    Json holes = Json::array();
    for (const auto& h : d.holes)
        holes.push_back(Json{{"center", {h.center.x(), h.center.y(), h.center.z()}},
                             {"radius", h.radius},
                             {"kind", h.kind == HoleKind::Interior ? "interior" : "boundary-half"}});
    j["holes"] = holes;
    j["doubledDisjoint"] = d.doubledDisjoint;
    j["meta"] = d.meta;
    return j;
}

PerforatedDomain domain_from_json(const Json& j) {
    PerforatedDomain d;
    d.base = j.at("base").get<std::string>() == "sphere" ? Base::Sphere : Base::Disk;
    if (j.contains("group")) {
        auto kind = group_kind_from_string(j["group"].at("kind").get<std::string>());
        if (kind != GroupKind::Trivial) d.group = ReflectionGroup::make(d.base, kind, j["group"].value("k", 0));
    }
    for (const auto& h : j.at("holes")) {
        HoleSpec s;
        auto c = h.at("center");
        s.center = Vec3(c[0].get<double>(), c[1].get<double>(), c.size() > 2 ? c[2].get<double>() : 0.0);
        s.radius = h.at("radius").get<double>();
        s.kind = h.value("kind", std::string("interior")) == "boundary-half" ? HoleKind::BoundaryHalf
                                                                           : HoleKind::Interior;
        d.holes.push_back(s);
    }
    if (j.contains("type")) {
        TypeSignature b;
        b.f = j["type"].value("f", 0);
        b.e = j["type"].value("e", std::vector<int>{});
        for (const auto& v : j["type"].value("v", Json::array()))
            b.v[{v[0].get<int>(), v[1].get<int>()}] = v[2].get<int>();
        d.type = b;
    }
    if (j.contains("meta")) d.meta = j["meta"];
    validate(d, Disjointness::Simple);
    return d;
}

std::string fnv1a_hex(const std::string& s) {
    unsigned long long h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", h);
    return buf;
}

std::string blueprint_hash(const PerforatedDomain& d) {
    Json j = to_json(d);
    j.erase("meta");
    return fnv1a_hex(j.dump());
}

}  // namespace perfo
