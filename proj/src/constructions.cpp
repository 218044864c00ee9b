#include "perfo/constructions.hpp"

#include <limits>
#include <random>
#include <unordered_map>

namespace perfo {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw DomainError(msg);
}

PerforatedDomain finish(Base base, std::optional<ReflectionGroup> g, std::vector<HoleSpec> holes,
                        const FamilyOptions& opt, Json meta) {
    PerforatedDomain d;
    d.base = base;
    d.group = std::move(g);
    d.holes = std::move(holes);
    d.meta = std::move(meta);
    validate(d, opt.disjointness);
    d.type = recompute_type(d);
    return d;
}

HoleSpec hole(const Vec3& c, double r, HoleKind kind = HoleKind::Interior) {
    HoleSpec h;
    h.center = c;
    h.radius = r;
    h.kind = kind;
    return h;
}

Vec3 fibonacci_point(int i, int n) {
    double z = 1.0 - (2.0 * i + 1.0) / n;
    double rho = std::sqrt(std::max(0.0, 1 - z * z));
    double phi = i * kPi * (3.0 - std::sqrt(5.0));
    return Vec3(rho * std::cos(phi), rho * std::sin(phi), z);
}

double mirror_distance(const ReflectionGroup& g, const Vec3& x) {
    double m = 1e300;
    for (const auto& n : g.normals) m = std::min(m, std::asin(std::min(1.0, std::abs(n.dot(x)))));
    return m;
}

// Bucket grid over points of the unit sphere, cubic cells of side `cell`.
class SphereGrid {
public:
    explicit SphereGrid(double cell) : cell_(cell) {}
    void add(const Vec3& x) {
        pts_.push_back(x);
        map_[key(idx(x))].push_back(static_cast<int>(pts_.size()) - 1);
    }
    // nearest geodesic distance among points within `rings` cells, else +inf
    double nearest(const Vec3& x, int rings) const {
        Eigen::Vector3i c = idx(x);
        double best = std::numeric_limits<double>::infinity();
        for (int dx = -rings; dx <= rings; ++dx)
            for (int dy = -rings; dy <= rings; ++dy)
                for (int dz = -rings; dz <= rings; ++dz) {
                    auto it = map_.find(key(c + Eigen::Vector3i(dx, dy, dz)));
                    if (it == map_.end()) continue;
                    for (int i : it->second) best = std::min(best, distance(Base::Sphere, x, pts_[i]));
                }
        return best;
    }
    size_t size() const { return pts_.size(); }

private:
    Eigen::Vector3i idx(const Vec3& x) const {
        return Eigen::Vector3i(int(std::floor(x.x() / cell_)), int(std::floor(x.y() / cell_)),
                               int(std::floor(x.z() / cell_)));
    }
    static uint64_t key(const Eigen::Vector3i& c) {
        return (uint64_t(uint32_t(c.x() + (1 << 20))) << 42) ^ (uint64_t(uint32_t(c.y() + (1 << 20))) << 21) ^
               uint64_t(uint32_t(c.z() + (1 << 20)));
    }
    double cell_;
    std::vector<Vec3> pts_;
    std::unordered_map<uint64_t, std::vector<int>> map_;
};

}  // namespace

double vitali_R(const ReflectionGroup& g, int f0) { return 1.0 / std::sqrt(double(f0) * g.order()); }

PerforatedDomain vitali_pack(const ReflectionGroup& g, int f0, double r, const VitaliOptions& opt) {
    require(g.base == Base::Sphere, "vitali_pack works on the sphere");
    require(f0 >= opt.packingC * g.order(), "f0 must be at least C*|G|");
    const double R = vitali_R(g, f0);
    require(r > 0 && r < R / 2, "hole radius must satisfy r < R/2");
    std::vector<Vec3> centers;   // chamber representatives
    SphereGrid images(2 * R);    // all orbit images
    auto accept = [&](const Vec3& c) {
        if (!g.in_chamber(c, 0) || (g.generator_count() && mirror_distance(g, c) < R)) return false;
        if (images.nearest(c, 1) < 2 * R) return false;
        centers.push_back(c);
        for (const auto& m : g.elements) images.add(m * c);
        return true;
    };
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> nd;
    int misses = 0;
    while (misses < 3000) {
        Vec3 c(nd(rng), nd(rng), nd(rng));
        misses = accept(c.normalized()) ? 0 : misses + 1;
    }
    // deterministic sweep to make the packing maximal
    int nfill = static_cast<int>(40.0 / (R * R)) + 1000;
    for (int i = 0; i < nfill; ++i) accept(fibonacci_point(i, nfill));
    require(!centers.empty(), "packing failure: no admissible center");
    int nsample = 20000;
    int rings = static_cast<int>(std::ceil(opt.coverFactor / 2)) + 1;
    double worst = 0;
    for (int i = 0; i < nsample; ++i) worst = std::max(worst, images.nearest(fibonacci_point(i, nsample), rings));
    require(worst <= opt.coverFactor * R, "packing failure: D_{6R} does not cover the sphere");
    std::vector<HoleSpec> seeds;
    for (const auto& c : centers) seeds.push_back(hole(c, r));
    Json meta{{"family", "vitali"}, {"f0", f0}, {"R", R}, {"r", r}, {"seed", opt.seed},
              {"count", static_cast<int>(centers.size())}, {"coverRadius", worst}};
    FamilyOptions fo;
    fo.disjointness = Disjointness::Doubled;
    return finish(Base::Sphere, g.kind == GroupKind::Trivial ? std::nullopt : std::optional(g),
                  expand_orbit(g, seeds), fo, meta);
}

PerforatedDomain equator_poles(int k, double c, const FamilyOptions& opt) {
    require(k >= 3, "equator_poles needs k >= 3");
    double r = opt.radius.value_or(std::exp(-c * std::sqrt(double(k))));
    std::vector<HoleSpec> hs{hole(Vec3(0, 0, 1), r), hole(Vec3(0, 0, -1), r)};
    for (int j = 0; j < k; ++j) {
        double phi = 2 * kPi * j / k;
        hs.push_back(hole(Vec3(std::cos(phi), std::sin(phi), 0), r));
    }
    return finish(Base::Sphere, ReflectionGroup::make(Base::Sphere, GroupKind::Z2xDk, k), hs, opt,
                  Json{{"family", "equator-poles"}, {"k", k}, {"c", c}, {"r", r}});
}

PerforatedDomain pole_latitude(int k, double c, const FamilyOptions& opt) {
    require(k >= 2, "pole_latitude needs k >= 2");
    double r = opt.radius.value_or(std::exp(-c * std::sqrt(double(k))));
    double theta = kPi / 2 + 1 / std::sqrt(double(k));
    std::vector<HoleSpec> hs{hole(Vec3(0, 0, 1), r)};
    for (int j = 0; j < k; ++j) {
        double phi = 2 * kPi * j / k;
        hs.push_back(hole(Vec3(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)), r));
    }
    return finish(Base::Sphere, ReflectionGroup::make(Base::Sphere, GroupKind::Dk, k), hs, opt,
                  Json{{"family", "pole-latitude"}, {"k", k}, {"c", c}, {"r", r}, {"offset", 1 / std::sqrt(double(k))}});
}

PerforatedDomain segmented(int n, int k, double c, double c1, const FamilyOptions& opt) {
    require(k >= 2, "segmented needs k >= 2");
    require(n >= 2 && n <= c1 * k, "segmented needs 2 <= n <= c1*k");
    double r = opt.radius.value_or(std::exp(-c * n * k) / k);
    std::vector<HoleSpec> hs;
    Json phases = Json::array();
    for (int i = 1; i <= n; ++i) {
        double t = -1.0 + 2.0 * i / (n + 1);
        double rho = std::sqrt(1 - t * t);
        // half-step offset between neighbours, mirrored so that x3 -> -x3 is a symmetry
        double o = ((std::min(i, n + 1 - i) - 1) % 2) * 0.5;
        phases.push_back(o);
        for (int j = 0; j < 2 * k; ++j) {
            double phi = (j + o) * kPi / k;
            hs.push_back(hole(Vec3(rho * std::cos(phi), rho * std::sin(phi), t), r));
        }
    }
    auto kind = n % 2 == 0 ? GroupKind::Z2xDk : GroupKind::Dk;
    return finish(Base::Sphere, ReflectionGroup::make(Base::Sphere, kind, k), hs, opt,
                  Json{{"family", "segmented"}, {"n", n}, {"k", k}, {"c", c}, {"r", r},
                       {"phaseOffsets", phases}, {"extraMirror", n % 2 == 0}});
}

PerforatedDomain platonic_edges(const ReflectionGroup& g, int i, int ei, double c, const FamilyOptions& opt) {
    require(g.kind == GroupKind::Tetrahedral || g.kind == GroupKind::Octahedral ||
                g.kind == GroupKind::Icosahedral,
            "platonic_edges needs a platonic group");
    require(i >= 0 && i < g.generator_count(), "mirror index out of range");
    require(ei >= 1, "need at least one hole per edge");
    double r = opt.radius.value_or(std::exp(-c * ei) / ei);
    ChamberEdge e = g.mirror_edge(i);
    require(e.length() / ei > 4 * r, "edge spacing must exceed 4r");
    std::vector<HoleSpec> seeds;
    for (int j = 0; j < ei; ++j) seeds.push_back(hole(e.at((j + 0.5) / ei), r));
    return finish(Base::Sphere, g, expand_orbit(g, seeds), opt,
                  Json{{"family", "platonic-edges"}, {"group", g.name()}, {"mirror", i}, {"e", ei}, {"c", c},
                       {"r", r}, {"endpoints", "excluded"}});
}

PerforatedDomain dk_wedges(int k, int n, double c, const FamilyOptions& opt) {
    require(k >= 2 && n >= 1, "dk_wedges needs k >= 2, n >= 1");
    double r = opt.radius.value_or(std::exp(-c * n));
    auto g = ReflectionGroup::make(Base::Sphere, GroupKind::Dk, k);
    ChamberEdge e = g.mirror_edge(0);
    std::vector<HoleSpec> seeds;
    for (int j = 0; j < n; ++j) seeds.push_back(hole(e.at((j + 0.5) / n), r));
    auto holes = expand_orbit(g, seeds);
    // covering of the mirror orbit by D_{10 R_n}, R_n = (pi/10)/n
    double Rn = kPi / 10 / n, worst = 0;
    for (const auto& m : g.elements)
        for (int s = 0; s <= 400; ++s) {
            Vec3 x = m * e.at(s / 400.0);
            double best = 1e300;
            for (const auto& h : holes) best = std::min(best, distance(Base::Sphere, x, h.center));
            worst = std::max(worst, best);
        }
    require(worst <= 10 * Rn + 1e-12, "covering of Fix(rho_1) by D_{10R_n} failed");
    Json meta{{"family", "dk-wedges"}, {"k", k}, {"n", n}, {"c", c}, {"r", r}, {"Rn", Rn}, {"coverRadius", worst}};
    if (n < k) meta["warning"] = "n < k: hypothesis n >= k does not hold";
    return finish(Base::Sphere, g, holes, opt, meta);
}

PerforatedDomain stek_boundary_holes(int k, double c, const FamilyOptions& opt) {
    require(k >= 2, "stek_boundary_holes needs k >= 2");
    double r = opt.radius.value_or(std::exp(-c * k) / k);
    std::vector<HoleSpec> hs;
    for (int j = 0; j < k; ++j) {
        double phi = 2 * kPi * j / k;
        hs.push_back(hole(Vec3(std::cos(phi), std::sin(phi), 0), r, HoleKind::BoundaryHalf));
    }
    return finish(Base::Disk, ReflectionGroup::make(Base::Disk, GroupKind::Dk, k), hs, opt,
                  Json{{"family", "stek-boundary"}, {"k", k}, {"c", c}, {"r", r}});
}

PerforatedDomain stek_interior_ring(int m, double c, const std::vector<HoleSpec>& boundarySeeds,
                                    const FamilyOptions& opt) {
    require(m >= 2, "stek_interior_ring needs m >= 2");
    double r = opt.radius.value_or(std::exp(-c * m) / m);
    double rho = double(m - 1) / m;
    auto g = ReflectionGroup::make(Base::Disk, GroupKind::Dk, m);
    std::vector<HoleSpec> hs;
    for (int j = 0; j < m; ++j) {
        double phi = 2 * kPi * j / m;
        hs.push_back(hole(Vec3(rho * std::cos(phi), rho * std::sin(phi), 0), r));
    }
    for (const auto& b : expand_orbit(g, boundarySeeds)) hs.push_back(b);
    return finish(Base::Disk, g, hs, opt,
                  Json{{"family", "stek-ring"}, {"m", m}, {"c", c}, {"r", r}, {"ringRadius", rho},
                       {"boundaryHoles", static_cast<int>(hs.size()) - m}});
}

PerforatedDomain stek_wedge_rays(int n, int a, double c, int n0, const FamilyOptions& opt) {
    require(n >= n0, "stek_wedge_rays needs n >= n0");
    require(a >= n, "stek_wedge_rays needs a >= n");
    double r = opt.radius.value_or(std::exp(-c * a) / a);
    std::vector<HoleSpec> hs;
    for (int l = 1; l <= a; ++l)
        for (int j = 0; j < n; ++j) {
            double phi = 2 * kPi * j / n, rho = double(l) / (a + 1);
            hs.push_back(hole(Vec3(rho * std::cos(phi), rho * std::sin(phi), 0), r));
        }
    return finish(Base::Disk, ReflectionGroup::make(Base::Disk, GroupKind::Dk, n), hs, opt,
                  Json{{"family", "stek-wedges"}, {"n", n}, {"a", a}, {"c", c}, {"r", r}});
}

PerforatedDomain stek_diameter(int m, const std::vector<HoleSpec>& boundarySeeds, const FamilyOptions& opt) {
    require(m >= 1, "stek_diameter needs m >= 1");
    double r = opt.radius.value_or(1.0 / (2 * m));
    auto g = ReflectionGroup::make(Base::Disk, GroupKind::Dk, 2);
    std::vector<HoleSpec> hs;
    for (int j = 1; j <= m; ++j) hs.push_back(hole(Vec3(-1.0 + (2.0 * j - 1) / m, 0, 0), r));
    for (const auto& b : expand_orbit(g, boundarySeeds)) hs.push_back(b);
    return finish(Base::Disk, g, hs, opt, Json{{"family", "stek-diameter"}, {"m", m}, {"r", r}, {"spacing", 2.0 / m}});
}

const std::vector<std::string>& family_names() {
    static const std::vector<std::string> names{"vitali",         "equator-poles", "pole-latitude", "segmented",
                                                "platonic-edges", "dk-wedges",     "stek-boundary", "stek-ring",
                                                "stek-wedges",    "stek-diameter"};
    return names;
}

PerforatedDomain make_family(const std::string& family, const Json& p) {
    FamilyOptions opt;
    if (p.contains("r") && !p["r"].is_null()) opt.radius = p["r"].get<double>();
    if (p.value("doubled", false)) opt.disjointness = Disjointness::Doubled;
    double c = p.value("c", 0.5);
    if (family == "vitali") {
        auto g = ReflectionGroup::make(Base::Sphere, group_kind_from_string(p.value("group", std::string("trivial"))),
                                       p.value("k", 0));
        int f0 = p.at("f0").get<int>();
        VitaliOptions vo;
        vo.seed = p.value("seed", 1u);
        vo.packingC = p.value("packingC", 1.0);
        double R = vitali_R(g, f0);
        double r = opt.radius.value_or(p.contains("C") ? R * std::exp(-1.0 / (2 * p["C"].get<double>() * R * R))
                                                       : R / 4);
        return vitali_pack(g, f0, r, vo);
    }
    if (family == "equator-poles") return equator_poles(p.at("k"), c, opt);
    if (family == "pole-latitude") return pole_latitude(p.at("k"), c, opt);
    if (family == "segmented") return segmented(p.at("n"), p.at("k"), c, p.value("c1", 1.0), opt);
    if (family == "platonic-edges") {
        auto g = ReflectionGroup::make(Base::Sphere, group_kind_from_string(p.value("group", std::string("octa"))));
        return platonic_edges(g, p.value("i", 0), p.at("e"), c, opt);
    }
    if (family == "dk-wedges") return dk_wedges(p.at("k"), p.at("n"), c, opt);
    if (family == "stek-boundary") return stek_boundary_holes(p.at("k"), c, opt);
    if (family == "stek-ring") return stek_interior_ring(p.at("m"), c, {}, opt);
    if (family == "stek-wedges") return stek_wedge_rays(p.at("n"), p.at("a"), c, p.value("n0", 2), opt);
    if (family == "stek-diameter") return stek_diameter(p.at("m"), {}, opt);
    throw DomainError("unknown family '" + family + "'");
}

double family_radius(const std::string& family, const Json& p) {
    Json q = p;
    q.erase("r");
    return make_family(family, q).holes.at(0).radius;
}

}  // namespace perfo
