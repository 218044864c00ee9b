#include "perfo/mesh.hpp"

#include "planar_mesher.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

namespace perfo {

namespace {

// Planar chart: stereographic on the sphere, identity on the disk.
struct Chart {
    bool sphere;
    StereoChart sc;
    Chart(bool s, const Vec3& pole) : sphere(s), sc(pole) {}
    Vec2 to_plane(const Vec3& x) const { return sphere ? sc.to_plane(x) : Vec2(x.x(), x.y()); }
    Vec3 to_space(const Vec2& y) const { return sphere ? sc.to_sphere(y) : Vec3(y.x(), y.y(), 0); }
    double scale(const Vec2& y) const { return sphere ? sc.plane_scale(y) : 1.0; }
};

// h(x) = min(h, min_i s_i + g * dist(x, circle_i)), holes looked up in a grid.
class SizeField {
public:
    SizeField(Base base, const std::vector<HoleSpec>& holes, const MeshOptions& opt)
        : base_(base), holes_(holes), h_(opt.h), g_(opt.grading) {
        double rmax = 0;
        for (const auto& hl : holes_) {
            s_.push_back(std::min(h_, opt.holeFactor * hl.radius));
            rmax = std::max(rmax, hl.radius);
        }
        cell_ = h_ / g_ + rmax + 1e-12;
        for (size_t i = 0; i < holes_.size(); ++i) grid_[cell_key(holes_[i].center)].push_back(static_cast<int>(i));
    }
    double operator()(const Vec3& x) const {
        double best = h_;
        Eigen::Vector3i c = cell_of(x);
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy)
                for (int dz = -1; dz <= 1; ++dz) {
                    auto it = grid_.find(pack(c + Eigen::Vector3i(dx, dy, dz)));
                    if (it == grid_.end()) continue;
                    for (int i : it->second) {
                        double d = std::max(0.0, distance(base_, x, holes_[i].center) - holes_[i].radius);
                        best = std::min(best, s_[i] + g_ * d);
                    }
                }
        return best;
    }

private:
    Base base_;
    std::vector<HoleSpec> holes_;
    std::vector<double> s_;
    double h_, g_, cell_;
    std::unordered_map<int64_t, std::vector<int>> grid_;
    Eigen::Vector3i cell_of(const Vec3& x) const {
        return Eigen::Vector3i(int(std::floor(x.x() / cell_)), int(std::floor(x.y() / cell_)),
                               int(std::floor(x.z() / cell_)));
    }
    static int64_t pack(const Eigen::Vector3i& c) {
        return (int64_t(c.x() + 1048576) << 42) | (int64_t(c.y() + 1048576) << 21) | int64_t(c.z() + 1048576);
    }
    int64_t cell_key(const Vec3& x) const { return pack(cell_of(x)); }
};

struct Curve3 {
    enum Kind { Mirror, Hole, Unit } kind;
    int index = -1;  // generator or hole index
    ChamberEdge edge;
    Base base = Base::Sphere;
    Vec3 c, e1, e2;
    double r = 0;
    bool closed = false;
    double period = 0;
    Vec3 at(double t) const {
        switch (kind) {
            case Mirror: return edge.at(t);
            case Unit: return Vec3(std::cos(t), std::sin(t), 0);
            case Hole:
                if (base == Base::Sphere)
                    return std::cos(r) * c + std::sin(r) * (std::cos(t) * e1 + std::sin(t) * e2);
                return c + r * (std::cos(t) * e1 + std::sin(t) * e2);
        }
        return Vec3::Zero();
    }
};

// Solutions of A cos(phi) + B sin(phi) = R, transversal crossings only.
std::vector<double> trig_solve(double A, double B, double R) {
    double rho = std::hypot(A, B);
    if (rho < 1e-300) return {};
    double q = R / rho;
    if (std::abs(q) >= 1.0 - 1e-14) return {};
    double base = std::atan2(B, A), d = std::acos(q);
    return {base - d, base + d};
}

double wrap(double t, double period) {
    t = std::fmod(t, period);
    return t < 0 ? t + period : t;
}

Vec3 chamber_center(const ReflectionGroup& g) {
    switch (g.kind) {
        case GroupKind::Trivial:
        case GroupKind::Z2: return Vec3(0, 0, 1);
        case GroupKind::Dk: return Vec3(std::cos(kPi / (2 * g.k)), std::sin(kPi / (2 * g.k)), 0);
        case GroupKind::Z2xDk:
            return (Vec3(0, 0, 1) + Vec3(1, 0, 0) + Vec3(std::cos(kPi / g.k), std::sin(kPi / g.k), 0)).normalized();
        default: {
            Vec3 s = Vec3::Zero();
            for (const auto& v : g.chamber_vertices()) s += v;
            return s.normalized();
        }
    }
}

bool strictly_in_hole(Base base, const std::vector<HoleSpec>& holes, const Vec3& x) {
    for (const auto& h : holes)
        if (distance(base, x, h.center) < h.radius * (1 - 1e-12)) return true;
    return false;
}

struct VertexHash {
    double cell;
    std::unordered_map<int64_t, std::vector<int>> map;
    int64_t key(const Vec3& x, int dx = 0, int dy = 0, int dz = 0) const {
        auto f = [&](double v, int d) { return int64_t(std::floor(v / cell)) + d + (1 << 20); };
        return (f(x.x(), dx) << 42) | (f(x.y(), dy) << 21) | f(x.z(), dz);
    }
    int find(const std::vector<Vec3>& pts, const Vec3& x, double tol) const {
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy)
                for (int dz = -1; dz <= 1; ++dz) {
                    auto it = map.find(key(x, dx, dy, dz));
                    if (it == map.end()) continue;
                    for (int i : it->second)
                        if ((pts[i] - x).norm() <= tol) return i;
                }
        return -1;
    }
};

void classify_boundary(Mesh& m) {
    std::unordered_map<uint64_t, int> count;
    auto key = [](int a, int b) {
        if (a > b) std::swap(a, b);
        return (uint64_t(a) << 32) | uint32_t(b);
    };
    for (const auto& t : m.triangles)
        for (int j = 0; j < 3; ++j) count[key(t[j], t[(j + 1) % 3])]++;
    size_t nv = m.vertices.size();
    m.vclass.assign(nv, VertexClass::Interior);
    m.vhole.assign(nv, -1);
    std::vector<bool> onUnit(nv, false), isBd(nv, false);
    std::vector<std::array<int, 2>> edges;
    for (const auto& t : m.triangles)
        for (int j = 0; j < 3; ++j) {
            int a = t[j], b = t[(j + 1) % 3];
            if (count[key(a, b)] == 1) {
                edges.push_back({a, b});
                isBd[a] = isBd[b] = true;
            }
        }
    for (size_t v = 0; v < nv; ++v) {
        if (!isBd[v]) continue;
        const Vec3& x = m.vertices[v];
        for (size_t i = 0; i < m.holes.size(); ++i) {
            const auto& h = m.holes[i];
            if (std::abs(distance(m.base, x, h.center) - h.radius) <= 1e-6 * h.radius) {
                m.vhole[v] = static_cast<int>(i);
                break;
            }
        }
        if (m.base == Base::Disk && std::abs(x.head<2>().norm() - 1) < 1e-12) onUnit[v] = true;
        if (m.vhole[v] >= 0) m.vclass[v] = VertexClass::HoleBoundary;
        else if (onUnit[v]) m.vclass[v] = VertexClass::OuterBoundary;
        else m.vclass[v] = VertexClass::Cut;
    }
    m.boundary.clear();
    for (auto [a, b] : edges) {
        int comp;
        if (m.vhole[a] >= 0 && m.vhole[a] == m.vhole[b]) comp = m.vhole[a];
        else if (onUnit[a] && onUnit[b]) comp = -1;
        else comp = -2;
        m.boundary.push_back({a, b, comp});
    }
}

void orient(Mesh& m) {
    for (auto& t : m.triangles) {
        const Vec3 &a = m.vertices[t[0]], &b = m.vertices[t[1]], &c = m.vertices[t[2]];
        Vec3 n = (b - a).cross(c - a);
        double s = m.base == Base::Sphere ? n.dot(a + b + c) : n.z();
        if (s < 0) std::swap(t[1], t[2]);
    }
}

Mesh mesh_impl(const PerforatedDomain& d, const MeshOptions& opt, bool forceChamberOnly,
               std::optional<ReflectionGroup> meshGroup) {
    for (size_t i = 0; i < d.holes.size(); ++i)
        if (d.holes[i].radius < opt.minRadius) {
            std::ostringstream os;
            os << "radius below meshable floor: hole " << i << " has r = " << d.holes[i].radius
               << ", minimum representable radius is " << opt.minRadius;
            throw MeshError(os.str());
        }
    const Base base = d.base;
    ReflectionGroup G = meshGroup ? *meshGroup
                                  : d.group ? *d.group : ReflectionGroup::make(base, GroupKind::Trivial);
    if (!meshGroup && base == Base::Sphere && G.kind == GroupKind::Trivial && d.holes.empty())
        G = ReflectionGroup::make(base, GroupKind::Z2);

    Vec3 pole(0, 0, 1);
    if (base == Base::Sphere) {
        if (G.kind == GroupKind::Trivial) {
            size_t big = 0;
            for (size_t i = 1; i < d.holes.size(); ++i)
                if (d.holes[i].radius > d.holes[big].radius) big = i;
            pole = d.holes[big].center;
        } else {
            pole = -chamber_center(G);
        }
    }
    Chart chart(base == Base::Sphere, pole);
    SizeField sizeField(base, d.holes, opt);

    // curves and nodes
    std::vector<Curve3> curves;
    std::vector<Vec3> nodes;
    auto node_at = [&](const Vec3& x) {
        for (size_t i = 0; i < nodes.size(); ++i)
            if ((nodes[i] - x).norm() < 1e-13) return static_cast<int>(i);
        nodes.push_back(x);
        return static_cast<int>(nodes.size()) - 1;
    };
    std::vector<std::vector<std::pair<double, int>>> breaks;
    for (int i = 0; i < G.generator_count(); ++i) {
        Curve3 c;
        c.kind = Curve3::Mirror;
        c.index = i;
        c.base = base;
        c.edge = G.mirror_edge(i);
        c.closed = c.edge.closed;
        c.period = 1.0;
        curves.push_back(c);
        breaks.emplace_back();
        if (!c.closed) {
            breaks.back().push_back({0.0, node_at(c.edge.a)});
            breaks.back().push_back({1.0, node_at(c.edge.b)});
        }
    }
    int unitCurve = -1;
    if (base == Base::Disk) {
        Curve3 c;
        c.kind = Curve3::Unit;
        c.base = base;
        c.closed = true;
        c.period = 2 * kPi;
        unitCurve = static_cast<int>(curves.size());
        curves.push_back(c);
        breaks.emplace_back();
        for (int i = 0; i < G.generator_count(); ++i)
            for (const Vec3& p : {curves[i].edge.a, curves[i].edge.b})
                if (std::abs(p.norm() - 1) < 1e-12)
                    breaks[unitCurve].push_back({wrap(std::atan2(p.y(), p.x()), 2 * kPi), node_at(p)});
    }
    for (size_t hi = 0; hi < d.holes.size(); ++hi) {
        const auto& h = d.holes[hi];
        Curve3 c;
        c.kind = Curve3::Hole;
        c.index = static_cast<int>(hi);
        c.base = base;
        c.c = h.center;
        c.r = h.radius;
        c.closed = true;
        c.period = 2 * kPi;
        if (base == Base::Sphere) {
            tangent_frame(h.center, c.e1, c.e2);
        } else {
            c.e1 = Vec3(1, 0, 0);
            c.e2 = Vec3(0, 1, 0);
        }
        int ci = static_cast<int>(curves.size());
        curves.push_back(c);
        breaks.emplace_back();
        for (int i = 0; i < G.generator_count(); ++i) {
            const Vec3& n = G.normals[i];
            const ChamberEdge& e = curves[i].edge;
            std::vector<double> phis;
            if (base == Base::Sphere)
                phis = trig_solve(n.dot(c.e1), n.dot(c.e2), -std::cos(c.r) * n.dot(c.c) / std::sin(c.r));
            else
                phis = trig_solve(n.x(), n.y(), -n.dot(c.c) / c.r);
            for (double phi : phis) {
                Vec3 x = c.at(phi);
                double t;
                if (base == Base::Sphere) {
                    double ang = wrap(std::atan2(x.dot(e.w), x.dot(e.a)), 2 * kPi);
                    t = ang / e.angle;
                    if (!e.closed && t > 1 + 1e-12) continue;
                } else {
                    Vec3 ab = e.b - e.a;
                    t = (x - e.a).dot(ab) / ab.squaredNorm();
                    if (t < -1e-12 || t > 1 + 1e-12) continue;
                }
                int nd = node_at(x);
                breaks[ci].push_back({wrap(phi, 2 * kPi), nd});
                breaks[i].push_back({std::clamp(t, 0.0, 1.0), nd});
            }
        }
        if (base == Base::Disk) {
            double R = (1 - c.c.squaredNorm() - c.r * c.r) / (2 * c.r);
            for (double phi : trig_solve(c.c.x(), c.c.y(), R)) {
                Vec3 x = c.at(phi);
                if (!G.in_chamber(x, 1e-12)) continue;
                int nd = node_at(x);
                breaks[ci].push_back({wrap(phi, 2 * kPi), nd});
                breaks[unitCurve].push_back({wrap(std::atan2(x.y(), x.x()), 2 * kPi), nd});
            }
        }
    }
    // pieces
    auto on_region_boundary = [&](const Curve3& c, const Vec3& x) {
        switch (c.kind) {
            case Curve3::Mirror: return !strictly_in_hole(base, d.holes, x);
            case Curve3::Hole: return G.in_chamber(x, 1e-14) && (base == Base::Sphere || x.head<2>().norm() <= 1);
            case Curve3::Unit: return G.in_chamber(x, 1e-14) && !strictly_in_hole(base, d.holes, x);
        }
        return false;
    };
    detail::PlanarInput in;
    std::vector<int> usedNode(nodes.size(), -1);
    std::vector<Vec3> usedNode3;
    auto use_node = [&](int n) {
        if (n >= static_cast<int>(usedNode.size())) usedNode.resize(n + 1, -1);
        if (usedNode[n] < 0) {
            usedNode[n] = static_cast<int>(in.nodes.size());
            in.nodes.push_back(chart.to_plane(nodes[n]));
            usedNode3.push_back(nodes[n]);
        }
        return usedNode[n];
    };
    std::vector<int> planarToCurve;
    for (size_t ci = 0; ci < curves.size(); ++ci) {
        const Curve3 cv = curves[ci];
        auto& br = breaks[ci];
        std::sort(br.begin(), br.end());
        std::vector<std::pair<double, int>> uniq;
        for (const auto& b : br)
            if (uniq.empty() || b.first - uniq.back().first > 1e-14 || b.second != uniq.back().second) uniq.push_back(b);
        std::vector<std::array<double, 2>> ranges;
        std::vector<std::array<int, 2>> ends;
        if (uniq.empty()) {
            if (!cv.closed) continue;
            int nd = node_at(cv.at(0));
            ranges.push_back({0, cv.period});
            ends.push_back({nd, nd});
        } else {
            for (size_t j = 0; j + 1 < uniq.size(); ++j) {
                ranges.push_back({uniq[j].first, uniq[j + 1].first});
                ends.push_back({uniq[j].second, uniq[j + 1].second});
            }
            if (cv.closed) {
                ranges.push_back({uniq.back().first, uniq.front().first + cv.period});
                ends.push_back({uniq.back().second, uniq.front().second});
            }
        }
        int pcurve = -1;
        for (size_t j = 0; j < ranges.size(); ++j) {
            if (ranges[j][1] - ranges[j][0] < 1e-15) continue;
            if (!on_region_boundary(cv, cv.at(0.5 * (ranges[j][0] + ranges[j][1])))) continue;
            if (pcurve < 0) {
                pcurve = static_cast<int>(in.curves.size());
                in.curves.push_back({[cv, &chart](double t) { return chart.to_plane(cv.at(t)); }});
            }
            detail::PlanarPiece pc;
            pc.curve = pcurve;
            pc.t0 = ranges[j][0];
            pc.t1 = ranges[j][1];
            pc.n0 = use_node(ends[j][0]);
            pc.n1 = use_node(ends[j][1]);
            pc.minSegments = 2;
            in.pieces.push_back(pc);
        }
        if (pcurve >= 0) planarToCurve.push_back(static_cast<int>(ci));
    }
    if (in.pieces.empty()) throw MeshError("domain has no boundary inside the chamber");
    in.size = [&](const Vec2& y) { return sizeField(chart.to_space(y)) * chart.scale(y); };
    in.inside = [&](const Vec2& y) {
        Vec3 x = chart.to_space(y);
        if (!G.in_chamber(x, 0)) return false;
        if (base == Base::Disk && x.head<2>().norm() > 1) return false;
        return !in_holes(d, x);
    };
    in.maxVertices = opt.maxVertices;
    detail::PlanarOutput out;
    try {
        out = detail::triangulate_region(in);
    } catch (const std::exception& e) {
        throw MeshError(std::string("mesh generation failed: ") + e.what());
    }
    std::vector<Vec3> chamberPts(out.points.size());
    for (size_t i = 0; i < out.points.size(); ++i) {
        if (out.node[i] >= 0) chamberPts[i] = usedNode3[out.node[i]];
        else if (out.curve[i] >= 0) chamberPts[i] = curves[planarToCurve[out.curve[i]]].at(out.param[i]);
        else chamberPts[i] = chart.to_space(out.points[i]);
    }

    Mesh m;
    m.base = base;
    m.h = opt.h;
    m.holes = d.holes;
    bool replicate = opt.replicate && !forceChamberOnly;
    std::vector<Mat3> elems = replicate ? G.elements : std::vector<Mat3>{Mat3::Identity()};
    std::vector<bool> onMirror(chamberPts.size(), false);
    for (size_t i = 0; i < chamberPts.size(); ++i)
        onMirror[i] = !G.mirrors_through(chamberPts[i], 1e-11).empty();
    VertexHash hash;
    hash.cell = 1e-9;
    for (const auto& g : elems) {
        std::vector<int> idx(chamberPts.size());
        for (size_t i = 0; i < chamberPts.size(); ++i) {
            Vec3 x = g * chamberPts[i];
            if (onMirror[i] && elems.size() > 1) {
                int f = hash.find(m.vertices, x, 1e-11);
                if (f >= 0) {
                    idx[i] = f;
                    continue;
                }
                hash.map[hash.key(x)].push_back(static_cast<int>(m.vertices.size()));
            }
            idx[i] = static_cast<int>(m.vertices.size());
            m.vertices.push_back(x);
        }
        for (const auto& t : out.triangles) m.triangles.push_back({idx[t[0]], idx[t[1]], idx[t[2]]});
    }
    orient(m);
    classify_boundary(m);
    return m;
}

}  // namespace

int Mesh::euler_characteristic() const {
    std::unordered_map<uint64_t, int> edges;
    for (const auto& t : triangles)
        for (int j = 0; j < 3; ++j) {
            int a = t[j], b = t[(j + 1) % 3];
            if (a > b) std::swap(a, b);
            edges[(uint64_t(a) << 32) | uint32_t(b)] = 1;
        }
    return static_cast<int>(vertices.size()) - static_cast<int>(edges.size()) + static_cast<int>(triangles.size());
}

double Mesh::area() const {
    double s = 0;
    for (const auto& t : triangles)
        s += 0.5 * (vertices[t[1]] - vertices[t[0]]).cross(vertices[t[2]] - vertices[t[0]]).norm();
    return s;
}

double Mesh::boundary_length(std::optional<int> component) const {
    double s = 0;
    for (const auto& e : boundary)
        if (!component || e.component == *component) s += (vertices[e.a] - vertices[e.b]).norm();
    return s;
}

std::vector<std::vector<int>> Mesh::polylines() const {
    std::unordered_map<int, std::vector<int>> adj;
    for (const auto& e : boundary) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    std::unordered_map<int, bool> seen;
    std::vector<std::vector<int>> out;
    auto walk = [&](int s) {
        std::vector<int> line{s};
        seen[s] = true;
        int prev = -1, cur = s;
        while (true) {
            int nxt = -1;
            for (int n : adj[cur])
                if (n != prev && (!seen[n] || (n == s && line.size() > 2))) {
                    nxt = n;
                    break;
                }
            if (nxt < 0) break;
            line.push_back(nxt);
            if (nxt == s) break;
            seen[nxt] = true;
            prev = cur;
            cur = nxt;
        }
        out.push_back(line);
    };
    std::vector<int> keys;
    for (const auto& [v, n] : adj) keys.push_back(v);
    std::sort(keys.begin(), keys.end());
    for (int v : keys)
        if (adj[v].size() != 2 && !seen[v]) walk(v);
    for (int v : keys)
        if (!seen[v]) walk(v);
    return out;
}

Mesh mesh_domain(const PerforatedDomain& d, const MeshOptions& opt) { return mesh_impl(d, opt, false, std::nullopt); }

Mesh mesh_sphere(const PerforatedDomain& d, double h) {
    if (d.base != Base::Sphere) throw MeshError("mesh_sphere needs a sphere domain");
    MeshOptions o;
    o.h = h;
    return mesh_domain(d, o);
}

Mesh mesh_disk(const PerforatedDomain& d, double h) {
    if (d.base != Base::Disk) throw MeshError("mesh_disk needs a disk domain");
    MeshOptions o;
    o.h = h;
    return mesh_domain(d, o);
}

Mesh mesh_hemisphere(double h) {
    PerforatedDomain d;
    d.base = Base::Sphere;
    MeshOptions o;
    o.h = h;
    return mesh_impl(d, o, true, ReflectionGroup::make(Base::Sphere, GroupKind::Z2));
}

Mesh mesh_half_disk(double h) {
    PerforatedDomain d;
    d.base = Base::Disk;
    MeshOptions o;
    o.h = h;
    return mesh_impl(d, o, true, ReflectionGroup::make(Base::Disk, GroupKind::Z2));
}

Mesh refine(const Mesh& m) {
    Mesh r;
    r.base = m.base;
    r.holes = m.holes;
    r.h = m.h / 2;
    r.level = m.level + 1;
    r.vertices = m.vertices;
    r.vclass = m.vclass;
    r.vhole = m.vhole;
    std::unordered_map<uint64_t, int> comp;
    auto key = [](int a, int b) {
        if (a > b) std::swap(a, b);
        return (uint64_t(a) << 32) | uint32_t(b);
    };
    for (const auto& e : m.boundary) comp[key(e.a, e.b)] = e.component;
    std::unordered_map<uint64_t, int> mid;
    auto midpoint = [&](int a, int b) {
        uint64_t k = key(a, b);
        auto it = mid.find(k);
        if (it != mid.end()) return it->second;
        Vec3 x = 0.5 * (m.vertices[a] + m.vertices[b]);
        VertexClass vc = VertexClass::Interior;
        int vh = -1;
        auto ci = comp.find(k);
        if (m.base == Base::Sphere) x.normalize();
        if (ci != comp.end()) {
            int c = ci->second;
            if (c >= 0) {
                const auto& h = m.holes[c];
                if (m.base == Base::Sphere) {
                    Vec3 v = x - x.dot(h.center) * h.center;
                    x = std::cos(h.radius) * h.center + std::sin(h.radius) * v.normalized();
                } else {
                    x = h.center + h.radius * (x - h.center).normalized();
                }
                vc = VertexClass::HoleBoundary;
                vh = c;
            } else if (c == -1) {
                x = Vec3(x.x(), x.y(), 0).normalized();
                vc = VertexClass::OuterBoundary;
            } else {
                vc = VertexClass::Cut;
            }
        }
        int id = static_cast<int>(r.vertices.size());
        r.vertices.push_back(x);
        r.vclass.push_back(vc);
        r.vhole.push_back(vh);
        mid[k] = id;
        return id;
    };
    for (const auto& t : m.triangles) {
        int ab = midpoint(t[0], t[1]), bc = midpoint(t[1], t[2]), ca = midpoint(t[2], t[0]);
        r.triangles.push_back({t[0], ab, ca});
        r.triangles.push_back({ab, t[1], bc});
        r.triangles.push_back({ca, bc, t[2]});
        r.triangles.push_back({ab, bc, ca});
    }
    for (const auto& e : m.boundary) {
        int c = mid[key(e.a, e.b)];
        r.boundary.push_back({e.a, c, e.component});
        r.boundary.push_back({c, e.b, e.component});
    }
    return r;
}

MeshQuality quality(const Mesh& m, double floorDeg) {
    MeshQuality q;
    q.minAngleDeg = 180;
    for (const auto& t : m.triangles) {
        double tmin = 180;
        for (int j = 0; j < 3; ++j) {
            Vec3 u = m.vertices[t[(j + 1) % 3]] - m.vertices[t[j]];
            Vec3 v = m.vertices[t[(j + 2) % 3]] - m.vertices[t[j]];
            double a = std::atan2(u.cross(v).norm(), u.dot(v)) * 180 / kPi;
            tmin = std::min(tmin, a);
            q.maxAngleDeg = std::max(q.maxAngleDeg, a);
        }
        q.minAngleDeg = std::min(q.minAngleDeg, tmin);
        if (tmin < floorDeg) ++q.belowFloor;
    }
    for (size_t v = 0; v < m.vertices.size(); ++v) {
        const Vec3& x = m.vertices[v];
        if (m.base == Base::Sphere) q.maxSphereError = std::max(q.maxSphereError, std::abs(x.norm() - 1));
        if (m.vhole[v] >= 0) {
            const auto& h = m.holes[m.vhole[v]];
            double err = std::abs(distance(m.base, x, h.center) - h.radius);
            q.maxCircleError = std::max(q.maxCircleError, err);
        }
    }
    return q;
}

Json mesh_summary(const Mesh& m) {
    auto q = quality(m);
    std::map<int, int> comps;
    for (const auto& e : m.boundary) comps[e.component]++;
    Json c = Json::object();
    for (auto [k, n] : comps) c[std::to_string(k)] = n;
    return Json{{"base", m.base == Base::Sphere ? "sphere" : "disk"},
                {"h", m.h},
                {"level", m.level},
                {"vertices", m.vertices.size()},
                {"triangles", m.triangles.size()},
                {"eulerChar", m.euler_characteristic()},
                {"boundaryPolylines", m.polylines().size()},
                {"boundaryEdgesByComponent", c},
                {"area", m.area()},
                {"minAngleDeg", q.minAngleDeg},
                {"maxAngleDeg", q.maxAngleDeg},
                {"maxCircleError", q.maxCircleError}};
}

void write_off(const Mesh& m, const std::string& offPath, const std::string& sidecarPath) {
    std::ofstream off(offPath);
    if (!off) throw MeshError("cannot write " + offPath);
    off.precision(17);
    off << "OFF\n" << m.vertices.size() << ' ' << m.triangles.size() << " 0\n";
    for (const auto& v : m.vertices) off << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
    for (const auto& t : m.triangles) off << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    Json j;
    j["base"] = m.base == Base::Sphere ? "sphere" : "disk";
    j["h"] = m.h;
    j["level"] = m.level;
    Json cls = Json::array(), hl = Json::array(), bd = Json::array(), holes = Json::array();
    for (auto c : m.vclass) cls.push_back(static_cast<int>(c));
    for (int x : m.vhole) hl.push_back(x);
    for (const auto& e : m.boundary) bd.push_back({e.a, e.b, e.component});
    for (const auto& h : m.holes)
        holes.push_back({{"center", {h.center.x(), h.center.y(), h.center.z()}},
                         {"radius", h.radius},
                         {"kind", h.kind == HoleKind::Interior ? "interior" : "boundary-half"}});
    j["vertexClass"] = cls;
    j["vertexHole"] = hl;
    j["boundary"] = bd;
    j["holes"] = holes;
    std::ofstream sc(sidecarPath);
    if (!sc) throw MeshError("cannot write " + sidecarPath);
    sc << j.dump(1) << '\n';
}

Mesh read_off(const std::string& offPath, const std::string& sidecarPath) {
    std::ifstream off(offPath);
    if (!off) throw MeshError("cannot read " + offPath);
    std::string head;
    off >> head;
    if (head != "OFF") throw MeshError(offPath + ": missing OFF header");
    size_t nv, nf, ne;
    off >> nv >> nf >> ne;
    Mesh m;
    m.vertices.resize(nv);
    for (auto& v : m.vertices) off >> v.x() >> v.y() >> v.z();
    m.triangles.resize(nf);
    for (auto& t : m.triangles) {
        int k;
        off >> k >> t[0] >> t[1] >> t[2];
        if (k != 3) throw MeshError(offPath + ": only triangles are supported");
    }
    if (!off) throw MeshError(offPath + ": truncated file");
    std::ifstream sc(sidecarPath);
    if (!sc) throw MeshError("cannot read " + sidecarPath);
    Json j = Json::parse(sc);
    m.base = j.at("base") == "sphere" ? Base::Sphere : Base::Disk;
    m.h = j.at("h");
    m.level = j.value("level", 0);
    for (int c : j.at("vertexClass")) m.vclass.push_back(static_cast<VertexClass>(c));
    for (int x : j.at("vertexHole")) m.vhole.push_back(x);
    for (const auto& e : j.at("boundary")) m.boundary.push_back({e[0], e[1], e[2]});
    for (const auto& h : j.at("holes")) {
        HoleSpec hs;
        hs.center = Vec3(h["center"][0], h["center"][1], h["center"][2]);
        hs.radius = h["radius"];
        hs.kind = h["kind"] == "interior" ? HoleKind::Interior : HoleKind::BoundaryHalf;
        m.holes.push_back(hs);
    }
    if (m.vclass.size() != nv || m.vhole.size() != nv) throw MeshError(sidecarPath + ": vertex count mismatch");
    return m;
}

}  // namespace perfo
