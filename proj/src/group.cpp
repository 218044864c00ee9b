#include "perfo/group.hpp"

#include <algorithm>
#include <stdexcept>

namespace perfo {

namespace {

Mat3 reflection(const Vec3& n) { return Mat3::Identity() - 2.0 * n * n.transpose(); }

bool same(const Mat3& a, const Mat3& b) { return (a - b).cwiseAbs().maxCoeff() < 1e-9; }

std::vector<Mat3> close_group(const std::vector<Mat3>& gens) {
    std::vector<Mat3> out{Mat3::Identity()};
    for (size_t i = 0; i < out.size(); ++i) {
        for (const auto& g : gens) {
            Mat3 h = g * out[i];
            bool found = false;
            for (const auto& e : out)
                if (same(e, h)) { found = true; break; }
            if (!found) out.push_back(h);
            if (out.size() > 240) throw std::logic_error("reflection group closure does not terminate");
        }
    }
    return out;
}

// Normals with pairwise products -cos(pi/m_ij) for the Coxeter diagram [p,3].
std::vector<Vec3> coxeter_normals(int p) {
    Mat3 g;
    double c = std::cos(kPi / p);
    g << 1, -c, 0, -c, 1, -0.5, 0, -0.5, 1;
    Eigen::LLT<Mat3> llt(g);
    Mat3 l = llt.matrixL();
    return {l.row(0).transpose(), l.row(1).transpose(), l.row(2).transpose()};
}

}  // namespace

ReflectionGroup ReflectionGroup::make(Base base, GroupKind kind, int k) {
    ReflectionGroup grp;
    grp.base = base;
    grp.kind = kind;
    grp.k = k;
    auto dk_normals = [&](int n) {
        if (n < 1) throw std::invalid_argument("dihedral order must be >= 1");
        grp.normals.push_back(Vec3(0, 1, 0));
        grp.normals.push_back(Vec3(std::sin(kPi / n), -std::cos(kPi / n), 0));
    };
    switch (kind) {
        case GroupKind::Trivial: break;
        case GroupKind::Z2:
            grp.normals.push_back(base == Base::Sphere ? Vec3(0, 0, 1) : Vec3(0, 1, 0));
            break;
        case GroupKind::Dk: dk_normals(k); break;
        case GroupKind::Z2xDk:
            if (base != Base::Sphere) throw std::invalid_argument("Z2xDk is a sphere group");
            dk_normals(k);
            grp.normals.push_back(Vec3(0, 0, 1));
            break;
        case GroupKind::Tetrahedral:
        case GroupKind::Octahedral:
        case GroupKind::Icosahedral: {
            if (base != Base::Sphere) throw std::invalid_argument("platonic groups act on the sphere");
            int p = kind == GroupKind::Tetrahedral ? 3 : kind == GroupKind::Octahedral ? 4 : 5;
            grp.normals = coxeter_normals(p);
            break;
        }
    }
    if (kind == GroupKind::Dk && k == 1) grp.normals.pop_back();
    for (const auto& n : grp.normals) grp.generators.push_back(reflection(n));
    grp.elements = close_group(grp.generators);
    return grp;
}

bool ReflectionGroup::in_chamber(const Vec3& x, double tol) const {
    for (const auto& n : normals)
        if (n.dot(x) < -tol) return false;
    return true;
}

std::vector<int> ReflectionGroup::mirrors_through(const Vec3& x, double tol) const {
    std::vector<int> out;
    for (int i = 0; i < generator_count(); ++i)
        if (std::abs(normals[i].dot(x)) <= tol) out.push_back(i);
    return out;
}

const Mat3& ReflectionGroup::to_chamber(const Vec3& x) const {
    for (const auto& g : elements)
        if (in_chamber(g * x, 1e-10)) return g;
    throw std::logic_error("no element maps the point into the chamber");
}

std::vector<Vec3> ReflectionGroup::chamber_vertices() const {
    std::vector<Vec3> out;
    int ng = generator_count();
    if (base == Base::Disk) {
        if (ng >= 2) out.push_back(Vec3::Zero());
        return out;
    }
    for (int i = 0; i < ng; ++i)
        for (int j = i + 1; j < ng; ++j) {
            Vec3 v = normals[i].cross(normals[j]);
            if (v.norm() < 1e-12) continue;
            v.normalize();
            for (double s : {1.0, -1.0})
                if (in_chamber(s * v, 1e-10)) out.push_back(s * v);
        }
    return out;
}

ChamberEdge ReflectionGroup::mirror_edge(int i) const {
    ChamberEdge e;
    e.base = base;
    e.mirror = i;
    const Vec3& n = normals.at(i);
    if (base == Base::Disk) {
        Vec3 d(n.y(), -n.x(), 0);
        if (!in_chamber(0.5 * d, 1e-12)) d = -d;
        e.b = d;
        e.a = generator_count() >= 2 ? Vec3(Vec3::Zero()) : Vec3(-d);
        return e;
    }
    std::vector<Vec3> vs;
    for (const auto& v : chamber_vertices())
        if (std::abs(n.dot(v)) < 1e-10) vs.push_back(v);
    if (vs.size() < 2) {
        e.closed = true;
        e.a = orthogonal_unit(n);
        e.w = n.cross(e.a);
        e.b = e.a;
        e.angle = 2 * kPi;
        return e;
    }
    std::sort(vs.begin(), vs.end(), [](const Vec3& x, const Vec3& y) { return x.z() > y.z(); });
    e.a = vs[0];
    Vec3 w = n.cross(e.a).normalized();
    double ang = std::atan2(vs[1].dot(w), vs[1].dot(e.a));
    if (ang < 0) ang += 2 * kPi;
    Vec3 mid = std::cos(ang / 2) * e.a + std::sin(ang / 2) * w;
    if (!in_chamber(mid, 1e-10)) {
        w = -w;
        ang = 2 * kPi - ang;
    }
    e.w = w;
    e.b = vs[1];
    e.angle = ang;
    return e;
}

std::string to_string(GroupKind kind) {
    switch (kind) {
        case GroupKind::Trivial: return "trivial";
        case GroupKind::Z2: return "z2";
        case GroupKind::Dk: return "dk";
        case GroupKind::Z2xDk: return "z2xdk";
        case GroupKind::Tetrahedral: return "tetra";
        case GroupKind::Octahedral: return "octa";
        case GroupKind::Icosahedral: return "icosa";
    }
    return "?";
}

GroupKind group_kind_from_string(const std::string& s) {
    if (s == "trivial") return GroupKind::Trivial;
    if (s == "z2") return GroupKind::Z2;
    if (s == "dk" || s == "dn") return GroupKind::Dk;
    if (s == "z2xdk") return GroupKind::Z2xDk;
    if (s == "tetra" || s == "tetrahedral") return GroupKind::Tetrahedral;
    if (s == "octa" || s == "octahedral") return GroupKind::Octahedral;
    if (s == "icosa" || s == "icosahedral") return GroupKind::Icosahedral;
    throw std::invalid_argument("unknown group kind '" + s + "'");
}

std::string ReflectionGroup::name() const {
    std::string s = to_string(kind);
    if (kind == GroupKind::Dk || kind == GroupKind::Z2xDk) s += "(" + std::to_string(k) + ")";
    return s;
}

}  // namespace perfo
