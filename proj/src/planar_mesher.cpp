// Constrained Delaunay triangulation of a curved planar region plus Ruppert
// refinement (circumcenter insertion, encroached segments split on the curve).
#include "planar_mesher.hpp"

#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace perfo::detail {

namespace {

using LD = long double;

LD orient(const Vec2& a, const Vec2& b, const Vec2& c) {
    return (LD(b.x()) - a.x()) * (LD(c.y()) - a.y()) - (LD(b.y()) - a.y()) * (LD(c.x()) - a.x());
}

// > 0 when d is strictly inside the circumcircle of the ccw triangle abc
LD incircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    LD adx = LD(a.x()) - d.x(), ady = LD(a.y()) - d.y();
    LD bdx = LD(b.x()) - d.x(), bdy = LD(b.y()) - d.y();
    LD cdx = LD(c.x()) - d.x(), cdy = LD(c.y()) - d.y();
    LD ad = adx * adx + ady * ady, bd = bdx * bdx + bdy * bdy, cd = cdx * cdx + cdy * cdy;
    return adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) + ad * (bdx * cdy - bdy * cdx);
}

Vec2 circumcenter(const Vec2& a, const Vec2& b, const Vec2& c) {
    LD bx = LD(b.x()) - a.x(), by = LD(b.y()) - a.y();
    LD cx = LD(c.x()) - a.x(), cy = LD(c.y()) - a.y();
    LD d = 2 * (bx * cy - by * cx);
    LD b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
    return Vec2(double(a.x() + (cy * b2 - by * c2) / d), double(a.y() + (bx * c2 - cx * b2) / d));
}

struct Tri {
    int v[3];
    int n[3];
    bool c[3];
    bool alive = true;
    bool skip = false;
};

struct Seg {
    int a, b;  // a < b
    int curve;
    double ta, tb;
};

uint64_t key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (uint64_t(uint32_t(a)) << 32) | uint32_t(b);
}

struct BEdge {
    int u, w, nb, owner;
    bool c;
};

class Mesher {
public:
    explicit Mesher(const PlanarInput& in) : in_(in) {}

    PlanarOutput run();

private:
    const PlanarInput& in_;
    std::vector<Vec2> P_;
    std::vector<int> curve_, node_;
    std::vector<double> param_;
    std::vector<bool> acute_;
    std::vector<Tri> T_;
    std::vector<int> free_, vt_, mark_;
    int stamp_ = 0;
    std::unordered_map<uint64_t, Seg> segs_;
    std::unordered_set<uint64_t> frozen_;
    std::deque<int> badQ_;
    std::deque<uint64_t> encQ_;
    int last_ = 0;
    int nsuper_ = 0;

    int add_point(const Vec2& p, int curve = -1, double t = 0, int node = -1) {
        P_.push_back(p);
        curve_.push_back(curve);
        param_.push_back(t);
        node_.push_back(node);
        vt_.push_back(-1);
        return static_cast<int>(P_.size()) - 1;
    }
    void drop_last_point() {
        P_.pop_back();
        curve_.pop_back();
        param_.pop_back();
        node_.pop_back();
        vt_.pop_back();
    }

    int new_tri(int a, int b, int c) {
        int id;
        if (!free_.empty()) {
            id = free_.back();
            free_.pop_back();
        } else {
            id = static_cast<int>(T_.size());
            T_.emplace_back();
            mark_.push_back(0);
        }
        Tri& t = T_[id];
        t.v[0] = a, t.v[1] = b, t.v[2] = c;
        t.n[0] = t.n[1] = t.n[2] = -1;
        t.c[0] = t.c[1] = t.c[2] = false;
        t.alive = true;
        t.skip = false;
        vt_[a] = vt_[b] = vt_[c] = id;
        return id;
    }

    double size_at(const Vec2& p) const { return in_.size(p); }

    int locate(const Vec2& p, int t, bool stopAtConstraint, int& crossT, int& crossE);
    std::vector<int> cavity(const Vec2& p, int start);
    bool fan(int p, std::vector<int>& cav, int start, int skipU, int skipW, std::vector<int>& created);
    bool insert_free(const Vec2& p, int start, std::vector<int>* created = nullptr);
    bool find_edge(int a, int b, int& t, int& i) const;
    void mark_constrained(const Seg& s);
    bool split_segment(uint64_t k);
    bool splittable(uint64_t k) const;
    bool encroached(uint64_t k) const;
    bool is_bad(int t) const;
    void refine_triangle(int t);
    void after_insert(const std::vector<int>& created);
    void classify();
};

int Mesher::locate(const Vec2& p, int t, bool stopAtConstraint, int& crossT, int& crossE) {
    crossT = crossE = -1;
    if (t < 0 || !T_[t].alive) {
        t = -1;
        for (size_t i = 0; i < T_.size(); ++i)
            if (T_[i].alive) { t = static_cast<int>(i); break; }
    }
    size_t cap = 4 * T_.size() + 100;
    for (size_t step = 0; step < cap; ++step) {
        const Tri& tr = T_[t];
        bool moved = false;
        for (int kk = 0; kk < 3; ++kk) {
            int i = (kk + static_cast<int>(step)) % 3;
            int a = tr.v[(i + 1) % 3], b = tr.v[(i + 2) % 3];
            if (orient(P_[a], P_[b], p) < 0) {
                if (tr.n[i] < 0 || (stopAtConstraint && tr.c[i])) {
                    crossT = t;
                    crossE = i;
                    return -1;
                }
                t = tr.n[i];
                moved = true;
                break;
            }
        }
        if (!moved) return t;
    }
    for (size_t i = 0; i < T_.size(); ++i) {
        const Tri& tr = T_[i];
        if (!tr.alive) continue;
        if (orient(P_[tr.v[0]], P_[tr.v[1]], p) >= 0 && orient(P_[tr.v[1]], P_[tr.v[2]], p) >= 0 &&
            orient(P_[tr.v[2]], P_[tr.v[0]], p) >= 0)
            return static_cast<int>(i);
    }
    return -1;
}

std::vector<int> Mesher::cavity(const Vec2& p, int start) {
    ++stamp_;
    std::vector<int> cav{start};
    mark_[start] = stamp_;
    for (size_t q = 0; q < cav.size(); ++q) {
        const Tri& t = T_[cav[q]];
        for (int i = 0; i < 3; ++i) {
            int nb = t.n[i];
            if (nb < 0 || t.c[i] || mark_[nb] == stamp_) continue;
            const Tri& u = T_[nb];
            if (incircle(P_[u.v[0]], P_[u.v[1]], P_[u.v[2]], p) > 0) {
                mark_[nb] = stamp_;
                cav.push_back(nb);
            }
        }
    }
    return cav;
}

// Replace the cavity by a fan around p.  The cavity is shrunk until it is
// star-shaped from p; fails if the start triangle itself must go.
bool Mesher::fan(int p, std::vector<int>& cav, int start, int skipU, int skipW, std::vector<int>& created) {
    std::vector<BEdge> edges;
    for (int iter = 0; iter < 200; ++iter) {
        ++stamp_;
        for (int t : cav) mark_[t] = stamp_;
        // reconnect from start
        std::vector<int> conn{start};
        int s2 = ++stamp_;
        mark_[start] = s2;
        for (size_t q = 0; q < conn.size(); ++q) {
            const Tri& t = T_[conn[q]];
            for (int i = 0; i < 3; ++i) {
                int nb = t.n[i];
                if (nb >= 0 && !t.c[i] && mark_[nb] == s2 - 1) {
                    mark_[nb] = s2;
                    conn.push_back(nb);
                }
            }
        }
        cav.swap(conn);
        edges.clear();
        int bad = -1;
        for (int t : cav) {
            const Tri& tr = T_[t];
            for (int i = 0; i < 3; ++i) {
                int nb = tr.n[i];
                int u = tr.v[(i + 1) % 3], w = tr.v[(i + 2) % 3];
                if (nb >= 0 && mark_[nb] == s2) {
                    if (!tr.c[i]) continue;
                    // constrained edge inside the cavity: drop the side away from p
                    bad = orient(P_[u], P_[w], P_[p]) > 0 ? nb : t;
                    break;
                }
                if (u == skipU && w == skipW) continue;
                if (orient(P_[p], P_[u], P_[w]) <= 0) {
                    bad = t;
                    break;
                }
                edges.push_back({u, w, nb, t, tr.c[i]});
            }
            if (bad >= 0) break;
        }
        if (bad < 0) break;
        if (bad == start) return false;
        cav.erase(std::find(cav.begin(), cav.end(), bad));
        if (iter == 199) return false;
    }
    std::unordered_map<int, int> byU, byW;
    created.clear();
    for (const auto& e : edges) {
        int id = new_tri(p, e.u, e.w);
        T_[id].n[0] = e.nb;
        T_[id].c[0] = e.c;
        byU[e.u] = id;
        byW[e.w] = id;
        created.push_back(id);
    }
    for (size_t k = 0; k < edges.size(); ++k) {
        int id = created[k];
        Tri& t = T_[id];
        auto a = byW.find(t.v[1]);
        if (a != byW.end()) t.n[2] = a->second; else t.c[2] = true;
        auto b = byU.find(t.v[2]);
        if (b != byU.end()) t.n[1] = b->second; else t.c[1] = true;
        int nb = edges[k].nb;
        if (nb >= 0)
            for (int j = 0; j < 3; ++j)
                if (T_[nb].n[j] == edges[k].owner) T_[nb].n[j] = id;
    }
    for (int t : cav) {
        T_[t].alive = false;
        free_.push_back(t);
    }
    last_ = created.empty() ? last_ : created.front();
    return true;
}

bool Mesher::insert_free(const Vec2& p, int start, std::vector<int>* created) {
    int ct, ce;
    int t = locate(p, start, false, ct, ce);
    if (t < 0) return false;
    const Tri& tr = T_[t];
    for (int i = 0; i < 3; ++i)
        if ((P_[tr.v[i]] - p).squaredNorm() == 0) return false;
    int id = add_point(p);
    auto cav = cavity(p, t);
    std::vector<int> made;
    if (!fan(id, cav, t, -1, -1, made)) {
        drop_last_point();
        return false;
    }
    if (created) *created = std::move(made);
    return true;
}

bool Mesher::find_edge(int a, int b, int& t, int& i) const {
    int start = vt_[a];
    if (start < 0 || !T_[start].alive) return false;
    for (int dir = 0; dir < 2; ++dir) {
        int cur = start;
        for (int guard = 0; guard < 100000; ++guard) {
            const Tri& tr = T_[cur];
            int j = tr.v[0] == a ? 0 : tr.v[1] == a ? 1 : 2;
            for (int e = 0; e < 3; ++e) {
                if (e == j) continue;
                int u = tr.v[(e + 1) % 3], w = tr.v[(e + 2) % 3];
                if ((u == a && w == b) || (u == b && w == a)) {
                    t = cur;
                    i = e;
                    return true;
                }
            }
            int nxt = dir == 0 ? tr.n[(j + 2) % 3] : tr.n[(j + 1) % 3];
            if (nxt < 0) break;
            if (nxt == start) return false;
            cur = nxt;
        }
    }
    return false;
}

void Mesher::mark_constrained(const Seg& s) {
    int t, i;
    if (!find_edge(s.a, s.b, t, i)) throw std::logic_error("constrained edge vanished");
    T_[t].c[i] = true;
    int nb = T_[t].n[i];
    if (nb >= 0)
        for (int j = 0; j < 3; ++j)
            if (T_[nb].n[j] == t) T_[nb].c[j] = true;
    segs_[key(s.a, s.b)] = s;
}

bool Mesher::splittable(uint64_t k) const {
    if (frozen_.count(k)) return false;
    const Seg& s = segs_.at(k);
    Vec2 mid = 0.5 * (P_[s.a] + P_[s.b]);
    double len = (P_[s.a] - P_[s.b]).norm();
    return len > 2e-3 * size_at(mid) && len > 1e-13 * (1 + mid.norm());
}

bool Mesher::encroached(uint64_t k) const {
    const Seg& s = segs_.at(k);
    int t, i;
    if (!find_edge(s.a, s.b, t, i)) return false;
    int c = T_[t].v[i];
    return (P_[s.a] - P_[c]).dot(P_[s.b] - P_[c]) < 0;
}

bool Mesher::split_segment(uint64_t k) {
    Seg s = segs_.at(k);
    int t, i;
    if (!find_edge(s.a, s.b, t, i)) return false;
    double tm = 0.5 * (s.ta + s.tb);
    Vec2 m = in_.curves[s.curve].eval(tm);
    // edge orientation inside t is (v[i+1], v[i+2])
    int u = T_[t].v[(i + 1) % 3], w = T_[t].v[(i + 2) % 3];
    int id = add_point(m, s.curve, tm);
    auto cav = cavity(m, t);
    std::vector<int> made;
    if (!fan(id, cav, t, u, w, made)) {
        drop_last_point();
        frozen_.insert(k);
        return false;
    }
    segs_.erase(k);
    double ta = s.ta, tb = s.tb;
    Seg s1{std::min(s.a, id), std::max(s.a, id), s.curve, s.a < id ? ta : tm, s.a < id ? tm : ta};
    Seg s2{std::min(s.b, id), std::max(s.b, id), s.curve, s.b < id ? tb : tm, s.b < id ? tm : tb};
    segs_[key(s1.a, s1.b)] = s1;
    segs_[key(s2.a, s2.b)] = s2;
    after_insert(made);
    return true;
}

bool Mesher::is_bad(int t) const {
    const Tri& tr = T_[t];
    if (!tr.alive || tr.skip) return false;
    const Vec2 &a = P_[tr.v[0]], &b = P_[tr.v[1]], &c = P_[tr.v[2]];
    Vec2 cc = circumcenter(a, b, c);
    double R = (cc - a).norm();
    Vec2 cen = (a + b + c) / 3.0;
    double sz = size_at(cen);
    if (R > 0.65 * sz) return true;
    double emin = std::min({(a - b).norm(), (b - c).norm(), (c - a).norm()});
    if (R <= std::sqrt(2.0) * emin) return false;
    for (int j = 0; j < 3; ++j)
        if (acute_[tr.v[j]]) return false;
    return emin > 0.01 * sz;
}

void Mesher::after_insert(const std::vector<int>& created) {
    for (int t : created) {
        if (is_bad(t)) badQ_.push_back(t);
        const Tri& tr = T_[t];
        for (int i = 0; i < 3; ++i) {
            if (!tr.c[i]) continue;
            int a = tr.v[(i + 1) % 3], b = tr.v[(i + 2) % 3];
            if ((P_[a] - P_[tr.v[i]]).dot(P_[b] - P_[tr.v[i]]) < 0) encQ_.push_back(key(a, b));
        }
    }
}

void Mesher::refine_triangle(int t) {
    const Tri& tr = T_[t];
    Vec2 c = circumcenter(P_[tr.v[0]], P_[tr.v[1]], P_[tr.v[2]]);
    int ct, ce;
    int home = locate(c, t, true, ct, ce);
    if (home < 0) {
        if (ct < 0) {
            T_[t].skip = true;
            return;
        }
        uint64_t k = key(T_[ct].v[(ce + 1) % 3], T_[ct].v[(ce + 2) % 3]);
        if (segs_.count(k) && splittable(k) && split_segment(k)) {
            if (T_[t].alive) badQ_.push_back(t);
        } else if (T_[t].alive) {
            T_[t].skip = true;
        }
        return;
    }
    auto cav = cavity(c, home);
    // would c encroach a segment on the cavity boundary?
    std::vector<uint64_t> hit;
    for (int q : cav)
        for (int i = 0; i < 3; ++i) {
            if (!T_[q].c[i]) continue;
            int a = T_[q].v[(i + 1) % 3], b = T_[q].v[(i + 2) % 3];
            if ((P_[a] - c).dot(P_[b] - c) < 0) hit.push_back(key(a, b));
        }
    if (!hit.empty()) {
        bool any = false;
        for (auto k : hit)
            if (segs_.count(k) && splittable(k) && split_segment(k)) any = true;
        if (any) {
            if (T_[t].alive) badQ_.push_back(t);
        } else if (T_[t].alive) {
            T_[t].skip = true;
        }
        return;
    }
    int id = add_point(c);
    std::vector<int> made;
    if (!fan(id, cav, home, -1, -1, made)) {
        drop_last_point();
        T_[t].skip = true;
        return;
    }
    after_insert(made);
}

void Mesher::classify() {
    std::vector<int> comp(T_.size(), -1);
    int ncomp = 0;
    std::vector<int> best;
    std::vector<double> bestScore;
    std::vector<bool> touchesSuper;
    for (size_t s = 0; s < T_.size(); ++s) {
        if (!T_[s].alive || comp[s] >= 0) continue;
        std::vector<int> stack{static_cast<int>(s)};
        comp[s] = ncomp;
        best.push_back(-1);
        bestScore.push_back(-1);
        touchesSuper.push_back(false);
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            const Tri& tr = T_[t];
            const Vec2 &a = P_[tr.v[0]], &b = P_[tr.v[1]], &c = P_[tr.v[2]];
            double area = 0.5 * double(orient(a, b, c));
            double per = (a - b).norm() + (b - c).norm() + (c - a).norm();
            double score = area / per;
            for (int j = 0; j < 3; ++j)
                if (tr.v[j] < nsuper_) touchesSuper[ncomp] = true;
            if (score > bestScore[ncomp]) {
                bestScore[ncomp] = score;
                best[ncomp] = t;
            }
            for (int i = 0; i < 3; ++i) {
                int nb = tr.n[i];
                if (nb >= 0 && !tr.c[i] && comp[nb] < 0) {
                    comp[nb] = ncomp;
                    stack.push_back(nb);
                }
            }
        }
        ++ncomp;
    }
    std::vector<bool> keep(ncomp);
    for (int k = 0; k < ncomp; ++k) {
        if (touchesSuper[k]) continue;
        const Tri& tr = T_[best[k]];
        keep[k] = in_.inside((P_[tr.v[0]] + P_[tr.v[1]] + P_[tr.v[2]]) / 3.0);
    }
    for (size_t t = 0; t < T_.size(); ++t)
        if (T_[t].alive && !keep[comp[t]]) {
            T_[t].alive = false;
            free_.push_back(static_cast<int>(t));
        }
    for (size_t t = 0; t < T_.size(); ++t) {
        Tri& tr = T_[t];
        if (!tr.alive) continue;
        for (int i = 0; i < 3; ++i)
            if (tr.n[i] >= 0 && !T_[tr.n[i]].alive) {
                tr.n[i] = -1;
                tr.c[i] = true;
            }
        for (int j = 0; j < 3; ++j) vt_[tr.v[j]] = static_cast<int>(t);
    }
}

PlanarOutput Mesher::run() {
    // boundary discretization
    struct Pending {
        int a, b, curve;
        double ta, tb;
    };
    std::vector<Pending> pending;
    Vec2 lo = Vec2::Constant(1e300), hi = Vec2::Constant(-1e300);
    std::vector<Vec2> bpts;
    std::vector<std::array<double, 2>> bmeta;
    auto bound = [&](const Vec2& p) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    };
    for (const auto& n : in_.nodes) bound(n);
    for (const auto& pc : in_.pieces) {
        const auto& cv = in_.curves[pc.curve];
        std::vector<double> ts;
        int nmin = std::max(pc.minSegments, pc.n0 == pc.n1 ? 3 : 1);
        for (int j = 0; j <= nmin; ++j) ts.push_back(pc.t0 + (pc.t1 - pc.t0) * j / nmin);
        std::vector<double> out{ts[0]};
        for (size_t j = 0; j + 1 < ts.size(); ++j) {
            std::vector<std::pair<double, double>> stack{{ts[j], ts[j + 1]}};
            std::vector<double> local;
            while (!stack.empty()) {
                auto [s0, s1] = stack.back();
                stack.pop_back();
                Vec2 x0 = cv.eval(s0), x1 = cv.eval(s1), xm = cv.eval(0.5 * (s0 + s1));
                double h = std::min({size_at(x0), size_at(x1), size_at(xm)});
                double chord = (x0 - x1).norm() + 1e-300;
                if (((xm - x0).norm() + (x1 - xm).norm()) > h && std::abs(s1 - s0) > 1e-15 * (1 + std::abs(s0))) {
                    stack.push_back({0.5 * (s0 + s1), s1});
                    stack.push_back({s0, 0.5 * (s0 + s1)});
                } else {
                    (void)chord;
                    local.push_back(s1);
                }
            }
            out.insert(out.end(), local.begin(), local.end());
        }
        int prev = -(pc.n0 + 1);
        for (size_t j = 1; j < out.size(); ++j) {
            int cur;
            if (j + 1 == out.size()) {
                cur = -(pc.n1 + 1);
            } else {
                Vec2 x = cv.eval(out[j]);
                bound(x);
                bpts.push_back(x);
                bmeta.push_back({double(pc.curve), out[j]});
                cur = static_cast<int>(bpts.size()) - 1;
            }
            pending.push_back({prev, cur, pc.curve, out[j - 1], out[j]});
            prev = cur;
        }
    }
    // super triangle
    Vec2 ctr = 0.5 * (lo + hi);
    double span = std::max((hi - lo).maxCoeff(), 1e-12);
    P_.clear();
    add_point(ctr + Vec2(-40 * span, -30 * span));
    add_point(ctr + Vec2(40 * span, -30 * span));
    add_point(ctr + Vec2(0, 50 * span));
    nsuper_ = 3;
    new_tri(0, 1, 2);
    std::vector<int> nodeIdx(in_.nodes.size()), bIdx(bpts.size());
    auto must_insert = [&](const Vec2& p) {
        int before = static_cast<int>(P_.size());
        if (!insert_free(p, last_)) throw std::runtime_error("mesher: failed to insert boundary point");
        return before;
    };
    for (size_t i = 0; i < in_.nodes.size(); ++i) {
        nodeIdx[i] = must_insert(in_.nodes[i]);
        node_[nodeIdx[i]] = static_cast<int>(i);
    }
    for (size_t i = 0; i < bpts.size(); ++i) {
        bIdx[i] = must_insert(bpts[i]);
        curve_[bIdx[i]] = static_cast<int>(bmeta[i][0]);
        param_[bIdx[i]] = bmeta[i][1];
    }
    auto resolve = [&](int x) { return x < 0 ? nodeIdx[-x - 1] : bIdx[x]; };
    std::deque<Seg> todo;
    for (const auto& p : pending) {
        int a = resolve(p.a), b = resolve(p.b);
        todo.push_back(a < b ? Seg{a, b, p.curve, p.ta, p.tb} : Seg{b, a, p.curve, p.tb, p.ta});
    }
    // node tangent angles for the acute-corner exemption
    acute_.assign(P_.size(), false);
    {
        std::unordered_map<int, std::vector<int>> around;
        for (const auto& s : todo) {
            around[s.a].push_back(s.b);
            around[s.b].push_back(s.a);
        }
        for (auto& [v, nbs] : around) {
            if (nbs.size() != 2) continue;
            Vec2 d1 = (P_[nbs[0]] - P_[v]).normalized(), d2 = (P_[nbs[1]] - P_[v]).normalized();
            if (d1.dot(d2) > std::cos(kPi / 3)) acute_[v] = true;
        }
    }
    size_t guard = 0;
    while (!todo.empty()) {
        Seg s = todo.front();
        todo.pop_front();
        int t, i;
        if (find_edge(s.a, s.b, t, i)) {
            mark_constrained(s);
            continue;
        }
        if (++guard > 2'000'000) throw std::runtime_error("mesher: segment recovery did not terminate");
        double tm = 0.5 * (s.ta + s.tb);
        Vec2 m = in_.curves[s.curve].eval(tm);
        int before = static_cast<int>(P_.size());
        if (!insert_free(m, vt_[s.a])) throw std::runtime_error("mesher: segment recovery failed");
        curve_[before] = s.curve;
        param_[before] = tm;
        todo.push_back(s.a < before ? Seg{s.a, before, s.curve, s.ta, tm} : Seg{before, s.a, s.curve, tm, s.ta});
        todo.push_back(s.b < before ? Seg{s.b, before, s.curve, s.tb, tm} : Seg{before, s.b, s.curve, tm, s.tb});
    }
    acute_.resize(P_.size(), false);
    classify();
    // Ruppert refinement
    for (auto& [k, s] : segs_)
        if (encroached(k)) encQ_.push_back(k);
    for (size_t t = 0; t < T_.size(); ++t)
        if (is_bad(static_cast<int>(t))) badQ_.push_back(static_cast<int>(t));
    while (true) {
        if (P_.size() > in_.maxVertices)
            throw std::runtime_error("mesher: vertex cap exceeded (" + std::to_string(in_.maxVertices) + ")");
        acute_.resize(P_.size(), false);
        if (!encQ_.empty()) {
            uint64_t k = encQ_.front();
            encQ_.pop_front();
            if (segs_.count(k) && splittable(k) && encroached(k)) split_segment(k);
            continue;
        }
        if (badQ_.empty()) break;
        int t = badQ_.front();
        badQ_.pop_front();
        if (!is_bad(t)) continue;
        refine_triangle(t);
    }
    // compact
    PlanarOutput out;
    std::vector<int> remap(P_.size(), -1);
    for (const auto& tr : T_) {
        if (!tr.alive) continue;
        std::array<int, 3> f;
        for (int j = 0; j < 3; ++j) {
            int v = tr.v[j];
            if (remap[v] < 0) {
                remap[v] = static_cast<int>(out.points.size());
                out.points.push_back(P_[v]);
                out.curve.push_back(curve_[v]);
                out.param.push_back(param_[v]);
                out.node.push_back(node_[v]);
            }
            f[j] = remap[v];
        }
        out.triangles.push_back(f);
    }
    return out;
}

}  // namespace

PlanarOutput triangulate_region(const PlanarInput& in) {
    Mesher m(in);
    return m.run();
}

}  // namespace perfo::detail
