#include "perfo/spectral.hpp"

#include <Eigen/SparseCholesky>

#include <fstream>
#include <limits>
#include <random>
#include <sstream>

namespace perfo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct EigOut {
    Vec vals;
    Mat vecs;
    std::vector<double> res;
};

// Residual of A u = l B u in the lumped-inverse norm when B has a positive
// lumped diagonal, otherwise relative to the size of the two terms.
double residual(const SpMat& A, const SpMat& B, const Vec& lumped, const Vec& u, double l) {
    Vec Bu = B * u;
    Vec r = A * u - l * Bu;
    double unorm = std::sqrt(std::max(u.dot(Bu), 1e-300));
    if (lumped.minCoeff() > 0) return std::sqrt((r.array().square() / lumped.array()).sum()) / unorm;
    Vec Au = A * u;
    return r.norm() / (Au.norm() + std::abs(l) * Bu.norm() + 1e-300) * std::max(1.0, std::abs(l));
}

Vec row_sums(const SpMat& B) {
    Vec d = Vec::Zero(B.rows());
    for (int k = 0; k < B.outerSize(); ++k)
        for (SpMat::InnerIterator it(B, k); it; ++it) d[it.row()] += it.value();
    return d;
}

// Smallest `count` eigenpairs of A x = l B x excluding the span of `null`.
EigOut smallest(const SpMat& A, const SpMat& B, int count, const std::optional<Vec>& null, const SolverOptions& opt) {
    const int n = static_cast<int>(A.rows());
    const int avail = n - (null ? 1 : 0);
    if (count > avail) throw SpectralError("requested " + std::to_string(count) + " eigenpairs from " +
                                           std::to_string(avail) + " degrees of freedom");
    EigOut out;
    Vec lumped = row_sums(B);
    if (count <= 0) return out;
    if (static_cast<size_t>(n) <= opt.denseLimit && lumped.minCoeff() > 0) {
        Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es{Mat(A), Mat(B)};
        if (es.info() != Eigen::Success) throw SpectralError("dense eigensolver failed");
        int skip = 0;
        if (null) {
            // drop the eigenvector carrying the nullspace
            Vec z = *null;
            Vec Bz = B * z;
            double best = -1;
            for (int j = 0; j < std::min(n, 3); ++j) {
                double c = std::abs(es.eigenvectors().col(j).dot(Bz));
                if (c > best) best = c, skip = j;
            }
        }
        out.vals.resize(count);
        out.vecs.resize(n, count);
        for (int j = 0, k = 0; k < count; ++j) {
            if (null && j == skip) continue;
            out.vals[k] = es.eigenvalues()[j];
            out.vecs.col(k) = es.eigenvectors().col(j);
            out.res.push_back(residual(A, B, lumped, out.vecs.col(k), out.vals[k]));
            ++k;
        }
        return out;
    }
    double shift = -1e-8 * A.diagonal().mean();
    SpMat S = A - shift * B;
    Eigen::SimplicialLDLT<SpMat> F(S);
    if (F.info() != Eigen::Success) throw SpectralError("factorization of the shifted pencil failed");
    Vec z;
    if (null) {
        z = *null;
        z /= std::sqrt(z.dot(B * z));
    }
    auto deflate = [&](Vec& v) {
        if (null) v -= z * z.dot(B * v);
    };
    const int p = std::max(opt.block, 2);
    const int cap = std::min(avail, opt.maxBasis);
    Mat Q(n, 0), BQ(n, 0), H(cap, cap);
    int k = 0;
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> nd;
    auto append = [&](Vec w) {
        deflate(w);
        double before = std::sqrt(std::max(w.dot(B * w), 0.0));
        if (before == 0) return false;
        for (int pass = 0; pass < 2; ++pass) {
            if (k) w -= Q.leftCols(k) * (BQ.leftCols(k).transpose() * w);
            deflate(w);
        }
        Vec Bw = B * w;
        double nrm = std::sqrt(std::max(w.dot(Bw), 0.0));
        if (nrm < 1e-10 * before) return false;
        w /= nrm;
        Bw /= nrm;
        if (k == Q.cols()) {
            int grow = std::min(cap, std::max(2 * k, 4 * p));
            Q.conservativeResize(Eigen::NoChange, grow);
            BQ.conservativeResize(Eigen::NoChange, grow);
        }
        Q.col(k) = w;
        BQ.col(k) = Bw;
        H.block(0, k, k + 1, 1) = Q.leftCols(k + 1).transpose() * (A * w);
        H.block(k, 0, 1, k + 1) = H.block(0, k, k + 1, 1).transpose();
        ++k;
        return true;
    };
    std::vector<Vec> block;
    for (int j = 0; j < p; ++j) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = nd(rng);
        block.push_back(v);
    }
    std::vector<double> history;
    double bestRes = kInf;
    size_t bestStep = 0;
    decltype(out) best;
    int steps = 0;
    while (true) {
        std::vector<Vec> added;
        for (auto& v : block) {
            if (k >= cap) break;
            Vec w = steps == 0 ? v : Vec(F.solve(B * v));
            if (append(w)) added.push_back(Q.col(k - 1));
        }
        ++steps;
        block = added;
        bool exhausted = block.empty() || k >= cap;
        if (k >= count + p || exhausted) {
            Eigen::SelfAdjointEigenSolver<Mat> es(H.topLeftCorner(k, k));
            int m = std::min(count, k);
            out.vals = es.eigenvalues().head(m);
            out.vecs = Q.leftCols(k) * es.eigenvectors().leftCols(m);
            out.res.clear();
            double worst = 0;
            for (int j = 0; j < m; ++j) {
                double r = residual(A, B, lumped, out.vecs.col(j), out.vals[j]);
                out.res.push_back(r);
                worst = std::max(worst, r / std::max(1.0, std::abs(out.vals[j])));
            }
            history.push_back(worst);
            if (m == count && worst <= opt.tol) return out;
            // roundoff floor on strongly graded meshes: stop once progress stalls
            if (m == count) {
                if (worst < bestRes) bestRes = worst, best = out, bestStep = history.size();
                if (bestRes <= 1e-6 && history.size() >= bestStep + 8) return best;
            }
            if (exhausted) {
                std::ostringstream os;
                os << "eigensolver did not converge (basis " << k << "); residual history:";
                for (double h : history) os << ' ' << h;
                throw SpectralError(os.str());
            }
        }
    }
}

std::vector<bool> dirichlet_mask(const Mesh& m, const BoundaryConditions& bc, bool steklov) {
    std::vector<bool> dir(m.vertices.size(), false);
    for (size_t v = 0; v < m.vertices.size(); ++v) {
        switch (m.vclass[v]) {
            case VertexClass::Interior: break;
            case VertexClass::HoleBoundary: dir[v] = bc.for_hole(m.vhole[v]) == BC::Dirichlet; break;
            case VertexClass::Cut: dir[v] = bc.cut == BC::Dirichlet; break;
            case VertexClass::OuterBoundary: dir[v] = !steklov && bc.outer == BC::Dirichlet; break;
        }
    }
    return dir;
}

SpMat restrict(const SpMat& A, const std::vector<int>& rows, const std::vector<int>& cols, size_t n) {
    std::vector<int> rmap(n, -1), cmap(n, -1);
    for (size_t i = 0; i < rows.size(); ++i) rmap[rows[i]] = static_cast<int>(i);
    for (size_t i = 0; i < cols.size(); ++i) cmap[cols[i]] = static_cast<int>(i);
    std::vector<Eigen::Triplet<double>> trip;
    for (int k = 0; k < A.outerSize(); ++k)
        for (SpMat::InnerIterator it(A, k); it; ++it) {
            int r = rmap[it.row()], c = cmap[it.col()];
            if (r >= 0 && c >= 0) trip.emplace_back(r, c, it.value());
        }
    SpMat R(rows.size(), cols.size());
    R.setFromTriplets(trip.begin(), trip.end());
    return R;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace

BoundaryConditions BoundaryConditions::dirichlet() {
    BoundaryConditions b;
    b.holes = BC::Dirichlet;
    return b;
}

BoundaryConditions BoundaryConditions::neumann() { return BoundaryConditions{}; }

BC BoundaryConditions::for_hole(int h) const {
    auto it = perHole.find(h);
    return it == perHole.end() ? holes : it->second;
}

std::string BoundaryConditions::describe() const {
    auto s = [](BC b) { return b == BC::Dirichlet ? "D" : "N"; };
    std::string out = std::string("holes:") + s(holes) + ",cut:" + s(cut) + ",outer:" + s(outer);
    for (auto [h, b] : perHole) out += ",hole" + std::to_string(h) + ":" + s(b);
    return out;
}

Operators assemble(const Mesh& m) {
    const size_t n = m.vertices.size();
    std::vector<Eigen::Triplet<double>> tk, tm;
    tk.reserve(9 * m.triangles.size());
    tm.reserve(9 * m.triangles.size());
    for (size_t t = 0; t < m.triangles.size(); ++t) {
        const auto& f = m.triangles[t];
        Vec3 x[3] = {m.vertices[f[0]], m.vertices[f[1]], m.vertices[f[2]]};
        Vec3 e[3] = {x[2] - x[1], x[0] - x[2], x[1] - x[0]};
        double A = 0.5 * e[2].cross(-e[1]).norm();
        if (!(A > 1e-300)) throw SpectralError("degenerate triangle " + std::to_string(t));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                tk.emplace_back(f[i], f[j], e[i].dot(e[j]) / (4 * A));
                tm.emplace_back(f[i], f[j], A / 12.0 * (i == j ? 2.0 : 1.0));
            }
    }
    Operators op;
    op.K.resize(n, n);
    op.M.resize(n, n);
    op.K.setFromTriplets(tk.begin(), tk.end());
    op.M.setFromTriplets(tm.begin(), tm.end());
    std::map<int, std::vector<Eigen::Triplet<double>>> tb;
    for (const auto& e : m.boundary) {
        double L = (m.vertices[e.a] - m.vertices[e.b]).norm();
        auto& v = tb[e.component];
        v.emplace_back(e.a, e.a, L / 3);
        v.emplace_back(e.b, e.b, L / 3);
        v.emplace_back(e.a, e.b, L / 6);
        v.emplace_back(e.b, e.a, L / 6);
    }
    for (auto& [c, v] : tb) {
        SpMat B(n, n);
        B.setFromTriplets(v.begin(), v.end());
        op.B.emplace(c, std::move(B));
    }
    return op;
}

SpectralResult solve_laplace(const Mesh& m, const BoundaryConditions& bc, int count, const SolverOptions& opt) {
    if (count < 1) throw SpectralError("count must be >= 1");
    Operators op = assemble(m);
    auto dir = dirichlet_mask(m, bc, false);
    std::vector<int> freeDofs;
    for (size_t v = 0; v < dir.size(); ++v)
        if (!dir[v]) freeDofs.push_back(static_cast<int>(v));
    const size_t n = m.vertices.size();
    bool pureNeumann = freeDofs.size() == n;
    SpMat K = restrict(op.K, freeDofs, freeDofs, n), M = restrict(op.M, freeDofs, freeDofs, n);
    SpectralResult r;
    r.problem = "laplace";
    r.bc = bc.describe();
    r.dofCount = freeDofs.size();
    r.h = m.h;
    r.level = m.level;
    r.eigenvectors = Mat::Zero(n, count);
    int offset = 0;
    std::optional<Vec> null;
    if (pureNeumann) {
        null = Vec::Ones(freeDofs.size());
        r.nullspaceDeflated = true;
        r.eigenvalues.push_back(0.0);
        r.residuals.push_back(0.0);
        double area = Vec::Ones(n).dot(op.M * Vec::Ones(n));
        r.eigenvectors.col(0).setConstant(1.0 / std::sqrt(area));
        offset = 1;
    }
    EigOut e = smallest(K, M, count - offset, null, opt);
    for (int j = 0; j < e.vals.size(); ++j) {
        r.eigenvalues.push_back(e.vals[j]);
        r.residuals.push_back(e.res[j]);
        for (size_t i = 0; i < freeDofs.size(); ++i) r.eigenvectors(freeDofs[i], offset + j) = e.vecs(i, j);
    }
    return r;
}

SpectralResult solve_steklov(const Mesh& m, const BoundaryConditions& bc, int count, const SolverOptions& opt) {
    if (count < 1) throw SpectralError("count must be >= 1");
    Operators op = assemble(m);
    auto itB = op.B.find(-1);
    if (itB == op.B.end()) throw SpectralError("no Steklov boundary: the mesh has no unit-circle edges");
    auto dir = dirichlet_mask(m, bc, true);
    const size_t n = m.vertices.size();
    std::vector<bool> onGamma(n, false);
    for (const auto& e : m.boundary)
        if (e.component == -1) onGamma[e.a] = onGamma[e.b] = true;
    std::vector<int> G, I;
    bool anyDir = false;
    for (size_t v = 0; v < n; ++v) {
        if (dir[v]) {
            anyDir = true;
            continue;
        }
        (onGamma[v] ? G : I).push_back(static_cast<int>(v));
    }
    if (G.empty()) throw SpectralError("all Steklov vertices are Dirichlet");
    SpectralResult r;
    r.problem = "steklov";
    r.bc = bc.describe() + ",gamma1:steklov";
    r.dofCount = G.size();
    r.h = m.h;
    r.level = m.level;
    r.nullspaceDeflated = !anyDir;
    r.eigenvectors = Mat::Zero(n, count);
    if (count > static_cast<int>(G.size())) throw SpectralError("requested more Steklov eigenvalues than boundary dofs");
    SpMat KGG = restrict(op.K, G, G, n), KIG = restrict(op.K, I, G, n), KII = restrict(op.K, I, I, n);
    SpMat BGG = restrict(itB->second, G, G, n);
    if (G.size() <= opt.steklovDenseLimit) {
        Mat S = Mat(KGG);
        Eigen::SimplicialLDLT<SpMat> F;
        if (!I.empty()) {
            F.compute(KII);
            if (F.info() != Eigen::Success) throw SpectralError("interior stiffness factorization failed");
            const int chunk = 64;
            for (int c0 = 0; c0 < static_cast<int>(G.size()); c0 += chunk) {
                int c1 = std::min<int>(G.size(), c0 + chunk);
                Mat rhs = Mat(KIG.middleCols(c0, c1 - c0));
                Mat Z = F.solve(rhs);
                S.middleCols(c0, c1 - c0) -= KIG.transpose() * Z;
            }
        }
        S = 0.5 * (S + S.transpose());
        Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es{S, Mat(BGG)};
        if (es.info() != Eigen::Success) throw SpectralError("dense Steklov eigensolver failed");
        Vec lumpedG = row_sums(BGG);
        for (int j = 0; j < count; ++j) {
            double s = es.eigenvalues()[j];
            Vec uG = es.eigenvectors().col(j);
            if (j == 0 && !anyDir && std::abs(s) < 1e-9) s = 0.0;
            Vec res = S * uG - s * (BGG * uG);
            double un = std::sqrt(uG.dot(BGG * uG));
            r.eigenvalues.push_back(s);
            r.residuals.push_back(std::sqrt((res.array().square() / lumpedG.array()).sum()) / un);
            for (size_t i = 0; i < G.size(); ++i) r.eigenvectors(G[i], j) = uG[i];
            if (!I.empty()) {
                Vec uI = -F.solve(Vec(KIG * uG));
                for (size_t i = 0; i < I.size(); ++i) r.eigenvectors(I[i], j) = uI[i];
            }
        }
        return r;
    }
    // iterative: the full pencil K u = s B u on the free vertices
    std::vector<int> freeDofs;
    for (size_t v = 0; v < n; ++v)
        if (!dir[v]) freeDofs.push_back(static_cast<int>(v));
    SpMat K = restrict(op.K, freeDofs, freeDofs, n), B = restrict(itB->second, freeDofs, freeDofs, n);
    std::optional<Vec> null;
    int offset = 0;
    if (!anyDir) {
        null = Vec::Ones(freeDofs.size());
        r.eigenvalues.push_back(0.0);
        r.residuals.push_back(0.0);
        double L = Vec::Ones(n).dot(itB->second * Vec::Ones(n));
        r.eigenvectors.col(0).setConstant(1.0 / std::sqrt(L));
        offset = 1;
    }
    EigOut e = smallest(K, B, count - offset, null, opt);
    for (int j = 0; j < e.vals.size(); ++j) {
        r.eigenvalues.push_back(e.vals[j]);
        r.residuals.push_back(e.res[j]);
        for (size_t i = 0; i < freeDofs.size(); ++i) r.eigenvectors(freeDofs[i], offset + j) = e.vecs(i, j);
    }
    return r;
}

Certified richardson(double coarse, double fine) {
    Certified c;
    c.coarse = coarse;
    c.fine = fine;
    if (std::isinf(coarse) || std::isinf(fine)) {
        c.value = kInf;
        return c;
    }
    c.value = (4 * fine - coarse) / 3;
    c.margin = 3 * std::abs(c.value - fine);
    return c;
}

std::vector<Certified> richardson(const SpectralResult& coarse, const SpectralResult& fine) {
    std::vector<Certified> out;
    for (size_t j = 0; j < std::min(coarse.eigenvalues.size(), fine.eigenvalues.size()); ++j)
        out.push_back(richardson(coarse.eigenvalues[j], fine.eigenvalues[j]));
    return out;
}

MuBar mu_bar(const PerforatedDomain& d, const Mesh& m, const SolverOptions& opt) {
    MuBar r;
    r.area = exact_measures(d).area;
    r.lambdaD = d.holes.empty() ? kInf : solve_laplace(m, BoundaryConditions::dirichlet(), 1, opt).eigenvalues[0];
    r.lambdaN = solve_laplace(m, BoundaryConditions::neumann(), 2, opt).eigenvalues[1];
    r.muBar = r.area * std::min(r.lambdaD, r.lambdaN);
    return r;
}

SigmaBar sigma_bar(const PerforatedDomain& d, const Mesh& m, const SolverOptions& opt) {
    SigmaBar r;
    r.gamma1 = exact_measures(d).gamma1Length;
    r.sigmaD = d.holes.empty() ? kInf : solve_steklov(m, BoundaryConditions::dirichlet(), 1, opt).eigenvalues[0];
    r.sigmaN = solve_steklov(m, BoundaryConditions::neumann(), 2, opt).eigenvalues[1];
    r.sigmaBar = r.gamma1 * std::min(r.sigmaD, r.sigmaN);
    return r;
}

namespace {

// Extrapolate each branch, then take the minimum; extrapolating the minimum
// itself breaks when the active branch flips between levels.
Certified min_of(const Certified& a, const Certified& b, double scale, double coarse, double fine) {
    Certified c;
    c.coarse = coarse;
    c.fine = fine;
    const Certified& lo = a.value <= b.value ? a : b;
    const Certified& hi = a.value <= b.value ? b : a;
    c.value = scale * lo.value;
    double m = lo.margin;
    if (hi.value - hi.margin <= lo.value + lo.margin) m = std::max(m, hi.margin);
    c.margin = scale * m;
    return c;
}

}  // namespace

MuBar mu_bar_certified(const PerforatedDomain& d, const Mesh& m, const SolverOptions& opt) {
    MuBar c = mu_bar(d, m, opt);
    MuBar f = mu_bar(d, refine(m), opt);
    f.certD = richardson(c.lambdaD, f.lambdaD);
    f.certN = richardson(c.lambdaN, f.lambdaN);
    f.certMu = min_of(*f.certD, *f.certN, f.area, c.muBar, f.muBar);
    return f;
}

SigmaBar sigma_bar_certified(const PerforatedDomain& d, const Mesh& m, const SolverOptions& opt) {
    SigmaBar c = sigma_bar(d, m, opt);
    SigmaBar f = sigma_bar(d, refine(m), opt);
    f.certD = richardson(c.sigmaD, f.sigmaD);
    f.certN = richardson(c.sigmaN, f.sigmaN);
    f.certSigma = min_of(*f.certD, *f.certN, f.gamma1, c.sigmaBar, f.sigmaBar);
    return f;
}

Json to_json(const SpectralResult& r, bool withVectors) {
    Json j;
    j["problem"] = r.problem;
    j["bc"] = r.bc;
    j["dofCount"] = r.dofCount;
    j["h"] = r.h;
    j["level"] = r.level;
    j["nullspaceDeflated"] = r.nullspaceDeflated;
    j["eigenvalues"] = r.eigenvalues;
    j["residuals"] = r.residuals;
    if (withVectors) {
        Json cols = Json::array();
        for (int c = 0; c < r.eigenvectors.cols(); ++c)
            cols.push_back(std::vector<double>(r.eigenvectors.col(c).data(),
                                               r.eigenvectors.col(c).data() + r.eigenvectors.rows()));
        j["eigenvectors"] = cols;
    }
    return j;
}

void write_matrix(const SpMat& A, const std::string& path) {
    std::vector<std::tuple<int, int, double>> e;
    for (int k = 0; k < A.outerSize(); ++k)
        for (SpMat::InnerIterator it(A, k); it; ++it) e.emplace_back(it.row(), it.col(), it.value());
    std::sort(e.begin(), e.end());
    std::ofstream out(path);
    if (!out) throw SpectralError("cannot write " + path);
    for (const auto& [r, c, v] : e) out << r << ' ' << c << ' ' << fmt(v) << '\n';
}

}  // namespace perfo
