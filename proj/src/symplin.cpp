#include "phaselab/symplin.hpp"

#include <cmath>
#include <limits>

#include "phaselab/linalg.hpp"

namespace phaselab {

LinearSubspace::LinearSubspace(const Mat& b, double rtol) : basis(orth(b, rtol)) {}

LinearRelation LinearRelation::from_basis(int m1, int m2, const Mat& b) {
    if (b.rows() != 2 * m1 + 2 * m2) throw Error("relation: basis rows do not match 2m1 + 2m2");
    LinearRelation r;
    r.m1 = m1;
    r.m2 = m2;
    r.sub = LinearSubspace(b);
    return r;
}

LinearRelation LinearRelation::identity(int m) { return graph(Mat::Identity(2 * m, 2 * m)); }

LinearRelation LinearRelation::graph(const Mat& M) {
    Mat b(M.cols() + M.rows(), M.cols());
    b << Mat::Identity(M.cols(), M.cols()), M;
    return from_basis(static_cast<int>(M.cols()) / 2, static_cast<int>(M.rows()) / 2, b);
}

double subspace_distance(const LinearSubspace& a, const LinearSubspace& b) {
    if (a.ambient() != b.ambient()) return std::numeric_limits<double>::infinity();
    return subspace_distance(a.basis, b.basis);
}

bool same_subspace(const LinearSubspace& a, const LinearSubspace& b, double tol) {
    return subspace_distance(a, b) < tol;
}

RMat Omega_of(int m) { return Omega(m); }

LinearSubspace orthogonal_wrt(const LinearSubspace& V, const RMat& W) {
    const int N = static_cast<int>(W.rows());
    if (V.dim() == 0) return LinearSubspace(Mat::Identity(N, N));
    return LinearSubspace(null_space(V.basis.transpose() * W.cast<cplx>(), 1e-10));
}

LinearSubspace symplectic_orthogonal(const LinearSubspace& V) { return orthogonal_wrt(V, Omega(V.half())); }

Defect is_involutive(const LinearSubspace& V, double tol) {
    LinearSubspace P = symplectic_orthogonal(V);
    Defect d;
    d.defect = containment_defect(V.basis, P.basis);
    d.ok = d.defect < tol;
    return d;
}

Defect is_lagrangian(const LinearSubspace& V, double tol) {
    Defect d = is_involutive(V, tol);
    if (V.dim() != V.half()) {
        d.ok = false;
        d.defect = std::max(d.defect, 1.0);
    }
    return d;
}

Defect is_lagrangian(const LinearRelation& L, double tol) {
    RMat W = Omega_twisted(L.m1, L.m2);
    LinearSubspace P = orthogonal_wrt(L.sub, W);
    Defect d;
    d.defect = containment_defect(L.sub.basis, P.basis);
    d.ok = d.defect < tol && L.sub.dim() == L.m1 + L.m2;
    return d;
}

double isotropy_defect(const LinearSubspace& V) {
    return max_abs(V.basis.transpose() * Omega(V.half()).cast<cplx>() * V.basis);
}

LinearRelation relation_compose(const LinearRelation& l1, const LinearRelation& l2) {
    if (l1.m2 != l2.m1) throw Error("relation_compose: middle dimensions differ");
    const int nx = 2 * l1.m1, ny = 2 * l1.m2, nz = 2 * l2.m2;
    const Mat& b1 = l1.sub.basis;
    const Mat& b2 = l2.sub.basis;
    const int k1 = static_cast<int>(b1.cols()), k2 = static_cast<int>(b2.cols());
    Mat Y(ny, k1 + k2);
    Y << b1.bottomRows(ny), -b2.topRows(ny);
    Mat N = null_space(Y, 1e-10);
    Mat out(nx + nz, N.cols());
    out << b1.topRows(nx) * N.topRows(k1), b2.bottomRows(nz) * N.bottomRows(k2);
    return LinearRelation::from_basis(l1.m1, l2.m2, out);
}

LinearRelation relation_adjoint(const LinearRelation& l) {
    const int n1 = 2 * l.m1, n2 = 2 * l.m2;
    Mat b(n1 + n2, l.sub.dim());
    b << l.sub.basis.bottomRows(n2).conjugate(), l.sub.basis.topRows(n1).conjugate();
    // swap and conjugation keep an orthonormal basis orthonormal; no re-factorization, so ** is exact
    LinearRelation r;
    r.m1 = l.m2;
    r.m2 = l.m1;
    r.sub.basis = b;
    return r;
}

double relation_distance(const LinearRelation& a, const LinearRelation& b) {
    if (a.m1 != b.m1 || a.m2 != b.m2) return std::numeric_limits<double>::infinity();
    return subspace_distance(a.sub, b.sub);
}

PairData analyze_pair(const LinearSubspace& J, const LinearSubspace& Js, double tol) {
    if (J.ambient() != Js.ambient() || J.ambient() % 2) throw Error("pair: ambient dimensions differ or are odd");
    PairData d;
    d.m = J.half();
    d.p = 2 * d.m - J.dim();
    if (Js.dim() != J.dim()) throw Error("pair: J and J* have different dimensions");
    d.J = J;
    d.Js = Js;
    d.F = symplectic_orthogonal(J);
    d.Fs = symplectic_orthogonal(Js);
    if (containment_defect(J.basis, d.F.basis) > tol) throw Error("pair: J is not involutive");
    if (containment_defect(Js.basis, d.Fs.basis) > tol) throw Error("pair: J* is not involutive");
    d.Sigma = LinearSubspace(intersect(J.basis, Js.basis));
    if (d.Sigma.dim() != 2 * (d.m - d.p)) throw Error("pair: J and J* are not transverse (dim of intersection)");
    if (d.Sigma.dim() > 0) {
        Mat W = d.Sigma.basis.transpose() * Omega(d.m).cast<cplx>() * d.Sigma.basis;
        Eigen::JacobiSVD<Mat> svd(W);
        if (svd.singularValues()(W.rows() - 1) < 1e-8) throw Error("pair: J cap J* is not symplectic");
    }
    return d;
}

LinearRelation lambda_from_pair(const LinearSubspace& J, const LinearSubspace& Js) {
    PairData d = analyze_pair(J, Js);
    const int n = 2 * d.m;
    const int kf = d.F.dim(), ks = d.Fs.dim(), kd = d.Sigma.dim();
    Mat b = Mat::Zero(2 * n, kf + ks + kd);
    b.block(0, 0, n, kf) = d.F.basis;
    b.block(n, kf, n, ks) = d.Fs.basis;
    b.block(0, kf + ks, n, kd) = d.Sigma.basis;
    b.block(n, kf + ks, n, kd) = d.Sigma.basis;
    return LinearRelation::from_basis(d.m, d.m, b);
}

namespace {

// omega-projection onto Sigma along Sigma^perp
Mat omega_projector(const Mat& S, int m) {
    Mat Om = Omega(m).cast<cplx>();
    Mat W = S.transpose() * Om * S;
    return S * W.partialPivLu().solve(S.transpose() * Om);
}

Vec strip_pairs(Vec v, const std::vector<Vec>& es, const std::vector<Vec>& fs) {
    for (size_t k = 0; k < es.size(); ++k) {
        const cplx a = omega(v, fs[k]);
        const cplx b = -omega(v, es[k]);
        v += a * es[k] + b * fs[k];
    }
    return v;
}

}  // namespace

Mat darboux_basis(const LinearSubspace& Sigma, bool balanced) {
    const int m = Sigma.half(), k = Sigma.dim() / 2;
    if (Sigma.dim() % 2) throw Error("darboux_basis: odd-dimensional subspace is not symplectic");
    Mat P = omega_projector(Sigma.basis, m);
    const int N = 2 * m;
    std::vector<Vec> es, fs;
    for (int j = 0; j < m && static_cast<int>(es.size()) < k; ++j) {
        Vec e = strip_pairs(P.col(j), es, fs);
        if (e.norm() < 1e-8) continue;
        // partner: prefer the conjugate standard direction, else the best remaining candidate
        Vec best;
        cplx best_w = 0.0;
        Vec f0 = strip_pairs(P.col(m + j), es, fs);
        const cplx w0 = omega(f0, e);
        double top = std::abs(w0);
        for (int l = 0; l < N; ++l) {
            Vec c = strip_pairs(P.col(l), es, fs);
            top = std::max(top, std::abs(omega(c, e)));
        }
        if (std::abs(w0) >= 0.1 * top && std::abs(w0) > 1e-10) {
            best = f0;
            best_w = w0;
        } else {
            for (int l = 0; l < N; ++l) {
                Vec c = strip_pairs(P.col(l), es, fs);
                const cplx w = omega(c, e);
                if (std::abs(w) > std::abs(best_w)) {
                    best = c;
                    best_w = w;
                }
            }
        }
        if (std::abs(best_w) < 1e-10) continue;
        if (balanced) {
            if (best_w.real() < 0) {
                best = -best;
                best_w = -best_w;
            }
            const cplx s = std::sqrt(best_w);
            es.push_back(e / s);
            fs.push_back(best / s);
        } else {
            es.push_back(e);
            fs.push_back(best / best_w);
        }
    }
    if (static_cast<int>(es.size()) != k) throw Error("darboux_basis: symplectic Gram-Schmidt broke down");
    Mat out(N, 2 * k);
    for (int i = 0; i < k; ++i) {
        out.col(i) = es[i];
        out.col(k + i) = fs[i];
    }
    return out;
}

namespace {

Mat normalize_to_rows(const Mat& Fb, int m, int first_row) {
    const int p = static_cast<int>(Fb.cols());
    Mat X = Fb.middleRows(first_row, p);
    if (p == 0) return Fb;
    if (condition_number(X) < 1e6) return Fb * X.inverse();
    Eigen::ColPivHouseholderQR<Mat> qr(Fb.transpose());
    Mat Y(p, p);
    for (int i = 0; i < p; ++i) Y.row(i) = Fb.row(qr.colsPermutation().indices()(i));
    (void)m;
    return Fb * Y.inverse();
}

}  // namespace

Mat flatten_pair(const LinearSubspace& J, const LinearSubspace& Js, const LinearSubspace& Sigma) {
    PairData d = analyze_pair(J, Js);
    if (!same_subspace(Sigma, d.Sigma, 1e-8)) throw Error("flatten_pair: Sigma is not J cap J*");
    const int m = d.m, p = d.p, k = m - p;
    Mat E = darboux_basis(Sigma);
    Mat a = normalize_to_rows(d.F.basis, m, k);
    Mat G = d.Fs.basis.transpose() * Omega(m).cast<cplx>() * a;
    Mat b = d.Fs.basis * G.transpose().inverse();
    Mat N(2 * m, 2 * m);
    N << E.leftCols(k), a, E.rightCols(k), b;
    return N.inverse();
}

Mat flatten_pair(const LinearSubspace& J, const LinearSubspace& Js) {
    PairData d = analyze_pair(J, Js);
    return flatten_pair(J, Js, d.Sigma);
}

namespace {
LinearSubspace standard_span(int m, const std::vector<int>& idx) {
    Mat b = Mat::Zero(2 * m, idx.size());
    for (size_t i = 0; i < idx.size(); ++i) b(idx[i], i) = 1.0;
    return LinearSubspace(b);
}
}  // namespace

LinearSubspace flat_J(int m, int p) {
    std::vector<int> idx;
    for (int i = 0; i < 2 * m - p; ++i) idx.push_back(i);
    return standard_span(m, idx);
}

LinearSubspace flat_Js(int m, int p) {
    std::vector<int> idx;
    for (int i = 0; i < 2 * m; ++i)
        if (i < m - p || i >= m) idx.push_back(i);
    return standard_span(m, idx);
}

LinearSubspace flat_Sigma(int m, int p) {
    std::vector<int> idx;
    for (int i = 0; i < m - p; ++i) idx.push_back(i);
    for (int i = 0; i < m - p; ++i) idx.push_back(m + i);
    return standard_span(m, idx);
}

LinearSubspace flat_positive_J(int m, int p) {
    const int k = m - p;
    Mat b = Mat::Zero(2 * m, 2 * m - p);
    int c = 0;
    for (int i = 0; i < k; ++i) b(i, c++) = 1.0;
    for (int i = 0; i < k; ++i) b(m + i, c++) = 1.0;
    for (int i = 0; i < p; ++i) {
        b(k + i, c) = 1.0;
        b(m + k + i, c) = I_;
        ++c;
    }
    return LinearSubspace(b);
}

double symplectic_defect(const Mat& M) {
    const int m = static_cast<int>(M.rows()) / 2;
    Mat Om = Omega(m).cast<cplx>();
    return max_abs(M.transpose() * Om * M - Om);
}

LinearSubspace transform(const Mat& M, const LinearSubspace& V) { return LinearSubspace(M * V.basis); }

namespace {
Mat hermitian_form(const Mat& Q, const RMat& W) {
    Mat H = -I_ * Q.transpose() * W.cast<cplx>() * Q.conjugate();
    return 0.5 * (H + H.adjoint());
}

double min_positive_modulo_real(const Mat& L, const RMat& W) {
    Mat Q = orth(L, 1e-10);
    if (Q.cols() == 0) return 0.0;
    Mat K = intersect(Q, Q.conjugate());
    Mat C = Q;
    if (K.cols() > 0) C = Q * null_space((Q.adjoint() * K).adjoint(), 1e-10);
    if (C.cols() == 0) return 0.0;
    return min_eigenvalue(hermitian_form(orth(C, 1e-10), W));
}
}  // namespace

Mat leaf_form(const LinearSubspace& V) { return hermitian_form(V.basis, Omega(V.half())); }

Mat leaf_form(const LinearRelation& L) { return hermitian_form(L.sub.basis, Omega_twisted(L.m1, L.m2)); }

double min_eigenvalue(const Mat& H) {
    if (H.rows() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(H);
    return es.eigenvalues()(0);
}

double lagrangian_positivity(const LinearSubspace& Lambda) {
    return min_positive_modulo_real(Lambda.basis, Omega(Lambda.half()));
}

PositivityReport pair_positivity_check(const LinearSubspace& J, const LinearSubspace& Js, double tol) {
    PairData d = analyze_pair(J, Js);
    PositivityReport r;
    r.leaf_J = min_eigenvalue(leaf_form(d.F));
    r.leaf_conj_Js = min_eigenvalue(leaf_form(d.Fs.conj()));
    LinearRelation L = lambda_from_pair(J, Js);
    r.lambda_min = min_positive_modulo_real(L.sub.basis, Omega_twisted(L.m1, L.m2));
    r.J_positive = r.leaf_J > tol;
    r.conj_Js_positive = r.leaf_conj_Js > tol;
    r.lambda_positive = r.lambda_min > tol;
    r.boundary = std::abs(r.leaf_J) <= tol || std::abs(r.leaf_conj_Js) <= tol || std::abs(r.lambda_min) <= tol;
    r.iff_consistent = r.lambda_positive == (r.J_positive && r.conj_Js_positive);
    return r;
}

NormalFormResult positive_normal_form(const LinearSubspace& J, const LinearSubspace& Sigma) {
    const int m = J.half();
    if (!same_subspace(Sigma, Sigma.conj(), 1e-9)) throw Error("positive_normal_form: Sigma is not conjugation-stable");
    if (containment_defect(J.basis, Sigma.basis) > 1e-9) throw Error("positive_normal_form: Sigma not inside J");
    const int k = Sigma.dim() / 2, p = m - k;
    if (J.dim() != 2 * m - p) throw Error("positive_normal_form: dim J != dim Sigma + codim");
    LinearSubspace F = symplectic_orthogonal(J);
    if (containment_defect(J.basis, F.basis) > 1e-9) throw Error("positive_normal_form: J is not involutive");
    LinearSubspace Sperp = symplectic_orthogonal(Sigma);
    Mat E = darboux_basis(Sigma), Ep = darboux_basis(Sperp);
    if (max_abs(imag_part(E)) > 1e-9 || max_abs(imag_part(Ep)) > 1e-9)
        throw Error("positive_normal_form: Darboux frame is not real");
    RMat N0(2 * m, 2 * m);
    N0 << E.real().leftCols(k), Ep.real().leftCols(p), E.real().rightCols(k), Ep.real().rightCols(p);
    RMat N0inv = N0.inverse();
    Mat Fc = N0inv.cast<cplx>() * F.basis;
    Mat Fx = Fc.middleRows(k, p), Fxi = Fc.middleRows(m + k, p);
    if (condition_number(Fx) > 1e10) throw Error("positive_normal_form: positivity failure (leaf not a graph)");
    Mat G = Fxi * Fx.inverse();
    G = 0.5 * (G + G.transpose()).eval();
    RMat Y = G.imag();
    Eigen::SelfAdjointEigenSolver<RMat> es(Y);
    if (es.eigenvalues()(0) <= 1e-12) throw Error("positive_normal_form: positivity failure (Im G not > 0)");
    RMat Yh = es.operatorSqrt(), Yhi = es.operatorInverseSqrt();
    RMat T1 = RMat::Identity(2 * m, 2 * m), T2 = RMat::Identity(2 * m, 2 * m);
    T1.block(m + k, k, p, p) = -G.real();
    T2.block(k, k, p, p) = Yh;
    T2.block(m + k, m + k, p, p) = Yhi;
    NormalFormResult r;
    r.M = T2 * T1 * N0inv;
    r.G = G;
    return r;
}

}  // namespace phaselab
