#include "phaselab/gauss_calc.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "phaselab/geometry.hpp"
#include "phaselab/linalg.hpp"
#include "phaselab/symplin.hpp"

namespace phaselab {

namespace {

cplx moment_rec(Multi& mu, const Mat& S, std::map<Multi, cplx>& memo) {
    int tot = 0, first = -1;
    for (int i = 0; i < static_cast<int>(mu.size()); ++i) {
        tot += mu[i];
        if (first < 0 && mu[i] > 0) first = i;
    }
    if (tot == 0) return 1.0;
    if (tot % 2) return 0.0;
    auto it = memo.find(mu);
    if (it != memo.end()) return it->second;
    Multi key = mu;
    // E[eta_i eta^nu] = sum_j S_ij nu_j E[eta^(nu - e_j)]
    mu[first] -= 1;
    cplx acc = 0.0;
    for (int j = 0; j < static_cast<int>(mu.size()); ++j) {
        if (mu[j] == 0) continue;
        const double nj = mu[j];
        mu[j] -= 1;
        acc += S(first, j) * nj * moment_rec(mu, S, memo);
        mu[j] += 1;
    }
    mu[first] += 1;
    memo[key] = acc;
    return acc;
}

void require_positive_imag(const Mat& M, const char* who) {
    const RMat Y = 0.5 * (imag_of(M) + imag_of(M).transpose());
    Eigen::SelfAdjointEigenSolver<RMat> es(Y);
    if (es.eigenvalues()(0) <= 0.0) throw Error(std::string(who) + ": Im M is not positive definite");
}

Poly conj_coeffs(const Poly& p) {
    Poly out(p.nvars());
    for (const auto& [m, c] : p.terms()) out.add_term(m, std::conj(c));
    return out;
}

// drop variables [keep, nvars) which must not appear
Poly restrict_vars(const Poly& p, int keep) {
    Poly out(keep);
    for (const auto& [m, c] : p.terms()) {
        for (int k = keep; k < static_cast<int>(m.size()); ++k)
            if (m[k] != 0) throw Error("restrict_vars: eliminated variable still present");
        out.add_term(Multi(m.begin(), m.begin() + keep), c);
    }
    return out;
}

}  // namespace

cplx gaussian_moment(const Multi& mu, const Mat& Sigma) {
    std::map<Multi, cplx> memo;
    Multi m = mu;
    return moment_rec(m, Sigma, memo);
}

Poly gaussian_expectation(const Poly& p, const Mat& Sigma, const std::vector<int>& idx) {
    std::map<Multi, cplx> memo;
    Poly out(p.nvars());
    const int d = static_cast<int>(idx.size());
    for (const auto& [m, c] : p.terms()) {
        Multi mu(d), rest = m;
        for (int k = 0; k < d; ++k) {
            mu[k] = m[idx[k]];
            rest[idx[k]] = 0;
        }
        const cplx e = moment_rec(mu, Sigma, memo);
        if (e != 0.0) out.add_term(rest, c * e);
    }
    return out;
}

cplx gaussian_integral(const Mat& M, const Vec& g, cplx c, const Poly& p, double h) {
    const int d = static_cast<int>(M.rows());
    if (M.cols() != d || g.size() != d || p.nvars() != d) throw Error("gaussian_integral: dimension mismatch");
    if (h <= 0) throw Error("gaussian_integral: h must be positive");
    require_positive_imag(M, "gaussian_integral");
    auto lu = M.partialPivLu();
    const Vec gs = -lu.solve(g);
    const cplx cs = c + 0.5 * (g.transpose() * gs)(0);
    const Mat Sigma = I_ * h * lu.inverse();
    Poly shifted = p.substitute_affine(Mat::Identity(d, d), gs);
    std::vector<int> idx(d);
    for (int k = 0; k < d; ++k) idx[k] = k;
    const cplx e = gaussian_expectation(shifted, Sigma, idx).coeff(Multi(d, 0));
    const cplx sd = sqrt_det_principal(Mat(-I_ * M));
    return std::pow(2.0 * kPi * h, 0.5 * d) / sd * std::exp(I_ * cs / h) * e;
}

// ---------------------------------------------------------------- kernels

double GaussianKernel::prefactor() const { return std::pow(2.0 * kPi * h, -0.5 * din); }

cplx GaussianKernel::operator()(const Vec& x, const Vec& y) const {
    Vec xy(dout + din);
    xy << x, y;
    return prefactor() * std::exp(I_ * phase.value(xy) / h) * amp.eval(xy);
}

void GaussianKernel::validate(int max_degree) const {
    const int d = dout + din;
    if (phase.d1 != dout || phase.d2 != din) throw Error("kernel: phase block sizes do not match dout/din");
    if (phase.H.rows() != d || phase.H.cols() != d || phase.g.size() != d) throw Error("kernel: phase shape");
    if (max_abs(phase.H - phase.H.transpose()) > 1e-12 * std::max(1.0, max_abs(phase.H)))
        throw Error("kernel: phase Hessian not symmetric");
    if (amp.nvars() != d) throw Error("kernel: amplitude variable count");
    if (amp.degree() > max_degree) throw Error("kernel: amplitude degree exceeds bound");
    if (!(h > 0)) throw Error("kernel: h must be positive");
}

GaussianKernel kernel_from_phase(const QuadraticPhase& q, double h, const Poly& amp) {
    GaussianKernel k;
    k.dout = k.din = q.dim();
    k.h = h;
    k.phase = QuadForm::from_phase(q);
    k.amp = amp;
    k.validate();
    return k;
}

GaussianKernel kernel_from_phase(const QuadraticPhase& q, double h, cplx amp) {
    return kernel_from_phase(q, h, Poly::constant(2 * q.dim(), amp));
}

GaussianKernel compose_kernels_exact(const GaussianKernel& K1, const GaussianKernel& K2) {
    if (K1.din != K2.dout) throw Error("compose_kernels_exact: inner dimensions differ");
    if (std::abs(K1.h - K2.h) > 1e-15 * K1.h) throw Error("compose_kernels_exact: h differs");
    const int nx = K1.dout, ny = K1.din, nz = K2.din, N = nx + ny + nz, nw = nx + nz;
    // total phase on (x, y, z)
    Mat H = Mat::Zero(N, N);
    Vec g = Vec::Zero(N);
    H.topLeftCorner(nx + ny, nx + ny) += K1.phase.H;
    H.bottomRightCorner(ny + nz, ny + nz) += K2.phase.H;
    g.head(nx + ny) += K1.phase.g;
    g.tail(ny + nz) += K2.phase.g;
    const cplx c = K1.phase.c + K2.phase.c;
    // reorder to (w, y), w = (x, z)
    std::vector<int> wi, yi;
    for (int k = 0; k < nx; ++k) wi.push_back(k);
    for (int k = 0; k < nz; ++k) wi.push_back(nx + ny + k);
    for (int k = 0; k < ny; ++k) yi.push_back(nx + k);
    auto block = [&](const std::vector<int>& r, const std::vector<int>& s) {
        Mat out(r.size(), s.size());
        for (size_t a = 0; a < r.size(); ++a)
            for (size_t b = 0; b < s.size(); ++b) out(a, b) = H(r[a], s[b]);
        return out;
    };
    const Mat Hww = block(wi, wi), Hwy = block(wi, yi), Hyy = block(yi, yi);
    Vec gw(nw), gy(ny);
    for (int k = 0; k < nw; ++k) gw(k) = g(wi[k]);
    for (int k = 0; k < ny; ++k) gy(k) = g(yi[k]);
    require_positive_imag(Hyy, "compose_kernels_exact");
    // Schur complement in extended precision: scrambled phases carry entries of size ~50 and the
    // difference Hww - Hwy Hyy^{-1} Hyw cancels to O(1)
    using XMat = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;
    const XMat xHyy = Hyy.cast<std::complex<long double>>(), xHwy = Hwy.cast<std::complex<long double>>();
    const XMat xgy = Mat(gy).cast<std::complex<long double>>();
    auto xlu = xHyy.fullPivLu();
    const XMat xMiHyw = xlu.solve(XMat(xHwy.transpose()));
    const XMat xMigy = xlu.solve(xgy);
    const XMat xSchur = Hww.cast<std::complex<long double>>() - xHwy * xMiHyw;
    const XMat xgw = Mat(gw).cast<std::complex<long double>>() - xHwy * xMigy;
    const std::complex<long double> xc = std::complex<long double>(c) - 0.5L * (xgy.transpose() * xMigy)(0, 0);
    const Mat MiHyw = xMiHyw.cast<cplx>();
    const Vec Migy = Mat(xMigy.cast<cplx>()).col(0);
    auto lu = Hyy.partialPivLu();

    GaussianKernel out;
    out.dout = nx;
    out.din = nz;
    out.h = K1.h;
    out.phase.d1 = nx;
    out.phase.d2 = nz;
    out.phase.H = Mat((0.5L * (xSchur + xSchur.transpose())).cast<cplx>());
    out.phase.g = Mat(xgw.cast<cplx>()).col(0);
    out.phase.c = cplx(xc);

    // amplitude: a1(x, y) a2(y, z) with y = y*(w) + eta, then integrate eta out
    std::vector<int> m1(nx + ny), m2(ny + nz);
    for (int k = 0; k < nx + ny; ++k) m1[k] = k;
    for (int k = 0; k < ny + nz; ++k) m2[k] = nx + k;
    Poly prod = K1.amp.embed(N, m1) * K2.amp.embed(N, m2);
    // old (x, y, z) = S (w, eta) + s0
    Mat S = Mat::Zero(N, nw + ny);
    Vec s0 = Vec::Zero(N);
    for (int k = 0; k < nx; ++k) S(k, k) = 1.0;
    for (int k = 0; k < nz; ++k) S(nx + ny + k, nx + k) = 1.0;
    S.block(nx, 0, ny, nw) = -MiHyw;
    S.block(nx, nw, ny, ny) = Mat::Identity(ny, ny);
    s0.segment(nx, ny) = -Migy;
    Poly sub = prod.substitute_affine(S, s0);
    std::vector<int> eta(ny);
    for (int k = 0; k < ny; ++k) eta[k] = nw + k;
    const Mat Sigma = I_ * K1.h * lu.inverse();
    Poly expd = gaussian_expectation(sub, Sigma, eta);
    const cplx det_factor = 1.0 / sqrt_det_principal(Mat(-I_ * Hyy));
    out.amp = restrict_vars(expd, nw) * det_factor;
    return out;
}

GaussianKernel kernel_adjoint(const GaussianKernel& K) {
    const int d = K.dout + K.din;
    // old (x, y) = P (x', y') with x' of size din, y' of size dout
    Mat P = Mat::Zero(d, d);
    for (int k = 0; k < K.dout; ++k) P(k, K.din + k) = 1.0;
    for (int k = 0; k < K.din; ++k) P(K.dout + k, k) = 1.0;
    GaussianKernel out;
    out.dout = K.din;
    out.din = K.dout;
    out.h = K.h;
    out.phase.d1 = K.din;
    out.phase.d2 = K.dout;
    out.phase.H = -(P.transpose() * K.phase.H * P).conjugate();
    out.phase.g = -(P.transpose() * K.phase.g).conjugate();
    out.phase.c = -std::conj(K.phase.c);
    const double rescale = std::pow(2.0 * kPi * K.h, 0.5 * (K.dout - K.din));
    out.amp = conj_coeffs(K.amp.substitute_affine(P, Vec::Zero(d))) * cplx(rescale);
    return out;
}

double kernel_distance(const GaussianKernel& a, const GaussianKernel& b) {
    if (a.dout != b.dout || a.din != b.din || std::abs(a.h - b.h) > 1e-15 * a.h)
        return std::numeric_limits<double>::infinity();
    return std::max(QuadForm::distance(a.phase, b.phase), Poly::distance(a.amp, b.amp));
}

cplx projector_amplitude(const DiagonalJet& jet) {
    const Mat B = jet.B();
    const Mat D = I_ * (B + B.transpose()) / 2.0;
    return sqrt_det_principal(Mat(2.0 * D));
}

GaussianKernel model_kernel(ModelKind kind, int n, double h) {
    if (n < 1) throw Error("model_kernel: n must be >= 1");
    if (kind == ModelKind::Bargmann) return kernel_from_phase(bargmann_quadratic(n), h, std::pow(2.0, n));
    GaussianKernel k;
    k.dout = k.din = n;
    k.h = h;
    k.phase.d1 = k.phase.d2 = n;
    k.phase.H = I_ * Mat::Identity(2 * n, 2 * n);
    k.phase.g = Vec::Zero(2 * n);
    k.phase.c = 0.0;
    k.amp = Poly::constant(2 * n, std::pow(2.0, 0.5 * n));
    k.validate();
    return k;
}

Poly apply_standard_projector(const Poly& f, int nx) {
    if (nx < 0 || nx > f.nvars()) throw Error("apply_standard_projector: bad split");
    Poly out(f.nvars());
    for (const auto& [m, c] : f.terms()) {
        bool keep = true;
        for (int k = 0; k < nx; ++k) keep = keep && m[k] == 0;
        if (keep) out.add_term(m, c);
    }
    return out;
}

// ---------------------------------------------------------------- Hermite functions

HermiteFunction HermiteFunction::ground(int n, double h) {
    HermiteFunction f;
    f.n = n;
    f.h = h;
    f.center = RVec::Zero(n);
    f.poly = Poly::constant(n, 1.0);
    f.E = Mat::Identity(n, n);
    return f;
}

cplx HermiteFunction::eval(const Vec& x) const {
    const Vec d = x - to_complex(center);
    return poly.eval(x) * std::exp(-0.5 * (d.transpose() * E * d)(0) / h);
}

cplx HermiteFunction::eval_real(const double* x) const {
    Vec v(n);
    for (int k = 0; k < n; ++k) v(k) = x[k];
    return eval(v);
}

double HermiteFunction::distance(const HermiteFunction& a, const HermiteFunction& b) {
    if (a.n != b.n || max_abs(a.E - b.E) > 0 || (a.center - b.center).cwiseAbs().maxCoeff() > 0 || a.h != b.h)
        return std::numeric_limits<double>::infinity();
    return Poly::distance(a.poly, b.poly);
}

HermiteFunction zeta_action(Ladder which, int j, const HermiteFunction& f) {
    if (j < 0 || j >= f.n) throw Error("zeta_action: coordinate out of range");
    // h d_j of the Gaussian factor contributes -(E (x - c))_j
    Poly Ex(f.n);
    for (int k = 0; k < f.n; ++k) {
        Ex.add_term([&] { Multi m(f.n, 0); m[k] = 1; return m; }(), f.E(j, k));
        Ex.add_term(Multi(f.n, 0), -f.E(j, k) * f.center(k));
    }
    const Poly xj = Poly::variable(f.n, j);
    const Poly hd = f.poly.diff(j) * cplx(f.h);
    const Poly pE = f.poly * Ex;
    const Poly xp = xj * f.poly;
    HermiteFunction out = f;
    const double s = 1.0 / std::sqrt(2.0);
    if (which == Ladder::Lower)
        out.poly = ((hd - pE + xp) * cplx(s)).prune(0.0);
    else
        out.poly = ((xp - hd + pE) * cplx(s)).prune(0.0);
    return out;
}

HermiteFunction hermite_state(int n, double h, const std::vector<int>& levels) {
    if (static_cast<int>(levels.size()) != n) throw Error("hermite_state: one level per coordinate");
    HermiteFunction f = HermiteFunction::ground(n, h);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < levels[j]; ++k) f = zeta_action(Ladder::Raise, j, f);
    return f;
}

HermiteFunction hermite_add(const HermiteFunction& a, const HermiteFunction& b, cplx sb) {
    if (a.n != b.n || a.h != b.h || max_abs(a.E - b.E) > 0 || (a.center - b.center).cwiseAbs().maxCoeff() > 0)
        throw Error("hermite_add: Gaussian factors differ");
    HermiteFunction out = a;
    out.poly = a.poly + b.poly * sb;
    return out;
}

HermiteFunction apply_gaussian_standard(const HermiteFunction& f) {
    const int n = f.n;
    const Mat Id = Mat::Identity(n, n);
    const Vec c = to_complex(f.center);
    const Mat M = I_ * (Id + f.E);
    const Vec g = -I_ * (f.E * c);
    const cplx c0 = 0.5 * I_ * (c.transpose() * f.E * c)(0);
    const cplx integral = gaussian_integral(M, g, c0, f.poly, f.h);
    HermiteFunction out = HermiteFunction::ground(n, f.h);
    out.poly = Poly::constant(n, std::pow(kPi * f.h, -0.5 * n) * integral);
    return out;
}

// ---------------------------------------------------------------- symbols

Poly star_product_truncated(const Poly& p, const Poly& q, int n, double h, int K) {
    if (p.nvars() != 2 * n || q.nvars() != 2 * n) throw Error("star_product_truncated: symbols need 2n variables");
    if (K < 0 || K > 8) throw Error("star_product_truncated: order must be in [0, 8]");
    Poly out(2 * n);
    Multi nu(n, 0);
    // enumerate multi-indices with |nu| <= K
    std::function<void(int, int)> rec = [&](int j, int left) {
        if (j == n) {
            Poly dp = p, dq = q;
            int tot = 0;
            for (int k = 0; k < n; ++k) {
                for (int r = 0; r < nu[k]; ++r) {
                    dp = dp.diff(n + k);
                    dq = dq.diff(k);
                }
                tot += nu[k];
            }
            if (dp.empty() || dq.empty()) return;
            out += (dp * dq) * (std::pow(I_ * h, tot) / multi_factorial(nu));
            return;
        }
        for (int v = 0; v <= left; ++v) {
            nu[j] = v;
            rec(j + 1, left - v);
        }
        nu[j] = 0;
    };
    rec(0, K);
    return out.prune(0.0);
}

LocalProjectorResult local_projector_test(const Poly& a, int n, double tol) {
    const int nv = a.nvars();
    if (n < 1 || nv <= 2 * n || (nv - 2 * n) % 2) throw Error("local_projector_test: variables must be (x, xi, x', xi')");
    if (std::abs(a.coeff(Multi(nv, 0))) <= tol) throw Error("local_projector_test: symbol not elliptic at 0");
    LocalProjectorResult r;
    Poly rest = apply_standard_projector(a, 2 * n) - Poly::constant(nv, 1.0);
    double worst = tol;
    r.is_projector = true;
    for (const auto& [m, c] : rest.terms()) {
        if (std::abs(c) > worst) {
            worst = std::abs(c);
            r.is_projector = false;
            r.witness = m;
            r.witness_coeff = c;
        }
    }
    return r;
}

// ---------------------------------------------------------------- FBI pair

cplx FbiPair::psi(const Vec& alpha, const Vec& x) const {
    Vec v(alpha.size() + x.size());
    v << alpha, x;
    return 0.5 * (v.transpose() * H * v)(0);
}

cplx FbiPair::psi_star(const Vec& x, const Vec& beta) const {
    Vec v(x.size() + beta.size());
    v << x, beta;
    return 0.5 * (v.transpose() * Hs * v)(0);
}

FbiPair fbi_phase_pair(const QuadraticPhase& q) {
    const int n = q.n, m = 2 * n;
    const DiagonalJet jet = DiagonalJet::from_quadratic(q);
    const TangentModel t = tangent_models(jet);
    if (t.F.dim() != n || t.Fs.dim() != n || t.Sigma.dim() != m)
        throw Error("fbi_phase_pair: tangent models have wrong dimensions");
    const Mat E = darboux_basis(t.Sigma, true);
    FbiPair p;
    p.n = n;
    p.chart = E.topRows(m);
    p.Ex = E.topRows(m).leftCols(n);

    // Lambda_-> rows (alpha, p_alpha, x, xi)
    Mat L = Mat::Zero(2 * m + 2 * n, 3 * n);
    L.block(0, 0, 2 * m, n) = t.F.basis;
    for (int i = 0; i < n; ++i) {
        L.block(0, n + i, 2 * m, 1) = E.col(i);
        L(2 * m + i, n + i) = 1.0;
        L.block(0, 2 * n + i, 2 * m, 1) = E.col(n + i);
        L(2 * m + n + i, 2 * n + i) = 1.0;
    }
    Mat X(3 * n, 3 * n), Y(3 * n, 3 * n);
    X << L.topRows(m), L.middleRows(2 * m, n);
    Y << L.middleRows(m, m), -L.bottomRows(n);
    if (condition_number(X) > 1e10) throw Error("fbi_phase_pair: Lambda_-> is not a graph over (alpha, x)");
    p.H = Y * X.inverse();
    if (max_abs(p.H - p.H.transpose()) > 1e-9 * std::max(1.0, max_abs(p.H)))
        throw Error("fbi_phase_pair: generating Hessian not symmetric (relation not Lagrangian)");
    p.H = 0.5 * (p.H + p.H.transpose());

    // Lambda_<- rows (x, xi, beta, p_beta)
    Mat Ls = Mat::Zero(2 * n + 2 * m, 3 * n);
    for (int i = 0; i < n; ++i) {
        Ls(i, i) = 1.0;
        Ls.block(2 * n, i, 2 * m, 1) = E.col(i);
        Ls(n + i, n + i) = 1.0;
        Ls.block(2 * n, n + i, 2 * m, 1) = E.col(n + i);
    }
    Ls.block(2 * n, 2 * n, 2 * m, n) = t.Fs.basis;
    Mat Xs(3 * n, 3 * n), Ys(3 * n, 3 * n);
    Xs << Ls.topRows(n), Ls.middleRows(2 * n, m);
    Ys << Ls.middleRows(n, n), -Ls.bottomRows(m);
    if (condition_number(Xs) > 1e10) throw Error("fbi_phase_pair: Lambda_<- is not a graph over (x, beta)");
    p.Hs = Ys * Xs.inverse();
    if (max_abs(p.Hs - p.Hs.transpose()) > 1e-9 * std::max(1.0, max_abs(p.Hs)))
        throw Error("fbi_phase_pair: adjoint generating Hessian not symmetric");
    p.Hs = 0.5 * (p.Hs + p.Hs.transpose());
    return p;
}

cplx fbi_density_sigma(const FbiPair& p) {
    const int m = 2 * p.n;
    const Mat Haa = p.H.topLeftCorner(m, m) + p.Hs.bottomRightCorner(m, m);
    const Mat Hx = p.Ex.transpose() * Haa * p.Ex;
    return 1.0 / sqrt_det_principal(Mat(-I_ * Hx));
}

QuadraticPhase fbi_flat_phase(int n) {
    const int m = 2 * n;
    Mat A = Mat::Zero(m, m), B = Mat::Zero(m, m), C = Mat::Zero(m, m);
    for (int j = 0; j < n; ++j) {
        const int a = 2 * j, b = 2 * j + 1;
        A(a, a) = A(b, b) = 0.5 * I_;
        A(a, b) = A(b, a) = 0.5;
        B(a, a) = B(b, b) = -0.5 * I_;
        B(a, b) = 0.5;
        B(b, a) = -0.5;
        C(a, a) = C(b, b) = 0.5 * I_;
        C(a, b) = C(b, a) = -0.5;
    }
    return QuadraticPhase::make(n, RVec::Zero(m), RVec::Zero(m), A, B, C);
}

}  // namespace phaselab

namespace phaselab {

namespace {

// -sum Hinv_ij d_i d_j P
Poly laplace_like(const Poly& P, const Mat& Hinv) {
    const int d = static_cast<int>(Hinv.rows());
    Poly out(P.nvars());
    for (int i = 0; i < d; ++i) {
        Poly di = P.diff(i);
        if (di.empty()) continue;
        for (int j = 0; j < d; ++j)
            if (Hinv(i, j) != 0.0) out += di.diff(j) * (-Hinv(i, j));
    }
    return out;
}

Mat hessian_at_zero(const Poly& P) {
    const int d = P.nvars();
    Mat H = Mat::Zero(d, d);
    const Poly P2 = P.homogeneous_part(2);
    for (const auto& [m, c] : P2.terms()) {
        std::vector<int> v;
        for (int k = 0; k < d; ++k)
            for (int r = 0; r < m[k]; ++r) v.push_back(k);
        if (v[0] == v[1])
            H(v[0], v[0]) = 2.0 * c;
        else
            H(v[0], v[1]) = H(v[1], v[0]) = c;
    }
    return H;
}

}  // namespace

cplx stationary_phase_L1(const Poly& Phi, const Poly& u) {
    const int d = Phi.nvars();
    if (u.nvars() != d) throw Error("stationary_phase_L1: variable count mismatch");
    if (Phi.homogeneous_part(1).max_abs_coeff() > 1e-12 * std::max(1.0, Phi.max_abs_coeff()))
        throw Error("stationary_phase_L1: phase is not critical at the origin");
    const Mat H = hessian_at_zero(Phi);
    const Mat Hinv = H.inverse();
    const Poly g = Phi.truncate(4) - Phi.truncate(2);
    const Multi zero(d, 0);
    auto Lpow = [&](Poly P, int nu) {
        P = P.truncate(2 * nu);
        for (int k = 0; k < nu; ++k) P = laplace_like(P, Hinv);
        return P.coeff(zero);
    };
    const cplx t1 = Lpow(u.truncate(2), 1) / 2.0;
    const cplx t2 = Lpow(g.mul_trunc(u.truncate(2), 4), 2) / 8.0;
    const cplx t3 = Lpow(g.mul_trunc(g, 6).mul_trunc(u.truncate(2), 6), 3) / 96.0;
    return (t1 + t2 + t3) / I_;
}

cplx self_composition_c1(const PhaseFunction& phase, const Poly& amp_jet, const RVec& alpha0) {
    const int m = phase.dim();
    if (amp_jet.nvars() != 2 * m) throw Error("self_composition_c1: amplitude jet needs 2m variables");
    DiagonalJet jet = jet_at(phase, alpha0, 4);
    // (u, v) = (0, t) and (t, 0)
    Mat Sv = Mat::Zero(2 * m, m), Su = Mat::Zero(2 * m, m);
    Sv.bottomRows(m) = Mat::Identity(m, m);
    Su.topRows(m) = Mat::Identity(m, m);
    const Vec z = Vec::Zero(2 * m);
    const Poly Phi = jet.coeffs.substitute_affine(Sv, z) + jet.coeffs.substitute_affine(Su, z);
    const Poly u = amp_jet.substitute_affine(Sv, z).mul_trunc(amp_jet.substitute_affine(Su, z), 4);
    const cplx a00 = amp_jet.coeff(Multi(2 * m, 0));
    const cplx sd = sqrt_det_principal(Mat(-I_ * hessian_at_zero(Phi)));
    return stationary_phase_L1(Phi, u) / sd / a00;
}

}  // namespace phaselab
