#include "phaselab/phase_core.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "phaselab/linalg.hpp"

namespace phaselab {

namespace {

double scale_of(const Mat& M) { return std::max(1.0, max_abs(M)); }

Multi unit(int nv, int i) {
    Multi m(nv, 0);
    m[i] = 1;
    return m;
}

Multi pair_index(int nv, int i, int j) {
    Multi m(nv, 0);
    m[i] += 1;
    m[j] += 1;
    return m;
}

Vec concat(const Vec& a, const Vec& b) {
    Vec x(a.size() + b.size());
    x << a, b;
    return x;
}

}  // namespace

// ---------------------------------------------------------------- QuadraticPhase

QuadraticPhase QuadraticPhase::make(int n, const RVec& alpha0, const RVec& theta, const Mat& A, const Mat& B,
                                    const Mat& C, double tol) {
    const int m = 2 * n;
    if (n < 1) throw Error("QuadraticPhase: n must be >= 1");
    if (alpha0.size() != m || theta.size() != m || A.rows() != m || A.cols() != m || B.rows() != m ||
        B.cols() != m || C.rows() != m || C.cols() != m)
        throw Error("QuadraticPhase: dimension mismatch (expected 2n)");
    const double s = std::max({scale_of(A), scale_of(B), scale_of(C)});
    if (max_abs(A - A.transpose()) > tol * s) throw Error("QuadraticPhase: A not symmetric");
    if (max_abs(C - C.transpose()) > tol * s) throw Error("QuadraticPhase: C not symmetric");
    if (max_abs(A + B + B.transpose() + C) > tol * s) throw Error("QuadraticPhase: A + B + B^T + C != 0");
    Mat D = I_ * (B + B.transpose()) / 2.0;
    Eigen::SelfAdjointEigenSolver<RMat> es(D.real());
    if (es.eigenvalues()(0) <= 0.0) throw Error("QuadraticPhase: Re D not positive definite");
    QuadraticPhase q;
    q.n = n;
    q.alpha0 = alpha0;
    q.theta = theta;
    q.A = (A + A.transpose()) / 2.0;
    q.B = B;
    q.C = (C + C.transpose()) / 2.0;
    return q;
}

cplx QuadraticPhase::value(const Vec& a, const Vec& b) const {
    Vec u = a - to_complex(alpha0), v = b - to_complex(alpha0);
    Vec t = to_complex(theta);
    return (t.transpose() * (u - v))(0) +
           0.5 * ((u.transpose() * A * u)(0) + 2.0 * (u.transpose() * B * v)(0) + (v.transpose() * C * v)(0));
}

// ---------------------------------------------------------------- QuadForm

cplx QuadForm::value(const Vec& a, const Vec& b) const { return value(concat(a, b)); }

QuadForm QuadForm::from_phase(const QuadraticPhase& q) {
    const int m = q.dim();
    QuadForm f;
    f.d1 = f.d2 = m;
    f.H = Mat(2 * m, 2 * m);
    f.H << q.A, q.B, q.B.transpose(), q.C;
    Vec x0(2 * m);
    x0 << to_complex(q.alpha0), to_complex(q.alpha0);
    Vec lin(2 * m);
    lin << to_complex(q.theta), -to_complex(q.theta);
    f.g = lin - f.H * x0;
    f.c = 0.5 * (x0.transpose() * f.H * x0)(0) - (lin.transpose() * x0)(0);
    return f;
}

Poly QuadForm::to_poly() const { return Poly::quadratic(H, g, c); }

double QuadForm::distance(const QuadForm& a, const QuadForm& b) {
    return std::max({std::abs(a.c - b.c), max_abs(a.g - b.g), max_abs(a.H - b.H)});
}

// ---------------------------------------------------------------- PhaseFunction

namespace {

Domain default_domain(int m, double box, double rho) {
    Domain d;
    d.center = RVec::Zero(m);
    d.box = RVec::Constant(m, box);
    d.rho = rho;
    return d;
}

PhaseEval eval_fubini_study(const Vec& a, const Vec& b, int order) {
    const cplx z = a(0) + I_ * a(1), zb = a(0) - I_ * a(1);
    const cplx w = b(0) + I_ * b(1), wb = b(0) - I_ * b(1);
    const cplx X1 = 1.0 + z * zb, X2 = 1.0 + w * wb, X3 = 1.0 + z * wb;
    if (std::abs(X3) < 0.1 || std::abs(X1) < 0.1 || std::abs(X2) < 0.1)
        throw Error("fubini_study: log branch failure, |1 + z conj(w)| < 0.1");
    PhaseEval e;
    e.value = I_ * (0.5 * std::log(X1) + 0.5 * std::log(X2) - std::log(X3));
    if (order < 1) return e;
    Mat T(2, 2);
    T << 1.0, 1.0, I_, -I_;
    Vec gz(2), gw(2);
    gz << I_ * (0.5 * zb / X1 - wb / X3), I_ * (0.5 * z / X1);
    gw << I_ * (0.5 * wb / X2), I_ * (0.5 * w / X2 - z / X3);
    e.da = T * gz;
    e.db = T * gw;
    if (order < 2) return e;
    Mat Hz(2, 2), Hw(2, 2), Hzw = Mat::Zero(2, 2);
    Hz << I_ * (-0.5 * zb * zb / (X1 * X1) + wb * wb / (X3 * X3)), I_ * (0.5 / (X1 * X1)), I_ * (0.5 / (X1 * X1)),
        I_ * (-0.5 * z * z / (X1 * X1));
    Hw << I_ * (-0.5 * wb * wb / (X2 * X2)), I_ * (0.5 / (X2 * X2)), I_ * (0.5 / (X2 * X2)),
        I_ * (-0.5 * w * w / (X2 * X2) + z * z / (X3 * X3));
    Hzw(0, 1) = -I_ / (X3 * X3);
    e.haa = T * Hz * T.transpose();
    e.hbb = T * Hw * T.transpose();
    e.hab = T * Hzw * T.transpose();
    return e;
}

}  // namespace

PhaseFunction PhaseFunction::from_quadratic(const QuadraticPhase& q, const std::string& id) {
    PhaseFunction p;
    p.backend = Backend::Quadratic;
    p.model_id = id;
    p.n = q.n;
    p.domain = default_domain(q.dim(), 10.0, 1.0);
    p.quad_ = std::make_shared<QuadraticPhase>(q);
    return p;
}

PhaseFunction PhaseFunction::from_poly(int n, const Poly& poly, const std::string& id) {
    const int nv = 4 * n;
    if (poly.nvars() != nv) throw Error("polynomial phase: expected 4n variables (alpha, beta)");
    auto data = std::make_shared<PolyData>();
    data->p = poly;
    for (int i = 0; i < nv; ++i) data->grad.push_back(poly.diff(i));
    data->hess.resize(nv);
    for (int i = 0; i < nv; ++i)
        for (int j = 0; j < nv; ++j) data->hess[i].push_back(data->grad[i].diff(j));
    PhaseFunction p;
    p.backend = Backend::Polynomial;
    p.model_id = id;
    p.n = n;
    p.domain = default_domain(2 * n, 10.0, 1.0);
    p.poly_ = data;
    return p;
}

PhaseFunction PhaseFunction::from_callback(int n, EvalFn fn, const std::string& id) {
    PhaseFunction p;
    p.backend = Backend::Callback;
    p.model_id = id;
    p.n = n;
    p.domain = default_domain(2 * n, 10.0, 1.0);
    p.fn_ = std::move(fn);
    return p;
}

const QuadraticPhase& PhaseFunction::quadratic() const {
    if (!quad_) throw Error("phase has no quadratic backend");
    return *quad_;
}

void PhaseFunction::check_domain(const Vec& a, const Vec& b) const {
    const int m = dim();
    if (a.size() != m || b.size() != m) throw Error("eval_phase: argument dimension mismatch");
    for (int k = 0; k < m; ++k) {
        for (const Vec* x : {&a, &b}) {
            const cplx v = (*x)(k);
            if (std::abs(v.real() - domain.center(k)) > domain.box(k) + domain.rho || std::abs(v.imag()) > domain.rho)
                throw Error("eval_phase: argument outside domain box inflated by complexification radius");
        }
    }
}

PhaseEval PhaseFunction::eval(const Vec& a, const Vec& b, int order) const {
    check_domain(a, b);
    const int m = dim();
    switch (backend) {
        case Backend::Quadratic: {
            const QuadraticPhase& q = *quad_;
            PhaseEval e;
            e.value = q.value(a, b);
            if (order >= 1) {
                Vec u = a - to_complex(q.alpha0), v = b - to_complex(q.alpha0);
                Vec t = to_complex(q.theta);
                e.da = t + q.A * u + q.B * v;
                e.db = -t + q.B.transpose() * u + q.C * v;
            }
            if (order >= 2) {
                e.haa = q.A;
                e.hab = q.B;
                e.hbb = q.C;
            }
            return e;
        }
        case Backend::Polynomial: {
            Vec x = concat(a, b);
            const PolyData& d = *poly_;
            PhaseEval e;
            e.value = d.p.eval(x);
            if (order >= 1) {
                e.da = Vec(m);
                e.db = Vec(m);
                for (int i = 0; i < m; ++i) {
                    e.da(i) = d.grad[i].eval(x);
                    e.db(i) = d.grad[m + i].eval(x);
                }
            }
            if (order >= 2) {
                e.haa = Mat(m, m);
                e.hab = Mat(m, m);
                e.hbb = Mat(m, m);
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j) {
                        e.haa(i, j) = d.hess[i][j].eval(x);
                        e.hab(i, j) = d.hess[i][m + j].eval(x);
                        e.hbb(i, j) = d.hess[m + i][m + j].eval(x);
                    }
            }
            return e;
        }
        case Backend::FubiniStudy:
            return eval_fubini_study(a, b, order);
        case Backend::Callback:
            return fn_(a, b, order);
    }
    throw Error("eval_phase: unknown backend");
}

cplx PhaseFunction::value_real(const double* a, const double* b) const {
    const int m = dim();
    Vec va(m), vb(m);
    for (int k = 0; k < m; ++k) {
        va(k) = a[k];
        vb(k) = b[k];
    }
    return eval(va, vb, 0).value;
}

PhaseEval eval_phase(const PhaseFunction& phase, const Vec& a, const Vec& b, int deriv_order) {
    return phase.eval(a, b, deriv_order);
}

// ---------------------------------------------------------------- series helpers

Poly series_log(const Poly& X, int order) {
    const int nv = X.nvars();
    const cplx x0 = X.coeff(Multi(nv, 0));
    if (x0 == cplx(0.0)) throw Error("series_log: zero constant term");
    Poly t = (X - Poly::constant(nv, x0)) * (1.0 / x0);
    Poly r = Poly::constant(nv, std::log(x0));
    Poly tk = Poly::constant(nv, 1.0);
    for (int k = 1; k <= order; ++k) {
        tk = tk.mul_trunc(t, order);
        r += tk * cplx((k % 2 ? 1.0 : -1.0) / k);
    }
    return r.truncate(order);
}

Poly series_pow(const Poly& X, double p, int order) {
    const int nv = X.nvars();
    const cplx x0 = X.coeff(Multi(nv, 0));
    if (x0 == cplx(0.0)) throw Error("series_pow: zero constant term");
    Poly t = (X - Poly::constant(nv, x0)) * (1.0 / x0);
    Poly r = Poly::constant(nv, 1.0);
    Poly tk = Poly::constant(nv, 1.0);
    double binom = 1.0;
    for (int k = 1; k <= order; ++k) {
        binom *= (p - (k - 1)) / k;
        tk = tk.mul_trunc(t, order);
        r += tk * cplx(binom);
    }
    return (r * std::pow(x0, p)).truncate(order);
}

// ---------------------------------------------------------------- jets

Vec DiagonalJet::grad_u() const {
    const int m = dim(), nv = 2 * m;
    Vec g(m);
    for (int i = 0; i < m; ++i) g(i) = coeffs.coeff(unit(nv, i));
    return g;
}

Vec DiagonalJet::grad_v() const {
    const int m = dim(), nv = 2 * m;
    Vec g(m);
    for (int i = 0; i < m; ++i) g(i) = coeffs.coeff(unit(nv, m + i));
    return g;
}

namespace {
Mat hessian_block(const Poly& p, int m, int off1, int off2) {
    const int nv = 2 * m;
    Mat H(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const int a = off1 + i, b = off2 + j;
            const cplx c = p.coeff(pair_index(nv, a, b));
            H(i, j) = (a == b) ? 2.0 * c : c;
        }
    return H;
}
}  // namespace

Mat DiagonalJet::A() const { return hessian_block(coeffs, dim(), 0, 0); }
Mat DiagonalJet::B() const { return hessian_block(coeffs, dim(), 0, dim()); }
Mat DiagonalJet::C() const { return hessian_block(coeffs, dim(), dim(), dim()); }

double DiagonalJet::diagonal_defect() const {
    const int m = dim();
    Mat M(2 * m, m);
    M << Mat::Identity(m, m), Mat::Identity(m, m);
    Poly r = coeffs.substitute_affine(M, Vec::Zero(2 * m));
    return std::max(r.max_abs_coeff(), std::abs(coeffs.coeff(Multi(2 * m, 0))));
}

DiagonalJet DiagonalJet::from_quadratic(const QuadraticPhase& q) {
    DiagonalJet j;
    j.n = q.n;
    j.alpha0 = q.alpha0;
    j.order = 2;
    const int m = q.dim();
    Mat H(2 * m, 2 * m);
    H << q.A, q.B, q.B.transpose(), q.C;
    Vec g(2 * m);
    g << to_complex(q.theta), -to_complex(q.theta);
    j.coeffs = Poly::quadratic(H, g, 0.0);
    return j;
}

namespace {

Poly fubini_study_jet_poly(const RVec& a0, int order) {
    const int nv = 4;
    auto lin = [&](cplx c0, cplx c1, int k0, int k1) {
        Poly p = Poly::constant(nv, c0);
        p += Poly::variable(nv, k0, 1.0);
        p += Poly::variable(nv, k1, c1);
        return p;
    };
    const cplx z0(a0(0), a0(1));
    Poly z = lin(z0, I_, 0, 1), zb = lin(std::conj(z0), -I_, 0, 1);
    Poly w = lin(z0, I_, 2, 3), wb = lin(std::conj(z0), -I_, 2, 3);
    Poly one = Poly::constant(nv, 1.0);
    Poly X1 = one + z * zb, X2 = one + w * wb, X3 = one + z * wb;
    Poly F = (series_log(X1, order) * 0.5 + series_log(X2, order) * 0.5 - series_log(X3, order)) * I_;
    return F.truncate(order).prune(1e-300);
}

Poly finite_difference_jet(const PhaseFunction& phase, const RVec& a0, int order) {
    const int m = phase.dim(), nv = 2 * m;
    Vec x0(nv);
    x0 << to_complex(a0), to_complex(a0);
    auto eval_at = [&](const Vec& x) {
        PhaseEval e = phase.eval(x.head(m), x.tail(m), 2);
        Vec g(nv);
        g << e.da, e.db;
        Mat H(nv, nv);
        H << e.haa, e.hab, e.hab.transpose(), e.hbb;
        return std::make_tuple(e.value, g, H);
    };
    auto [f0, g0, H0] = eval_at(x0);
    Poly p(nv);
    p.add_term(Multi(nv, 0), f0);
    for (int i = 0; i < nv; ++i) p.add_term(unit(nv, i), g0(i));
    for (int i = 0; i < nv; ++i)
        for (int j = i; j < nv; ++j) p.add_term(pair_index(nv, i, j), i == j ? 0.5 * H0(i, i) : H0(i, j));
    if (order <= 2) return p;
    if (order > 3) throw Error("jet_at: finite-difference backends support order <= 3");
    const double step = 1e-5 * (1.0 + a0.norm());
    std::vector<Mat> dH(nv);
    for (int k = 0; k < nv; ++k) {
        Vec e = Vec::Zero(nv);
        e(k) = step;
        auto [fp, gp, Hp] = eval_at(x0 + e);
        auto [fm, gm, Hm] = eval_at(x0 - e);
        dH[k] = (Hp - Hm) / (2.0 * step);
        if (!dH[k].allFinite()) throw Error("jet_at: differentiation failure (non-finite)");
    }
    // monomial coefficient = derivative / multi-factorial, symmetrized over the index orderings
    for (int i = 0; i < nv; ++i)
        for (int j = i; j < nv; ++j)
            for (int k = j; k < nv; ++k) {
                const cplx t = (dH[k](i, j) + dH[i](j, k) + dH[j](i, k)) / 3.0;
                Multi mm(nv, 0);
                mm[i]++;
                mm[j]++;
                mm[k]++;
                p.add_term(mm, t / multi_factorial(mm));
            }
    return p;
}

}  // namespace

DiagonalJet jet_at(const PhaseFunction& phase, const RVec& alpha0, int order) {
    if (order < 2) throw Error("jet_at: order must be >= 2");
    const int m = phase.dim();
    if (alpha0.size() != m) throw Error("jet_at: basepoint dimension mismatch");
    DiagonalJet j;
    j.n = phase.n;
    j.alpha0 = alpha0;
    j.order = order;
    Vec x0(2 * m);
    x0 << to_complex(alpha0), to_complex(alpha0);
    switch (phase.backend) {
        case Backend::Quadratic: {
            Poly p = QuadForm::from_phase(phase.quadratic()).to_poly();
            j.coeffs = p.substitute_affine(Mat::Identity(2 * m, 2 * m), x0).truncate(order).prune(1e-300);
            j.order = order;
            break;
        }
        case Backend::Polynomial:
            j.coeffs = phase.polynomial()->substitute_affine(Mat::Identity(2 * m, 2 * m), x0).truncate(order);
            break;
        case Backend::FubiniStudy:
            j.coeffs = fubini_study_jet_poly(alpha0, order);
            break;
        case Backend::Callback:
            j.coeffs = finite_difference_jet(phase, alpha0, order);
            break;
    }
    // the value on the diagonal is zero by contract; drop round-off in the constant term
    j.coeffs.set_term(Multi(2 * m, 0), 0.0);
    for (const auto& [mm, c] : j.coeffs.terms())
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw Error("jet_at: differentiation failure");
    return j;
}

std::pair<DiagonalJet, GaugeTerm> gauge_normalize(const DiagonalJet& jet, double tol) {
    if (jet.order < 2) throw Error("gauge_normalize: jet order must be >= 2");
    const int m = jet.dim();
    Mat P = (jet.A() - jet.C()) / 2.0;
    if (max_abs(imag_part(P)) > tol * scale_of(jet.B()))
        throw Error("gauge_normalize: P = (A - C)/2 not real symmetric (non-projector-phase input)");
    RMat Pr = P.real();
    Pr = 0.5 * (Pr + Pr.transpose()).eval();
    DiagonalJet out = jet;
    Mat H = Mat::Zero(2 * m, 2 * m);
    H.topLeftCorner(m, m) = -Pr.cast<cplx>();
    H.bottomRightCorner(m, m) = Pr.cast<cplx>();
    out.coeffs = (jet.coeffs + Poly::quadratic(H, Vec::Zero(2 * m), 0.0)).prune(0.0);
    GaugeTerm gt;
    gt.alpha0 = jet.alpha0;
    gt.hessian = Pr;
    return {out, gt};
}

// ---------------------------------------------------------------- models

QuadraticPhase bargmann_quadratic(int n) {
    if (n < 1) throw Error("make_bargmann: n must be >= 1");
    const int m = 2 * n;
    Mat B = -I_ * Mat::Identity(m, m);
    for (int j = 0; j < n; ++j) {
        B(2 * j, 2 * j + 1) += -1.0;
        B(2 * j + 1, 2 * j) += 1.0;
    }
    Mat A = I_ * Mat::Identity(m, m);
    return QuadraticPhase::make(n, RVec::Zero(m), RVec::Zero(m), A, B, A);
}

PhaseFunction make_bargmann(int n) {
    PhaseFunction p = PhaseFunction::from_quadratic(bargmann_quadratic(n), "bargmann");
    p.self_adjoint_flag = true;
    return p;
}

PhaseFunction make_fubini_study() {
    PhaseFunction p;
    p.backend = Backend::FubiniStudy;
    p.model_id = "fubini_study";
    p.n = 1;
    p.self_adjoint_flag = true;
    p.domain = default_domain(2, 0.7, 0.5);
    return p;
}

PhaseFunction make_model_quadratic(const RVec& theta, const Mat& L, const Mat& Jt, double tol) {
    const int m = static_cast<int>(L.rows());
    if (m % 2 || L.cols() != m || Jt.rows() != m || Jt.cols() != m || theta.size() != m)
        throw Error("make_model_quadratic: dimension mismatch");
    if (max_abs(Jt + Jt.transpose()) > tol * scale_of(Jt)) throw Error("make_model_quadratic: J~ not antisymmetric");
    if (max_abs(Jt * Jt + Mat::Identity(m, m)) > tol * scale_of(Jt) * scale_of(Jt))
        throw Error("make_model_quadratic: J~^2 != -I");
    if (max_abs(L - L.transpose()) > tol * scale_of(L)) throw Error("make_model_quadratic: L not symmetric");
    Mat L2 = L * L;
    Eigen::SelfAdjointEigenSolver<RMat> es(L2.real());
    if (es.eigenvalues()(0) <= 0.0) throw Error("make_model_quadratic: Re(L^2) not positive definite");
    Mat A = I_ * L2;
    Mat B = L * (Jt - I_ * Mat::Identity(m, m)) * L;
    return PhaseFunction::from_quadratic(QuadraticPhase::make(m / 2, RVec::Zero(m), theta, A, B, A), "quadratic");
}

ScrambledPhase random_quadratic_projector_phase(std::uint64_t seed, int n, Scramble scramble) {
    const int m = 2 * n;
    std::mt19937_64 rng(seed);
    RMat S;
    const RMat P = interleave_to_standard(n);
    for (int tries = 0;; ++tries) {
        if (scramble == Scramble::Symplectic)
            S = P.transpose() * random_real_symplectic(rng, n) * P;
        else
            S = RMat::Identity(m, m) + 0.5 * random_normal_matrix(rng, m, m) / std::sqrt(double(m));
        Eigen::JacobiSVD<RMat> svd(S);
        const auto& sv = svd.singularValues();
        if (sv(m - 1) > 0.2 && sv(0) / sv(m - 1) < 20.0) break;
        if (tries > 1000) throw Error("random phase: could not draw a well-conditioned S");
    }
    RMat G = 0.3 * random_normal_matrix(rng, m, m);
    G = 0.5 * (G + G.transpose()).eval();
    const QuadraticPhase bs = bargmann_quadratic(n);
    // congruence in extended precision, rounded once
    using XMat = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;
    const XMat Sx = S.cast<std::complex<long double>>(), Gx = G.cast<std::complex<long double>>();
    auto cong = [&](const Mat& X) { return XMat(Sx.transpose() * X.cast<std::complex<long double>>() * Sx); };
    Mat A = XMat(cong(bs.A) - Gx).cast<cplx>();
    Mat B = cong(bs.B).cast<cplx>();
    Mat C = XMat(cong(bs.C) + Gx).cast<cplx>();
    ScrambledPhase out{PhaseFunction::from_quadratic(QuadraticPhase::make(n, RVec::Zero(m), RVec::Zero(m), A, B, C),
                                                     "scrambled"),
                       S, G};
    out.phase.self_adjoint_flag = true;
    return out;
}

QuadraticPhase perturb_antisymmetric(const QuadraticPhase& q, double eps) {
    QuadraticPhase p = q;
    p.B(0, 1) += eps;
    p.B(1, 0) -= eps;
    return p;
}

Poly quadratic_to_poly(const QuadraticPhase& q) { return QuadForm::from_phase(q).to_poly(); }

namespace {
RVec sample_point(const Domain& d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    RVec x(d.center.size());
    for (int k = 0; k < x.size(); ++k) x(k) = d.center(k) + 0.6 * d.box(k) * u(rng);
    return x;
}
}  // namespace

double self_adjoint_defect(const PhaseFunction& phase, int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        Vec a = to_complex(sample_point(phase.domain, rng)), b = to_complex(sample_point(phase.domain, rng));
        worst = std::max(worst, std::abs(phase(a, b) + std::conj(phase(b, a))));
    }
    return worst;
}

double diagonal_value_defect(const PhaseFunction& phase, int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        Vec a = to_complex(sample_point(phase.domain, rng));
        worst = std::max(worst, std::abs(phase(a, a)));
    }
    return worst;
}

}  // namespace phaselab
