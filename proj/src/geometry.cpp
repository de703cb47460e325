#include "phaselab/geometry.hpp"

#include <cmath>
#include <limits>

#include "phaselab/linalg.hpp"

namespace phaselab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double fro(const Mat& M) { return M.norm(); }

}  // namespace

KahlerData kahler_triple(const DiagonalJet& jet, double tol) {
    KahlerData k;
    k.basepoint = jet.alpha0;
    const Vec th = jet.grad_u();
    k.A = jet.A();
    k.B = jet.B();
    k.C = jet.C();
    const double s = std::max(1.0, max_abs(k.B));
    if (max_abs(imag_part(th)) > tol * s) throw Error("kahler_triple: first-order coefficient not real");
    k.theta = th.real();
    Mat R = (k.B.transpose() - k.B) / 2.0;
    Mat P = (k.A - k.C) / 2.0;
    if (max_abs(imag_part(R)) > tol * s) throw Error("kahler_triple: R not real (non-projector input)");
    if (max_abs(imag_part(P)) > tol * s) throw Error("kahler_triple: P not real (non-projector input)");
    k.R = R.real();
    k.P = P.real();
    k.D = I_ * (k.B + k.B.transpose()) / 2.0;
    Eigen::SelfAdjointEigenSolver<RMat> es(k.D.real());
    if (es.eigenvalues()(0) <= 0.0) throw Error("kahler_triple: Re D not positive definite");
    k.L = principal_sqrt(k.D);
    const Mat Rc = k.R.cast<cplx>();
    k.J = -k.D.partialPivLu().solve(Rc);
    Mat Li = k.L.inverse();
    k.Jt = -Li * Rc * Li;
    return k;
}

Report check_projector_jet(const DiagonalJet& jet, double tol) {
    Report r;
    const Mat A = jet.A(), B = jet.B(), C = jet.C();
    const int m = jet.dim();
    const Mat Id = Mat::Identity(m, m);
    r.add("diagonal_vanishing", jet.diagonal_defect(), tol);
    r.add("zero_sum", fro(A + B + B.transpose() + C), tol);
    const Mat R = (B.transpose() - B) / 2.0, P = (A - C) / 2.0;
    r.add("R_real", fro(imag_part(R)), tol);
    r.add("P_real", fro(imag_part(P)), tol);
    const Mat D = I_ * (B + B.transpose()) / 2.0;
    Eigen::SelfAdjointEigenSolver<RMat> es(D.real());
    const double dmin = es.eigenvalues()(0);
    r.add_lower("re_D_min_eig", dmin, 0.0);
    if (dmin <= 0.0) {
        for (const char* name :
             {"J_squared", "JtD_minus_R", "JtDJ_minus_D", "B_factorization", "Jtilde_antisymmetric", "Jtilde_squared"})
            r.add(name, kInf, tol);
        return r;
    }
    const Mat L = principal_sqrt(D);
    const Mat Rr = real_part(R);
    const Mat J = -D.partialPivLu().solve(Rr);
    const Mat Li = L.inverse();
    const Mat Jt = -Li * Rr * Li;
    r.add("J_squared", fro(J * J + Id), tol);
    r.add("JtD_minus_R", fro(J.transpose() * D - Rr), tol);
    r.add("JtDJ_minus_D", fro(J.transpose() * D * J - D), tol);
    r.add("B_factorization", fro(L * (Jt - I_ * Id) * L - B), tol);
    r.add("Jtilde_antisymmetric", fro(Jt + Jt.transpose()), tol);
    r.add("Jtilde_squared", fro(Jt * Jt + Id), tol);
    return r;
}

int rank_cross_hessian(const PhaseFunction& phase, const Vec& alpha, const Vec& beta) {
    PhaseEval e = phase.eval(alpha, beta, 2);
    if (!e.hab.allFinite()) throw Error("rank_cross_hessian: derivative failure");
    return numerical_rank(e.hab, 1e-8);
}

TangentModel tangent_models(const DiagonalJet& jet) {
    const int m = jet.dim();
    const Mat A = jet.A(), B = jet.B(), C = jet.C();
    const Mat Id = Mat::Identity(m, m), Z = Mat::Zero(m, m);
    TangentModel t;
    Mat s(2 * m, m);
    s << Id, A + B;
    t.Sigma = LinearSubspace(s);
    Mat j(2 * m, 2 * m);
    j << Id, Z, A, B;
    t.J = LinearSubspace(j);
    Mat js(2 * m, 2 * m);
    js << Z, Id, -B.transpose(), -C;
    t.Js = LinearSubspace(js);
    Mat K = null_space(B.transpose(), 1e-8);
    Mat f(2 * m, K.cols());
    f << K, A * K;
    t.F = LinearSubspace(f);
    Mat Ks = null_space(B, 1e-8);
    Mat fs(2 * m, Ks.cols());
    fs << Ks, -C * Ks;
    t.Fs = LinearSubspace(fs);
    return t;
}

Report check_tangent_models(const TangentModel& t, int n, const DiagonalJet& jet) {
    Report r;
    auto dim_entry = [&](const std::string& name, int got, int want) {
        r.add("dim_" + name, std::abs(got - want), 0.5);
    };
    dim_entry("Sigma", t.Sigma.dim(), 2 * n);
    dim_entry("J", t.J.dim(), 3 * n);
    dim_entry("Js", t.Js.dim(), 3 * n);
    dim_entry("F", t.F.dim(), n);
    dim_entry("Fs", t.Fs.dim(), n);
    r.add("F_in_J", containment_defect(t.J.basis, t.F.basis), 1e-9);
    r.add("Fs_in_Js", containment_defect(t.Js.basis, t.Fs.basis), 1e-9);
    r.add("Sigma_in_J", containment_defect(t.J.basis, t.Sigma.basis), 1e-9);
    r.add("Sigma_in_Js", containment_defect(t.Js.basis, t.Sigma.basis), 1e-9);
    r.add("F_is_J_perp", subspace_distance(t.F, symplectic_orthogonal(t.J)), 1e-9);
    r.add("Fs_is_Js_perp", subspace_distance(t.Fs, symplectic_orthogonal(t.Js)), 1e-9);
    const Mat B = jet.B();
    const Mat K = null_space(B.transpose(), 1e-8), Ks = null_space(B, 1e-8);
    r.add("kernels_transverse", static_cast<double>(intersect(K, Ks).cols()), 0.5);
    r.add("Sigma_cap_F", static_cast<double>(intersect(t.Sigma.basis, t.F.basis).cols()), 0.5);
    return r;
}

Report positivity_leaf(const DiagonalJet& jet) {
    Report r;
    const Mat A = jet.A(), B = jet.B(), C = jet.C();
    const Mat K = null_space(B.transpose(), 1e-8), Ks = null_space(B, 1e-8);
    const Mat HJ = 2.0 * K.adjoint() * imag_part(A) * K;
    const Mat HJs = 2.0 * Ks.adjoint() * imag_part(C) * Ks;
    r.add_lower("leaf_J", min_eigenvalue(0.5 * (HJ + HJ.adjoint())), 0.0);
    r.add_lower("leaf_conj_Js", min_eigenvalue(0.5 * (HJs + HJs.adjoint())), 0.0);
    return r;
}

}  // namespace phaselab
