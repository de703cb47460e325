#include "phaselab/critical.hpp"

#include <cmath>

#include "phaselab/linalg.hpp"

namespace phaselab {

CriticalSolveResult solve_mixed(const PhaseFunction& phi1, const PhaseFunction& phi2, const Vec& alpha,
                                const Vec& beta, const SolveOptions& opt) {
    if (phi1.dim() != phi2.dim() || alpha.size() != phi1.dim() || beta.size() != phi1.dim())
        throw Error("solve_gamma_c: dimension mismatch");
    if (opt.basin_guard) {
        const double rho = std::min(phi1.domain.rho, phi2.domain.rho);
        if ((alpha - beta).norm() > 0.5 * rho)
            throw Error("solve_gamma_c: |alpha - beta| exceeds the Newton basin (0.5 * complexification radius)");
    }
    CriticalSolveResult r;
    r.gamma = opt.initial ? *opt.initial : Vec((alpha + beta) / 2.0);
    for (int it = 0;; ++it) {
        PhaseEval e1 = phi1.eval(alpha, r.gamma, 2);
        PhaseEval e2 = phi2.eval(r.gamma, beta, 2);
        Vec g = e1.db + e2.da;
        r.residual = g.norm();
        if (!std::isfinite(r.residual)) throw Error("solve_gamma_c: non-finite gradient");
        if (r.residual < opt.tol) {
            r.iterations = it;
            r.critical_value = e1.value + e2.value;
            return r;
        }
        if (it >= opt.max_iter) throw Error("solve_gamma_c: no convergence within max_iter");
        Mat F = e1.hbb + e2.haa;
        if (condition_number(F) > opt.cond_limit) throw Error("solve_gamma_c: Jacobian numerically singular");
        Vec step = F.partialPivLu().solve(g);
        r.gamma -= step;
        // a converged quadratic problem can stall at rounding level; accept a vanishing step
        if (step.norm() < 1e-3 * opt.tol * std::max(1.0, r.gamma.norm())) {
            PhaseEval f1 = phi1.eval(alpha, r.gamma, 1);
            PhaseEval f2 = phi2.eval(r.gamma, beta, 1);
            r.residual = (f1.db + f2.da).norm();
            r.iterations = it + 1;
            r.critical_value = f1.value + f2.value;
            if (r.residual < 1e3 * opt.tol) return r;
        }
    }
}

CriticalSolveResult solve_gamma_c(const PhaseFunction& phase, const Vec& alpha, const Vec& beta,
                                  const SolveOptions& opt) {
    return solve_mixed(phase, phase, alpha, beta, opt);
}

double reproducing_residual(const PhaseFunction& phase, const Vec& alpha, const Vec& beta) {
    CriticalSolveResult r = solve_gamma_c(phase, alpha, beta);
    return std::abs(r.critical_value - phase(alpha, beta));
}

DCritique d_critique_residual(const PhaseFunction& phase, const Vec& alpha, const Vec& beta) {
    CriticalSolveResult r = solve_gamma_c(phase, alpha, beta);
    PhaseEval eag = phase.eval(alpha, r.gamma, 1);
    PhaseEval egb = phase.eval(r.gamma, beta, 1);
    PhaseEval eab = phase.eval(alpha, beta, 1);
    DCritique d;
    d.stationarity = (eag.db + egb.da).norm();
    d.right = (egb.db - eab.db).norm();
    d.left = (eag.da - eab.da).norm();
    return d;
}

double associativity_residual(const PhaseFunction& phase, const Vec& alpha, const Vec& beta) {
    Vec g = solve_gamma_c(phase, alpha, beta).gamma;
    Vec g1 = solve_gamma_c(phase, g, beta).gamma;
    Vec g2 = solve_gamma_c(phase, alpha, g).gamma;
    return std::max((g1 - g).norm(), (g2 - g).norm());
}

cplx compose_phases_vc_newton(const PhaseFunction& phi1, const PhaseFunction& phi2, const Vec& alpha,
                              const Vec& beta) {
    return solve_mixed(phi1, phi2, alpha, beta).critical_value;
}

cplx compose_phases_vc(const PhaseFunction& phi1, const PhaseFunction& phi2, const Vec& alpha, const Vec& beta) {
    if (!(phi1.has_quadratic() && phi2.has_quadratic())) return compose_phases_vc_newton(phi1, phi2, alpha, beta);
    const QuadraticPhase& q1 = phi1.quadratic();
    const QuadraticPhase& q2 = phi2.quadratic();
    const Vec a01 = to_complex(q1.alpha0), a02 = to_complex(q2.alpha0);
    // d_beta phi1(alpha, g) + d_alpha phi2(g, beta) is affine in g
    Mat F = q1.C + q2.A;
    Vec rhs = to_complex(q1.theta) - to_complex(q2.theta) - q1.B.transpose() * (alpha - a01) + q1.C * a01 +
              q2.A * a02 - q2.B * (beta - a02);
    if (condition_number(F) > 1e12) throw Error("compose_phases_vc: singular mixed Hessian");
    Vec g = F.partialPivLu().solve(rhs);
    return q1.value(alpha, g) + q2.value(g, beta);
}

PhaseFunction make_composite_phase(const PhaseFunction& phi1, const PhaseFunction& phi2) {
    EvalFn fn = [phi1, phi2](const Vec& a, const Vec& b, int order) {
        SolveOptions o;
        o.basin_guard = false;
        CriticalSolveResult r = solve_mixed(phi1, phi2, a, b, o);
        PhaseEval out;
        out.value = r.critical_value;
        if (order < 1) return out;
        PhaseEval e1 = phi1.eval(a, r.gamma, 2), e2 = phi2.eval(r.gamma, b, 2);
        out.da = e1.da;
        out.db = e2.db;
        if (order < 2) return out;
        Mat F = e1.hbb + e2.haa;
        auto lu = F.partialPivLu();
        out.haa = e1.haa - e1.hab * lu.solve(Mat(e1.hab.transpose()));
        out.hab = -e1.hab * lu.solve(e2.hab);
        out.hbb = e2.hbb - e2.hab.transpose() * lu.solve(e2.hab);
        return out;
    };
    PhaseFunction p = PhaseFunction::from_callback(phi1.n, fn, "composite");
    p.domain = phi1.domain;
    return p;
}

Vec bargmann_gamma_c(const Vec& alpha, const Vec& beta) {
    const int m = static_cast<int>(alpha.size());
    Mat Jt = Mat::Zero(m, m);
    for (int j = 0; j < m / 2; ++j) {
        Jt(2 * j, 2 * j + 1) = -1.0;
        Jt(2 * j + 1, 2 * j) = 1.0;
    }
    return (alpha + beta) / 2.0 + 0.5 * I_ * Jt * (beta - alpha);
}

Vec fubini_study_gamma_c(const Vec& alpha, const Vec& beta) {
    const cplx z = alpha(0) + I_ * alpha(1);
    const cplx wb = beta(0) - I_ * beta(1);
    Vec g(2);
    g << (z + wb) / 2.0, (z - wb) / (2.0 * I_);
    return g;
}

}  // namespace phaselab
