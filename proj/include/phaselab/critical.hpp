#pragma once

#include <optional>

#include "phaselab/phase_core.hpp"

namespace phaselab {

struct CriticalSolveResult {
    Vec gamma;
    double residual = 0.0;  // |grad| at gamma
    int iterations = 0;
    cplx critical_value = 0.0;
};

struct SolveOptions {
    double tol = 1e-12;
    int max_iter = 50;
    bool basin_guard = true;       // reject |alpha - beta| > 0.5 * complexification radius
    double cond_limit = 1e12;
    std::optional<Vec> initial;    // defaults to (alpha + beta)/2
};

// Critical point of gamma -> phi1(alpha, gamma) + phi2(gamma, beta) by Newton on the complexified gradient.
CriticalSolveResult solve_mixed(const PhaseFunction& phi1, const PhaseFunction& phi2, const Vec& alpha,
                                const Vec& beta, const SolveOptions& opt = {});
CriticalSolveResult solve_gamma_c(const PhaseFunction& phase, const Vec& alpha, const Vec& beta,
                                  const SolveOptions& opt = {});
inline CriticalSolveResult solve_gamma_c(const PhaseFunction& phase, const Vec& alpha, const Vec& beta, double tol,
                                         int max_iter = 50) {
    SolveOptions o;
    o.tol = tol;
    o.max_iter = max_iter;
    return solve_gamma_c(phase, alpha, beta, o);
}

double reproducing_residual(const PhaseFunction& phase, const Vec& alpha, const Vec& beta);

struct DCritique {
    double stationarity = 0.0;  // d_beta phi(alpha, g) + d_alpha phi(g, beta)
    double right = 0.0;         // d_beta phi(g, beta) - d_beta phi(alpha, beta)
    double left = 0.0;          // d_alpha phi(alpha, g) - d_alpha phi(alpha, beta)
    double max() const { return std::max({stationarity, right, left}); }
};
DCritique d_critique_residual(const PhaseFunction& phase, const Vec& alpha, const Vec& beta);

double associativity_residual(const PhaseFunction& phase, const Vec& alpha, const Vec& beta);

// Critical value of phi1(alpha, .) + phi2(., beta). Quadratic inputs take an exact linear solve.
cplx compose_phases_vc(const PhaseFunction& phi1, const PhaseFunction& phi2, const Vec& alpha, const Vec& beta);
cplx compose_phases_vc_newton(const PhaseFunction& phi1, const PhaseFunction& phi2, const Vec& alpha,
                              const Vec& beta);

// phi1 (.) phi2 as a phase function (callback backend): value by Newton, gradients by the envelope
// identity, Hessian blocks by the Schur complement over gamma.
PhaseFunction make_composite_phase(const PhaseFunction& phi1, const PhaseFunction& phi2);

// Bargmann closed form (alpha + beta)/2 + (i/2) Jt (beta - alpha), Jt = blockdiag[[0,-1],[1,0]]
Vec bargmann_gamma_c(const Vec& alpha, const Vec& beta);
// Fubini-Study: holomorphic coordinate z_alpha, antiholomorphic coordinate conj(z_beta) (real alpha, beta)
Vec fubini_study_gamma_c(const Vec& alpha, const Vec& beta);

}  // namespace phaselab
