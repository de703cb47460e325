#pragma once

#include <utility>

#include "phaselab/phase_core.hpp"
#include "phaselab/poly.hpp"

namespace phaselab {

// E[p(eta)] for a centered Gaussian eta with complex covariance Sigma (Isserlis recursion).
// Only the variables listed in `idx` are integrated; the rest stay symbolic.
Poly gaussian_expectation(const Poly& p, const Mat& Sigma, const std::vector<int>& idx);
cplx gaussian_moment(const Multi& mu, const Mat& Sigma);

// Integral over R^d of exp((i/h)(c + g.x + 1/2 x^T M x)) p(x); requires Im M > 0.
// det(M/i)^{-1/2} on the principal branch (eigenvalues of M/i have positive real part).
cplx gaussian_integral(const Mat& M, const Vec& g, cplx c, const Poly& p, double h);

// (2 pi h)^{-din/2} exp(i phase(x, y)/h) amp(x, y), x in R^dout, y in R^din.
struct GaussianKernel {
    int dout = 0, din = 0;
    double h = 1.0;
    QuadForm phase;
    Poly amp;

    cplx operator()(const Vec& x, const Vec& y) const;
    double prefactor() const;
    void validate(int max_degree = 6) const;
};

GaussianKernel kernel_from_phase(const QuadraticPhase& q, double h, const Poly& amp);
GaussianKernel kernel_from_phase(const QuadraticPhase& q, double h, cplx amp);

// Exact composition over the middle variable; phase is the quadratic critical value.
GaussianKernel compose_kernels_exact(const GaussianKernel& K1, const GaussianKernel& K2);
// -conj(phase(y, x)) and conj(amp(y, x))
GaussianKernel kernel_adjoint(const GaussianKernel& K);
// max of phase-data and amplitude-coefficient distances (infinity on shape mismatch)
double kernel_distance(const GaussianKernel& a, const GaussianKernel& b);

// det(2D)^{1/2}, principal branch
cplx projector_amplitude(const DiagonalJet& jet);

enum class ModelKind { Bargmann, GaussianStandard };

// Gaussian-standard model: (pi h)^{-n/2} exp(-(x^2 + y^2)/2h), i.e. the orthogonal projector onto
// (pi h)^{-n/4} exp(-x^2/2h). Bargmann: kernel_from_phase(bargmann, h, 2^n).
GaussianKernel model_kernel(ModelKind kind, int n, double h);

// f(x, x') -> f(0, x') on polynomials in (x_1..x_nx, x'_1..x'_nxp)
Poly apply_standard_projector(const Poly& f, int nx);

// p(x) exp(-1/2 (x - c)^T E (x - c) / h)
struct HermiteFunction {
    int n = 1;
    double h = 1.0;
    RVec center;
    Poly poly;
    Mat E;

    static HermiteFunction ground(int n, double h);
    cplx eval(const Vec& x) const;
    cplx eval_real(const double* x) const;
    // p and the exponent determine the function; compares after pruning
    static double distance(const HermiteFunction& a, const HermiteFunction& b);
};

// zeta_j = (h d_j + x_j)/sqrt 2, zeta*_j = (x_j - h d_j)/sqrt 2
enum class Ladder { Lower, Raise };
HermiteFunction zeta_action(Ladder which, int j, const HermiteFunction& f);
HermiteFunction hermite_state(int n, double h, const std::vector<int>& levels);
HermiteFunction hermite_add(const HermiteFunction& a, const HermiteFunction& b, cplx sb = 1.0);
// exact action of the Gaussian-standard projector (a multiple of the ground state)
HermiteFunction apply_gaussian_standard(const HermiteFunction& f);

// sum over |nu| <= K of (ih)^|nu| / nu! d_xi^nu p d_x^nu q; symbols in (x_1..x_n, xi_1..xi_n)
Poly star_product_truncated(const Poly& p, const Poly& q, int n, double h, int K);

// a in variables (x_1..x_n, xi_1..xi_n, x'_1..x'_p, xi'_1..xi'_p); projector iff a(0, 0, x', xi') == 1.
// a(0) must be nonzero.
struct LocalProjectorResult {
    bool is_projector = false;
    Multi witness;          // offending monomial in (x, xi, x', xi')
    cplx witness_coeff = 0.0;
};
LocalProjectorResult local_projector_test(const Poly& a, int n = 1, double tol = 1e-14);

// Quadratic phases psi(alpha, x) and psi*(x, beta) generating Lambda_-> = F (+) graph(kappa) and its
// reverse, kappa a Darboux chart of Sigma. Hessians are ordered (alpha, x) and (x, beta).
struct FbiPair {
    int n = 0;
    Mat H;      // psi = 1/2 (alpha, x)^T H (alpha, x)
    Mat Hs;     // psi* = 1/2 (x, beta)^T Hs (x, beta)
    Mat chart;  // kappa: 2n x 2n, columns are the Sigma Darboux vectors' alpha parts (x-type, xi-type)
    Mat Ex;     // alpha-directions of the chart's x axes (2n x n)
    cplx psi(const Vec& alpha, const Vec& x) const;
    cplx psi_star(const Vec& x, const Vec& beta) const;
};
FbiPair fbi_phase_pair(const QuadraticPhase& q);

// det((1/i) d^2_{alpha_x}(psi*(x, alpha) + psi(alpha, y)))^{-1/2} at x = y = alpha_x
cplx fbi_density_sigma(const FbiPair& p);

// The projector phase of T T* for the flat FBI pair: 1/2 (a - c)(b + d) + (i/4)|alpha - beta|^2 per
// coordinate pair, alpha = (a, b), beta = (c, d).
QuadraticPhase fbi_flat_phase(int n);

// First correction of stationary phase: integral of exp(i Phi/h) u ~ (2 pi h)^{d/2} det(Phi''/i)^{-1/2}
// exp(i Phi(0)/h) (u(0) + h L1(u) + ...) for Phi critical at 0 (Taylor polynomials; Phi to degree >= 4,
// u to degree >= 2). Hormander's L1 with the three terms (nu, mu) = (1,0), (2,1), (3,2).
cplx stationary_phase_L1(const Poly& Phi, const Poly& u);

// On the diagonal, (K o K)(a0, a0) / K(a0, a0) = 1 + h c1 + O(h^2) for the kernel exp(i phi/h) a with
// a = det(2D)^{1/2} at a0. amp_jet is a in (u, v) around (a0, a0), 4n variables.
cplx self_composition_c1(const PhaseFunction& phase, const Poly& amp_jet, const RVec& alpha0);

}  // namespace phaselab
