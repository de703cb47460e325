#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "phaselab/poly.hpp"
#include "phaselab/types.hpp"

namespace phaselab {

// phi(alpha, beta) = theta.(u - v) + 1/2 (u^T A u + 2 u^T B v + v^T C v),
// u = alpha - alpha0, v = beta - alpha0, B(i,j) = d^2 phi / d alpha_i d beta_j.
struct QuadraticPhase {
    int n = 0;
    RVec alpha0;
    RVec theta;
    Mat A, B, C;

    int dim() const { return 2 * n; }
    // validates symmetry, zero-sum and Re D > 0; throws Error naming the failed invariant
    static QuadraticPhase make(int n, const RVec& alpha0, const RVec& theta, const Mat& A, const Mat& B,
                               const Mat& C, double tol = 1e-10);
    cplx value(const Vec& a, const Vec& b) const;
};

// General quadratic function c + g.x + 1/2 x^T H x on C^{d1} x C^{d2}, x = (first, second).
struct QuadForm {
    int d1 = 0, d2 = 0;
    cplx c = 0.0;
    Vec g;
    Mat H;

    cplx value(const Vec& x) const { return c + (g.transpose() * x)(0) + 0.5 * (x.transpose() * H * x)(0); }
    cplx value(const Vec& a, const Vec& b) const;
    static QuadForm from_phase(const QuadraticPhase& q);
    Poly to_poly() const;
    static double distance(const QuadForm& a, const QuadForm& b);
};

struct Domain {
    RVec center;
    RVec box;  // half-widths
    double rho = 1.0;
};

struct PhaseEval {
    cplx value = 0.0;
    Vec da, db;          // gradients in alpha, beta
    Mat haa, hab, hbb;   // hab(i,j) = d^2/d alpha_i d beta_j
};

enum class Backend { Quadratic, FubiniStudy, Polynomial, Callback };

using EvalFn = std::function<PhaseEval(const Vec&, const Vec&, int)>;

class PhaseFunction {
public:
    Backend backend = Backend::Quadratic;
    std::string model_id;  // "bargmann", "fubini_study", "quadratic", "polynomial", "scrambled", ...
    int n = 0;
    bool self_adjoint_flag = false;
    Domain domain;

    int dim() const { return 2 * n; }

    static PhaseFunction from_quadratic(const QuadraticPhase& q, const std::string& id = "quadratic");
    // polynomial in (alpha, beta), 4n variables
    static PhaseFunction from_poly(int n, const Poly& p, const std::string& id = "polynomial");
    static PhaseFunction from_callback(int n, EvalFn fn, const std::string& id);

    PhaseEval eval(const Vec& a, const Vec& b, int deriv_order = 0) const;
    cplx operator()(const Vec& a, const Vec& b) const { return eval(a, b, 0).value; }
    cplx value_real(const double* a, const double* b) const;

    bool has_quadratic() const { return quad_ != nullptr; }
    const QuadraticPhase& quadratic() const;
    const Poly* polynomial() const { return poly_ ? &poly_->p : nullptr; }

    void check_domain(const Vec& a, const Vec& b) const;

private:
    struct PolyData {
        Poly p;
        std::vector<Poly> grad;
        std::vector<std::vector<Poly>> hess;
    };
    std::shared_ptr<const QuadraticPhase> quad_;
    std::shared_ptr<const PolyData> poly_;
    EvalFn fn_;
};

// Taylor coefficients of (u, v) -> phi(alpha0 + u, alpha0 + v); variables (u_1..u_m, v_1..v_m).
struct DiagonalJet {
    int n = 0;
    RVec alpha0;
    int order = 2;
    Poly coeffs;

    int dim() const { return 2 * n; }
    Vec grad_u() const;
    Vec grad_v() const;
    Mat A() const;
    Mat B() const;
    Mat C() const;
    // max |coefficient| of the restriction to u = v, and of the constant term
    double diagonal_defect() const;
    static DiagonalJet from_quadratic(const QuadraticPhase& q);
};

struct GaugeTerm {
    RVec alpha0;
    RMat hessian;  // f(alpha0 + u) = 1/2 u^T hessian u
};

PhaseEval eval_phase(const PhaseFunction& phase, const Vec& a, const Vec& b, int deriv_order);
DiagonalJet jet_at(const PhaseFunction& phase, const RVec& alpha0, int order);
std::pair<DiagonalJet, GaugeTerm> gauge_normalize(const DiagonalJet& jet, double tol = 1e-10);

PhaseFunction make_bargmann(int n);
PhaseFunction make_fubini_study();
PhaseFunction make_model_quadratic(const RVec& theta, const Mat& L, const Mat& Jt, double tol = 1e-12);

enum class Scramble { GeneralLinear, Symplectic };
struct ScrambledPhase {
    PhaseFunction phase;
    RMat S;
    RMat gauge;
};
ScrambledPhase random_quadratic_projector_phase(std::uint64_t seed, int n, Scramble scramble);

QuadraticPhase bargmann_quadratic(int n);
// B += eps * (E_01 - E_10); keeps the zero-sum constraint, breaks J^2 = -1
QuadraticPhase perturb_antisymmetric(const QuadraticPhase& q, double eps);
Poly quadratic_to_poly(const QuadraticPhase& q);

// max |phi(a,b) + conj(phi(b,a))| over sampled real pairs in the domain box
double self_adjoint_defect(const PhaseFunction& phase, int samples, std::uint64_t seed);
// max |phi(a,a)| over sampled real points
double diagonal_value_defect(const PhaseFunction& phase, int samples, std::uint64_t seed);

// Taylor expansion helpers on polynomials with a nonzero constant term.
Poly series_log(const Poly& X, int order);            // log X
Poly series_pow(const Poly& X, double p, int order);  // X^p

}  // namespace phaselab
