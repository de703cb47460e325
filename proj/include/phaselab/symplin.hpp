#pragma once

#include "phaselab/types.hpp"

namespace phaselab {

// Complex subspace of C^{2m} with coordinates (x_1..x_m, xi_1..xi_m); basis columns have full rank.
struct LinearSubspace {
    Mat basis;

    LinearSubspace() = default;
    explicit LinearSubspace(const Mat& b, double rtol = 1e-10);

    int ambient() const { return static_cast<int>(basis.rows()); }
    int half() const { return ambient() / 2; }
    int dim() const { return static_cast<int>(basis.cols()); }
    LinearSubspace conj() const { return LinearSubspace(basis.conjugate()); }
};

// Subspace of C^{2m1} x C^{2m2} with the twisted form omega_1 - omega_2; vectors are (first; second).
struct LinearRelation {
    int m1 = 0, m2 = 0;
    LinearSubspace sub;

    static LinearRelation from_basis(int m1, int m2, const Mat& b);
    static LinearRelation identity(int m);
    // graph {(v, M v)}
    static LinearRelation graph(const Mat& M);
};

struct Defect {
    bool ok = false;
    double defect = 0.0;
};

double subspace_distance(const LinearSubspace& a, const LinearSubspace& b);
bool same_subspace(const LinearSubspace& a, const LinearSubspace& b, double tol = 1e-9);

LinearSubspace symplectic_orthogonal(const LinearSubspace& V);
// orthogonal with respect to an arbitrary bilinear form matrix W
LinearSubspace orthogonal_wrt(const LinearSubspace& V, const RMat& W);

Defect is_involutive(const LinearSubspace& V, double tol = 1e-9);
Defect is_lagrangian(const LinearSubspace& V, double tol = 1e-9);
Defect is_lagrangian(const LinearRelation& L, double tol = 1e-9);
// max |omega| over pairs of orthonormal basis vectors
double isotropy_defect(const LinearSubspace& V);

LinearRelation relation_compose(const LinearRelation& l1, const LinearRelation& l2);
LinearRelation relation_adjoint(const LinearRelation& l);
double relation_distance(const LinearRelation& a, const LinearRelation& b);

// Sigma = J cap J*, F = J^perp, F* = J*^perp, after checking the pair is transverse.
struct PairData {
    int m = 0, p = 0;  // ambient half-dimension and codimension of J
    LinearSubspace J, Js, Sigma, F, Fs;
};
PairData analyze_pair(const LinearSubspace& J, const LinearSubspace& Js, double tol = 1e-9);

// F (+) F* (+) diagonal of Sigma, inside C^{2m} x C^{2m}
LinearRelation lambda_from_pair(const LinearSubspace& J, const LinearSubspace& Js);

// Symplectic M with M J = {xi' = 0}, M J* = {x' = 0}, M Sigma = {x' = xi' = 0} in coordinates
// (x, x', xi, xi'), x' of size p placed last among the x's. Flat inputs give M = I.
RMat Omega_of(int m);
Mat flatten_pair(const LinearSubspace& J, const LinearSubspace& Js, const LinearSubspace& Sigma);
Mat flatten_pair(const LinearSubspace& J, const LinearSubspace& Js);

// flat models in C^{2m} with codimension p
LinearSubspace flat_J(int m, int p);
LinearSubspace flat_Js(int m, int p);
LinearSubspace flat_Sigma(int m, int p);
// {(x, x', xi, i x')}
LinearSubspace flat_positive_J(int m, int p);

double symplectic_defect(const Mat& M);
// image M V
LinearSubspace transform(const Mat& M, const LinearSubspace& V);

// Hermitian leaf form v -> -i omega(v, conj v) restricted to V, in an orthonormal basis of V.
// Positive means -i omega(v, conj v) > 0, which is the same as i omega(v, conj v) < 0.
Mat leaf_form(const LinearSubspace& V);
double min_eigenvalue(const Mat& H);
// twisted version on a relation
Mat leaf_form(const LinearRelation& L);

struct PositivityReport {
    double leaf_J = 0.0;        // smallest eigenvalue of the form on J^perp
    double leaf_conj_Js = 0.0;  // same on conj(J*)^perp
    double lambda_min = 0.0;    // on Lambda(J,J*) modulo its real directions
    bool J_positive = false, conj_Js_positive = false, lambda_positive = false;
    bool boundary = false;      // some form is degenerate (|eigenvalue| below tol)
    bool iff_consistent = false;
};
PositivityReport pair_positivity_check(const LinearSubspace& J, const LinearSubspace& Js, double tol = 1e-9);

// Lagrangian Lambda: strict positivity modulo real directions Lambda cap conj(Lambda)
double lagrangian_positivity(const LinearSubspace& Lambda);

// Real symplectic M with M J = {(x, x', xi, i x')}. Sigma must be conjugation-stable and J strictly
// positive. Closed form: real Darboux frame, shear by Re G, rescale by (Im G)^{1/2}.
struct NormalFormResult {
    RMat M;
    Mat G;  // graph matrix of the leaf, xi' = G x', in the initial real Darboux frame
};
NormalFormResult positive_normal_form(const LinearSubspace& J, const LinearSubspace& Sigma);

// Symplectic Gram-Schmidt of Sigma with projected standard vectors as candidates; columns
// (e_1..e_k, f_1..f_k) with omega(f_i, e_j) = delta_ij. Real whenever Sigma is conjugation-stable.
Mat darboux_basis(const LinearSubspace& Sigma, bool balanced = false);

}  // namespace phaselab
