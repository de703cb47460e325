#pragma once

#include "phaselab/phase_core.hpp"
#include "phaselab/report.hpp"
#include "phaselab/symplin.hpp"

namespace phaselab {

struct KahlerData {
    RVec basepoint;
    RVec theta;  // first-order coefficient in u
    Mat A, B, C;
    RMat R;      // (B^T - B)/2
    Mat D;       // i (B + B^T)/2
    RMat P;      // (A - C)/2
    Mat L;       // principal square root of D
    Mat J;       // -D^{-1} R
    Mat Jt;      // -L^{-1} R L^{-1}
};

// Throws when Re D is not positive definite or R, P are not real (tolerance relative to |B|).
KahlerData kahler_triple(const DiagonalJet& jet, double tol = 1e-8);

// Named residuals: diagonal_vanishing, zero_sum, R_real, P_real, re_D_min_eig, J_squared, JtD_minus_R,
// JtDJ_minus_D, B_factorization, Jtilde_antisymmetric, Jtilde_squared.
Report check_projector_jet(const DiagonalJet& jet, double tol = 1e-8);

int rank_cross_hessian(const PhaseFunction& phase, const Vec& alpha, const Vec& beta);

// Subspaces of C^{4n} with coordinates (alpha, covector); matches symplin with m = 2n.
struct TangentModel {
    LinearSubspace Sigma, J, Js, F, Fs;
};
TangentModel tangent_models(const DiagonalJet& jet);
// dimensions, containments, F = J^perp, transversality of ker B and ker B^T, Sigma cap F = 0
Report check_tangent_models(const TangentModel& t, int n, const DiagonalJet& jet);

// smallest eigenvalue of 2 Im(A) on ker B^T (unit vectors), and of 2 Im(C) on ker B (the leaf of conj J*)
Report positivity_leaf(const DiagonalJet& jet);

}  // namespace phaselab
