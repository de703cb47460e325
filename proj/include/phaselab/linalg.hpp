#pragma once

#include <cstdint>
#include <random>

#include "phaselab/types.hpp"

namespace phaselab {

// Standard form Omega = [[0, -I], [I, 0]] on C^{2m} with coordinates (x_1..x_m, xi_1..xi_m),
// so that omega(v, w) = v^T Omega w = sum xi_v x_w - x_v xi_w, i.e. omega = sum dxi ^ dx.
RMat Omega(int m);
// twisted form diag(Omega_m, -Omega_m2) on the product C^{2m} x C^{2m2}
RMat Omega_twisted(int m, int m2);
cplx omega(const Vec& v, const Vec& w);

// orthonormal basis of the column span; rank by singular values > rtol * largest
Mat orth(const Mat& V, double rtol = 1e-10);
Mat null_space(const Mat& M, double rtol = 1e-10);
int numerical_rank(const Mat& M, double rtol = 1e-8);
double condition_number(const Mat& M);

// sine of the largest principal angle of span(W) away from span(U): || (I - P_U) Q_W ||
double containment_defect(const Mat& U, const Mat& W);
// max of the two containment defects; infinity if dimensions differ
double subspace_distance(const Mat& U, const Mat& W);
Mat intersect(const Mat& U, const Mat& W, double rtol = 1e-9);

// det(M)^{1/2} as the product of principal square roots of the eigenvalues; throws when an
// eigenvalue has nonpositive real part (the path from the identity may cross the cut).
cplx sqrt_det_principal(const Mat& M);
Mat principal_sqrt(const Mat& M);

double max_abs(const Mat& M);
Mat imag_part(const Mat& M);
Mat real_part(const Mat& M);
RMat real_of(const Mat& M);
RMat imag_of(const Mat& M);

RMat random_normal_matrix(std::mt19937_64& rng, int rows, int cols);
// random real symplectic matrix for Omega(m), product of a block-diagonal and two shears
RMat random_real_symplectic(std::mt19937_64& rng, int m);
// permutation P with (x_1..x_m, xi_1..xi_m) = P (x_1, xi_1, ..., x_m, xi_m)
RMat interleave_to_standard(int m);

}  // namespace phaselab
