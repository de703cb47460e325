#include "phaselab/linalg.hpp"

#include <cmath>
#include <limits>

#include <unsupported/Eigen/MatrixFunctions>

namespace phaselab {

RMat Omega(int m) {
    RMat W = RMat::Zero(2 * m, 2 * m);
    W.block(0, m, m, m) = -RMat::Identity(m, m);
    W.block(m, 0, m, m) = RMat::Identity(m, m);
    return W;
}

RMat Omega_twisted(int m, int m2) {
    RMat W = RMat::Zero(2 * m + 2 * m2, 2 * m + 2 * m2);
    W.block(0, 0, 2 * m, 2 * m) = Omega(m);
    W.block(2 * m, 2 * m, 2 * m2, 2 * m2) = -Omega(m2);
    return W;
}

cplx omega(const Vec& v, const Vec& w) {
    const int m = static_cast<int>(v.size()) / 2;
    cplx s = 0.0;
    for (int j = 0; j < m; ++j) s += v(m + j) * w(j) - v(j) * w(m + j);
    return s;
}

Mat orth(const Mat& V, double rtol) {
    if (V.cols() == 0) return Mat(V.rows(), 0);
    Eigen::JacobiSVD<Mat> svd(V, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    int r = 0;
    const double smax = s.size() ? s(0) : 0.0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > rtol * smax && s(i) > 1e-300) ++r;
    return svd.matrixU().leftCols(r);
}

Mat null_space(const Mat& M, double rtol) {
    const int n = static_cast<int>(M.cols());
    if (M.rows() == 0) return Mat::Identity(n, n);
    Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double smax = s.size() ? s(0) : 0.0;
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > rtol * std::max(smax, 1e-300)) ++r;
    return svd.matrixV().rightCols(n - r);
}

int numerical_rank(const Mat& M, double rtol) {
    Eigen::JacobiSVD<Mat> svd(M);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > rtol * s(0)) ++r;
    return r;
}

double condition_number(const Mat& M) {
    Eigen::JacobiSVD<Mat> svd(M);
    const auto& s = svd.singularValues();
    const double smin = s(s.size() - 1);
    if (smin == 0.0) return std::numeric_limits<double>::infinity();
    return s(0) / smin;
}

double containment_defect(const Mat& U, const Mat& W) {
    Mat Qu = orth(U, 1e-12), Qw = orth(W, 1e-12);
    if (Qw.cols() == 0) return 0.0;
    if (Qu.cols() == 0) return 1.0;
    Mat R = Qw - Qu * (Qu.adjoint() * Qw);
    Eigen::JacobiSVD<Mat> svd(R);
    return svd.singularValues()(0);
}

double subspace_distance(const Mat& U, const Mat& W) {
    if (orth(U, 1e-12).cols() != orth(W, 1e-12).cols()) return std::numeric_limits<double>::infinity();
    return std::max(containment_defect(U, W), containment_defect(W, U));
}

Mat intersect(const Mat& U, const Mat& W, double rtol) {
    Mat Qu = orth(U, 1e-12), Qw = orth(W, 1e-12);
    Mat M(Qu.rows(), Qu.cols() + Qw.cols());
    M << Qu, -Qw;
    Mat N = null_space(M, rtol);
    return orth(Qu * N.topRows(Qu.cols()), 1e-12);
}

cplx sqrt_det_principal(const Mat& M) {
    Eigen::ComplexEigenSolver<Mat> es(M);
    cplx r = 1.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        const cplx l = es.eigenvalues()(i);
        if (l.real() <= 0.0) throw Error("determinant branch: eigenvalue with nonpositive real part");
        r *= std::sqrt(l);
    }
    return r;
}

Mat principal_sqrt(const Mat& M) { return M.sqrt(); }

double max_abs(const Mat& M) { return M.size() ? M.cwiseAbs().maxCoeff() : 0.0; }

Mat imag_part(const Mat& M) { return M.imag().cast<cplx>(); }
Mat real_part(const Mat& M) { return M.real().cast<cplx>(); }
RMat real_of(const Mat& M) { return M.real(); }
RMat imag_of(const Mat& M) { return M.imag(); }

RMat random_normal_matrix(std::mt19937_64& rng, int rows, int cols) {
    std::normal_distribution<double> nd(0.0, 1.0);
    RMat X(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) X(i, j) = nd(rng);
    return X;
}

RMat random_real_symplectic(std::mt19937_64& rng, int m) {
    // diag(G, G^{-T}) * [[I, 0], [S1, I]] * [[I, S2], [0, I]] with S1, S2 symmetric
    RMat G = RMat::Identity(m, m) + 0.4 * random_normal_matrix(rng, m, m) / std::sqrt(double(m));
    RMat S1 = 0.5 * random_normal_matrix(rng, m, m);
    S1 = 0.5 * (S1 + S1.transpose()).eval();
    RMat S2 = 0.5 * random_normal_matrix(rng, m, m);
    S2 = 0.5 * (S2 + S2.transpose()).eval();
    RMat D = RMat::Zero(2 * m, 2 * m), L = RMat::Identity(2 * m, 2 * m), U = RMat::Identity(2 * m, 2 * m);
    D.block(0, 0, m, m) = G;
    D.block(m, m, m, m) = G.inverse().transpose();
    L.block(m, 0, m, m) = S1;
    U.block(0, m, m, m) = S2;
    return D * L * U;
}

RMat interleave_to_standard(int m) {
    RMat P = RMat::Zero(2 * m, 2 * m);
    for (int j = 0; j < m; ++j) {
        P(j, 2 * j) = 1.0;
        P(m + j, 2 * j + 1) = 1.0;
    }
    return P;
}

}  // namespace phaselab
