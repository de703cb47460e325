#include "doctest.h"

#include <random>

#include "phaselab/linalg.hpp"
#include "phaselab/symplin.hpp"

using namespace phaselab;

namespace {

// Bargmann tangent spaces at a point, n = 1 or 2, written out from A = iI, B = J0 - iI, C = iI
Mat bargmann_B(int n) {
    Mat B = -I_ * Mat::Identity(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        B(2 * j, 2 * j + 1) -= 1.0;
        B(2 * j + 1, 2 * j) += 1.0;
    }
    return B;
}

LinearSubspace bargmann_J(int n) {
    const int m = 2 * n;
    Mat A = I_ * Mat::Identity(m, m), B = bargmann_B(n);
    Mat b(2 * m, 2 * m);
    b << Mat::Identity(m, m), Mat::Zero(m, m), A, B;
    return LinearSubspace(b);
}

LinearSubspace bargmann_Js(int n) {
    const int m = 2 * n;
    Mat C = I_ * Mat::Identity(m, m), B = bargmann_B(n);
    Mat b(2 * m, 2 * m);
    b << Mat::Zero(m, m), Mat::Identity(m, m), -B.transpose(), -C;
    return LinearSubspace(b);
}

LinearSubspace bargmann_Sigma(int n) {
    const int m = 2 * n;
    Mat b(2 * m, m);
    b << Mat::Identity(m, m), bargmann_B(n) + I_ * Mat::Identity(m, m);
    return LinearSubspace(b);
}

}  // namespace

TEST_CASE("symplectic orthogonal basics") {
    // {xi = 0} is Lagrangian
    LinearSubspace L(Mat(Mat::Identity(4, 2)));
    CHECK(same_subspace(symplectic_orthogonal(L), L));
    CHECK(is_lagrangian(L).ok);
    // full space
    CHECK(symplectic_orthogonal(LinearSubspace(Mat(Mat::Identity(6, 6)))).dim() == 0);
    // flat J_p: perp is p-dimensional and inside
    for (int p = 1; p <= 2; ++p) {
        LinearSubspace J = flat_J(3, p);
        LinearSubspace P = symplectic_orthogonal(J);
        CHECK(P.dim() == p);
        CHECK(containment_defect(J.basis, P.basis) < 1e-14);
    }
    // involution
    std::mt19937_64 rng(1);
    for (int t = 0; t < 10; ++t) {
        Mat V = random_normal_matrix(rng, 6, 1 + t % 5).cast<cplx>() +
                I_ * random_normal_matrix(rng, 6, 1 + t % 5).cast<cplx>();
        LinearSubspace S(V);
        CHECK(subspace_distance(symplectic_orthogonal(symplectic_orthogonal(S)), S) < 1e-12);
        CHECK(symplectic_orthogonal(S).dim() == 6 - S.dim());
    }
}

TEST_CASE("involutivity predicates") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 10; ++t) {
        Mat V = random_normal_matrix(rng, 6, 5).cast<cplx>() + I_ * random_normal_matrix(rng, 6, 5).cast<cplx>();
        CHECK(is_involutive(LinearSubspace(V)).ok);
    }
    // {x1 = xi1 = 0} in dimension 4 is symplectic, not involutive
    Mat b = Mat::Zero(4, 2);
    b(1, 0) = 1.0;
    b(3, 1) = 1.0;
    Defect d = is_involutive(LinearSubspace(b));
    CHECK_FALSE(d.ok);
    CHECK(d.defect > 0.9);
    CHECK(is_involutive(bargmann_J(1)).ok);
    CHECK(is_involutive(bargmann_J(2)).defect < 1e-10);
}

TEST_CASE("relations: identity, adjoint, Lagrangian") {
    std::mt19937_64 rng(3);
    Mat V = random_normal_matrix(rng, 8, 4).cast<cplx>() + I_ * random_normal_matrix(rng, 8, 4).cast<cplx>();
    LinearRelation R = LinearRelation::from_basis(2, 2, V);
    CHECK(relation_distance(relation_compose(LinearRelation::identity(2), R), R) < 1e-12);
    CHECK(relation_distance(relation_compose(R, LinearRelation::identity(2)), R) < 1e-12);
    LinearRelation Ra = relation_adjoint(relation_adjoint(R));
    CHECK(max_abs(Ra.sub.basis - R.sub.basis) == 0.0);
    // real symmetric relation: adjoint is the swap
    RMat S = random_real_symplectic(rng, 1);
    LinearRelation G = LinearRelation::graph(S.cast<cplx>());
    CHECK(is_lagrangian(G).ok);
    LinearRelation Ginv = LinearRelation::graph(S.inverse().cast<cplx>());
    CHECK(relation_distance(relation_adjoint(G), Ginv) < 1e-12);
}

TEST_CASE("lambda from the flat pair") {
    const int m = 2, p = 1;
    LinearRelation L = lambda_from_pair(flat_J(m, p), flat_Js(m, p));
    // {(x, x', xi, 0 ; x, 0, xi, xi')}
    Mat b = Mat::Zero(8, 4);
    b(0, 0) = b(4, 0) = 1.0;  // x
    b(2, 1) = b(6, 1) = 1.0;  // xi
    b(1, 2) = 1.0;            // x'
    b(7, 3) = 1.0;            // xi'
    CHECK(relation_distance(L, LinearRelation::from_basis(2, 2, b)) < 1e-12);
    CHECK(is_lagrangian(L).ok);
    CHECK(relation_distance(relation_compose(L, L), L) < 1e-12);
}

TEST_CASE("lambda for the bargmann pair") {
    for (int n : {1, 2}) {
        LinearSubspace J = bargmann_J(n), Js = bargmann_Js(n);
        PairData d = analyze_pair(J, Js);
        CHECK(d.p == n);
        CHECK(same_subspace(d.Sigma, bargmann_Sigma(n)));
        LinearRelation L = lambda_from_pair(J, Js);
        CHECK(is_lagrangian(L).ok);
        CHECK(relation_distance(relation_compose(L, L), L) < 1e-10);
        // real points: L cap conj(L) is the diagonal of the real part of Sigma
        Mat K = intersect(L.sub.basis, L.sub.basis.conjugate());
        Mat diag(8 * n, 2 * n);
        diag << bargmann_Sigma(n).basis, bargmann_Sigma(n).basis;
        CHECK(subspace_distance(K, diag) < 1e-10);
        // J* = conj(J) here, so Lambda is self-adjoint
        CHECK(same_subspace(Js, J.conj()));
        LinearRelation Lc = lambda_from_pair(J, J.conj());
        CHECK(relation_distance(relation_adjoint(Lc), Lc) < 1e-10);
        CHECK(relation_distance(relation_compose(Lc, relation_adjoint(Lc)), Lc) < 1e-10);
    }
}

TEST_CASE("non-transverse pairs are rejected") {
    CHECK_THROWS_AS(lambda_from_pair(flat_J(2, 1), flat_J(2, 1)), Error);
}

TEST_CASE("flatten_pair on flat and scrambled triples") {
    Mat M0 = flatten_pair(flat_J(3, 1), flat_Js(3, 1), flat_Sigma(3, 1));
    CHECK(max_abs(M0 - Mat::Identity(6, 6)) < 1e-14);
    std::mt19937_64 rng(4);
    for (int t = 0; t < 50; ++t) {
        const int m = 2 + t % 2, p = 1 + t % m;
        Mat S = random_real_symplectic(rng, m).cast<cplx>();
        LinearSubspace J = transform(S, flat_J(m, p)), Js = transform(S, flat_Js(m, p)),
                       Sg = transform(S, flat_Sigma(m, p));
        Mat M = flatten_pair(J, Js, Sg);
        CHECK(symplectic_defect(M) < 1e-10);
        CHECK(subspace_distance(transform(M, J), flat_J(m, p)) < 1e-9);
        CHECK(subspace_distance(transform(M, Js), flat_Js(m, p)) < 1e-9);
        CHECK(subspace_distance(transform(M, Sg), flat_Sigma(m, p)) < 1e-9);
        // real points go to real points
        CHECK(max_abs(imag_part(M * Sg.basis.real().cast<cplx>())) < 1e-9);
        // M S lies in the stabilizer of the flat triple
        Mat T = M * S;
        CHECK(subspace_distance(transform(T, flat_J(m, p)), flat_J(m, p)) < 1e-9);
    }
}

TEST_CASE("flatten_pair on the bargmann triple") {
    LinearSubspace J = bargmann_J(1), Js = bargmann_Js(1);
    Mat M = flatten_pair(J, Js);
    CHECK(symplectic_defect(M) < 1e-10);
    CHECK(subspace_distance(transform(M, J), flat_J(2, 1)) < 1e-9);
    CHECK(subspace_distance(transform(M, Js), flat_Js(2, 1)) < 1e-9);
    CHECK(subspace_distance(transform(M, bargmann_Sigma(1)), flat_Sigma(2, 1)) < 1e-9);
}

TEST_CASE("positive normal form") {
    NormalFormResult r0 = positive_normal_form(flat_positive_J(2, 1), flat_Sigma(2, 1));
    CHECK((r0.M - RMat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);

    // graph xi' = 2i x': rescaling x' -> sqrt(2) x', xi' -> xi'/sqrt(2)
    Mat b = flat_positive_J(2, 1).basis;
    LinearSubspace J2(Mat(Mat::Identity(4, 4).leftCols(3)));
    Mat bb = Mat::Zero(4, 3);
    bb(0, 0) = 1.0;
    bb(2, 1) = 1.0;
    bb(1, 2) = 1.0;
    bb(3, 2) = 2.0 * I_;
    NormalFormResult r = positive_normal_form(LinearSubspace(bb), flat_Sigma(2, 1));
    RMat expect = RMat::Identity(4, 4);
    expect(1, 1) = std::sqrt(2.0);
    expect(3, 3) = 1.0 / std::sqrt(2.0);
    CHECK((r.M - expect).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(std::abs(r.G(0, 0) - 2.0 * I_) < 1e-14);
    (void)b;
    (void)J2;

    for (int n : {1, 2}) {
        NormalFormResult rb = positive_normal_form(bargmann_J(n), bargmann_Sigma(n));
        CHECK(symplectic_defect(rb.M.cast<cplx>()) < 1e-10);
        CHECK(subspace_distance(transform(rb.M.cast<cplx>(), bargmann_J(n)), flat_positive_J(2 * n, n)) < 1e-9);
    }
    // negative leaves are refused
    CHECK_THROWS_AS(positive_normal_form(bargmann_J(1).conj(), bargmann_Sigma(1)), Error);
}

TEST_CASE("pair positivity") {
    PositivityReport r = pair_positivity_check(bargmann_J(1), bargmann_Js(1));
    CHECK(r.J_positive);
    CHECK(r.conj_Js_positive);
    CHECK(r.lambda_positive);
    CHECK(r.iff_consistent);
    // leaf (u, A u) with u = (1, i)/sqrt(2): form 2 u^T Im(A) conj(u) = 2, ambient norm^2 of the vector = 2
    CHECK(r.leaf_J == doctest::Approx(1.0).epsilon(1e-12));

    // conjugating both members flips every sign (J* = conj(J) here, so J alone cannot be replaced)
    PositivityReport rc = pair_positivity_check(bargmann_J(1).conj(), bargmann_Js(1).conj());
    CHECK_FALSE(rc.J_positive);
    CHECK_FALSE(rc.conj_Js_positive);
    CHECK(rc.leaf_J < 0.0);
    CHECK_FALSE(rc.lambda_positive);
    CHECK(rc.iff_consistent);

    PositivityReport rf = pair_positivity_check(flat_J(2, 1), flat_Js(2, 1));
    CHECK(rf.boundary);
    CHECK_FALSE(rf.J_positive);
    CHECK_FALSE(rf.lambda_positive);
    CHECK(rf.iff_consistent);
}

TEST_CASE("Lagrangians inside J: positive iff their part in Sigma is") {
    const int n = 2, m = 2 * n;
    LinearSubspace J = bargmann_J(n), Sg = bargmann_Sigma(n);
    LinearSubspace F = symplectic_orthogonal(J);
    Mat E = darboux_basis(Sg);
    std::mt19937_64 rng(6);
    int pos = 0, neg = 0;
    for (int t = 0; t < 50; ++t) {
        RMat X = random_normal_matrix(rng, n * 2 / 2 * 1, 2);
        RMat Y = random_normal_matrix(rng, 2, 2);
        Mat G = (X + X.transpose()).cast<cplx>() * 0.5 + I_ * (Y + Y.transpose()).cast<cplx>() * 0.5;
        if (t % 3 == 0) G += 3.0 * I_ * Mat::Identity(2, 2);
        // graph xi = G x inside Sigma, in its Darboux frame
        Mat Lb = E.leftCols(2) + E.rightCols(2) * G;
        LinearSubspace L(Lb);
        Mat Lam(2 * m, F.dim() + 2);
        Lam << F.basis, Lb;
        LinearSubspace Lambda(Lam);
        CHECK(is_lagrangian(Lambda).ok);
        const double a = lagrangian_positivity(Lambda), b = lagrangian_positivity(L);
        CHECK((a > 1e-9) == (b > 1e-9));
        (b > 1e-9 ? pos : neg)++;
    }
    CHECK(pos > 5);
    CHECK(neg > 5);
}
