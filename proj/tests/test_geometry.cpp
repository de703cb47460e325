#include "doctest.h"

#include <random>

#include "phaselab/geometry.hpp"
#include "phaselab/linalg.hpp"

using namespace phaselab;

namespace {
Mat J0() {
    Mat j(2, 2);
    j << 0.0, -1.0, 1.0, 0.0;
    return j;
}
}  // namespace

TEST_CASE("bargmann kahler data") {
    KahlerData k = kahler_triple(jet_at(make_bargmann(1), RVec::Zero(2), 2));
    RMat R(2, 2);
    R << 0.0, 1.0, -1.0, 0.0;
    CHECK(max_abs(k.D - Mat::Identity(2, 2)) < 1e-15);
    CHECK((k.R - R).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(max_abs(k.J - J0()) < 1e-15);
    CHECK(max_abs(k.J * k.J + Mat::Identity(2, 2)) < 1e-15);
    CHECK(max_abs(k.Jt - J0()) < 1e-15);
    CHECK(k.P.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("fubini-study at the origin has the bargmann data") {
    KahlerData kf = kahler_triple(jet_at(make_fubini_study(), RVec::Zero(2), 3));
    KahlerData kb = kahler_triple(jet_at(make_bargmann(1), RVec::Zero(2), 2));
    CHECK(max_abs(kf.D - kb.D) < 1e-15);
    CHECK(max_abs(kf.J - kb.J) < 1e-15);
    CHECK((kf.R - kb.R).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("model quadratic round trip recovers L and the antisymmetric part") {
    // complex L with real determinant keeps R = -L Jt L real
    Mat L(2, 2);
    L << cplx(1.2, 0.1), 0.3, 0.3, cplx(1.2, -0.1);
    PhaseFunction p = make_model_quadratic(RVec::Zero(2), L, J0());
    KahlerData k = kahler_triple(jet_at(p, RVec::Zero(2), 2));
    CHECK(max_abs(k.L - L) < 1e-12);
    CHECK(max_abs(k.Jt - J0()) < 1e-12);
    KahlerData k1 = kahler_triple(jet_at(make_model_quadratic(RVec::Zero(2), Mat::Identity(2, 2), J0()), RVec::Zero(2), 2));
    CHECK(max_abs(k1.L - Mat::Identity(2, 2)) < 1e-15);
    CHECK(max_abs(k1.Jt - J0()) < 1e-15);

    // n = 2 with a rotated copy of the standard structure
    Mat Jt4 = Mat::Zero(4, 4);
    Jt4.block(0, 0, 2, 2) = J0();
    Jt4.block(2, 2, 2, 2) = J0();
    Mat Q = Mat::Identity(4, 4);
    const double c = std::cos(0.3), s = std::sin(0.3);
    Q(0, 0) = c;
    Q(0, 2) = s;
    Q(2, 0) = -s;
    Q(2, 2) = c;
    CHECK(max_abs(Q.transpose() * Q - Mat::Identity(4, 4)) < 1e-14);
    Mat Jq = Q.transpose() * Jt4 * Q;
    Mat L4 = Mat::Identity(4, 4);
    L4(1, 3) = L4(3, 1) = 0.2;
    PhaseFunction p4 = make_model_quadratic(RVec::Zero(4), L4, Jq);
    KahlerData k4 = kahler_triple(jet_at(p4, RVec::Zero(4), 2));
    CHECK(max_abs(k4.L - L4) < 1e-12);
    CHECK(max_abs(k4.Jt - Jq) < 1e-12);
    CHECK(check_projector_jet(jet_at(p4, RVec::Zero(4), 2), 1e-10).all_pass());
}

TEST_CASE("check_projector_jet on models, scrambles and perturbations") {
    for (int n : {1, 2}) {
        Report r = check_projector_jet(jet_at(make_bargmann(n), RVec::Constant(2 * n, 0.3), 2), 1e-12);
        CHECK(r.all_pass());
    }
    RVec z(2);
    z << 0.3, -0.4;
    CHECK(check_projector_jet(jet_at(make_fubini_study(), z, 4), 1e-12).all_pass());
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const int n = 1 + seed % 2;
        ScrambledPhase sp = random_quadratic_projector_phase(seed, n, Scramble::GeneralLinear);
        DiagonalJet j = jet_at(sp.phase, RVec::Constant(2 * n, 0.1), 2);
        Report r = check_projector_jet(j, 1e-10);
        CHECK(r.all_pass());
        KahlerData k = kahler_triple(j);
        KahlerData kb = kahler_triple(jet_at(make_bargmann(n), RVec::Zero(2 * n), 2));
        const Mat S = sp.S.cast<cplx>();
        CHECK(max_abs(k.J - S.inverse() * kb.J * S) < 1e-10);
    }
    const double eps = 1e-2;
    QuadraticPhase qp = perturb_antisymmetric(bargmann_quadratic(1), eps);
    Report rp = check_projector_jet(DiagonalJet::from_quadratic(qp));
    CHECK_FALSE(rp.all_pass());
    CHECK(rp.at("J_squared").residual >= eps / 10);
    CHECK(rp.at("zero_sum").pass);
    // orientation reversal fails Re D > 0
    QuadraticPhase neg = bargmann_quadratic(1);
    neg.A = -neg.A;
    neg.B = -neg.B;
    neg.C = -neg.C;
    Report rn = check_projector_jet(DiagonalJet::from_quadratic(neg));
    CHECK_FALSE(rn.at("re_D_min_eig").pass);
}

TEST_CASE("kahler_triple rejects non-projector input") {
    QuadraticPhase q = bargmann_quadratic(1);
    q.B(0, 1) += cplx(0, 0.1);
    q.B(1, 0) -= cplx(0, 0.1);
    CHECK_THROWS_AS(kahler_triple(DiagonalJet::from_quadratic(q)), Error);
}

TEST_CASE("rank of the cross Hessian") {
    PhaseFunction bs = make_bargmann(1);
    Vec a(2), b(2);
    a << 0.1, 0.2;
    CHECK(rank_cross_hessian(bs, a, a) == 1);
    b << 0.1 + 0.3, 0.2;
    CHECK(rank_cross_hessian(bs, a, b) == 1);
    PhaseFunction fs = make_fubini_study();
    a << 0.2, 0.0;
    b << 0.0, 0.1;
    CHECK(rank_cross_hessian(fs, a, b) == 1);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-0.4, 0.4), du(-0.1, 0.1);
    for (int t = 0; t < 100; ++t) {
        a << u(rng), u(rng);
        b << a(0) + du(rng), a(1) + du(rng);
        CHECK(rank_cross_hessian(fs, a, b) == 1);
        CHECK(rank_cross_hessian(make_bargmann(2), Vec::Constant(4, u(rng)), Vec::Constant(4, u(rng))) == 2);
    }
}

TEST_CASE("tangent models") {
    DiagonalJet jb = jet_at(make_bargmann(1), RVec::Zero(2), 2);
    TangentModel t = tangent_models(jb);
    CHECK(check_tangent_models(t, 1, jb).all_pass());
    // leaf direction u with B^T u = 0 is proportional to (1, i)
    Vec f = t.F.basis.col(0);
    CHECK(std::abs(f(1) - I_ * f(0)) < 1e-14);
    // Sigma = graph of d(theta) = A + B = [[0,-1],[1,0]] for bargmann
    Mat s(4, 2);
    s << Mat::Identity(2, 2), J0();
    CHECK(subspace_distance(t.Sigma, LinearSubspace(s)) < 1e-14);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const int n = 1 + seed % 2;
        ScrambledPhase sp = random_quadratic_projector_phase(seed, n, Scramble::GeneralLinear);
        DiagonalJet j = jet_at(sp.phase, RVec::Constant(2 * n, -0.2), 2);
        TangentModel tm = tangent_models(j);
        Report r = check_tangent_models(tm, n, j);
        CHECK(r.all_pass());
        CHECK(is_involutive(tm.J).ok);
        // Sigma is the diagonal image of the graph of theta: its covector part is real
        CHECK(max_abs(imag_part(j.A() + j.B())) < 1e-12);
    }
}

TEST_CASE("positivity of the leaves") {
    Report r = positivity_leaf(jet_at(make_bargmann(1), RVec::Zero(2), 2));
    CHECK(r.at("leaf_J").residual == doctest::Approx(2.0));
    CHECK(r.all_pass());
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const int n = 1 + seed % 2;
        ScrambledPhase sp = random_quadratic_projector_phase(seed, n, Scramble::GeneralLinear);
        CHECK(positivity_leaf(jet_at(sp.phase, RVec::Zero(2 * n), 2)).all_pass());
    }
    RVec z(2);
    z << 0.2, 0.3;
    CHECK(positivity_leaf(jet_at(make_fubini_study(), z, 2)).all_pass());
}

TEST_CASE("order-2 truncation of a projector phase is a projector jet") {
    RVec z(2);
    z << -0.35, 0.25;
    DiagonalJet j = jet_at(make_fubini_study(), z, 4);
    DiagonalJet j2 = j;
    j2.coeffs = j.coeffs.truncate(2);
    j2.order = 2;
    CHECK(check_projector_jet(j2, 1e-12).all_pass());
}
