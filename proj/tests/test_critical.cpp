#include "doctest.h"

#include <random>

#include "phaselab/critical.hpp"
#include "phaselab/linalg.hpp"

using namespace phaselab;

namespace {

Vec rv(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

// closed forms written in the test: Bargmann midpoint rule and the diastasis critical point
Vec bs_oracle(const Vec& a, const Vec& b) {
    Vec d = b - a, g(a.size());
    for (int j = 0; j < a.size() / 2; ++j) {
        g(2 * j) = (a(2 * j) + b(2 * j)) / 2.0 - 0.5 * I_ * d(2 * j + 1);
        g(2 * j + 1) = (a(2 * j + 1) + b(2 * j + 1)) / 2.0 + 0.5 * I_ * d(2 * j);
    }
    return g;
}

Vec fs_oracle(const Vec& a, const Vec& b) {
    const cplx za(a(0).real(), a(1).real()), zb(b(0).real(), b(1).real());
    const cplx w = std::conj(zb);
    return rv(0, 0) + (Vec(2) << (za + w) / 2.0, (za - w) / (2.0 * I_)).finished();
}

}  // namespace

TEST_CASE("gamma_c on the diagonal") {
    PhaseFunction bs = make_bargmann(1);
    Vec a = rv(0.3, -0.7);
    CriticalSolveResult r = solve_gamma_c(bs, a, a);
    CHECK(r.iterations == 0);
    CHECK((r.gamma - a).norm() == 0.0);
    CriticalSolveResult rf = solve_gamma_c(make_fubini_study(), rv(0.1, 0.2), rv(0.1, 0.2));
    CHECK(rf.iterations == 0);
    CHECK((rf.gamma - rv(0.1, 0.2)).norm() == 0.0);
}

TEST_CASE("bargmann gamma_c matches the closed form") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1, 1), d(-0.2, 0.2);
    for (int n : {1, 2}) {
        PhaseFunction bs = make_bargmann(n);
        for (int t = 0; t < 30; ++t) {
            Vec a(2 * n), b(2 * n);
            for (int k = 0; k < 2 * n; ++k) {
                a(k) = u(rng);
                b(k) = a(k) + d(rng);
            }
            CriticalSolveResult r = solve_gamma_c(bs, a, b);
            CHECK(r.iterations == 1);
            CHECK((r.gamma - bs_oracle(a, b)).norm() < 1e-13);
            CHECK((bargmann_gamma_c(a, b) - bs_oracle(a, b)).norm() < 1e-15);
            CHECK(reproducing_residual(bs, a, b) < 1e-12);
            CHECK(d_critique_residual(bs, a, b).max() < 1e-11);
            CHECK(associativity_residual(bs, a, b) < 1e-11);
        }
    }
}

TEST_CASE("fubini-study gamma_c matches the closed form") {
    PhaseFunction fs = make_fubini_study();
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-0.35, 0.35), d(-0.12, 0.12);
    for (int t = 0; t < 50; ++t) {
        Vec a = rv(u(rng), u(rng));
        Vec b = a + rv(d(rng), d(rng));
        CriticalSolveResult r = solve_gamma_c(fs, a, b);
        CHECK((r.gamma - fs_oracle(a, b)).norm() < 1e-11);
        CHECK((fubini_study_gamma_c(a, b) - fs_oracle(a, b)).norm() < 1e-15);
        CHECK(reproducing_residual(fs, a, b) < 1e-10);
        CHECK(d_critique_residual(fs, a, b).max() < 1e-9);
        CHECK(associativity_residual(fs, a, b) < 1e-9);
        // self-adjoint: gamma_c(beta, alpha) = conj(gamma_c(alpha, beta))
        CHECK((solve_gamma_c(fs, b, a).gamma - r.gamma.conjugate()).norm() < 1e-10);
    }
}

TEST_CASE("newton converges to one critical point from many starts") {
    PhaseFunction fs = make_fubini_study();
    Vec a = rv(0.2, -0.1), b = rv(0.05, 0.05);
    Vec ref = solve_gamma_c(fs, a, b).gamma;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int t = 0; t < 20; ++t) {
        SolveOptions o;
        Vec g0 = (a + b) / 2.0;
        Vec pert(2);
        do {
            pert << cplx(u(rng), u(rng)), cplx(u(rng), u(rng));
        } while (pert.norm() > 1.0);
        o.initial = Vec(g0 + 0.3 * pert);
        CHECK((solve_gamma_c(fs, a, b, o).gamma - ref).norm() < 1e-9);
    }
}

TEST_CASE("basin guard and singular Jacobian") {
    PhaseFunction fs = make_fubini_study();
    CHECK_THROWS_AS(solve_gamma_c(fs, rv(0.3, 0), rv(-0.3, 0)), Error);
    QuadraticPhase q = bargmann_quadratic(1);
    QuadraticPhase z = q;
    z.A = Mat::Zero(2, 2);
    z.C = Mat::Zero(2, 2);
    PhaseFunction pz = PhaseFunction::from_quadratic(z);
    CHECK_THROWS_AS(solve_gamma_c(pz, rv(0, 0), rv(0.1, 0)), Error);
}

TEST_CASE("cubic perturbation breaks the reproducing property at the expected scale") {
    Poly p = quadratic_to_poly(bargmann_quadratic(1));
    Poly d = Poly::variable(4, 0) - Poly::variable(4, 2);
    PhaseFunction pe = PhaseFunction::from_poly(1, p + d * d * d * cplx(1e-3));
    const double res = reproducing_residual(pe, rv(0.0, 0.0), rv(0.2, 0.0));
    CHECK(res > 1e-7);
    CHECK(res < 1e-4);
    CHECK(res > 1e-8);
}

TEST_CASE("scrambled phases satisfy the identities") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-0.2, 0.2);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int n = 1 + seed % 2;
        ScrambledPhase sp = random_quadratic_projector_phase(seed, n, Scramble::GeneralLinear);
        Vec a(2 * n), b(2 * n);
        for (int k = 0; k < 2 * n; ++k) {
            a(k) = u(rng);
            b(k) = a(k) + u(rng);
        }
        CHECK(reproducing_residual(sp.phase, a, b) < 1e-11);
        CHECK(associativity_residual(sp.phase, a, b) < 1e-10);
    }
}

TEST_CASE("value composition: exact path, newton path, associativity") {
    PhaseFunction bs = make_bargmann(1);
    Vec a = rv(0.1, 0.2), b = rv(-0.1, 0.25);
    CHECK(std::abs(compose_phases_vc(bs, bs, a, b) - bs(a, b)) < 1e-14);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        ScrambledPhase s1 = random_quadratic_projector_phase(seed, 1, Scramble::GeneralLinear);
        ScrambledPhase s2 = random_quadratic_projector_phase(seed + 100, 1, Scramble::GeneralLinear);
        cplx exact = compose_phases_vc(s1.phase, s2.phase, a, b);
        cplx newton = compose_phases_vc_newton(s1.phase, s2.phase, a, b);
        CHECK(std::abs(exact - newton) < 1e-12);
    }
    PhaseFunction fs = make_fubini_study();
    PhaseFunction ff = make_composite_phase(fs, fs);
    Vec c = rv(0.15, -0.05), e = rv(0.05, 0.02);
    CHECK(std::abs(ff(c, e) - fs(c, e)) < 1e-12);
    PhaseFunction left = make_composite_phase(ff, fs), right = make_composite_phase(fs, ff);
    CHECK(std::abs(left(c, e) - right(c, e)) < 1e-10);
    CHECK(std::abs(left(c, e) - fs(c, e)) < 1e-10);
    // composite derivatives agree with the underlying phase
    PhaseEval x = ff.eval(c, e, 2), y = fs.eval(c, e, 2);
    CHECK(max_abs(x.da - y.da) < 1e-11);
    CHECK(max_abs(x.db - y.db) < 1e-11);
    CHECK(max_abs(x.haa - y.haa) < 1e-10);
    CHECK(max_abs(x.hab - y.hab) < 1e-10);
    CHECK(max_abs(x.hbb - y.hbb) < 1e-10);
}

TEST_CASE("quadratic Taylor truncation is itself reproducing") {
    RVec z(2);
    z << -0.3, 0.2;
    DiagonalJet j = jet_at(make_fubini_study(), z, 2);
    QuadraticPhase q = QuadraticPhase::make(1, z, j.grad_u().real(), j.A(), j.B(), j.C());
    PhaseFunction p = PhaseFunction::from_quadratic(q);
    Vec a = to_complex(z) + rv(0.1, 0.0), b = to_complex(z) + rv(-0.05, 0.2);
    CHECK(reproducing_residual(p, a, b) < 1e-12);
}
