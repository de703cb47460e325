#include "doctest.h"

#include "phaselab/poly.hpp"

using namespace phaselab;

TEST_CASE("poly arithmetic and evaluation") {
    Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
    Poly p = (x + y) * (x - y);
    Vec v(2);
    v << cplx(0.3, 0.1), cplx(-1.2, 0.5);
    CHECK(std::abs(p.eval(v) - (v(0) * v(0) - v(1) * v(1))) < 1e-15);
    CHECK(p.degree() == 2);
    CHECK(p.coeff({1, 1}) == cplx(0.0));
    CHECK(p.coeff({2, 0}) == cplx(1.0));
}

TEST_CASE("poly derivative and truncation") {
    Poly x = Poly::variable(1, 0);
    Poly p = x.pow_trunc(5, 10) * cplx(3.0);
    CHECK(p.diff(0).coeff({4}) == cplx(15.0));
    CHECK(p.truncate(4).empty());
    CHECK(x.pow_trunc(5, 3).empty());
}

TEST_CASE("quadratic builder matches the matrix form") {
    Mat H(2, 2);
    H << cplx(2, 1), cplx(0.5, 0), cplx(0.5, 0), cplx(0, 3);
    Vec g(2);
    g << 1.0, cplx(0, -2);
    Poly p = Poly::quadratic(H, g, cplx(0.25));
    Vec x(2);
    x << cplx(0.7, -0.2), cplx(0.1, 0.4);
    cplx direct = 0.25 + (g.transpose() * x)(0) + 0.5 * (x.transpose() * H * x)(0);
    CHECK(std::abs(p.eval(x) - direct) < 1e-14);
}

TEST_CASE("affine substitution composes with evaluation") {
    Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
    Poly p = x * x * y + y * cplx(2.0) + Poly::constant(2, 1.0);
    Mat M(2, 3);
    M << 1.0, 2.0, 0.0, 0.0, -1.0, cplx(0, 1);
    Vec c(2);
    c << 0.5, -0.25;
    Poly q = p.substitute_affine(M, c);
    Vec z(3);
    z << 0.3, cplx(0.2, 0.1), -0.4;
    CHECK(std::abs(q.eval(z) - p.eval(Vec(M * z + c))) < 1e-14);
}

TEST_CASE("embed relabels variables") {
    Poly p = Poly::variable(2, 0) * Poly::variable(2, 1);
    Poly q = p.embed(4, {3, 1});
    Multi m{0, 1, 0, 1};
    CHECK(q.coeff(m) == cplx(1.0));
}

TEST_CASE("distance and max coefficient") {
    Poly a = Poly::variable(2, 0) + Poly::constant(2, 2.0);
    Poly b = Poly::variable(2, 1) + Poly::constant(2, 2.0);
    CHECK(Poly::distance(a, b) == doctest::Approx(1.0));
    CHECK(a.max_abs_coeff() == doctest::Approx(2.0));
}
