#pragma once

#include <map>
#include <vector>

#include "phaselab/types.hpp"

namespace phaselab {

using Multi = std::vector<int>;

// Sparse multivariate polynomial with complex coefficients.
class Poly {
public:
    Poly() = default;
    explicit Poly(int nvars) : nvars_(nvars) {}

    static Poly constant(int nvars, cplx c);
    static Poly variable(int nvars, int k, cplx coeff = 1.0);
    // c + g.x + 1/2 x^T H x
    static Poly quadratic(const Mat& H, const Vec& g, cplx c);

    int nvars() const { return nvars_; }
    int degree() const;
    bool empty() const { return terms_.empty(); }
    const std::map<Multi, cplx>& terms() const { return terms_; }

    cplx coeff(const Multi& m) const;
    void add_term(const Multi& m, cplx c);
    void set_term(const Multi& m, cplx c);

    cplx eval(const Vec& x) const;
    cplx eval(const cplx* x) const;
    cplx eval_real(const double* x) const;

    Poly diff(int k) const;
    // keep only terms of total degree <= d (or exactly d)
    Poly truncate(int d) const;
    Poly homogeneous_part(int d) const;
    Poly prune(double tol = 0.0) const;

    // x_old = M x_new + c; result has M.cols() variables
    Poly substitute_affine(const Mat& M, const Vec& c) const;
    // embed into more variables: old variable k -> new variable map[k]
    Poly embed(int new_nvars, const std::vector<int>& map) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(cplx s) const;
    Poly& operator+=(const Poly& o);
    Poly mul_trunc(const Poly& o, int maxdeg) const;
    Poly pow_trunc(int k, int maxdeg) const;

    // max |coefficient difference|
    static double distance(const Poly& a, const Poly& b);
    double max_abs_coeff() const;

private:
    int nvars_ = 0;
    std::map<Multi, cplx> terms_;
};

inline Poly operator*(cplx s, const Poly& p) { return p * s; }

int total_degree(const Multi& m);
double factorial(int k);
double multi_factorial(const Multi& m);

}  // namespace phaselab
