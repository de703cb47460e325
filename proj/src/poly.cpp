#include "phaselab/poly.hpp"

#include <algorithm>
#include <cmath>

namespace phaselab {

int total_degree(const Multi& m) {
    int d = 0;
    for (int e : m) d += e;
    return d;
}

double factorial(int k) {
    double r = 1.0;
    for (int j = 2; j <= k; ++j) r *= j;
    return r;
}

double multi_factorial(const Multi& m) {
    double r = 1.0;
    for (int e : m) r *= factorial(e);
    return r;
}

Poly Poly::constant(int nvars, cplx c) {
    Poly p(nvars);
    p.add_term(Multi(nvars, 0), c);
    return p;
}

Poly Poly::variable(int nvars, int k, cplx coeff) {
    Poly p(nvars);
    Multi m(nvars, 0);
    m[k] = 1;
    p.add_term(m, coeff);
    return p;
}

Poly Poly::quadratic(const Mat& H, const Vec& g, cplx c) {
    const int n = static_cast<int>(g.size());
    Poly p(n);
    p.add_term(Multi(n, 0), c);
    for (int i = 0; i < n; ++i) {
        Multi m(n, 0);
        m[i] = 1;
        p.add_term(m, g(i));
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            Multi m(n, 0);
            m[i] += 1;
            m[j] += 1;
            p.add_term(m, i == j ? 0.5 * H(i, i) : 0.5 * (H(i, j) + H(j, i)));
        }
    }
    return p.prune();
}

int Poly::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
    return d;
}

cplx Poly::coeff(const Multi& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? cplx(0.0) : it->second;
}

void Poly::add_term(const Multi& m, cplx c) {
    if (static_cast<int>(m.size()) != nvars_) throw Error("poly: multi-index size mismatch");
    if (c == cplx(0.0)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == cplx(0.0)) terms_.erase(it);
    }
}

void Poly::set_term(const Multi& m, cplx c) {
    if (c == cplx(0.0))
        terms_.erase(m);
    else
        terms_[m] = c;
}

cplx Poly::eval(const Vec& x) const { return eval(x.data()); }

cplx Poly::eval(const cplx* x) const {
    cplx s = 0.0;
    for (const auto& [m, c] : terms_) {
        cplx t = c;
        for (int k = 0; k < nvars_; ++k)
            for (int e = 0; e < m[k]; ++e) t *= x[k];
        s += t;
    }
    return s;
}

cplx Poly::eval_real(const double* x) const {
    cplx s = 0.0;
    for (const auto& [m, c] : terms_) {
        double t = 1.0;
        for (int k = 0; k < nvars_; ++k)
            for (int e = 0; e < m[k]; ++e) t *= x[k];
        s += c * t;
    }
    return s;
}

Poly Poly::diff(int k) const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_) {
        if (m[k] == 0) continue;
        Multi mm = m;
        mm[k] -= 1;
        r.add_term(mm, c * static_cast<double>(m[k]));
    }
    return r;
}

Poly Poly::truncate(int d) const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_)
        if (total_degree(m) <= d) r.terms_.emplace(m, c);
    return r;
}

Poly Poly::homogeneous_part(int d) const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_)
        if (total_degree(m) == d) r.terms_.emplace(m, c);
    return r;
}

Poly Poly::prune(double tol) const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_)
        if (std::abs(c) > tol) r.terms_.emplace(m, c);
    return r;
}

Poly Poly::substitute_affine(const Mat& M, const Vec& c) const {
    const int nn = static_cast<int>(M.cols());
    if (M.rows() != nvars_ || c.size() != nvars_) throw Error("poly: affine substitution shape mismatch");
    std::vector<Poly> lin(nvars_, Poly(nn));
    for (int k = 0; k < nvars_; ++k) {
        lin[k].add_term(Multi(nn, 0), c(k));
        for (int j = 0; j < nn; ++j) {
            Multi m(nn, 0);
            m[j] = 1;
            lin[k].add_term(m, M(k, j));
        }
    }
    // cache powers of each substituted variable
    const int deg = std::max(degree(), 0);
    std::vector<std::vector<Poly>> pw(nvars_);
    for (int k = 0; k < nvars_; ++k) {
        pw[k].push_back(Poly::constant(nn, 1.0));
        for (int e = 1; e <= deg; ++e) pw[k].push_back(pw[k].back() * lin[k]);
    }
    Poly r(nn);
    for (const auto& [m, cf] : terms_) {
        Poly t = Poly::constant(nn, cf);
        for (int k = 0; k < nvars_; ++k)
            if (m[k] > 0) t = t * pw[k][m[k]];
        r += t;
    }
    return r;
}

Poly Poly::embed(int new_nvars, const std::vector<int>& map) const {
    Poly r(new_nvars);
    for (const auto& [m, c] : terms_) {
        Multi mm(new_nvars, 0);
        for (int k = 0; k < nvars_; ++k) mm[map[k]] += m[k];
        r.add_term(mm, c);
    }
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    r += o;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (terms_.empty() && nvars_ == 0) nvars_ = o.nvars_;
    if (o.nvars_ != nvars_ && !o.terms_.empty()) throw Error("poly: variable count mismatch");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly Poly::operator-() const { return *this * cplx(-1.0); }

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(cplx s) const {
    Poly r(nvars_);
    if (s == cplx(0.0)) return r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
    return r;
}

Poly Poly::operator*(const Poly& o) const { return mul_trunc(o, 1 << 20); }

Poly Poly::mul_trunc(const Poly& o, int maxdeg) const {
    if (o.nvars_ != nvars_) throw Error("poly: variable count mismatch");
    Poly r(nvars_);
    Multi m(nvars_);
    for (const auto& [ma, ca] : terms_) {
        const int da = total_degree(ma);
        for (const auto& [mb, cb] : o.terms_) {
            if (da + total_degree(mb) > maxdeg) continue;
            for (int k = 0; k < nvars_; ++k) m[k] = ma[k] + mb[k];
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

Poly Poly::pow_trunc(int k, int maxdeg) const {
    Poly r = Poly::constant(nvars_, 1.0);
    for (int j = 0; j < k; ++j) r = r.mul_trunc(*this, maxdeg);
    return r;
}

double Poly::distance(const Poly& a, const Poly& b) {
    double d = 0.0;
    for (const auto& [m, c] : a.terms_) d = std::max(d, std::abs(c - b.coeff(m)));
    for (const auto& [m, c] : b.terms_)
        if (a.terms_.find(m) == a.terms_.end()) d = std::max(d, std::abs(c));
    return d;
}

double Poly::max_abs_coeff() const {
    double d = 0.0;
    for (const auto& [m, c] : terms_) d = std::max(d, std::abs(c));
    return d;
}

}  // namespace phaselab
