#include "phaselab/operator_num.hpp"

#include <algorithm>
#include <cmath>

#include "phaselab/linalg.hpp"

namespace phaselab {

// ---------------------------------------------------------------- grids

Grid Grid::centered(const RVec& center, double half_width, double spacing) {
    if (!(spacing > 0) || !(half_width > 0)) throw Error("grid: spacing and half-width must be positive");
    Grid g;
    g.dim = static_cast<int>(center.size());
    g.spacing = spacing;
    const int half = static_cast<int>(std::ceil(half_width / spacing - 1e-9));
    g.lo = center - RVec::Constant(g.dim, half * spacing);
    g.count.assign(g.dim, 2 * half + 1);
    return g;
}

long Grid::size() const {
    long s = 1;
    for (int c : count) s *= c;
    return s;
}

void Grid::point(long idx, double* x) const {
    // last coordinate varies fastest
    for (int d = dim - 1; d >= 0; --d) {
        x[d] = lo(d) + spacing * static_cast<double>(idx % count[d]);
        idx /= count[d];
    }
}

GridFunction GridFunction::zeros(const Grid& g) {
    GridFunction f;
    f.grid = g;
    f.values.assign(g.size(), 0.0);
    return f;
}

GridFunction GridFunction::sample(const Grid& g, const std::function<cplx(const double*)>& fn) {
    GridFunction f = zeros(g);
    std::vector<double> x(g.dim);
    for (long i = 0; i < g.size(); ++i) {
        g.point(i, x.data());
        f.values[i] = fn(x.data());
    }
    return f;
}

double GridFunction::norm() const {
    double s = 0.0;
    for (const cplx& v : values) s += std::norm(v);
    return std::sqrt(s * grid.cell_volume());
}

cplx GridFunction::inner(const GridFunction& o) const {
    if (o.values.size() != values.size()) throw Error("grid function: size mismatch");
    cplx s = 0.0;
    for (size_t i = 0; i < values.size(); ++i) s += std::conj(values[i]) * o.values[i];
    return s * grid.cell_volume();
}

GridFunction GridFunction::operator+(const GridFunction& o) const {
    if (o.values.size() != values.size()) throw Error("grid function: size mismatch");
    GridFunction r = *this;
    for (size_t i = 0; i < values.size(); ++i) r.values[i] += o.values[i];
    return r;
}

GridFunction GridFunction::operator-(const GridFunction& o) const { return *this + o * cplx(-1.0); }

GridFunction GridFunction::operator*(cplx s) const {
    GridFunction r = *this;
    for (cplx& v : r.values) v *= s;
    return r;
}

// ---------------------------------------------------------------- kernels

cplx QuadKernel::operator()(const double* x, const double* y) const {
    cplx v = core(x, y);
    if (left) v *= left(x);
    if (right) v *= right(y);
    return v;
}

QuadKernel QuadKernel::from_gaussian(const GaussianKernel& K, double window) {
    K.validate(12);
    QuadKernel q;
    q.dout = K.dout;
    q.din = K.din;
    q.h = K.h;
    q.window = window;
    const int a = K.dout, b = K.din;
    const Mat H11 = K.phase.H.topLeftCorner(a, a), H12 = K.phase.H.topRightCorner(a, b),
              H22 = K.phase.H.bottomRightCorner(b, b);
    const Vec g1 = K.phase.g.head(a), g2 = K.phase.g.tail(b);
    const cplx c = K.phase.c;
    const double h = K.h;
    const cplx pref = K.prefactor();
    q.left = [H11, g1, c, h, a](const double* x) {
        cplx s = c;
        for (int i = 0; i < a; ++i) {
            s += g1(i) * x[i];
            for (int j = 0; j < a; ++j) s += 0.5 * H11(i, j) * x[i] * x[j];
        }
        return std::exp(I_ * s / h);
    };
    q.right = [H22, g2, h, b](const double* y) {
        cplx s = 0.0;
        for (int i = 0; i < b; ++i) {
            s += g2(i) * y[i];
            for (int j = 0; j < b; ++j) s += 0.5 * H22(i, j) * y[i] * y[j];
        }
        return std::exp(I_ * s / h);
    };
    const bool const_amp = K.amp.degree() <= 0;
    const cplx a0 = K.amp.coeff(Multi(a + b, 0));
    const Poly amp = K.amp;
    q.core = [H12, h, a, b, pref, const_amp, a0, amp](const double* x, const double* y) {
        cplx s = 0.0;
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < b; ++j) s += H12(i, j) * x[i] * y[j];
        cplx v = pref * std::exp(I_ * s / h);
        if (const_amp) return v * a0;
        std::vector<double> xy(a + b);
        std::copy(x, x + a, xy.begin());
        std::copy(y, y + b, xy.begin() + a);
        return v * amp.eval_real(xy.data());
    };
    return q;
}

QuadKernel QuadKernel::scaled(cplx s) const {
    QuadKernel q = *this;
    auto c = core;
    q.core = [c, s](const double* x, const double* y) { return s * c(x, y); };
    return q;
}

double default_window(double h, double factor) {
    return factor * std::sqrt(h * std::log(1.0 / std::numeric_limits<double>::epsilon()));
}

double default_spacing(double h) { return std::sqrt(h) / 4.0; }

ApplyResult apply_kernel_quadrature(const QuadKernel& K, const GridFunction& f, const Grid& out_grid) {
    const Grid& in = f.grid;
    if (in.dim != K.din || out_grid.dim != K.dout) throw Error("apply_kernel_quadrature: grid dimensions do not match kernel");
    if (!K.core) throw Error("apply_kernel_quadrature: empty kernel");
    const long nin = in.size(), nout = out_grid.size();
    const int din = in.dim;
    // input points and right factor times f, computed once
    std::vector<double> ypts(nin * din);
    std::vector<cplx> rf(nin);
    for (long j = 0; j < nin; ++j) {
        in.point(j, &ypts[j * din]);
        rf[j] = f.values[j];
        if (K.right && rf[j] != 0.0) rf[j] *= K.right(&ypts[j * din]);
    }
    const bool windowed = std::isfinite(K.window);
    const bool same_layout = din == K.dout;
    ApplyResult res;
    res.out = GridFunction::zeros(out_grid);
    const double dv = in.cell_volume();
    double tb = 0.0;
#pragma omp parallel for schedule(static) reduction(max : tb)
    for (long i = 0; i < nout; ++i) {
        std::vector<double> x(out_grid.dim);
        out_grid.point(i, x.data());
        // index box of input points within the window (only meaningful when dimensions agree)
        std::vector<int> lo(din, 0), hi(din);
        for (int d = 0; d < din; ++d) hi[d] = in.count[d] - 1;
        if (windowed && same_layout) {
            for (int d = 0; d < din; ++d) {
                lo[d] = std::max(0, static_cast<int>(std::ceil((x[d] - K.window - in.lo(d)) / in.spacing - 1e-9)));
                hi[d] = std::min(in.count[d] - 1,
                                 static_cast<int>(std::floor((x[d] + K.window - in.lo(d)) / in.spacing + 1e-9)));
            }
        }
        bool empty = false;
        for (int d = 0; d < din; ++d) empty = empty || lo[d] > hi[d];
        cplx acc = 0.0;
        double shell_max = 0.0;
        if (!empty) {
            std::vector<int> idx = lo;
            for (;;) {
                long j = 0;
                for (int d = 0; d < din; ++d) j = j * in.count[d] + idx[d];
                if (rf[j] != 0.0) {
                    const double* y = &ypts[j * din];
                    const cplx term = K.core(x.data(), y) * rf[j];
                    acc += term;
                    if (windowed && same_layout) {
                        bool shell = false;
                        for (int d = 0; d < din; ++d) shell = shell || std::abs(x[d] - y[d]) > K.window - in.spacing;
                        if (shell) shell_max = std::max(shell_max, std::abs(term));
                    }
                }
                int d = din - 1;
                while (d >= 0 && idx[d] == hi[d]) {
                    idx[d] = lo[d];
                    --d;
                }
                if (d < 0) break;
                ++idx[d];
            }
        }
        cplx v = acc * dv;
        double lw = 1.0;
        if (K.left) {
            const cplx l = K.left(x.data());
            v *= l;
            lw = std::abs(l);
        }
        res.out.values[i] = v;
        tb = std::max(tb, shell_max * lw);
    }
    res.truncation_bound = tb;
    return res;
}

GridFunction apply_kernel(const QuadKernel& K, const GridFunction& f) {
    return apply_kernel_quadrature(K, f, f.grid).out;
}

double idempotence_residual(const QuadKernel& K, const GridFunction& f) {
    GridFunction p1 = apply_kernel(K, f);
    GridFunction p2 = apply_kernel(K, p1);
    const double n1 = p1.norm();
    if (n1 == 0.0) throw Error("idempotence_residual: P f vanishes on the grid");
    return (p2 - p1).norm() / n1;
}

// ---------------------------------------------------------------- packets

cplx WavePacket::operator()(const double* x) const {
    return std::exp(I_ * S.eval_real(x) / h) * sigma.eval_real(x);
}

GridFunction WavePacket::sample(const Grid& g) const {
    if (g.dim != dim) throw Error("wave packet: grid dimension mismatch");
    return GridFunction::sample(g, [this](const double* x) { return (*this)(x); });
}

WavePacket coherent_state(const RVec& x0, const RVec& xi0, double h) {
    const int d = static_cast<int>(x0.size());
    if (xi0.size() != d) throw Error("coherent_state: x0 and xi0 sizes differ");
    WavePacket w;
    w.dim = d;
    w.h = h;
    w.x0 = x0;
    const Mat H = I_ * Mat::Identity(d, d);
    const Vec g = to_complex(xi0) - H * to_complex(x0);
    const cplx c = -(xi0.dot(x0)) + 0.5 * (to_complex(x0).transpose() * H * to_complex(x0))(0);
    w.S = Poly::quadratic(H, g, c);
    w.sigma = Poly::constant(d, 1.0);
    w.ball_center = xi0;
    w.ball_radius = 1.0;
    return w;
}

Report packet_membership_check(const WavePacket& f, PacketSide side, const Grid& g, const QuadraticPhase* geometry,
                               double* fitted_C) {
    Report r;
    const int d = f.dim;
    const Vec x0 = to_complex(f.x0);
    const double scale = std::max(1.0, f.S.max_abs_coeff());
    r.add("imS_at_real_point", std::abs(f.S.eval(x0).imag()), 1e-9 * scale);
    Vec grad(d);
    for (int k = 0; k < d; ++k) grad(k) = f.S.diff(k).eval(x0);
    r.add("dS_imag", imag_part(grad).norm(), 1e-9 * scale);
    const RVec dS = grad.real();
    double out = 0.0;
    if (f.ball_center.size() == d) out = std::max(0.0, (dS - f.ball_center).norm() - f.ball_radius);
    r.add("dS_in_ball", out, 1e-12);
    double lower = std::numeric_limits<double>::infinity();
    std::vector<double> x(d);
    for (long i = 0; i < g.size(); ++i) {
        g.point(i, x.data());
        double r2 = 0.0;
        for (int k = 0; k < d; ++k) r2 += (x[k] - f.x0(k)) * (x[k] - f.x0(k));
        if (r2 < 0.25 * g.spacing * g.spacing) continue;
        lower = std::min(lower, f.S.eval_real(x.data()).imag() / r2);
    }
    r.add_lower("imS_lower_bound", lower, 0.0);
    if (fitted_C) *fitted_C = lower > 0 ? 1.0 / lower : std::numeric_limits<double>::infinity();
    if (side == PacketSide::Total) {
        if (d % 2) throw Error("packet_membership_check: total-space packet needs even dimension");
        QuadraticPhase flat;
        if (!geometry) {
            flat = fbi_flat_phase(d / 2);
            geometry = &flat;
        }
        if (geometry->dim() != d) throw Error("packet_membership_check: geometry dimension mismatch");
        const RVec theta = geometry->theta + real_of(geometry->A + geometry->B) * (f.x0 - geometry->alpha0);
        r.add("Sigma_R", (dS - theta).norm(), 1e-8 * scale);
    }
    return r;
}

WavePacket fbi_transform_packet(const FbiPair& p, const WavePacket& f) {
    const int n = p.n, m = 2 * n;
    if (f.dim != n) throw Error("fbi_transform_packet: packet must live on the base");
    if (f.S.degree() > 2) throw Error("fbi_transform_packet: packet phase must be quadratic");
    const double h = f.h;
    const double c = 1.0 / (std::pow(2.0, 0.5 * n) * std::pow(h * kPi, 0.75 * n));
    GaussianKernel T;
    T.dout = m, T.din = n, T.h = h;
    T.phase.d1 = m, T.phase.d2 = n, T.phase.H = p.H, T.phase.g = Vec::Zero(3 * n), T.phase.c = 0.0;
    T.amp = Poly::constant(3 * n, c * std::pow(2.0 * kPi * h, 0.5 * n));
    return kernel_as_packet(compose_kernels_exact(T, packet_as_kernel(f)));
}

GaussianKernel packet_as_kernel(const WavePacket& f) {
    if (f.S.degree() > 2) throw Error("packet_as_kernel: packet phase must be quadratic");
    const int n = f.dim;
    GaussianKernel F;
    F.dout = n, F.din = 0, F.h = f.h;
    F.phase.d1 = n, F.phase.d2 = 0;
    F.phase.H = Mat::Zero(n, n);
    F.phase.g = Vec::Zero(n);
    const Vec z = Vec::Zero(n);
    F.phase.c = f.S.eval(z);
    for (int i = 0; i < n; ++i) {
        F.phase.g(i) = f.S.diff(i).eval(z);
        for (int j = 0; j < n; ++j) F.phase.H(i, j) = f.S.diff(i).diff(j).eval(z);
    }
    F.amp = f.sigma;
    return F;
}

WavePacket kernel_as_packet(const GaussianKernel& K) {
    if (K.din != 0) throw Error("kernel_as_packet: kernel has input variables");
    WavePacket out;
    out.dim = K.dout;
    out.h = K.h;
    out.S = Poly::quadratic(K.phase.H, K.phase.g, K.phase.c);
    out.sigma = K.amp;
    const RMat Y = K.phase.H.imag();
    const RVec yg = K.phase.g.imag();
    out.x0 = -Y.completeOrthogonalDecomposition().solve(yg);
    Vec grad = K.phase.g + K.phase.H * out.x0.cast<cplx>();
    out.ball_center = grad.real();
    out.ball_radius = std::numeric_limits<double>::infinity();
    return out;
}

// ---------------------------------------------------------------- Fubini-Study family

namespace {

int integer_k(double h) {
    const double k = 1.0 / h;
    const int ki = static_cast<int>(std::lround(k));
    if (std::abs(k - ki) > 1e-9 * k || ki < 3)
        throw Error("fubini_study_kernel: 1/h must be an integer >= 3");
    return ki;
}

cplx ipow(cplx b, int e) {
    cplx r = 1.0;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

}  // namespace

Poly fubini_study_amplitude_jet(const RVec& alpha0, int order) {
    const cplx z0(alpha0(0), alpha0(1));
    // z = z0 + u1 + i u2, conj w = conj z0 + v1 - i v2
    Poly z = Poly::constant(4, z0) + Poly::variable(4, 0) + Poly::variable(4, 1, I_);
    Poly wb = Poly::constant(4, std::conj(z0)) + Poly::variable(4, 2) + Poly::variable(4, 3, -I_);
    Poly X = Poly::constant(4, 1.0) + z.mul_trunc(wb, order);
    return series_pow(X, -2.0, order) * cplx(2.0);
}

double fubini_study_l1(const RVec& alpha0) {
    const cplx c1 = self_composition_c1(make_fubini_study(), fubini_study_amplitude_jet(alpha0, 4), alpha0);
    if (std::abs(c1.imag()) > 1e-8 * std::max(1.0, std::abs(c1)))
        throw Error("fubini_study_l1: first-order coefficient is not real");
    return -c1.real();
}

QuadKernel fubini_study_kernel(double h, int order) {
    const int k = integer_k(h);
    if (order < 0 || order > 1) throw Error("fubini_study_kernel: order must be 0 or 1");
    const double l1 = order == 1 ? fubini_study_l1(RVec::Zero(2)) : 0.0;
    // (2 pi h)^{-1} * 2 = 1/(pi h)
    const double pref = std::exp(h * l1) / (kPi * h);
    QuadKernel q;
    q.dout = q.din = 2;
    q.h = h;
    q.core = [k, pref](const double* a, const double* b) {
        const cplx X = 1.0 + cplx(a[0], a[1]) * cplx(b[0], -b[1]);
        return pref * ipow(X, k - 2);
    };
    auto w = [k](const double* a) { return cplx(std::exp(-0.5 * k * std::log1p(a[0] * a[0] + a[1] * a[1]))); };
    q.left = w;
    q.right = w;
    return q;
}

SweepSetup fubini_study_sweep_setup(double h, double spacing_factor) {
    const int k = integer_k(h);
    // squared tail of (1+|z|^2)^{-k/2} beyond R relative to the total is (1+R^2)^{1-k}
    const double tail_R = std::sqrt(std::pow(1e-7, -1.0 / (k - 1)) - 1.0);
    const double gauss_R = std::sqrt(60.0 * h);
    SweepSetup s;
    s.box_half_width = std::max(tail_R, gauss_R);
    s.spacing = spacing_factor * std::sqrt(h);
    s.grid = Grid::centered(RVec::Zero(2), s.box_half_width, s.spacing);
    return s;
}

double fubini_study_defect(double h, int order, double spacing_factor) {
    SweepSetup s = fubini_study_sweep_setup(h, spacing_factor);
    WavePacket f = coherent_state(RVec::Zero(2), RVec::Zero(2), h);
    return idempotence_residual(fubini_study_kernel(h, order), f.sample(s.grid));
}

SweepResult h_sweep_decay(const std::function<double(double)>& defect_at, const std::vector<double>& hs,
                          double floor_tol) {
    if (hs.size() < 4) throw Error("h_sweep_decay: need at least 4 values of h");
    SweepResult r;
    r.hs = hs;
    for (double h : hs) r.defects.push_back(defect_at(h));
    double top = 0.0;
    for (double d : r.defects) top = std::max(top, d);
    if (top < floor_tol) {
        r.regime = "floor";
        return r;
    }
    auto fit = [&](const std::function<double(double)>& xf, double& slope) {
        const int N = static_cast<int>(hs.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int i = 0; i < N; ++i) {
            const double x = xf(hs[i]), y = std::log(r.defects[i]);
            sx += x, sy += y, sxx += x * x, sxy += x * y;
        }
        slope = (N * sxy - sx * sy) / (N * sxx - sx * sx);
        const double icpt = (sy - slope * sx) / N;
        double ss = 0;
        for (int i = 0; i < N; ++i) {
            const double e = std::log(r.defects[i]) - icpt - slope * xf(hs[i]);
            ss += e * e;
        }
        return ss;
    };
    const double ss_poly = fit([](double h) { return std::log(h); }, r.slope_loglog);
    const double ss_exp = fit([](double h) { return 1.0 / h; }, r.slope_inv_h);
    r.regime = ss_poly <= ss_exp ? "polynomial" : "exponential";
    return r;
}

// ---------------------------------------------------------------- FBI composition

FbiComparison fbi_compose_numeric(const FbiPair& p, const WavePacket& f, double h) {
    if (p.n != 1) throw Error("fbi_compose_numeric: only n = 1 is supported");
    if (f.dim != 1) throw Error("fbi_compose_numeric: packet must live on R");
    WavePacket fh = f;
    fh.h = h;
    const double c = 1.0 / (std::sqrt(2.0) * std::pow(h * kPi, 0.75));
    const double R = std::sqrt(80.0 * h), s = std::sqrt(h) / 6.0;
    Grid gx = Grid::centered(f.x0, R, s);
    // T f concentrates at the real point of the exact transform
    WavePacket tf = fbi_transform_packet(p, fh);
    Grid ga = Grid::centered(tf.x0, R, s);
    QuadKernel T;
    T.dout = 2, T.din = 1, T.h = h;
    const Mat H = p.H, Hs = p.Hs;
    T.core = [H, c, h](const double* a, const double* x) {
        Vec v(3);
        v << a[0], a[1], x[0];
        return c * std::exp(I_ * 0.5 * (v.transpose() * H * v)(0) / h);
    };
    QuadKernel S;
    S.dout = 1, S.din = 2, S.h = h;
    S.core = [Hs, c, h](const double* x, const double* b) {
        Vec v(3);
        v << x[0], b[0], b[1];
        return c * std::exp(I_ * 0.5 * (v.transpose() * Hs * v)(0) / h);
    };
    GridFunction f0 = fh.sample(gx);
    GridFunction Tf = apply_kernel_quadrature(T, f0, ga).out;
    GridFunction STf = apply_kernel_quadrature(S, Tf, gx).out;
    FbiComparison out;
    out.sigma = fbi_density_sigma(p);
    out.norm_f = f0.norm();
    if (out.norm_f == 0.0) {
        // zero input maps to zero on both sides
        if (STf.norm() != 0.0) throw Error("fbi_compose_numeric: nonzero image of the zero packet");
        return out;
    }
    GridFunction sf = f0 * out.sigma;
    out.rel_diff_sigma = (STf - sf).norm() / sf.norm();
    out.rel_diff_one = (STf - f0).norm() / out.norm_f;
    return out;
}

}  // namespace phaselab
