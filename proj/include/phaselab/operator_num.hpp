#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "phaselab/gauss_calc.hpp"
#include "phaselab/report.hpp"

namespace phaselab {

// Axis-aligned lattice lo + spacing * index, index in [0, count).
struct Grid {
    int dim = 0;
    RVec lo;
    double spacing = 0.0;
    std::vector<int> count;

    static Grid centered(const RVec& center, double half_width, double spacing);
    long size() const;
    void point(long idx, double* x) const;
    double cell_volume() const { return std::pow(spacing, dim); }
};

struct GridFunction {
    Grid grid;
    std::vector<cplx> values;

    static GridFunction zeros(const Grid& g);
    static GridFunction sample(const Grid& g, const std::function<cplx(const double*)>& f);
    double norm() const;  // grid-weighted l2
    cplx inner(const GridFunction& o) const;  // sum conj(this) * o * dV
    GridFunction operator+(const GridFunction& o) const;
    GridFunction operator-(const GridFunction& o) const;
    GridFunction operator*(cplx s) const;
};

// K(x, y) = left(x) core(x, y) right(y); empty left/right mean 1. The prefactor belongs to core.
// Contributions with |x - y|_inf > window are dropped.
struct QuadKernel {
    int dout = 0, din = 0;
    double h = 1.0;
    std::function<cplx(const double*, const double*)> core;
    std::function<cplx(const double*)> left, right;
    double window = std::numeric_limits<double>::infinity();

    cplx operator()(const double* x, const double* y) const;
    static QuadKernel from_gaussian(const GaussianKernel& K, double window = std::numeric_limits<double>::infinity());
    QuadKernel scaled(cplx s) const;
};

// window = factor * sqrt(h ln(1/eps_mach))
double default_window(double h, double factor = 3.0);
double default_spacing(double h);

struct ApplyResult {
    GridFunction out;
    double truncation_bound = 0.0;  // max |K(x,y) f(y)| on the outermost window shell
};
// Trapezoid sum over input lattice points inside the window, fixed order per output point.
ApplyResult apply_kernel_quadrature(const QuadKernel& K, const GridFunction& f, const Grid& out_grid);
GridFunction apply_kernel(const QuadKernel& K, const GridFunction& f);

// ||P^2 f - P f|| / ||P f||
double idempotence_residual(const QuadKernel& K, const GridFunction& f);

// exp(i S(x)/h) sigma(x); S, sigma polynomials in dim variables. B is the declared codomain ball.
struct WavePacket {
    int dim = 0;
    Poly S;
    RVec x0;
    Poly sigma;
    double h = 1.0;
    RVec ball_center;
    double ball_radius = std::numeric_limits<double>::infinity();

    cplx operator()(const double* x) const;
    GridFunction sample(const Grid& g) const;
};

// S = <x - x0, xi0> + (i/2)|x - x0|^2, sigma = 1
WavePacket coherent_state(const RVec& x0, const RVec& xi0, double h);

enum class PacketSide { Base, Total };
// Entries: imS_at_real_point, dS_imag, dS_in_ball, imS_lower_bound (lower bound on min imS / |x - x0|^2
// over the grid; the fitted C is its inverse) and for the total side Sigma_R (dS(x0) = theta(x0), theta
// taken from `geometry`, default the flat FBI phase).
Report packet_membership_check(const WavePacket& f, PacketSide side, const Grid& g,
                               const QuadraticPhase* geometry = nullptr, double* fitted_C = nullptr);

// A quadratic packet as a kernel with no input variables, and back (real point: minimizer of Im S).
GaussianKernel packet_as_kernel(const WavePacket& f);
WavePacket kernel_as_packet(const GaussianKernel& K);

// T f for a quadratic packet, exactly: the Gaussian composition of the FBI kernel with the packet.
// prefactor 1/(2^{n/2}(h pi)^{3n/4}); the result lives on alpha-space, with x0 its real point.
WavePacket fbi_transform_packet(const FbiPair& p, const WavePacket& f);

// Fubini-Study projector family at h = 1/k, k integer >= 3:
// (2 pi h)^{-1} (1 + z conj w)^k (1 + |z|^2)^{-k/2} (1 + |w|^2)^{-k/2} a(z, w), a = 2/(1 + z conj w)^2
// (the sesquiholomorphic extension of det(2D)^{1/2}), times exp(h l1) at order 1.
QuadKernel fubini_study_kernel(double h, int order);
// a(alpha0 + u, alpha0 + v) as a Taylor polynomial in (u, v)
Poly fubini_study_amplitude_jet(const RVec& alpha0, int order);
// l1 = -c1 from the self-composition expansion at alpha0
double fubini_study_l1(const RVec& alpha0);

struct SweepResult {
    std::vector<double> hs, defects;
    double slope_loglog = 0.0;   // d log(defect) / d log h
    double slope_inv_h = 0.0;    // d log(defect) / d (1/h)
    std::string regime;          // "polynomial", "exponential" or "floor"
};
SweepResult h_sweep_decay(const std::function<double(double)>& defect_at, const std::vector<double>& hs,
                          double floor_tol = 1e-5);

// Grid and packet for the Fubini-Study sweep at h: centered Gaussian, box from the tail bound.
struct SweepSetup {
    Grid grid;
    double box_half_width = 0.0;
    double spacing = 0.0;
};
SweepSetup fubini_study_sweep_setup(double h, double spacing_factor = 0.25);
double fubini_study_defect(double h, int order, double spacing_factor = 0.25);

struct FbiComparison {
    double rel_diff_sigma = 0.0;  // ||S T f - sigma f|| / ||sigma f||
    double rel_diff_one = 0.0;    // ||S T f - f|| / ||f||
    cplx sigma = 0.0;
    double norm_f = 0.0;
};
// Nested quadrature S_1 T_1 f for an n = 1 pair against Op(sigma) f = sigma f.
FbiComparison fbi_compose_numeric(const FbiPair& p, const WavePacket& f, double h);

}  // namespace phaselab
