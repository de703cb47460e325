#pragma once

#include <cstdint>
#include <vector>

#include "phaselab/gauss_calc.hpp"
#include "phaselab/operator_num.hpp"
#include "phaselab/phase_core.hpp"
#include "phaselab/report.hpp"

namespace phaselab {

// Check batteries over a phase, shared by the command-line tool and the acceptance run.
struct SuiteOptions {
    int samples = 20;
    std::uint64_t seed = 0;
    double tol = 1e-9;
    double separation = 0.2;  // max |alpha - beta| of sampled pairs
    double radius = 0.5;      // sampled points stay within this distance of the basepoint per complex coordinate
};

RVec phase_basepoint(const PhaseFunction& phase);

// Seeded near-diagonal real pairs around the basepoint.
std::vector<std::pair<Vec, Vec>> sample_pairs(const PhaseFunction& phase, const SuiteOptions& opt);

// jet.* from check_projector_jet at the basepoint, then max over sampled pairs of reproducing,
// d_critique and associativity residuals, plus diagonal vanishing and (if flagged) self-adjointness.
Report axiom_suite(const PhaseFunction& phase, const SuiteOptions& opt);

// jet checks, tangent models, leaf positivity and the cross-Hessian rank on sampled pairs.
Report geometry_suite(const PhaseFunction& phase, const SuiteOptions& opt);

// Linear symplectic checks on the tangent triple at the basepoint: involutivity, Lambda idempotence and
// Lagrangian property, self-adjointness for J* = conj J, flattening and the positive normal form.
Report symplin_suite(const PhaseFunction& phase, const SuiteOptions& opt);

// Exact idempotence of the kernel with the projector amplitude, and 1/c0 for amplitude 1.
Report exact_kernel_suite(const QuadraticPhase& q, double h, double tol = 1e-12);

struct ProjectSettings {
    double h = 0.05;
    double spacing = 0.0;        // 0: sqrt(h)/4
    double window = 0.0;         // 0: factor * sqrt(h ln(1/eps_mach))
    double window_factor = 3.0;
    double half_width = 0.0;     // 0: 1.5 sqrt(h ln(1/eps_mach)) around the packet's real point
    long max_points = 20000;
};
// Quadrature idempotence defect of the quadratic-phase kernel with the projector amplitude on a packet.
Report project_suite(const QuadraticPhase& q, const WavePacket& f, const ProjectSettings& s, double tol = 1e-6);

}  // namespace phaselab
