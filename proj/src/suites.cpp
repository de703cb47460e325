#include "phaselab/suites.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "phaselab/critical.hpp"
#include "phaselab/geometry.hpp"
#include "phaselab/linalg.hpp"
#include "phaselab/symplin.hpp"

namespace phaselab {

RVec phase_basepoint(const PhaseFunction& phase) {
    if (phase.domain.center.size() == phase.dim()) return phase.domain.center;
    return RVec::Zero(phase.dim());
}

std::vector<std::pair<Vec, Vec>> sample_pairs(const PhaseFunction& phase, const SuiteOptions& opt) {
    const int n = phase.n;
    const RVec c = phase_basepoint(phase);
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto in_disc = [&](double r) {
        const double rad = r * std::sqrt(unit(rng)), ang = 2 * kPi * unit(rng);
        return std::pair<double, double>(rad * std::cos(ang), rad * std::sin(ang));
    };
    std::vector<std::pair<Vec, Vec>> out;
    while (static_cast<int>(out.size()) < opt.samples) {
        RVec a(2 * n), b(2 * n);
        bool ok = true;
        for (int j = 0; j < n; ++j) {
            auto [x, y] = in_disc(opt.radius);
            a(2 * j) = c(2 * j) + x;
            a(2 * j + 1) = c(2 * j + 1) + y;
        }
        RVec d(2 * n);
        for (int k = 0; k < 2 * n; ++k) d(k) = unit(rng) - 0.5;
        d *= opt.separation * unit(rng) / std::max(d.norm(), 1e-300);
        b = a + d;
        for (int j = 0; j < n; ++j)
            if (std::hypot(b(2 * j) - c(2 * j), b(2 * j + 1) - c(2 * j + 1)) > opt.radius) ok = false;
        if (ok) out.emplace_back(to_complex(a), to_complex(b));
    }
    return out;
}

Report axiom_suite(const PhaseFunction& phase, const SuiteOptions& opt) {
    Report r;
    const RVec c = phase_basepoint(phase);
    r.merge(check_projector_jet(jet_at(phase, c, 2), opt.tol), "jet.");
    double rep = 0.0, dcr = 0.0, asc = 0.0, diag = 0.0;
    for (const auto& [a, b] : sample_pairs(phase, opt)) {
        rep = std::max(rep, reproducing_residual(phase, a, b));
        dcr = std::max(dcr, d_critique_residual(phase, a, b).max());
        asc = std::max(asc, associativity_residual(phase, a, b));
        diag = std::max(diag, std::abs(phase(a, a)));
    }
    r.add("diagonal_value", diag, std::max(opt.tol, 1e-12));
    r.add("reproducing", rep, opt.tol);
    r.add("d_critique", dcr, opt.tol);
    r.add("associativity", asc, opt.tol);
    if (phase.self_adjoint_flag) r.add("self_adjoint", self_adjoint_defect(phase, opt.samples, opt.seed), 1e-12);
    return r;
}

Report geometry_suite(const PhaseFunction& phase, const SuiteOptions& opt) {
    Report r;
    const RVec c = phase_basepoint(phase);
    const DiagonalJet jet = jet_at(phase, c, 2);
    r.merge(check_projector_jet(jet, opt.tol), "jet.");
    const TangentModel t = tangent_models(jet);
    r.merge(check_tangent_models(t, phase.n, jet), "tangent.");
    r.merge(positivity_leaf(jet), "positivity.");
    int worst = phase.n;
    for (const auto& [a, b] : sample_pairs(phase, opt)) {
        const int rk = rank_cross_hessian(phase, a, b);
        if (rk != phase.n) worst = rk;
    }
    r.add("cross_hessian_rank_deficit", std::abs(worst - phase.n) * 1.0, 0.5);
    return r;
}

Report symplin_suite(const PhaseFunction& phase, const SuiteOptions& opt) {
    Report r;
    const RVec c = phase_basepoint(phase);
    const DiagonalJet jet = jet_at(phase, c, 2);
    const TangentModel t = tangent_models(jet);
    const double tol = std::max(opt.tol, 1e-9);
    r.add("J_involutive", is_involutive(t.J).defect, tol);
    r.add("Js_involutive", is_involutive(t.Js).defect, tol);
    r.add("perp_involution", subspace_distance(symplectic_orthogonal(symplectic_orthogonal(t.J)), t.J), tol);
    const PairData pd = analyze_pair(t.J, t.Js);
    const LinearRelation L = lambda_from_pair(t.J, t.Js);
    r.add("lambda_lagrangian", is_lagrangian(L).defect, tol);
    r.add("lambda_idempotent", relation_distance(relation_compose(L, L), L), tol);
    const LinearRelation Lc = lambda_from_pair(t.J, t.J.conj());
    r.add("lambda_conj_self_adjoint", relation_distance(relation_adjoint(Lc), Lc), tol);
    r.add("adjoint_involution", relation_distance(relation_adjoint(relation_adjoint(L)), L), tol);
    if (phase.self_adjoint_flag) r.add("Js_is_conj_J", subspace_distance(t.Js, t.J.conj()), tol);

    const Mat M = flatten_pair(t.J, t.Js, t.Sigma);
    r.add("flatten_symplectic", symplectic_defect(M), 1e-10);
    const double flat = std::max({subspace_distance(transform(M, t.J), flat_J(pd.m, pd.p)),
                                  subspace_distance(transform(M, t.Js), flat_Js(pd.m, pd.p)),
                                  subspace_distance(transform(M, t.Sigma), flat_Sigma(pd.m, pd.p))});
    r.add("flatten_images", flat, tol);

    const PositivityReport pr = pair_positivity_check(t.J, t.Js);
    r.add_flag("positivity_iff_consistent", pr.iff_consistent);
    r.add_lower("positivity_lambda", pr.lambda_min, 0.0);
    try {
        const NormalFormResult nf = positive_normal_form(t.J, t.Sigma);
        const Mat Mc = nf.M.cast<cplx>();
        r.add("normal_form_symplectic", symplectic_defect(Mc), 1e-10);
        r.add("normal_form_image", subspace_distance(transform(Mc, t.J), flat_positive_J(pd.m, pd.p)), tol);
    } catch (const Error&) {
        r.add("normal_form_image", std::numeric_limits<double>::infinity(), tol);
    }
    return r;
}

Report exact_kernel_suite(const QuadraticPhase& q, double h, double tol) {
    Report r;
    const PhaseFunction p = PhaseFunction::from_quadratic(q);
    const cplx c0 = projector_amplitude(jet_at(p, q.alpha0, 2));
    const GaussianKernel K = kernel_from_phase(q, h, c0);
    r.add("idempotent", kernel_distance(compose_kernels_exact(K, K), K), tol);
    const GaussianKernel K1 = kernel_from_phase(q, h, cplx(1.0));
    GaussianKernel expect = K1;
    expect.amp = K1.amp * (1.0 / c0);
    r.add("unit_amplitude_scaling", kernel_distance(compose_kernels_exact(K1, K1), expect), tol);
    return r;
}

Report project_suite(const QuadraticPhase& q, const WavePacket& f, const ProjectSettings& s, double tol) {
    if (f.dim != q.dim()) throw Error("project: packet dimension must equal 2n");
    const double h = s.h;
    const double spacing = s.spacing > 0 ? s.spacing : default_spacing(h);
    const double window = s.window > 0 ? s.window : default_window(h, s.window_factor);
    const double tail = std::sqrt(h * std::log(1.0 / std::numeric_limits<double>::epsilon()));
    const double half = s.half_width > 0 ? s.half_width : 1.5 * tail;
    const Grid g = Grid::centered(f.x0, half, spacing);
    if (g.size() > s.max_points)
        throw Error("project: grid has " + std::to_string(g.size()) + " points, above the limit " +
                    std::to_string(s.max_points));
    const PhaseFunction p = PhaseFunction::from_quadratic(q);
    const cplx c0 = projector_amplitude(jet_at(p, q.alpha0, 2));
    const QuadKernel K = QuadKernel::from_gaussian(kernel_from_phase(q, h, c0), window);
    WavePacket fh = f;
    fh.h = h;
    const GridFunction v = fh.sample(g);
    Report r;
    r.add("idempotence_defect", idempotence_residual(K, v), tol);
    r.add_lower("output_norm_ratio", apply_kernel(K, v).norm() / v.norm(), 0.0);
    r.add("spacing_invariant", std::max(0.0, spacing - default_spacing(h)), 1e-15);
    return r;
}

}  // namespace phaselab
