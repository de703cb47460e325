#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "phaselab/critical.hpp"
#include "phaselab/io.hpp"
#include "phaselab/operator_num.hpp"
#include "phaselab/suites.hpp"

using namespace phaselab;

namespace {

struct Args {
    std::string command;
    std::string target;  // phase file, or model name for `models`
    std::string phase_file, packet_file, emit, h_list, grid = "auto";
    double h = 0.05;
    double tol = -1.0;
    std::uint64_t seed = 0;
    int n = 1;
    int samples = 20;
    bool json = false, timing = false;
};

// FNV-1a over the canonical input dump; stable across platforms
std::string digest(const std::string& s) {
    std::uint64_t x = 1469598103934665603ull;
    for (unsigned char c : s) {
        x ^= c;
        x *= 1099511628211ull;
    }
    std::ostringstream o;
    o << std::hex;
    o.width(16);
    o.fill('0');
    o << x;
    return o.str();
}

struct Run {
    Json inputs = Json::object();
    Json settings = Json::object();
    Json extra = Json::object();
    Report report;
};

std::vector<double> parse_h_list(const std::string& csv) {
    std::vector<double> hs;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const double v = std::stod(item, &used);
            if (used != item.size() || !(v > 0)) throw std::invalid_argument("");
            hs.push_back(v);
        } catch (const std::exception&) {
            throw SpecError("--h-list", "entry '" + item + "' is not a positive number");
        }
    }
    return hs;
}

// --grid auto -> spacing sqrt(h)/4; a number is the spacing itself
double grid_spacing(const std::string& grid, double h) {
    if (grid == "auto") return default_spacing(h);
    try {
        std::size_t used = 0;
        const double v = std::stod(grid, &used);
        if (used != grid.size() || !(v > 0)) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw SpecError("--grid", "expected 'auto' or a positive spacing");
    }
}

std::string phase_path(const Args& a) {
    if (!a.phase_file.empty()) return a.phase_file;
    if (!a.target.empty()) return a.target;
    throw SpecError("--phase", "a phase file is required");
}

PhaseSpec load_phase_spec(const Args& a, Run& run) {
    const Json j = read_json_file(phase_path(a));
    PhaseSpec s = parse_phase_spec(j);
    run.inputs["phase"] = phase_spec_to_json(s);
    return s;
}

SuiteOptions suite_options(const Args& a, double default_tol) {
    SuiteOptions o;
    o.seed = a.seed;
    o.samples = a.samples;
    o.tol = a.tol > 0 ? a.tol : default_tol;
    return o;
}

void cmd_check(const Args& a, Run& run) {
    const PhaseSpec s = load_phase_spec(a, run);
    const SuiteOptions o = suite_options(a, 1e-9);
    run.settings["tol"] = o.tol;
    run.settings["samples"] = o.samples;
    run.report = axiom_suite(build_phase(s), o);
}

void cmd_geometry(const Args& a, Run& run) {
    const PhaseSpec s = load_phase_spec(a, run);
    const SuiteOptions o = suite_options(a, 1e-9);
    run.settings["tol"] = o.tol;
    run.report = geometry_suite(build_phase(s), o);
}

void cmd_critical(const Args& a, Run& run) {
    const PhaseSpec s = load_phase_spec(a, run);
    const SuiteOptions o = suite_options(a, 1e-10);
    run.settings["tol"] = o.tol;
    run.settings["samples"] = o.samples;
    const PhaseFunction p = build_phase(s);
    double rep = 0.0, dcr = 0.0, asc = 0.0, iters = 0.0, comp = 0.0;
    for (const auto& [al, be] : sample_pairs(p, o)) {
        rep = std::max(rep, reproducing_residual(p, al, be));
        dcr = std::max(dcr, d_critique_residual(p, al, be).max());
        asc = std::max(asc, associativity_residual(p, al, be));
        iters = std::max(iters, 1.0 * solve_gamma_c(p, al, be).iterations);
        if (p.has_quadratic())
            comp = std::max(comp, std::abs(compose_phases_vc(p, p, al, be) - compose_phases_vc_newton(p, p, al, be)));
    }
    run.report.add("reproducing", rep, o.tol);
    run.report.add("d_critique", dcr, o.tol);
    run.report.add("associativity", asc, o.tol);
    if (p.has_quadratic()) run.report.add("exact_vs_newton_value", comp, o.tol);
    run.extra["max_newton_iterations"] = iters;
}

WavePacket load_packet(const Args& a, const QuadraticPhase& q, double h, Run& run) {
    if (!a.packet_file.empty()) {
        WavePacket f = parse_packet_spec(read_json_file(a.packet_file));
        run.inputs["packet"] = packet_to_json(f);
        return f;
    }
    // coherent state at the basepoint with covector theta: a point of Sigma_R
    WavePacket f = coherent_state(q.alpha0, q.theta, h);
    run.inputs["packet"] = packet_to_json(f);
    return f;
}

void cmd_project(const Args& a, Run& run) {
    const PhaseSpec s = load_phase_spec(a, run);
    const QuadraticPhase q = spec_quadratic(s);
    ProjectSettings ps;
    ps.h = a.h;
    ps.spacing = grid_spacing(a.grid, a.h);
    const double tol = a.tol > 0 ? a.tol : 1e-6;
    const WavePacket f = load_packet(a, q, a.h, run);
    run.settings["h"] = ps.h;
    run.settings["spacing"] = ps.spacing;
    run.settings["window_factor"] = ps.window_factor;
    run.settings["window"] = default_window(ps.h, ps.window_factor);
    run.settings["tol"] = tol;
    Grid g = Grid::centered(f.x0, 1.5 * std::sqrt(ps.h * std::log(1.0 / std::numeric_limits<double>::epsilon())),
                            ps.spacing);
    run.report.merge(packet_membership_check(f, PacketSide::Base, g), "packet.");
    run.report.merge(project_suite(q, f, ps, tol), "quadrature.");
    run.report.merge(exact_kernel_suite(q, ps.h), "exact.");
}

void cmd_sweep(const Args& a, Run& run) {
    const PhaseSpec s = load_phase_spec(a, run);
    const std::vector<double> hs = parse_h_list(a.h_list.empty() ? "0.2,0.1,0.05,0.025" : a.h_list);
    if (hs.size() < 4) throw SpecError("--h-list", "at least 4 values of h are required");
    run.settings["h_list"] = hs;
    run.settings["grid"] = a.grid;
    if (s.kind == "fubini_study") {
        const double factor = a.grid == "auto" ? 0.25 : 0.0;
        if (factor == 0.0) throw SpecError("--grid", "the Fubini-Study sweep uses --grid auto");
        run.settings["spacing_factor"] = factor;
        for (int order : {0, 1}) {
            SweepResult r = h_sweep_decay([&](double h) { return fubini_study_defect(h, order, factor); }, hs);
            const std::string key = "order" + std::to_string(order);
            Json e;
            e["defects"] = r.defects;
            e["slope_loglog"] = r.slope_loglog;
            e["regime"] = r.regime;
            run.extra[key] = e;
            run.report.add(key + "_slope", std::abs(r.slope_loglog - (order + 1.0)), order == 0 ? 0.3 : 0.4);
            run.report.add_flag(key + "_polynomial_regime", r.regime == "polynomial");
        }
        return;
    }
    const QuadraticPhase q = spec_quadratic(s);
    SweepResult r = h_sweep_decay(
        [&](double h) {
            ProjectSettings ps;
            ps.h = h;
            ps.spacing = grid_spacing(a.grid, h);
            return project_suite(q, coherent_state(q.alpha0, q.theta, h), ps, 1.0).at("idempotence_defect").residual;
        },
        hs);
    Json e;
    e["defects"] = r.defects;
    e["regime"] = r.regime;
    run.extra["exact_amplitude"] = e;
    run.report.add_flag("floor_regime", r.regime == "floor");
}

void cmd_models(const Args& a, Run& run) {
    PhaseSpec s;
    const std::string& name = a.target;
    if (name == "bargmann") {
        s.kind = "bargmann";
        s.n = a.n;
    } else if (name == "fubini_study") {
        s.kind = "fubini_study";
        s.n = 1;
    } else if (name == "scrambled" || name == "scrambled_symplectic") {
        s.kind = "scrambled";
        s.n = a.n;
        s.seed = a.seed;
        s.scramble = name == "scrambled" ? "general_linear" : "symplectic";
    } else if (name == "flat_fbi") {
        const QuadraticPhase q = fbi_flat_phase(a.n);
        s.kind = "quadratic";
        s.n = a.n;
        s.alpha0 = q.alpha0;
        s.theta = q.theta;
        s.A = q.A, s.B = q.B, s.C = q.C;
    } else {
        throw SpecError("model", "unknown model '" + name +
                                     "' (bargmann, fubini_study, scrambled, scrambled_symplectic, flat_fbi)");
    }
    if (s.n < 1) throw SpecError("--n", "must be >= 1");
    s.alpha0 = s.alpha0.size() ? s.alpha0 : RVec::Zero(2 * s.n);
    s.theta = s.theta.size() ? s.theta : RVec::Zero(2 * s.n);
    const Json spec = phase_spec_to_json(s);
    // round trip through the loader so that the emitted file is known to load
    const PhaseSpec back = parse_phase_spec(spec);
    run.inputs["model"] = spec;
    if (!a.emit.empty()) {
        write_json_file(a.emit, spec);
        run.extra["emitted"] = a.emit;
    }
    run.report = axiom_suite(build_phase(back), suite_options(a, 1e-9));
}

void cmd_symplin(const Args& a, Run& run) {
    const PhaseSpec s = load_phase_spec(a, run);
    const SuiteOptions o = suite_options(a, 1e-9);
    run.settings["tol"] = o.tol;
    run.report = symplin_suite(build_phase(s), o);
}

Json failures(const Report& r) {
    Json f = Json::array();
    for (const auto& [k, v] : r.entries())
        if (!v.pass) f.push_back(k);
    return f;
}

void print_text(const std::string& cmd, const Run& run, std::ostream& out) {
    out << cmd << ": " << (run.report.all_pass() ? "PASS" : "FAIL") << "\n";
    for (const auto& [k, v] : run.report.entries()) {
        out << "  " << (v.pass ? "ok  " : "FAIL") << " " << k << "  residual=" << v.residual << "  tol=" << v.tol
            << "\n";
    }
    for (const auto& [k, v] : run.extra.items()) out << "  " << k << ": " << v.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"phaselab: checks for projector phases, Gaussian kernels and linear symplectic data"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);
    Args a;
    auto add_common = [&](CLI::App* sc, bool takes_phase) {
        if (takes_phase) {
            sc->add_option("file", a.target, "phase spec file");
            sc->add_option("--phase", a.phase_file, "phase spec file");
        }
        sc->add_option("--tol", a.tol, "tolerance override");
        sc->add_option("--seed", a.seed, "sampling seed");
        sc->add_option("--samples", a.samples, "number of sampled pairs")->check(CLI::PositiveNumber);
        sc->add_flag("--json", a.json, "print the JSON report");
        sc->add_flag("--timing", a.timing, "add wall time to the report (breaks byte-identical output)");
        sc->add_option("--emit", a.emit, "write the report (or the model spec, for models) to FILE");
    };
    struct Sub {
        const char* name;
        const char* help;
        void (*fn)(const Args&, Run&);
    };
    const Sub subs[] = {
        {"check", "projector-phase axiom suite", cmd_check},
        {"geometry", "Kahler data, tangent models and positivity", cmd_geometry},
        {"critical", "critical point, reproducing and associativity residuals", cmd_critical},
        {"project", "quadrature idempotence of the projector kernel on a packet", cmd_project},
        {"sweep", "idempotence defect across h", cmd_sweep},
        {"models", "emit a model phase spec", cmd_models},
        {"symplin", "linear symplectic suite on the tangent triple", cmd_symplin},
    };
    for (const Sub& s : subs) {
        CLI::App* sc = app.add_subcommand(s.name, s.help);
        if (std::string(s.name) == "models") {
            sc->add_option("model", a.target, "bargmann, fubini_study, scrambled, scrambled_symplectic, flat_fbi")
                ->required();
            sc->add_option("--n", a.n, "half dimension");
            add_common(sc, false);
        } else {
            add_common(sc, true);
        }
        if (std::string(s.name) == "project" || std::string(s.name) == "sweep") {
            sc->add_option("--packet", a.packet_file, "packet spec file");
            sc->add_option("--h", a.h, "semiclassical parameter")->check(CLI::PositiveNumber);
            sc->add_option("--h-list", a.h_list, "comma-separated h values");
            sc->add_option("--grid", a.grid, "'auto' (spacing sqrt(h)/4, window factor 3) or a spacing");
        }
        sc->callback([&a, s] { a.command = s.name; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Run run;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        for (const Sub& s : subs)
            if (a.command == s.name) s.fn(a, run);
    } catch (const SpecError& e) {
        std::cerr << "phaselab " << a.command << ": " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "phaselab " << a.command << ": " << e.what() << "\n";
        return 2;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    Json out;
    out["command"] = a.command;
    out["inputs_digest"] = digest(run.inputs.dump() + run.settings.dump() + std::to_string(a.seed));
    out["seed"] = a.seed;
    out["settings"] = run.settings;
    out["checks"] = run.report.to_json();
    if (!run.extra.empty()) out["details"] = run.extra;
    out["failed"] = failures(run.report);
    out["pass"] = run.report.all_pass();
    if (a.timing) out["wall_time_s"] = wall;

    if (!a.emit.empty() && a.command != "models") {
        try {
            write_json_file(a.emit, out);
        } catch (const Error& e) {
            std::cerr << "phaselab: " << e.what() << "\n";
            return 2;
        }
    }
    if (a.json)
        std::cout << out.dump(2) << "\n";
    else
        print_text(a.command, run, std::cout);
    if (!run.report.all_pass()) {
        for (const auto& name : out["failed"]) std::cerr << "failed: " << name.get<std::string>() << "\n";
        return 1;
    }
    return 0;
}
