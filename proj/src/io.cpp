#include "phaselab/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace phaselab {

SpecError::SpecError(const std::string& f, const std::string& what)
    : Error("spec field '" + f + "': " + what), field(f) {}

namespace {

std::string sub(const std::string& base, const std::string& key) { return base.empty() ? key : base + "." + key; }
std::string idx(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

const Json& require(const Json& j, const std::string& key, const std::string& base) {
    if (!j.is_object()) throw SpecError(base.empty() ? "<root>" : base, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SpecError(sub(base, key), "missing");
    return *it;
}

double as_double(const Json& j, const std::string& field) {
    if (!j.is_number()) throw SpecError(field, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw SpecError(field, "not finite");
    return v;
}

int as_int(const Json& j, const std::string& field) {
    if (!j.is_number_integer()) throw SpecError(field, "expected an integer");
    return j.get<int>();
}

cplx as_complex(const Json& j, const std::string& field) {
    if (j.is_number()) return as_double(j, field);
    if (!j.is_array() || j.size() != 2) throw SpecError(field, "expected [re, im]");
    return {as_double(j[0], idx(field, 0)), as_double(j[1], idx(field, 1))};
}

Json complex_to_json(cplx c) { return Json::array({c.real(), c.imag()}); }

Json real_vector_to_json(const RVec& v) {
    Json a = Json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

}  // namespace

RVec parse_real_vector(const Json& j, const std::string& field, int size) {
    if (!j.is_array()) throw SpecError(field, "expected an array");
    if (size >= 0 && static_cast<int>(j.size()) != size)
        throw SpecError(field, "expected length " + std::to_string(size) + ", got " + std::to_string(j.size()));
    RVec v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v(i) = as_double(j[i], idx(field, i));
    return v;
}

Mat parse_complex_matrix(const Json& j, const std::string& field, int rows, int cols) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw SpecError(field, "expected " + std::to_string(rows) + " rows");
    Mat M(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const Json& row = j[r];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw SpecError(idx(field, r), "expected " + std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c) M(r, c) = as_complex(row[c], idx(idx(field, r), c));
    }
    return M;
}

Json complex_matrix_to_json(const Mat& M) {
    Json a = Json::array();
    for (int r = 0; r < M.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < M.cols(); ++c) row.push_back(complex_to_json(M(r, c)));
        a.push_back(row);
    }
    return a;
}

Poly parse_poly(const Json& j, const std::string& field, int nvars) {
    const int nv = as_int(require(j, "nvars", field), sub(field, "nvars"));
    if (nv < 0) throw SpecError(sub(field, "nvars"), "negative");
    if (nvars >= 0 && nv != nvars)
        throw SpecError(sub(field, "nvars"), "expected " + std::to_string(nvars) + " variables");
    const Json& terms = require(j, "terms", field);
    const std::string tf = sub(field, "terms");
    if (!terms.is_array()) throw SpecError(tf, "expected an array");
    Poly p(nv);
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const Json& term = terms[t];
        const std::string f = idx(tf, t);
        if (!term.is_array() || term.size() != 2) throw SpecError(f, "expected [exponents, [re, im]]");
        if (!term[0].is_array() || static_cast<int>(term[0].size()) != nv)
            throw SpecError(idx(f, 0), "expected " + std::to_string(nv) + " exponents");
        Multi m(nv);
        for (int k = 0; k < nv; ++k) {
            m[k] = as_int(term[0][k], idx(idx(f, 0), k));
            if (m[k] < 0) throw SpecError(idx(idx(f, 0), k), "negative exponent");
        }
        p.add_term(m, as_complex(term[1], idx(f, 1)));
    }
    return p;
}

Json poly_to_json(const Poly& p) {
    Json terms = Json::array();
    for (const auto& [m, c] : p.terms()) terms.push_back(Json::array({Json(m), complex_to_json(c)}));
    Json j;
    j["nvars"] = p.nvars();
    j["terms"] = terms;
    return j;
}

PhaseSpec parse_phase_spec(const Json& j) {
    PhaseSpec s;
    const Json& kind = require(j, "kind", "");
    if (!kind.is_string()) throw SpecError("kind", "expected a string");
    s.kind = kind.get<std::string>();
    if (s.kind != "bargmann" && s.kind != "fubini_study" && s.kind != "quadratic" && s.kind != "polynomial" &&
        s.kind != "scrambled")
        throw SpecError("kind", "unknown kind '" + s.kind + "'");
    s.n = j.contains("n") ? as_int(j["n"], "n") : 1;
    if (s.n < 1) throw SpecError("n", "must be >= 1");
    if (s.kind == "fubini_study" && s.n != 1) throw SpecError("n", "fubini_study is implemented for n = 1");
    const int m = 2 * s.n;
    s.alpha0 = j.contains("alpha0") ? parse_real_vector(j["alpha0"], "alpha0", m) : RVec::Zero(m);
    s.theta = j.contains("theta") ? parse_real_vector(j["theta"], "theta", m) : RVec::Zero(m);
    if (s.kind == "quadratic") {
        s.A = parse_complex_matrix(require(j, "A", ""), "A", m, m);
        s.B = parse_complex_matrix(require(j, "B", ""), "B", m, m);
        s.C = parse_complex_matrix(require(j, "C", ""), "C", m, m);
    }
    if (s.kind == "scrambled") {
        const Json& seed = require(j, "seed", "");
        if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0))
            throw SpecError("seed", "expected a nonnegative integer");
        s.seed = seed.get<std::uint64_t>();
        if (j.contains("scramble")) {
            if (!j["scramble"].is_string()) throw SpecError("scramble", "expected a string");
            s.scramble = j["scramble"].get<std::string>();
            if (s.scramble != "general_linear" && s.scramble != "symplectic")
                throw SpecError("scramble", "expected general_linear or symplectic");
        }
    }
    if (s.kind == "polynomial") s.poly = parse_poly(require(j, "poly", ""), "poly", 2 * m);
    if (j.contains("domain")) {
        const Json& d = j["domain"];
        Domain dom;
        dom.center = d.contains("center") ? parse_real_vector(d["center"], "domain.center", m) : s.alpha0;
        const Json& box = require(d, "box", "domain");
        if (box.is_number()) {
            dom.box = RVec::Constant(m, as_double(box, "domain.box"));
        } else {
            dom.box = parse_real_vector(box, "domain.box", m);
        }
        for (int k = 0; k < m; ++k)
            if (dom.box(k) <= 0) throw SpecError(idx("domain.box", k), "must be positive");
        dom.rho = as_double(require(d, "rho", "domain"), "domain.rho");
        if (dom.rho <= 0) throw SpecError("domain.rho", "must be positive");
        s.domain = dom;
    }
    // validate invariants on load
    try {
        (void)build_phase(s);
    } catch (const SpecError&) {
        throw;
    } catch (const Error& e) {
        const std::string what = e.what();
        std::string field = "kind";
        if (s.kind == "quadratic") {
            if (what.find("A not symmetric") != std::string::npos) field = "A";
            else if (what.find("C not symmetric") != std::string::npos) field = "C";
            else field = "B";  // zero-sum and Re D involve B
        } else if (s.kind == "polynomial") {
            field = "poly";
        }
        throw SpecError(field, what);
    }
    return s;
}

Json phase_spec_to_json(const PhaseSpec& s) {
    Json j;
    j["kind"] = s.kind;
    j["n"] = s.n;
    j["alpha0"] = real_vector_to_json(s.alpha0.size() ? s.alpha0 : RVec::Zero(2 * s.n));
    j["theta"] = real_vector_to_json(s.theta.size() ? s.theta : RVec::Zero(2 * s.n));
    if (s.kind == "quadratic") {
        j["A"] = complex_matrix_to_json(s.A);
        j["B"] = complex_matrix_to_json(s.B);
        j["C"] = complex_matrix_to_json(s.C);
    }
    if (s.kind == "scrambled") {
        j["seed"] = s.seed;
        j["scramble"] = s.scramble;
    }
    if (s.kind == "polynomial" && s.poly) j["poly"] = poly_to_json(*s.poly);
    if (s.domain) {
        Json d;
        d["center"] = real_vector_to_json(s.domain->center);
        d["box"] = real_vector_to_json(s.domain->box);
        d["rho"] = s.domain->rho;
        j["domain"] = d;
    }
    return j;
}

PhaseFunction build_phase(const PhaseSpec& s) {
    PhaseFunction p;
    if (s.kind == "bargmann") {
        p = make_bargmann(s.n);
    } else if (s.kind == "fubini_study") {
        p = make_fubini_study();
    } else if (s.kind == "quadratic") {
        p = PhaseFunction::from_quadratic(QuadraticPhase::make(s.n, s.alpha0, s.theta, s.A, s.B, s.C));
    } else if (s.kind == "scrambled") {
        p = random_quadratic_projector_phase(s.seed, s.n,
                                             s.scramble == "symplectic" ? Scramble::Symplectic
                                                                        : Scramble::GeneralLinear)
                .phase;
    } else if (s.kind == "polynomial") {
        if (!s.poly) throw SpecError("poly", "missing");
        p = PhaseFunction::from_poly(s.n, *s.poly);
    } else {
        throw SpecError("kind", "unknown kind '" + s.kind + "'");
    }
    if (s.domain) p.domain = *s.domain;
    return p;
}

QuadraticPhase spec_quadratic(const PhaseSpec& s) {
    if (s.kind == "bargmann") return bargmann_quadratic(s.n);
    if (s.kind == "quadratic" || s.kind == "scrambled") return build_phase(s).quadratic();
    throw SpecError("kind", "a quadratic phase is required, got '" + s.kind + "'");
}

KernelSpec parse_kernel_spec(const Json& j) {
    KernelSpec k;
    k.phase = parse_phase_spec(j);
    k.h = as_double(require(j, "h", ""), "h");
    if (k.h <= 0) throw SpecError("h", "must be positive");
    const int nv = 4 * k.phase.n;
    const Json& a = require(j, "amplitude", "");
    if (a.is_object()) {
        k.amplitude = parse_poly(a, "amplitude", nv);
        if (k.amplitude.degree() > 6) throw SpecError("amplitude", "degree exceeds 6");
    } else {
        k.amplitude = Poly::constant(nv, as_complex(a, "amplitude"));
    }
    return k;
}

Json kernel_spec_to_json(const KernelSpec& s) {
    Json j = phase_spec_to_json(s.phase);
    j["h"] = s.h;
    j["amplitude"] = poly_to_json(s.amplitude);
    return j;
}

GaussianKernel build_kernel(const KernelSpec& s) {
    GaussianKernel K = kernel_from_phase(spec_quadratic(s.phase), s.h, s.amplitude);
    K.validate();
    return K;
}

WavePacket parse_packet_spec(const Json& j) {
    WavePacket p;
    p.S = parse_poly(require(j, "S", ""), "S");
    p.dim = p.S.nvars();
    if (p.dim < 1) throw SpecError("S.nvars", "must be >= 1");
    p.x0 = parse_real_vector(require(j, "x0", ""), "x0", p.dim);
    p.sigma = j.contains("sigma") ? parse_poly(j["sigma"], "sigma", p.dim) : Poly::constant(p.dim, 1.0);
    p.h = as_double(require(j, "h", ""), "h");
    if (p.h <= 0) throw SpecError("h", "must be positive");
    Vec x0c = to_complex(p.x0);
    const cplx s0 = p.S.eval(x0c);
    if (std::abs(s0.imag()) > 1e-10) throw SpecError("S", "Im S(x0) must vanish");
    p.ball_center = RVec(p.dim);
    for (int k = 0; k < p.dim; ++k) p.ball_center(k) = p.S.diff(k).eval(x0c).real();
    if (j.contains("ball")) {
        const Json& b = j["ball"];
        p.ball_center = parse_real_vector(require(b, "center", "ball"), "ball.center", p.dim);
        p.ball_radius = as_double(require(b, "radius", "ball"), "ball.radius");
        if (p.ball_radius <= 0) throw SpecError("ball.radius", "must be positive");
    }
    return p;
}

Json packet_to_json(const WavePacket& p) {
    Json j;
    j["S"] = poly_to_json(p.S);
    j["x0"] = real_vector_to_json(p.x0);
    j["sigma"] = poly_to_json(p.sigma);
    j["h"] = p.h;
    if (std::isfinite(p.ball_radius)) {
        Json b;
        b["center"] = real_vector_to_json(p.ball_center);
        b["radius"] = p.ball_radius;
        j["ball"] = b;
    }
    return j;
}

Json subspace_to_json(const LinearSubspace& V) {
    Json cols = Json::array();
    for (int c = 0; c < V.dim(); ++c) {
        Json col = Json::array();
        for (int r = 0; r < V.ambient(); ++r) col.push_back(complex_to_json(V.basis(r, c)));
        cols.push_back(col);
    }
    Json j;
    j["ambient"] = V.ambient();
    j["basis"] = cols;
    return j;
}

LinearSubspace parse_subspace(const Json& j, const std::string& field) {
    const int amb = as_int(require(j, "ambient", field), sub(field, "ambient"));
    if (amb < 2 || amb % 2) throw SpecError(sub(field, "ambient"), "must be even and positive");
    const Json& cols = require(j, "basis", field);
    const std::string bf = sub(field, "basis");
    if (!cols.is_array()) throw SpecError(bf, "expected an array of columns");
    Mat B(amb, static_cast<int>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (!cols[c].is_array() || static_cast<int>(cols[c].size()) != amb)
            throw SpecError(idx(bf, c), "expected " + std::to_string(amb) + " entries");
        for (int r = 0; r < amb; ++r) B(r, c) = as_complex(cols[c][r], idx(idx(bf, c), r));
    }
    try {
        return LinearSubspace(B);
    } catch (const Error& e) {
        throw SpecError(bf, e.what());
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("<file>", "cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SpecError("<file>", std::string("invalid JSON in '") + path + "': " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

namespace {

void put_le(std::ostream& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
    char buf[8];
    std::memcpy(buf, &bits, 8);
    out.write(buf, 8);
}

double get_le(std::istream& in) {
    char buf[8];
    in.read(buf, 8);
    if (!in) throw SpecError("<bin>", "truncated grid data");
    std::uint64_t bits;
    std::memcpy(&bits, buf, 8);
    if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

}  // namespace

void write_grid_function(const std::string& prefix, const GridFunction& f) {
    std::ofstream bin(prefix + ".bin", std::ios::binary);
    if (!bin) throw Error("cannot write '" + prefix + ".bin'");
    for (const cplx& v : f.values) {
        put_le(bin, v.real());
        put_le(bin, v.imag());
    }
    Json j;
    j["dim"] = f.grid.dim;
    j["lo"] = real_vector_to_json(f.grid.lo);
    j["spacing"] = f.grid.spacing;
    j["count"] = f.grid.count;
    j["layout"] = "little-endian f64, re/im interleaved, last coordinate fastest";
    write_json_file(prefix + ".json", j);
}

GridFunction read_grid_function(const std::string& prefix) {
    Json j = read_json_file(prefix + ".json");
    Grid g;
    g.dim = as_int(require(j, "dim", ""), "dim");
    g.lo = parse_real_vector(require(j, "lo", ""), "lo", g.dim);
    g.spacing = as_double(require(j, "spacing", ""), "spacing");
    const Json& cnt = require(j, "count", "");
    if (!cnt.is_array() || static_cast<int>(cnt.size()) != g.dim) throw SpecError("count", "expected dim entries");
    for (std::size_t k = 0; k < cnt.size(); ++k) g.count.push_back(as_int(cnt[k], idx("count", k)));
    GridFunction f = GridFunction::zeros(g);
    std::ifstream bin(prefix + ".bin", std::ios::binary);
    if (!bin) throw SpecError("<bin>", "cannot open '" + prefix + ".bin'");
    for (cplx& v : f.values) {
        const double re = get_le(bin);
        v = cplx(re, get_le(bin));
    }
    return f;
}

}  // namespace phaselab
