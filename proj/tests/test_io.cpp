#include "doctest.h"

#include <cstring>
#include <filesystem>
#include <fstream>

#include "phaselab/io.hpp"
#include "phaselab/linalg.hpp"
#include "phaselab/symplin.hpp"

using namespace phaselab;

namespace {

std::string field_of(const Json& j) {
    try {
        parse_phase_spec(j);
    } catch (const SpecError& e) {
        return e.field;
    }
    return "";
}

// A = C = i I, B = J0 - i I with J0 = [[0, -1], [1, 0]], written out by hand
Json bargmann_quadratic_json() {
    return Json::parse(R"({"kind": "quadratic", "n": 1,
        "A": [[[0, 1], [0, 0]], [[0, 0], [0, 1]]],
        "B": [[[0, -1], [-1, 0]], [[1, 0], [0, -1]]],
        "C": [[[0, 1], [0, 0]], [[0, 0], [0, 1]]]})");
}

std::filesystem::path tmp(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_CASE("quadratic spec loads the bargmann matrices") {
    PhaseSpec s = parse_phase_spec(bargmann_quadratic_json());
    const QuadraticPhase q = spec_quadratic(s);
    const QuadraticPhase b = bargmann_quadratic(1);
    CHECK(max_abs(q.A - b.A) == 0.0);
    CHECK(max_abs(q.B - b.B) == 0.0);
    CHECK(max_abs(q.C - b.C) == 0.0);
    PhaseSpec back = parse_phase_spec(phase_spec_to_json(s));
    CHECK(max_abs(spec_quadratic(back).B - q.B) == 0.0);
    CHECK(phase_spec_to_json(back).dump() == phase_spec_to_json(s).dump());
}

TEST_CASE("model specs build the named phases") {
    PhaseFunction bs = build_phase(parse_phase_spec(Json::parse(R"({"kind": "bargmann", "n": 2})")));
    CHECK(bs.model_id == "bargmann");
    CHECK(bs.n == 2);
    PhaseFunction fs = build_phase(parse_phase_spec(Json::parse(R"({"kind": "fubini_study"})")));
    CHECK(fs.model_id == "fubini_study");
    PhaseSpec sc = parse_phase_spec(Json::parse(R"({"kind": "scrambled", "n": 1, "seed": 5, "scramble": "symplectic"})"));
    const QuadraticPhase a = spec_quadratic(sc);
    const QuadraticPhase b = random_quadratic_projector_phase(5, 1, Scramble::Symplectic).phase.quadratic();
    CHECK(max_abs(a.B - b.B) == 0.0);
    PhaseSpec dom = parse_phase_spec(Json::parse(R"({"kind": "bargmann", "domain": {"box": 0.5, "rho": 0.25}})"));
    CHECK(build_phase(dom).domain.rho == 0.25);
    CHECK(build_phase(dom).domain.box(1) == 0.5);
}

TEST_CASE("polynomial specs") {
    // the Bargmann phase written as a polynomial in (a1, a2, b1, b2)
    Poly p = quadratic_to_poly(bargmann_quadratic(1));
    Json j;
    j["kind"] = "polynomial";
    j["n"] = 1;
    j["poly"] = poly_to_json(p);
    PhaseFunction f = build_phase(parse_phase_spec(j));
    Vec a(2), b(2);
    a << 0.0, 0.0;
    b << 1.0, 0.0;
    CHECK(std::abs(f(a, b) - cplx(0, 0.5)) < 1e-15);
    CHECK(Poly::distance(parse_poly(poly_to_json(p), "poly"), p) == 0.0);
}

TEST_CASE("malformed specs name the offending field") {
    CHECK(field_of(Json::parse(R"({"n": 1})")) == "kind");
    CHECK(field_of(Json::parse(R"({"kind": "torus"})")) == "kind");
    CHECK(field_of(Json::parse(R"({"kind": "bargmann", "n": 0})")) == "n");
    CHECK(field_of(Json::parse(R"({"kind": "bargmann", "n": "one"})")) == "n");
    CHECK(field_of(Json::parse(R"({"kind": "fubini_study", "n": 2})")) == "n");
    CHECK(field_of(Json::parse(R"({"kind": "bargmann", "alpha0": [0, 0, 0]})")) == "alpha0");
    CHECK(field_of(Json::parse(R"({"kind": "bargmann", "theta": [0, "x"]})")) == "theta[1]");
    CHECK(field_of(Json::parse(R"({"kind": "scrambled"})")) == "seed");
    CHECK(field_of(Json::parse(R"({"kind": "scrambled", "seed": -3})")) == "seed");
    CHECK(field_of(Json::parse(R"({"kind": "scrambled", "seed": 1, "scramble": "shear"})")) == "scramble");
    CHECK(field_of(Json::parse(R"({"kind": "bargmann", "domain": {"rho": 1}})")) == "domain.box");
    CHECK(field_of(Json::parse(R"({"kind": "bargmann", "domain": {"box": [1, -1], "rho": 1}})")) == "domain.box[1]");
    CHECK(field_of(Json::parse(R"({"kind": "polynomial", "poly": {"nvars": 3, "terms": []}})")) == "poly.nvars");

    Json q = bargmann_quadratic_json();
    q.erase("C");
    CHECK(field_of(q) == "C");
    q = bargmann_quadratic_json();
    q["A"][0][1] = Json::array({0.5, 0});
    CHECK(field_of(q) == "A");  // not symmetric
    q = bargmann_quadratic_json();
    q["B"][0][0] = Json::array({0.1, -1});
    CHECK(field_of(q) == "B");  // zero-sum violated
    q = bargmann_quadratic_json();
    q["B"][1][0] = Json::array({1, 0, 3});
    CHECK(field_of(q) == "B[1][0]");
    // all of A, B, C negated: Re D < 0
    q = bargmann_quadratic_json();
    for (const char* k : {"A", "B", "C"})
        for (auto& row : q[k])
            for (auto& e : row) e = Json::array({-e[0].get<double>(), -e[1].get<double>()});
    CHECK(field_of(q) == "B");
}

TEST_CASE("kernel specs") {
    Json j = bargmann_quadratic_json();
    j["h"] = 0.1;
    j["amplitude"] = Json::array({2.0, 0.0});
    KernelSpec k = parse_kernel_spec(j);
    GaussianKernel K = build_kernel(k);
    CHECK(kernel_distance(compose_kernels_exact(K, K), K) < 1e-12);
    KernelSpec back = parse_kernel_spec(kernel_spec_to_json(k));
    CHECK(kernel_distance(build_kernel(back), K) == 0.0);
    j["h"] = -1.0;
    CHECK_THROWS_AS(parse_kernel_spec(j), SpecError);
    j["h"] = 0.1;
    Poly big(4);
    big.add_term({7, 0, 0, 0}, 1.0);
    j["amplitude"] = poly_to_json(big);
    try {
        parse_kernel_spec(j);
        CHECK(false);
    } catch (const SpecError& e) {
        CHECK(e.field == "amplitude");
    }
}

TEST_CASE("packet specs") {
    RVec x0(2), xi(2);
    x0 << 0.2, -0.1;
    xi << 0.1, 0.2;
    WavePacket p = coherent_state(x0, xi, 0.05);
    WavePacket q = parse_packet_spec(packet_to_json(p));
    CHECK((q.x0 - x0).norm() == 0.0);
    CHECK((q.ball_center - xi).norm() < 1e-15);
    double x[2] = {0.25, -0.05};
    CHECK(std::abs(q(x) - p(x)) < 1e-15);
    Json bad = packet_to_json(p);
    bad["x0"] = Json::array({0.2});
    try {
        parse_packet_spec(bad);
        CHECK(false);
    } catch (const SpecError& e) {
        CHECK(e.field == "x0");
    }
    bad = packet_to_json(p);
    bad["x0"] = Json::array({1.0, 1.0});  // Im S(x0) != 0 there
    CHECK_THROWS_AS(parse_packet_spec(bad), SpecError);
}

TEST_CASE("subspace json") {
    Mat b(4, 2);
    b << 1, 0, cplx(0, 1), 0, 0, 1, 0, cplx(0.5, -2);
    LinearSubspace V(b);
    LinearSubspace W = parse_subspace(subspace_to_json(V));
    CHECK(subspace_distance(W, V) < 1e-14);
    Json j = subspace_to_json(V);
    j["ambient"] = 3;
    CHECK_THROWS_AS(parse_subspace(j), SpecError);
}

TEST_CASE("grid dump round trip") {
    RVec c(2);
    c << 0.1, 0.2;
    Grid g = Grid::centered(c, 0.3, 0.1);
    GridFunction f = coherent_state(c, c, 0.1).sample(g);
    const std::string prefix = tmp("phaselab_grid_dump").string();
    write_grid_function(prefix, f);
    GridFunction h = read_grid_function(prefix);
    CHECK(h.grid.count == g.count);
    CHECK(h.grid.spacing == g.spacing);
    CHECK((h - f).norm() == 0.0);
    // raw layout: first value's real part as little-endian f64
    std::ifstream in(prefix + ".bin", std::ios::binary);
    unsigned char buf[8];
    in.read(reinterpret_cast<char*>(buf), 8);
    std::uint64_t bits = 0;
    for (int k = 7; k >= 0; --k) bits = (bits << 8) | buf[k];
    double v;
    std::memcpy(&v, &bits, 8);
    CHECK(v == f.values[0].real());
    CHECK(std::filesystem::file_size(prefix + ".bin") == 16 * f.values.size());
}
