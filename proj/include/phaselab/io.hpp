#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "phaselab/gauss_calc.hpp"
#include "phaselab/operator_num.hpp"
#include "phaselab/phase_core.hpp"
#include "phaselab/symplin.hpp"

namespace phaselab {

using Json = nlohmann::ordered_json;

// Malformed spec: `field` is the JSON path of the offending entry, e.g. "A[1][0]" or "domain.rho".
struct SpecError : Error {
    std::string field;
    SpecError(const std::string& field, const std::string& what);
};

// "bargmann" | "fubini_study" | "quadratic" | "polynomial" | "scrambled"
struct PhaseSpec {
    std::string kind = "bargmann";
    int n = 1;
    RVec alpha0, theta;
    Mat A, B, C;
    std::uint64_t seed = 0;
    std::string scramble = "general_linear";  // scrambled only
    std::optional<Poly> poly;                 // polynomial only, 4n variables
    std::optional<Domain> domain;
};

PhaseSpec parse_phase_spec(const Json& j);
Json phase_spec_to_json(const PhaseSpec& s);
PhaseFunction build_phase(const PhaseSpec& s);
// quadratic data of quadratic/bargmann/scrambled specs; throws SpecError("kind") otherwise
QuadraticPhase spec_quadratic(const PhaseSpec& s);

// {"nvars": int, "terms": [[[exponents..], [re, im]], ...]}
Poly parse_poly(const Json& j, const std::string& field, int nvars = -1);
Json poly_to_json(const Poly& p);

Json complex_matrix_to_json(const Mat& M);
Mat parse_complex_matrix(const Json& j, const std::string& field, int rows, int cols);
RVec parse_real_vector(const Json& j, const std::string& field, int size);

// phase spec plus "h" and "amplitude" (polynomial in (alpha, beta), or a [re, im] constant)
struct KernelSpec {
    PhaseSpec phase;
    double h = 0.1;
    Poly amplitude;
};
KernelSpec parse_kernel_spec(const Json& j);
Json kernel_spec_to_json(const KernelSpec& s);
GaussianKernel build_kernel(const KernelSpec& s);

// {"S": poly, "x0": [..], "sigma": poly, "h": float, "ball": {"center": [..], "radius": float}}
WavePacket parse_packet_spec(const Json& j);
Json packet_to_json(const WavePacket& p);

// {"ambient": int, "basis": [column, ...]}, each column an array of [re, im]
Json subspace_to_json(const LinearSubspace& V);
LinearSubspace parse_subspace(const Json& j, const std::string& field = "");

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

// <prefix>.bin: little-endian f64, interleaved re/im in lattice order; <prefix>.json: box and spacing
void write_grid_function(const std::string& prefix, const GridFunction& f);
GridFunction read_grid_function(const std::string& prefix);

}  // namespace phaselab
