#pragma once

#include <iosfwd>
#include <stdexcept>

#include "graphcx/kontsevich.hpp"
#include "graphcx/linalg.hpp"

namespace gcx {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what),
          line(line_) {}
};

// Line-oriented graph text format:
//   graph mode=hairy nparity=even
//   alg V sphere2d
//   alg U sphereK
//   iv 1 deco=w1
//   iv 2
//   ev 1 deco=a
//   edge i1 i2
//   edge i2 e1
//   orient edges: 1 2
// Identifiers iN internal, eN external. Even mode orients by edge indices in
// declaration order; odd mode uses "orient ivs: ..." plus "orient dirs: ..."
// (+/- per edge, + meaning as declared). Unknown keys are rejected with a
// line-numbered diagnostic. Writers emit fields in the exact order above.
HairyGraph parse_graph_block(std::istream& in, const AlgebraRegistry& reg,
                             int& line_no);
HairyGraph parse_graph_file(const std::string& path, const AlgebraRegistry& reg);
std::string write_graph_block(const HairyGraph& g);

// MC element files: a leading "mc shifted_degree=<d>" header, then one
// "coeff p/q" line per graph block.
MCElement parse_mc_file(const std::string& path, const AlgebraRegistry& reg);
std::string write_mc_file(const MCElement& z);

// Cocomposition terms as paired graph blocks separated by an "(x)" marker.
std::string write_cocomposition_terms(const std::vector<CocompositionTerm>& ts);

// Matrix files: header "rows cols nnz", then "row col p/q" per line, 0-indexed.
std::string write_matrix(const SparseMatrix& m);
SparseMatrix parse_matrix(std::istream& in);

// Basis files: ordered graph blocks with "# basis <index>" headers.
std::string write_basis(const ComplexSlice& slice);

struct RunConfig {
    std::map<std::string, std::string> algebra_files;  // name -> path
    TruncationParams default_truncation;
    std::string output_dir = ".";
    unsigned seed = 1;  // permutation-invariance tests only
    int parallelism = 0;  // 0 = library default
    bool strict = false;
};

// Key=value config file; also readable from the GRAPHCX_CONFIG env var.
RunConfig parse_config_file(const std::string& path);

// Algebra definition files:
//   algebra myalg
//   sym one deg 0 unit
//   sym w deg 3
//   mult w w = 0
//   diff w = 0
// Omitted products default to 0 except unit products; omitted differentials
// default to 0.
AlgebraPtr parse_algebra_file(const std::string& path);

// The standard MC elements, built over rsphereN / psphereD decorations.
MCElement make_z51(int n);  // 2 (w --- unit hair)
MCElement make_z52(int d);  // (w1) --- (w2)

}  // namespace gcx
