#pragma once

#include <functional>

#include "graphcx/linf.hpp"

namespace gcx {

// Enumerated canonical basis at fixed degree under truncation bounds.
struct ComplexSlice {
    TruncationParams params;
    int degree = 0;
    std::vector<CanonicalGraph> basis;  // sorted by canonical key, no dups
    bool closed_under_d = false;

    int find(const std::string& key) const;  // index or -1
};

struct EnumerationSpec {
    Mode mode = Mode::Kontsevich;
    int n = 3;
    int num_external = 0;  // kontsevich arity; ignored in hairy mode
    AlgebraPtr alg_v;      // may be null = no decorations
    AlgebraPtr alg_u;      // hairy mode label algebra
    ValencePolicy policy;
    bool require_connected = false;   // hairy complexes use connected graphs
    bool hairless_only = false;       // the >=1-decoration hairless sector
    int min_decorations = 0;
};

// Every admissible canonical graph of the given degree within T, each exactly
// once, in deterministic (canonical key) order.
ComplexSlice enumerate_basis(const EnumerationSpec& spec, int degree,
                             const TruncationParams& T);

// Serial reference twin of enumerate_basis; the OpenMP kernel must agree
// with it bit-exactly.
ComplexSlice enumerate_basis_serial(const EnumerationSpec& spec, int degree,
                                    const TruncationParams& T);

// All admissible canonical graphs in the window, every degree.
std::vector<CanonicalGraph> enumerate_all(const EnumerationSpec& spec,
                                          const TruncationParams& T);
std::vector<CanonicalGraph> enumerate_all_serial(const EnumerationSpec& spec,
                                                 const TruncationParams& T);

struct SparseMatrix {
    int rows = 0, cols = 0;
    std::vector<std::tuple<int, int, Rat>> entries;  // no dups, no zeros
};

using DiffOp = std::function<LinCombo(const HairyGraph&)>;

// Column j = coordinates of d(src.basis[j]) in dst's basis. If some image
// graph is missing from dst the matrix is flagged not closed; with
// require_closed it throws instead.
struct BoundaryResult {
    SparseMatrix matrix;
    bool closed = true;
};
BoundaryResult boundary_matrix(const ComplexSlice& src, const ComplexSlice& dst,
                               const DiffOp& d, bool require_closed = false);
BoundaryResult boundary_matrix_serial(const ComplexSlice& src,
                                      const ComplexSlice& dst, const DiffOp& d,
                                      bool require_closed = false);

// Exact rank over Q: fraction-free Bareiss elimination with Markowitz-style
// pivot selection. Bit-identical across runs.
int rank(const SparseMatrix& m);

// Independent oracle route: dense textbook Gaussian elimination over Q.
int rank_dense_oracle(const SparseMatrix& m);

SparseMatrix sparse_multiply(const SparseMatrix& a, const SparseMatrix& b);
bool is_zero_matrix(const SparseMatrix& m);

// Cohomology dimensions of a window of consecutive slices under d. The
// window maps slice[i] -> slice[i+1] (d has degree `step`, +1 or -1 in the
// caller's indexing; slices are simply consecutive here). A degree is
// trusted only when both adjacent boundary maps live inside enumerated
// slices.
struct CohomologyTable {
    // degree -> (dimension, trusted)
    std::map<int, std::pair<int, bool>> dims;
};
CohomologyTable cohomology_dims(const std::vector<ComplexSlice>& window,
                                const DiffOp& d);

// Quotient of a tree span by the vertex-split images of one-lower-edge trees
// with exactly one 4-valent internal vertex (IHX relators).
struct IhxResult {
    std::vector<CanonicalGraph> relator_sources;  // the 4-valent trees
    SparseMatrix relators;  // columns = relator coordinates in tree basis
    std::vector<int> surviving;  // indices into the tree basis
    int quotient_dim = 0;
};
IhxResult ihx_reduce(const ComplexSlice& tree_slice, const EnumerationSpec& spec);

}  // namespace gcx
