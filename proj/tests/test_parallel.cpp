#include <doctest.h>

#include "graphcx/io.hpp"
#include "graphcx/linalg.hpp"
#include "graphcx/parallel.hpp"
#include "graphcx/pipelines.hpp"
#include "helpers.hpp"

using namespace gcx;
using namespace gcxtest;

// The concurrency contract: outputs are bit-identical regardless of the
// worker pool width.

TEST_CASE("enumeration is width-independent") {
    EnumerationSpec spec;
    spec.mode = Mode::Kontsevich;
    spec.n = 2;
    spec.num_external = 3;
    TruncationParams T;
    T.max_edges = 5;
    T.max_internal_vertices = 3;
    std::vector<std::string> runs;
    for (int width : {1, 2, 4}) {
        set_parallelism(width);
        ComplexSlice s = enumerate_basis(spec, 1, T);
        std::string out = write_basis(s);
        runs.push_back(out);
    }
    set_parallelism(0);
    CHECK(runs[0] == runs[1]);
    CHECK(runs[1] == runs[2]);
    ComplexSlice ref = enumerate_basis_serial(spec, 1, T);
    CHECK(write_basis(ref) == runs[0]);
}

TEST_CASE("boundary assembly is width-independent") {
    EnumerationSpec spec;
    spec.mode = Mode::Kontsevich;
    spec.n = 3;
    spec.num_external = 2;
    TruncationParams T;
    T.max_edges = 6;
    T.max_internal_vertices = 3;
    ComplexSlice s2 = enumerate_basis(spec, 2, T);
    ComplexSlice s3 = enumerate_basis(spec, 3, T);
    DiffOp d = [&](const HairyGraph& g) { return d_contract(g); };
    std::vector<std::string> runs;
    for (int width : {1, 3}) {
        set_parallelism(width);
        BoundaryResult b = boundary_matrix(s2, s3, d);
        runs.push_back(write_matrix(b.matrix));
    }
    set_parallelism(0);
    CHECK(runs[0] == runs[1]);
    BoundaryResult ref = boundary_matrix_serial(s2, s3, d);
    CHECK(write_matrix(ref.matrix) == runs[0]);
}

TEST_CASE("pipeline reports are width-independent") {
    TruncationParams T;
    T.max_edges = 4;
    T.max_internal_vertices = 2;
    T.max_hairs = 3;
    std::vector<std::string> runs;
    for (int width : {1, 2}) {
        set_parallelism(width);
        runs.push_back(product_sphere_enumerate(3, 3, T).to_text());
    }
    set_parallelism(0);
    CHECK(runs[0] == runs[1]);
}
