// Benchmark comparing the OpenMP kernels against their serial reference
// twins on matched workloads: basis enumeration, the d^2 suite, and boundary
// matrix assembly. Results must agree bit-exactly; timings are informative.

#include <omp.h>

#include <iostream>
#include <string>

#include "graphcx/io.hpp"
#include "graphcx/linalg.hpp"
#include "graphcx/parallel.hpp"

using namespace gcx;

namespace {

struct Timing {
    double serial = 0, parallel = 0;
    bool identical = false;
};

void print_row(const std::string& name, const Timing& t) {
    std::cout << name << ": serial " << t.serial << " s, parallel " << t.parallel
              << " s, speedup " << (t.parallel > 0 ? t.serial / t.parallel : 0.0)
              << "x, outputs " << (t.identical ? "identical" : "DIFFER") << "\n";
}

Timing bench_enumeration() {
    EnumerationSpec spec;
    spec.mode = Mode::Kontsevich;
    spec.n = 2;
    spec.num_external = 4;
    TruncationParams T;
    T.max_edges = 6;
    T.max_internal_vertices = 3;
    T.max_loop_order = 16;
    Timing t;
    double t0 = omp_get_wtime();
    auto serial = enumerate_all_serial(spec, T);
    t.serial = omp_get_wtime() - t0;
    t0 = omp_get_wtime();
    auto parallel = enumerate_all(spec, T);
    t.parallel = omp_get_wtime() - t0;
    t.identical = serial.size() == parallel.size();
    for (size_t i = 0; t.identical && i < serial.size(); ++i)
        t.identical = serial[i].key == parallel[i].key;
    return t;
}

Timing bench_dsq() {
    EnumerationSpec spec;
    spec.mode = Mode::Kontsevich;
    spec.n = 3;
    spec.num_external = 3;
    TruncationParams T;
    T.max_edges = 6;
    T.max_internal_vertices = 3;
    T.max_loop_order = 16;
    auto all = enumerate_all(spec, T);
    auto run = [&](bool parallel) {
        long failures = 0;
        auto body = [&](size_t i) {
            LinCombo first = d_contract(all[i].graph);
            LinCombo second;
            for (const auto& [key, tc] : first.terms())
                second.add(d_contract(tc.first.graph), tc.second);
            if (!second.is_zero())
#pragma omp atomic
                ++failures;
        };
        if (parallel) {
#pragma omp parallel for schedule(dynamic)
            for (size_t i = 0; i < all.size(); ++i) body(i);
        } else {
            for (size_t i = 0; i < all.size(); ++i) body(i);
        }
        return failures;
    };
    Timing t;
    double t0 = omp_get_wtime();
    long f1 = run(false);
    t.serial = omp_get_wtime() - t0;
    t0 = omp_get_wtime();
    long f2 = run(true);
    t.parallel = omp_get_wtime() - t0;
    t.identical = f1 == 0 && f2 == 0;
    return t;
}

Timing bench_boundary() {
    EnumerationSpec spec;
    spec.mode = Mode::Kontsevich;
    spec.n = 2;
    spec.num_external = 4;
    TruncationParams T;
    T.max_edges = 6;
    T.max_internal_vertices = 3;
    T.max_loop_order = 16;
    ComplexSlice src = enumerate_basis(spec, 2, T);
    ComplexSlice dst = enumerate_basis(spec, 3, T);
    DiffOp d = [](const HairyGraph& g) { return d_contract(g); };
    Timing t;
    double t0 = omp_get_wtime();
    BoundaryResult serial = boundary_matrix_serial(src, dst, d);
    t.serial = omp_get_wtime() - t0;
    t0 = omp_get_wtime();
    BoundaryResult parallel = boundary_matrix(src, dst, d);
    t.parallel = omp_get_wtime() - t0;
    t.identical = write_matrix(serial.matrix) == write_matrix(parallel.matrix);
    std::cout << "  (boundary " << serial.matrix.rows << "x" << serial.matrix.cols
              << ", rank " << rank(serial.matrix) << ")\n";
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) set_parallelism(std::stoi(argv[1]));
    std::cout << "threads: " << parallelism() << "\n";
    print_row("enumeration", bench_enumeration());
    print_row("d^2 suite", bench_dsq());
    print_row("boundary assembly", bench_boundary());
    return 0;
}
