#pragma once

#include "graphcx/io.hpp"

namespace gcx {

// Sphere comparison run: builds Z = 2(w-1) over rsphere(n), verifies the MC
// equation, builds the hairless >=1-decorated complex under
// delta_split + (Z.)^edge, verifies the strip-to-hairy chain identity on the
// window, and reports trusted cohomology dimensions (expected all zero).
struct S51Report {
    int n = 3, k = 3;
    TruncationParams T;
    bool mc_ok = false;
    bool chain_map_ok = false;
    int chain_map_checked = 0;
    // (weight, degree) -> (dim, trusted); weight = E - V + #decorations.
    std::map<std::pair<int, int>, std::pair<int, bool>> dims;
    bool all_trusted_zero = true;
    std::vector<std::string> warnings;

    std::string to_text() const;
};
S51Report sphere_comparison(int n, int k, const TruncationParams& T);

// Product-of-spheres enumeration: hairy trees over U1 = H^*(S^k),
// V = <w1, w2> (degree d each), ambient 2d. Applies the constraint chain
// (trees only, no unit hairs, at most one internal decoration, unitrivalent),
// IHX-reduces, and lists the surviving shapes with shifted degrees.
struct S52Shape {
    CanonicalGraph graph;
    int shifted_degree;
    std::string description;
};
struct S52FilterStep {
    std::string name;
    std::string inequality;  // the logged inequality with its values
    int before = 0, after = 0;
};
struct S52Report {
    int d = 3, k = 3;
    TruncationParams T;
    bool mc_ok = false;
    std::vector<S52FilterStep> steps;
    std::vector<S52Shape> shapes;  // final, after IHX
    bool degree_tension_flagged = false;
    std::vector<std::string> notes;

    std::string to_text() const;
};
S52Report product_sphere_enumerate(int d, int k, const TruncationParams& T);

}  // namespace gcx
