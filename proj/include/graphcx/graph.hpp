#pragma once

#include <string>
#include <vector>

#include "graphcx/algebra.hpp"

namespace gcx {

enum class Mode { Kontsevich, Hairy };

// Vertices are numbered 0..num_external-1 (external) followed by
// num_external..num_external+num_internal-1 (internal). In kontsevich mode
// the external numbering is structural (the S_r-set); in hairy mode external
// vertices are interchangeable hairs.
struct EdgeRec {
    int a, b;  // stored direction a -> b (orientation data for odd n)
};

// One V-decoration instance. The list order of these across the graph is
// orientation data (Koszul order of the odd-degree instances).
struct Deco {
    int vertex;
    int symbol;  // basis id in alg_v
};

// A decorated graph with orientation data.
//
// Orientation conventions:
//   even n : the edge list order, together with the deco list order and the
//            hair labels in external order (odd-degree instances only).
//   odd n  : the internal-vertex order 0..k-1, each edge's stored direction,
//            and the same decoration/label orders.
// Two orientations differing by an odd permutation of the tracked data are
// negatives of each other; canonicalize() computes the relative sign.
struct HairyGraph {
    Mode mode = Mode::Kontsevich;
    int n = 2;  // ambient integer; only its parity enters signs
    int num_external = 0;
    int num_internal = 0;
    std::vector<EdgeRec> edges;
    std::vector<Deco> decos;      // kontsevich: any vertex; hairy: internal only
    std::vector<int> hair_label;  // hairy mode: U1 symbol per external vertex
    AlgebraPtr alg_v;             // decoration space (may be null if unused)
    AlgebraPtr alg_u;             // unital source algebra U1 (hairy mode)

    bool even_n() const { return n % 2 == 0; }
    bool is_external(int v) const { return v < num_external; }
    int vertex_count() const { return num_external + num_internal; }
    int internal_id(int i) const { return num_external + i; }

    int valence(int v) const;             // incident edge ends (tadpole = 2)
    int decorated_valence(int v) const;   // valence + #decorations at v
    int num_decos_at(int v) const;

    bool connected() const;
    bool internally_connected() const;  // connected after deleting externals
    int loop_order() const;             // E - V + #components

    // (n-1)E - n*V_int + deg(internal decorations) - deg(hair label preduals).
    // Hair edges count in E.
    int degree() const;

    // Structural well-formedness (identifier ranges, hair shape, label
    // presence). Throws std::runtime_error with a description on failure.
    void check_structure() const;

    std::string debug_string() const;
};

struct ValencePolicy {
    int min_internal_valence = 3;  // decoration-inclusive
};

// Total predicate: all structural invariants of the mode under the policy.
// kontsevich: every component touches an external vertex, internal vertices
// have decorated valence >= policy. hairy: externals have valence exactly 1,
// internal vertices as above.
bool is_admissible(const HairyGraph& g, ValencePolicy policy = {});

// Convenience builders used by tests and enumeration.
HairyGraph empty_kontsevich(int n, int r, AlgebraPtr v = nullptr);
HairyGraph empty_hairy(int n, AlgebraPtr v, AlgebraPtr u);

}  // namespace gcx
