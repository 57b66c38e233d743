#pragma once

#include "graphcx/lincombo.hpp"

namespace gcx {

// Operations of the graph cooperad and its decorated comodule
// (kontsevich-mode graphs throughout).

// Contraction differential: signed sum over edges between two distinct
// vertices, at least one internal; the internal vertex merges into the other
// endpoint and decorations unite. Tadpoles are never contracted.
LinCombo d_contract(const HairyGraph& g, ValencePolicy policy = {});

// Gluing product along the shared external vertices 1..r. Orientation of the
// result juxtaposes g1's order then g2's. External decorations multiply
// (multiset union in S(V)).
LinCombo graph_product(const HairyGraph& g1, const HairyGraph& g2);

// Right S_r-action. perm[i] = new number of external i (0-based).
LinCombo permute_externals(const HairyGraph& g, const std::vector<int>& perm);

// Lambda-operation: adds a zero-valent external vertex numbered r+1.
HairyGraph add_external(const HairyGraph& g);

struct CocompositionTerm {
    CanonicalGraph quotient;  // Gamma/gamma, contracted part = new external 1
    CanonicalGraph subgraph;  // gamma, externals renumbered 1..s
    Rat coefficient;
};

// Reduced cocomposition for the external subset {1..s}: sum over subgraphs
// gamma spanned by externals 1..s plus any internal subset and any subset of
// the edges among gamma's vertices. Unchosen edges inside gamma's vertex set
// become tadpoles at the contracted vertex. Sign of the unshuffle moving
// gamma's orientation data to the right. Terms with an inadmissible factor
// are dropped.
std::vector<CocompositionTerm> cocompose(const HairyGraph& g, int s,
                                         ValencePolicy policy = {});

// Comodule coaction: as cocompose, but gamma's decorations multiply onto the
// contracted external vertex and the right factor is undecorated.
std::vector<CocompositionTerm> coaction(const HairyGraph& g, int s,
                                        ValencePolicy policy = {});

// Unique factorization into internally connected factors, each on the full
// external set. Empty graph factors as the empty multiset.
std::vector<HairyGraph> ic_factorize(const HairyGraph& g);

}  // namespace gcx
