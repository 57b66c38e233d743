#pragma once

#include <cstdint>

#include "graphcx/hairy.hpp"

namespace gcx {

// Truncation bounds defining the finite windows all series run in.
struct TruncationParams {
    int max_edges = 6;
    int max_internal_vertices = 4;
    int max_hairs = 8;
    int max_total_decoration_degree = 64;
    int max_loop_order = 8;

    bool admits(const HairyGraph& g) const;
};

// The combinatorial L-infinity operations l_k = l_k^std + l_k^Z. An empty
// twist gives the untwisted structure.
struct LinfStructure {
    ValencePolicy policy;
    const MCElement* twist = nullptr;  // nullable; does not own
};

// Standard part: one non-empty subset of non-unit hairs per argument, all
// glued to a fresh internal vertex joined to a fresh hair labeled by the
// product of the consumed labels.
LinCombo l_k_std(const std::vector<const HairyGraph*>& gs,
                 ValencePolicy policy = {});

// Twist part: one member of Z merges/attaches across all arguments so that
// the union is internally connected (bridging them).
LinCombo l_k_Z(const std::vector<const HairyGraph*>& gs, const MCElement& z,
               ValencePolicy policy = {});

// l_1 = twisted differential; l_k (k >= 2) = l_k^std + l_k^Z.
LinCombo l_k(const LinfStructure& s, const std::vector<const HairyGraph*>& gs);

// Curvature sum_{k>=1} (1/k!) l_k(x,..,x), truncated to T. The edge-count
// filtration makes only finitely many arities contribute.
LinCombo curvature(const LinfStructure& s, const LinCombo& x,
                   const TruncationParams& T);

// Residual report: curvature decomposed by degree. Empty = verified through T.
struct MCReport {
    std::map<int, LinCombo> residual_by_degree;
    bool empty() const { return residual_by_degree.empty(); }
};
MCReport mc_check(const LinfStructure& s, const MCElement& z,
                  const TruncationParams& T);

// --- Polarization over a free graded-commutative coefficient ring ---

// Coefficients in the exterior-flavored ring on variables eps_0..eps_{m-1}
// of prescribed parities; only square-free monomials are tracked (bitmask).
struct PolarizedCombo {
    // (monomial mask, canonical key) -> (graph, coefficient). The monomial is
    // written to the right of the graph, variables in ascending index order.
    std::map<std::pair<uint32_t, std::string>, std::pair<CanonicalGraph, Rat>>
        terms;
    std::vector<int> var_degree;  // degree of each variable

    void add(uint32_t mask, const HairyGraph& g, const Rat& c);
    void add_canonical(uint32_t mask, const CanonicalGraph& cg, const Rat& c);
    bool is_zero() const { return terms.empty(); }
};

// Evaluates the generating function U on x with ring coefficients,
// truncated to T.
PolarizedCombo polarized_curvature(const LinfStructure& s,
                                   const PolarizedCombo& x,
                                   const TruncationParams& T);

// Power-series form of the structure relations: the difference
// U^{R[eps]}(x + eps U^R(x)) - U^{R[eps]}(x) for x = sum_i x_i eps_i, with
// |eps_i| = 1 - |x_i| and |eps| = -1. Zero through T iff the generalized
// Jacobi identities hold up to the given arity on these arguments.
PolarizedCombo linf_relation_check(const LinfStructure& s,
                                   const std::vector<const HairyGraph*>& xs,
                                   const TruncationParams& T);

}  // namespace gcx
