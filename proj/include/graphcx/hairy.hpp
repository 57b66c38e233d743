#pragma once

#include "graphcx/lincombo.hpp"

namespace gcx {

// Degree-homogeneous element intended to satisfy the Maurer-Cartan equation
// up to truncation. Members must be internally connected; they are validated
// at minimum decoration-inclusive valence 2 (the standard elements have
// 2-valent decorated vertices) while the differentials acting with Z run at
// the ambient policy.
struct MCElement {
    LinCombo value;
    int shifted_degree = 0;  // graph degree + 1

    void validate() const;  // throws on inhomogeneous/disconnected members
};

// Twisted differential d = delta_algebra + delta_split + delta_join + delta_Z
// on hairy-mode graphs.

// Leibniz application of the U1 differential to each hair label.
LinCombo delta_algebra(const HairyGraph& g);

// Signed sum over internal vertices and partitions of the incident half-edge
// and decoration set into two blocks, each block a new internal vertex joined
// by a fresh edge; partitions violating the policy on either offspring are
// skipped.
LinCombo delta_split(const HairyGraph& g, ValencePolicy policy = {});

// For each subset S of non-unit-labeled hairs with |S| >= 2: the hairs of S
// re-attach to a fresh internal vertex carrying one new hair labeled by the
// product of the consumed labels in U1. Unit-labeled hairs never join (the
// pairing with the unit slot is degenerate; required by d^2 = 0).
LinCombo delta_join(const HairyGraph& g, ValencePolicy policy = {});

// Action of a Maurer-Cartan element: for each member W of Z, each internal
// vertex of W merges onto an internal vertex of g, pairing off its decoration
// multiset against equal decorations there; W's unit-labeled hairs attach to
// internal vertices of g or stay; non-unit hairs stay. Results must be
// internally connected.
LinCombo delta_Z(const HairyGraph& g, const MCElement& z,
                 ValencePolicy policy = {});

LinCombo twisted_d(const HairyGraph& g, const MCElement& z,
                   ValencePolicy policy = {});
LinCombo twisted_d(const LinCombo& x, const MCElement& z,
                   ValencePolicy policy = {});

// delta_Z for the sphere element 2(w---1) split by whether the unit hair
// stayed (hair part) or attached (edge part). hair + edge = delta_Z.
struct ZParts {
    LinCombo hair_part;
    LinCombo edge_part;
};
ZParts z_parts_s51(const HairyGraph& g, const MCElement& z51,
                   ValencePolicy policy = {});

// Identification of the hairless >=1-decorated sector with undecorated hairy
// graphs: every decoration becomes a unit-labeled hair at its vertex.
// Bijective on basis elements; intertwines delta_split + (Z.)^edge with
// delta_split + hair re-attachment (tested, not assumed).
LinCombo strip_to_hairy(const HairyGraph& g);

// The transported edge action: re-attach one hair's free end to an internal
// vertex (signed sum over hairs and target vertices).
LinCombo hair_attach(const HairyGraph& g);

}  // namespace gcx
