#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "graphcx/graph.hpp"

namespace gcx {

// A graph in canonical labeled form plus its stable key. Two structurally
// valid graphs are isomorphic (respecting mode, kontsevich numbering,
// decorations and labels) iff their keys are equal.
struct CanonicalGraph {
    HairyGraph graph;
    std::string key;

    bool operator<(const CanonicalGraph& o) const { return key < o.key; }
    bool operator==(const CanonicalGraph& o) const { return key == o.key; }
};

struct CanonResult {
    CanonicalGraph canon;
    int sign;  // -1, 0, +1; 0 iff the graph has an orientation-odd automorphism
};

// Canonical form with sign. Internal vertices (and hairs in hairy mode) are
// relabeled by a deterministic minimal certificate over the automorphism
// search; the sign is the orientation parity relating the input to the
// canonical representative. Independent of the input labeling.
CanonResult canonicalize(const HairyGraph& g);

// Key of the canonical form without keeping the graph.
std::string canonical_key(const HairyGraph& g);

}  // namespace gcx
