#pragma once

#include "graphcx/hairy.hpp"

namespace gcx {

// Attachment of one twist member W across the arguments gs (k = gs.size()):
// every internal vertex of W merges onto an internal vertex of some argument,
// pairing off its decoration multiset against equal decorations there; W's
// unit-labeled hairs attach to internal argument vertices or stay; non-unit
// hairs stay. Internally disconnected or inadmissible results are dropped.
// Accumulates coeff-weighted terms into out.
void z_attach_terms(const std::vector<const HairyGraph*>& gs,
                    const HairyGraph& w, const Rat& coeff, ValencePolicy policy,
                    LinCombo& out);

// The join surgery shared by delta_join and the standard bracket: the hairs
// listed in `consumed` (ascending external indices of the concatenated
// argument graph g) re-attach to a fresh internal vertex carrying one fresh
// hair labeled by the product of the consumed labels.
void emit_join(const HairyGraph& g, const std::vector<int>& consumed,
               const Rat& coeff, LinCombo& out);

// Concatenates hairy graphs blockwise (externals, internals, edges, decos in
// argument order); the juxtaposed orientation.
HairyGraph concat_hairy(const std::vector<const HairyGraph*>& gs);

}  // namespace gcx
