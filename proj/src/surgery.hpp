#pragma once

// Shared graph-surgery helpers for the differential implementations.
// Orientation bookkeeping convention: the tracked data forms blocks
// [edges][decorations][hair labels]; operations append new atoms at the end
// of their block, consume atoms by extraction to the right (Koszul sign =
// odd atoms crossed), and remove internal vertices by moving them to the end
// of the vertex order.

#include <algorithm>

#include "graphcx/graph.hpp"

namespace gcx::surgery {

// Removes internal vertex `vid` (global id) from the numbering, shifting
// higher ids down. Returns the move-to-end parity sign for odd n (+1 for
// even n). Caller must already have detached all edges/decos from vid.
inline int remove_internal_vertex(HairyGraph& g, int vid) {
    int pos = vid - g.num_external;
    int sign = 1;
    if (!g.even_n() && (g.num_internal - 1 - pos) % 2 == 1) sign = -1;
    for (auto& e : g.edges) {
        if (e.a > vid) --e.a;
        if (e.b > vid) --e.b;
    }
    for (auto& d : g.decos)
        if (d.vertex > vid) --d.vertex;
    --g.num_internal;
    return sign;
}

// Removes external vertex `ext` (hairy mode), shifting higher externals and
// all internals down by one. The hair label atom must have been consumed by
// the caller (with its extraction sign) beforehand.
inline void remove_external_vertex(HairyGraph& g, int ext) {
    for (auto& e : g.edges) {
        if (e.a > ext) --e.a;
        if (e.b > ext) --e.b;
    }
    for (auto& d : g.decos)
        if (d.vertex > ext) --d.vertex;
    g.hair_label.erase(g.hair_label.begin() + ext);
    --g.num_external;
}

// Appends a new internal vertex; returns its global id.
inline int append_internal_vertex(HairyGraph& g) {
    ++g.num_internal;
    return g.vertex_count() - 1;
}

// Appends a new external vertex with the given label (hairy mode); internal
// ids shift up by one. Returns the new external id.
inline int append_external_vertex(HairyGraph& g, int label) {
    int ext = g.num_external;
    for (auto& e : g.edges) {
        if (e.a >= ext) ++e.a;
        if (e.b >= ext) ++e.b;
    }
    for (auto& d : g.decos)
        if (d.vertex >= ext) ++d.vertex;
    g.hair_label.push_back(label);
    ++g.num_external;
    return ext;
}

// Parity of the odd structural block: edges for even n, internal vertices
// for odd n. Leibniz-style operators acting on decoration/label atoms pass
// over this block.
inline int structural_prefix_sign(const HairyGraph& g) {
    size_t count = g.even_n() ? g.edges.size() : (size_t)g.num_internal;
    return count % 2 == 0 ? 1 : -1;
}

// Extraction sign for consuming the deco at index di: odd atoms crossed when
// moving it right out of the deco block (odd decos after it, plus odd hair
// labels).
inline int deco_extraction_sign(const HairyGraph& g, size_t di) {
    if (!g.alg_v->odd(g.decos[di].symbol)) return 1;
    int crossings = 0;
    for (size_t j = di + 1; j < g.decos.size(); ++j)
        if (g.alg_v->odd(g.decos[j].symbol)) ++crossings;
    if (g.mode == Mode::Hairy)
        for (int e = 0; e < g.num_external; ++e)
            if (g.alg_u->odd(g.hair_label[e])) ++crossings;
    return crossings % 2 == 0 ? 1 : -1;
}

// Extraction sign for consuming a set of hair labels: each consumed odd
// label crosses the odd non-consumed labels to its right (the staged block
// collects in ascending order at the far right).
inline int label_set_extraction_sign(const HairyGraph& g,
                                     const std::vector<int>& consumed_sorted) {
    int crossings = 0;
    for (int e : consumed_sorted) {
        if (!g.alg_u->odd(g.hair_label[e])) continue;
        for (int j = e + 1; j < g.num_external; ++j)
            if (g.alg_u->odd(g.hair_label[j]) &&
                !std::binary_search(consumed_sorted.begin(),
                                    consumed_sorted.end(), j))
                ++crossings;
    }
    return crossings % 2 == 0 ? 1 : -1;
}

struct DSU {
    std::vector<int> parent;
    explicit DSU(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace gcx::surgery
