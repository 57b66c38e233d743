#pragma once

// Builders and independent brute-force oracles shared by the test suites.
// The oracles work from the raw orientation definition and stay independent
// of the canonicalization path they check.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "graphcx/canonical.hpp"
#include "graphcx/kontsevich.hpp"

namespace gcxtest {

using namespace gcx;

inline HairyGraph kgraph(int n, int r, int internals,
                         std::vector<std::pair<int, int>> edges,
                         AlgebraPtr v = nullptr) {
    HairyGraph g = empty_kontsevich(n, r, std::move(v));
    g.num_internal = internals;
    for (auto [a, b] : edges) g.edges.push_back({a, b});
    return g;
}

// Hairy graph builder: hair labels by symbol id, edges on the combined
// numbering (externals first).
inline HairyGraph hgraph(int n, AlgebraPtr v, AlgebraPtr u,
                         std::vector<int> hair_labels, int internals,
                         std::vector<std::pair<int, int>> edges,
                         std::vector<std::pair<int, int>> decos = {}) {
    HairyGraph g = empty_hairy(n, std::move(v), std::move(u));
    g.num_external = (int)hair_labels.size();
    g.hair_label = std::move(hair_labels);
    g.num_internal = internals;
    for (auto [a, b] : edges) g.edges.push_back({a, b});
    for (auto [vert, sym] : decos) g.decos.push_back({vert, sym});
    return g;
}

// Brute-force from the raw definition: does g admit an automorphism acting
// by an odd permutation on the orientation data? Enumerates all vertex
// bijections (internals, plus hairs in hairy mode), all edge-instance
// matchings among parallel classes, and both end-matchings per tadpole.
inline bool has_odd_automorphism_bruteforce(const HairyGraph& g) {
    bool even = g.even_n();
    int r = g.num_external, k = g.num_internal;

    // Repeated odd decorations at one vertex: their transposition is odd.
    for (size_t i = 0; i < g.decos.size(); ++i)
        for (size_t j = i + 1; j < g.decos.size(); ++j)
            if (g.decos[i].vertex == g.decos[j].vertex &&
                g.decos[i].symbol == g.decos[j].symbol &&
                g.alg_v->odd(g.decos[i].symbol))
                return true;

    std::vector<int> iperm(k), eperm(r);
    std::iota(iperm.begin(), iperm.end(), 0);
    std::iota(eperm.begin(), eperm.end(), 0);
    bool hairy = g.mode == Mode::Hairy;

    auto deco_multiset = [&](int v) {
        std::vector<int> ds;
        for (const auto& d : g.decos)
            if (d.vertex == v) ds.push_back(d.symbol);
        std::sort(ds.begin(), ds.end());
        return ds;
    };

    bool found = false;
    do {  // internal permutations
        std::vector<int> evec(r);
        std::iota(evec.begin(), evec.end(), 0);
        do {  // external permutations (hairy only; single pass otherwise)
            auto phi = [&](int v) {
                if (g.is_external(v)) return hairy ? evec[v] : v;
                return r + iperm[v - r];
            };
            // Structure preservation.
            bool ok = true;
            if (hairy)
                for (int e = 0; e < r && ok; ++e)
                    if (g.hair_label[evec[e]] != g.hair_label[e]) ok = false;
            for (int v = 0; v < g.vertex_count() && ok; ++v)
                if (deco_multiset(phi(v)) != deco_multiset(v)) ok = false;
            std::multiset<std::pair<int, int>> edges_in, edges_out;
            for (const auto& e : g.edges) {
                edges_in.insert({std::min(e.a, e.b), std::max(e.a, e.b)});
                int a = phi(e.a), b = phi(e.b);
                edges_out.insert({std::min(a, b), std::max(a, b)});
            }
            if (ok && edges_in == edges_out) {
                // Edge-instance matchings within parallel classes.
                std::map<std::pair<int, int>, std::vector<int>> cls;
                for (size_t ei = 0; ei < g.edges.size(); ++ei) {
                    auto key = std::make_pair(
                        std::min(g.edges[ei].a, g.edges[ei].b),
                        std::max(g.edges[ei].a, g.edges[ei].b));
                    cls[key].push_back((int)ei);
                }
                // psi maps edge instance -> image instance; enumerate products
                // of within-class bijections.
                std::vector<std::vector<int>> groups, targets;
                for (auto& [key, v] : cls) {
                    auto tkey = std::make_pair(0, 0);
                    int a = phi(key.first), b = phi(key.second);
                    tkey = {std::min(a, b), std::max(a, b)};
                    groups.push_back(v);
                    targets.push_back(cls[tkey]);
                }
                std::function<void(size_t, std::vector<int>&)> rec =
                    [&](size_t gi, std::vector<int>& psi) {
                        if (found) return;
                        if (gi == groups.size()) {
                            // Tadpole flips: each tadpole end-matching free.
                            std::vector<int> tads;
                            for (size_t ei = 0; ei < g.edges.size(); ++ei)
                                if (g.edges[ei].a == g.edges[ei].b)
                                    tads.push_back((int)ei);
                            int nt = (int)tads.size();
                            for (int fm = 0; fm < (1 << nt); ++fm) {
                                int sign = 1;
                                if (even) {
                                    sign *= permutation_sign(psi);
                                } else {
                                    sign *= permutation_sign(iperm);
                                    for (size_t ei = 0; ei < g.edges.size(); ++ei) {
                                        const EdgeRec& e = g.edges[ei];
                                        if (e.a == e.b) continue;
                                        const EdgeRec& im = g.edges[psi[ei]];
                                        // ends follow the vertex map
                                        if (phi(e.a) == im.b && phi(e.b) == im.a)
                                            sign = -sign;
                                        else if (!(phi(e.a) == im.a &&
                                                   phi(e.b) == im.b))
                                            sign = 0;
                                    }
                                    for (int t = 0; t < nt; ++t)
                                        if (fm & (1 << t)) sign = -sign;
                                }
                                if (sign == 0) continue;
                                // Odd decoration instance permutation.
                                std::vector<int> odd_map;
                                for (size_t di = 0; di < g.decos.size(); ++di) {
                                    if (!g.alg_v || !g.alg_v->odd(g.decos[di].symbol))
                                        continue;
                                    // image instance: unique since repeated odd
                                    // pairs were handled above
                                    for (size_t dj = 0; dj < g.decos.size(); ++dj)
                                        if (g.decos[dj].vertex ==
                                                phi(g.decos[di].vertex) &&
                                            g.decos[dj].symbol == g.decos[di].symbol)
                                            odd_map.push_back((int)dj);
                                }
                                sign *= permutation_sign(odd_map);
                                if (hairy) {
                                    std::vector<int> odd_hairs;
                                    for (int e = 0; e < r; ++e)
                                        if (g.alg_u->odd(g.hair_label[e]))
                                            odd_hairs.push_back(evec[e]);
                                    sign *= permutation_sign(odd_hairs);
                                }
                                if (sign == -1) found = true;
                                if (even) break;  // flips do not matter
                            }
                            return;
                        }
                        std::vector<int> t = targets[gi];
                        std::sort(t.begin(), t.end());
                        do {
                            for (size_t x = 0; x < groups[gi].size(); ++x)
                                psi[groups[gi][x]] = t[x];
                            rec(gi + 1, psi);
                        } while (!found && std::next_permutation(t.begin(), t.end()));
                    };
                std::vector<int> psi(g.edges.size(), 0);
                rec(0, psi);
            }
            if (found) return true;
        } while (hairy && std::next_permutation(evec.begin(), evec.end()));
    } while (std::next_permutation(iperm.begin(), iperm.end()));
    return found;
}

}  // namespace gcxtest
