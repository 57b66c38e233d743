#include "graphcx/kontsevich.hpp"

#include <stdexcept>

#include "surgery.hpp"

namespace gcx {

LinCombo d_contract(const HairyGraph& g, ValencePolicy policy) {
    LinCombo out;
    for (size_t i = 0; i < g.edges.size(); ++i) {
        int a = g.edges[i].a, b = g.edges[i].b;
        if (a == b) continue;  // tadpoles are never contracted
        if (g.is_external(a) && g.is_external(b)) continue;
        int kept = std::min(a, b), removed = std::max(a, b);  // removed internal
        int presign = 1;
        HairyGraph h = g;
        if (g.even_n()) {
            // Move edge i to the front of the edge order, then drop it.
            if (i % 2 == 1) presign = -presign;
        } else {
            // Direction must run kept -> removed.
            if (g.edges[i].a != kept) presign = -presign;
        }
        h.edges.erase(h.edges.begin() + i);
        for (auto& e : h.edges) {
            if (e.a == removed) e.a = kept;
            if (e.b == removed) e.b = kept;
        }
        for (auto& d : h.decos)
            if (d.vertex == removed) d.vertex = kept;
        presign *= surgery::remove_internal_vertex(h, removed);
        if (!is_admissible(h, policy)) continue;
        out.add_graph(h, Rat(presign));
    }
    return out;
}

LinCombo graph_product(const HairyGraph& g1, const HairyGraph& g2) {
    if (g1.mode != Mode::Kontsevich || g2.mode != Mode::Kontsevich)
        throw std::runtime_error("graph_product needs kontsevich mode");
    if (g1.num_external != g2.num_external || g1.n != g2.n)
        throw std::runtime_error("graph_product arity/dimension mismatch");
    HairyGraph h = g1;
    int shift = g1.num_internal;
    h.num_internal += g2.num_internal;
    auto remap = [&](int v) {
        return g2.is_external(v) ? v : v + shift;
    };
    for (const auto& e : g2.edges) h.edges.push_back({remap(e.a), remap(e.b)});
    for (const auto& d : g2.decos) h.decos.push_back({remap(d.vertex), d.symbol});
    LinCombo out;
    out.add_graph(h, Rat(1));
    return out;
}

LinCombo permute_externals(const HairyGraph& g, const std::vector<int>& perm) {
    if (g.mode != Mode::Kontsevich)
        throw std::runtime_error("permute_externals needs kontsevich mode");
    if ((int)perm.size() != g.num_external)
        throw std::runtime_error("permutation size mismatch");
    HairyGraph h = g;
    auto remap = [&](int v) { return g.is_external(v) ? perm[v] : v; };
    for (auto& e : h.edges) {
        e.a = remap(e.a);
        e.b = remap(e.b);
    }
    for (auto& d : h.decos) d.vertex = remap(d.vertex);
    LinCombo out;
    out.add_graph(h, Rat(1));
    return out;
}

HairyGraph add_external(const HairyGraph& g) {
    HairyGraph h = g;
    int new_ext = g.num_external;
    for (auto& e : h.edges) {
        if (e.a >= new_ext) ++e.a;
        if (e.b >= new_ext) ++e.b;
    }
    for (auto& d : h.decos)
        if (d.vertex >= new_ext) ++d.vertex;
    ++h.num_external;
    return h;
}

namespace {

// Shared enumeration for cocompose/coaction. gamma is spanned by externals
// 0..s-1 plus an internal subset, with an arbitrary subset of the edges among
// gamma's vertices; unchosen edges inside gamma become tadpoles at the
// contracted vertex.
std::vector<CocompositionTerm> cocompose_impl(const HairyGraph& g, int s,
                                              ValencePolicy policy,
                                              bool decorations_to_quotient) {
    if (g.mode != Mode::Kontsevich)
        throw std::runtime_error("cocompose needs kontsevich mode");
    if (s < 1 || s > g.num_external)
        throw std::runtime_error("cocompose: s out of range");
    int r = g.num_external, k = g.num_internal;

    std::map<std::pair<std::string, std::string>,
             std::pair<std::pair<CanonicalGraph, CanonicalGraph>, Rat>>
        acc;

    for (int vmask = 0; vmask < (1 << k); ++vmask) {
        std::vector<bool> in_gamma(g.vertex_count(), false);
        for (int e = 0; e < s; ++e) in_gamma[e] = true;
        for (int i = 0; i < k; ++i)
            if (vmask & (1 << i)) in_gamma[g.internal_id(i)] = true;

        std::vector<int> candidate_edges;
        for (size_t ei = 0; ei < g.edges.size(); ++ei)
            if (in_gamma[g.edges[ei].a] && in_gamma[g.edges[ei].b])
                candidate_edges.push_back((int)ei);
        size_t ce = candidate_edges.size();
        for (size_t emask = 0; emask < (size_t(1) << ce); ++emask) {
            std::vector<bool> in_gamma_edge(g.edges.size(), false);
            for (size_t j = 0; j < ce; ++j)
                if (emask & (size_t(1) << j)) in_gamma_edge[candidate_edges[j]] = true;

            int presign = 1;
            if (g.even_n()) {
                // Unshuffle: gamma's edges move to the right past later
                // quotient edges.
                int inv = 0;
                for (size_t x = 0; x < g.edges.size(); ++x)
                    if (in_gamma_edge[x])
                        for (size_t y = x + 1; y < g.edges.size(); ++y)
                            if (!in_gamma_edge[y]) ++inv;
                if (inv % 2 == 1) presign = -presign;
            } else {
                int inv = 0;
                for (int x = 0; x < k; ++x)
                    if (vmask & (1 << x))
                        for (int y = x + 1; y < k; ++y)
                            if (!(vmask & (1 << y))) ++inv;
                if (inv % 2 == 1) presign = -presign;
            }
            // Decoration unshuffle when decorations travel with gamma.
            if (!decorations_to_quotient && g.alg_v) {
                int inv = 0;
                for (size_t x = 0; x < g.decos.size(); ++x)
                    if (in_gamma[g.decos[x].vertex] && g.alg_v->odd(g.decos[x].symbol))
                        for (size_t y = x + 1; y < g.decos.size(); ++y)
                            if (!in_gamma[g.decos[y].vertex] &&
                                g.alg_v->odd(g.decos[y].symbol))
                                ++inv;
                if (inv % 2 == 1) presign = -presign;
            }

            // Build gamma: externals 0..s-1, internals = chosen subset in order.
            HairyGraph gamma;
            gamma.mode = Mode::Kontsevich;
            gamma.n = g.n;
            gamma.num_external = s;
            gamma.alg_v = decorations_to_quotient ? nullptr : g.alg_v;
            std::vector<int> gmap(g.vertex_count(), -1);
            for (int e = 0; e < s; ++e) gmap[e] = e;
            for (int i = 0; i < k; ++i)
                if (vmask & (1 << i)) {
                    gmap[g.internal_id(i)] = s + gamma.num_internal;
                    ++gamma.num_internal;
                }
            for (size_t ei = 0; ei < g.edges.size(); ++ei)
                if (in_gamma_edge[ei])
                    gamma.edges.push_back(
                        {gmap[g.edges[ei].a], gmap[g.edges[ei].b]});
            if (!decorations_to_quotient)
                for (const auto& d : g.decos)
                    if (in_gamma[d.vertex])
                        gamma.decos.push_back({gmap[d.vertex], d.symbol});

            // Build the quotient: new external 0 = contracted gamma, then the
            // remaining externals renumbered, internals outside gamma in order.
            HairyGraph quot;
            quot.mode = Mode::Kontsevich;
            quot.n = g.n;
            quot.num_external = r - s + 1;
            quot.alg_v = g.alg_v;
            std::vector<int> qmap(g.vertex_count(), -1);
            for (int e = 0; e < s; ++e) qmap[e] = 0;
            for (int e = s; e < r; ++e) qmap[e] = e - s + 1;
            for (int i = 0; i < k; ++i)
                if (!(vmask & (1 << i))) {
                    qmap[g.internal_id(i)] = quot.num_external + quot.num_internal;
                    ++quot.num_internal;
                }
            for (int i = 0; i < k; ++i)
                if (vmask & (1 << i)) qmap[g.internal_id(i)] = 0;
            for (size_t ei = 0; ei < g.edges.size(); ++ei)
                if (!in_gamma_edge[ei])
                    quot.edges.push_back({qmap[g.edges[ei].a], qmap[g.edges[ei].b]});
            for (const auto& d : g.decos)
                if (decorations_to_quotient || !in_gamma[d.vertex])
                    quot.decos.push_back({qmap[d.vertex], d.symbol});

            if (!is_admissible(gamma, policy) || !is_admissible(quot, policy))
                continue;
            CanonResult cq = canonicalize(quot);
            if (cq.sign == 0) continue;
            CanonResult cgam = canonicalize(gamma);
            if (cgam.sign == 0) continue;
            Rat coeff = Rat(presign * cq.sign * cgam.sign);
            auto key = std::make_pair(cq.canon.key, cgam.canon.key);
            auto it = acc.find(key);
            if (it == acc.end())
                acc.emplace(key,
                            std::make_pair(std::make_pair(cq.canon, cgam.canon), coeff));
            else {
                it->second.second += coeff;
                if (it->second.second == 0) acc.erase(it);
            }
        }
    }

    std::vector<CocompositionTerm> out;
    for (auto& [key, val] : acc)
        out.push_back({val.first.first, val.first.second, val.second});
    return out;
}

}  // namespace

std::vector<CocompositionTerm> cocompose(const HairyGraph& g, int s,
                                         ValencePolicy policy) {
    return cocompose_impl(g, s, policy, /*decorations_to_quotient=*/false);
}

std::vector<CocompositionTerm> coaction(const HairyGraph& g, int s,
                                        ValencePolicy policy) {
    return cocompose_impl(g, s, policy, /*decorations_to_quotient=*/true);
}

std::vector<HairyGraph> ic_factorize(const HairyGraph& g) {
    if (g.mode != Mode::Kontsevich)
        throw std::runtime_error("ic_factorize needs kontsevich mode");
    surgery::DSU dsu(g.vertex_count());
    for (const auto& e : g.edges)
        if (!g.is_external(e.a) && !g.is_external(e.b)) dsu.unite(e.a, e.b);

    // Factor ids: one per internal component, one per purely-external edge.
    std::map<int, int> comp_to_factor;
    std::vector<HairyGraph> factors;
    auto blank = [&]() {
        HairyGraph f;
        f.mode = Mode::Kontsevich;
        f.n = g.n;
        f.num_external = g.num_external;
        f.alg_v = g.alg_v;
        return f;
    };
    std::vector<std::vector<int>> comp_internals;
    for (int i = 0; i < g.num_internal; ++i) {
        int root = dsu.find(g.internal_id(i));
        if (!comp_to_factor.count(root)) {
            comp_to_factor[root] = (int)factors.size();
            factors.push_back(blank());
            comp_internals.emplace_back();
        }
        comp_internals[comp_to_factor[root]].push_back(g.internal_id(i));
    }
    // Vertex remap per factor.
    std::vector<std::vector<int>> fmap(factors.size(),
                                       std::vector<int>(g.vertex_count(), -1));
    for (size_t f = 0; f < factors.size(); ++f) {
        for (int e = 0; e < g.num_external; ++e) fmap[f][e] = e;
        for (int v : comp_internals[f]) {
            fmap[f][v] = g.num_external + factors[f].num_internal;
            ++factors[f].num_internal;
        }
    }
    for (const auto& e : g.edges) {
        if (g.is_external(e.a) && g.is_external(e.b)) {
            HairyGraph f = blank();
            f.edges.push_back(e);
            factors.push_back(std::move(f));
            continue;
        }
        int iv = g.is_external(e.a) ? e.b : e.a;
        int f = comp_to_factor[dsu.find(iv)];
        factors[f].edges.push_back({fmap[f][e.a], fmap[f][e.b]});
    }
    for (const auto& d : g.decos) {
        if (g.is_external(d.vertex)) {
            // External decorations have no internally connected home; they
            // attach to the first factor touching that external, else form a
            // decoration-only factor.
            bool placed = false;
            for (size_t f = 0; f < factors.size() && !placed; ++f)
                for (const auto& e : factors[f].edges)
                    if (e.a == d.vertex || e.b == d.vertex) {
                        factors[f].decos.push_back(d);
                        placed = true;
                        break;
                    }
            if (!placed) {
                HairyGraph f = blank();
                f.decos.push_back(d);
                factors.push_back(std::move(f));
            }
            continue;
        }
        int f = comp_to_factor[dsu.find(d.vertex)];
        factors[f].decos.push_back({fmap[f][d.vertex], d.symbol});
    }
    return factors;
}

}  // namespace gcx
