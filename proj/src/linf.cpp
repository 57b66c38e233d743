#include "graphcx/linf.hpp"

#include <stdexcept>

#include "hairy_internal.hpp"
#include "surgery.hpp"

namespace gcx {

bool TruncationParams::admits(const HairyGraph& g) const {
    if ((int)g.edges.size() > max_edges) return false;
    if (g.num_internal > max_internal_vertices) return false;
    if (g.mode == Mode::Hairy && g.num_external > max_hairs) return false;
    if (g.loop_order() > max_loop_order) return false;
    int dd = 0;
    for (const auto& d : g.decos) dd += g.alg_v->degree(d.symbol);
    if (dd > max_total_decoration_degree) return false;
    return true;
}

LinCombo l_k_std(const std::vector<const HairyGraph*>& gs, ValencePolicy policy) {
    LinCombo out;
    if (gs.size() < 2) throw std::runtime_error("l_k_std: k >= 2 required");
    HairyGraph cat = concat_hairy(gs);
    // Per-argument non-unit hair index lists, in concatenated numbering.
    std::vector<std::vector<int>> arg_hairs(gs.size());
    int off = 0;
    for (size_t a = 0; a < gs.size(); ++a) {
        const HairyGraph& g = *gs[a];
        for (int e = 0; e < g.num_external; ++e)
            if (g.hair_label[e] != g.alg_u->unit())
                arg_hairs[a].push_back(off + e);
        if (arg_hairs[a].empty()) return out;  // needs one hair from each
        off += g.num_external;
    }
    // One non-empty subset per argument.
    std::vector<size_t> mask(gs.size(), 1);
    while (true) {
        std::vector<int> consumed;
        for (size_t a = 0; a < gs.size(); ++a)
            for (size_t j = 0; j < arg_hairs[a].size(); ++j)
                if (mask[a] & (size_t(1) << j)) consumed.push_back(arg_hairs[a][j]);
        emit_join(cat, consumed, Rat(1), out);
        size_t a = 0;
        while (a < gs.size()) {
            ++mask[a];
            if (mask[a] < (size_t(1) << arg_hairs[a].size())) break;
            mask[a] = 1;
            ++a;
        }
        if (a == gs.size()) break;
    }
    return out;
}

LinCombo l_k_Z(const std::vector<const HairyGraph*>& gs, const MCElement& z,
               ValencePolicy policy) {
    LinCombo out;
    if (gs.size() < 2) throw std::runtime_error("l_k_Z: k >= 2 required");
    for (const auto& [key, tc] : z.value.terms())
        z_attach_terms(gs, tc.first.graph, tc.second, policy, out);
    return out;
}

LinCombo l_k(const LinfStructure& s, const std::vector<const HairyGraph*>& gs) {
    static const MCElement kNoTwist{};
    const MCElement& z = s.twist ? *s.twist : kNoTwist;
    if (gs.size() == 1) return twisted_d(*gs[0], z, s.policy);
    LinCombo out = l_k_std(gs, s.policy);
    if (s.twist) out.add(l_k_Z(gs, *s.twist, s.policy));
    return out;
}

namespace {

// Every nonempty hairy graph has an edge or an internal vertex, so arity is
// bounded by the truncation window.
int max_arity(const TruncationParams& T) {
    return T.max_edges + T.max_internal_vertices + 2;
}

Rat inverse_factorial(int k) {
    Rat f(1);
    for (int i = 2; i <= k; ++i) f /= i;
    return f;
}

}  // namespace

LinCombo curvature(const LinfStructure& s, const LinCombo& x,
                   const TruncationParams& T) {
    LinCombo total;
    if (x.is_zero()) return total;
    std::vector<const CanonicalGraph*> members;
    std::vector<Rat> coeffs;
    for (const auto& [key, tc] : x.terms()) {
        members.push_back(&tc.first);
        coeffs.push_back(tc.second);
    }
    int kmax = max_arity(T);
    for (int k = 1; k <= kmax; ++k) {
        Rat norm = inverse_factorial(k);
        // Ordered member tuples; graded symmetry is baked into l_k's
        // juxtaposed orientation, so the plain 1/k! normalization applies.
        std::vector<size_t> idx(k, 0);
        LinCombo arity_sum;
        while (true) {
            int edge_sum = 0;
            for (int j = 0; j < k; ++j)
                edge_sum += (int)members[idx[j]]->graph.edges.size();
            if (edge_sum <= T.max_edges) {
                std::vector<const HairyGraph*> gs(k);
                Rat c(1);
                for (int j = 0; j < k; ++j) {
                    gs[j] = &members[idx[j]]->graph;
                    c *= coeffs[idx[j]];
                }
                arity_sum.add(l_k(s, gs), c);
            }
            int j = 0;
            while (j < k && ++idx[j] == members.size()) {
                idx[j] = 0;
                ++j;
            }
            if (j == k) break;
        }
        total.add(arity_sum, norm);
    }
    return total.filtered([&](const HairyGraph& g) { return T.admits(g); });
}

MCReport mc_check(const LinfStructure& s, const MCElement& z,
                  const TruncationParams& T) {
    z.validate();
    MCReport rep;
    LinCombo c = curvature(s, z.value, T);
    for (auto& [deg, combo] : c.by_degree())
        if (!combo.is_zero()) rep.residual_by_degree[deg] = combo;
    return rep;
}

// ---- polarization ----

namespace {

// Monomials in up to 8 graded variables, 4-bit exponents.
constexpr int kMaxVars = 8;

int exponent(uint32_t m, int v) { return (m >> (4 * v)) & 0xF; }

uint32_t with_exponent(uint32_t m, int v, int e) {
    return (m & ~(uint32_t(0xF) << (4 * v))) | (uint32_t(e) << (4 * v));
}

int monomial_parity(uint32_t m, const std::vector<int>& var_degree) {
    int p = 0;
    for (size_t v = 0; v < var_degree.size(); ++v)
        p += exponent(m, (int)v) * var_degree[v];
    return (p % 2 + 2) % 2;
}

// Product of monomials with Koszul sign; zero (sign 0) if an odd variable
// squares.
std::pair<uint32_t, int> monomial_product(uint32_t m1, uint32_t m2,
                                          const std::vector<int>& var_degree) {
    int sign = 1;
    uint32_t out = m1;
    for (int v = 0; v < (int)var_degree.size(); ++v) {
        int e2 = exponent(m2, v);
        if (e2 == 0) continue;
        bool odd_v = (var_degree[v] % 2 + 2) % 2 == 1;
        if (odd_v) {
            if (e2 > 1 || exponent(m1, v) > 0) return {0, 0};
            // Move this variable left past m1's odd variables with higher
            // index (monomials are written in ascending variable order).
            for (int u = v + 1; u < (int)var_degree.size(); ++u)
                if ((var_degree[u] % 2 + 2) % 2 == 1 && exponent(m1, u) % 2 == 1)
                    sign = -sign;
        }
        out = with_exponent(out, v, exponent(out, v) + e2);
        if (exponent(out, v) != exponent(m1, v) + e2) return {0, 0};  // overflow
    }
    return {out, sign};
}

}  // namespace

void PolarizedCombo::add(uint32_t mask, const HairyGraph& g, const Rat& c) {
    if (c == 0) return;
    CanonResult r = canonicalize(g);
    if (r.sign == 0) return;
    add_canonical(mask, r.canon, c * r.sign);
}

void PolarizedCombo::add_canonical(uint32_t mask, const CanonicalGraph& cg,
                                   const Rat& c) {
    if (c == 0) return;
    auto key = std::make_pair(mask, cg.key);
    auto it = terms.find(key);
    if (it == terms.end()) {
        terms.emplace(key, std::make_pair(cg, c));
    } else {
        it->second.second += c;
        if (it->second.second == 0) terms.erase(it);
    }
}

PolarizedCombo polarized_curvature(const LinfStructure& s,
                                   const PolarizedCombo& x,
                                   const TruncationParams& T) {
    PolarizedCombo total;
    total.var_degree = x.var_degree;
    if (x.is_zero()) return total;
    struct Term {
        const CanonicalGraph* g;
        uint32_t mask;
        Rat c;
    };
    std::vector<Term> members;
    for (const auto& [key, tc] : x.terms)
        members.push_back({&tc.first, key.first, tc.second});

    int kmax = max_arity(T);
    for (int k = 1; k <= kmax; ++k) {
        Rat norm = inverse_factorial(k);
        std::vector<size_t> idx(k, 0);
        PolarizedCombo arity_sum;
        arity_sum.var_degree = x.var_degree;
        while (true) {
            int edge_sum = 0;
            for (int j = 0; j < k; ++j)
                edge_sum += (int)members[idx[j]].g->graph.edges.size();
            if (edge_sum <= T.max_edges) {
                // Pull the coefficient monomials to the right: each monomial
                // crosses the graphs after it.
                int koszul = 1;
                for (int i = 0; i < k; ++i) {
                    if (monomial_parity(members[idx[i]].mask, x.var_degree) == 0)
                        continue;
                    for (int j = i + 1; j < k; ++j) {
                        int gdeg = members[idx[j]].g->graph.degree();
                        if ((gdeg % 2 + 2) % 2 == 1) koszul = -koszul;
                    }
                }
                // Monomial product left-to-right.
                uint32_t m = 0;
                int msign = 1;
                for (int j = 0; j < k && msign != 0; ++j) {
                    auto [mm, ms] =
                        monomial_product(m, members[idx[j]].mask, x.var_degree);
                    m = mm;
                    msign *= ms;
                }
                if (msign != 0) {
                    std::vector<const HairyGraph*> gs(k);
                    Rat c = norm * koszul * msign;
                    for (int j = 0; j < k; ++j) {
                        gs[j] = &members[idx[j]].g->graph;
                        c *= members[idx[j]].c;
                    }
                    LinCombo lk = l_k(s, gs);
                    for (const auto& [key, tc] : lk.terms())
                        arity_sum.add_canonical(m, tc.first, tc.second * c);
                }
            }
            int j = 0;
            while (j < k && ++idx[j] == members.size()) {
                idx[j] = 0;
                ++j;
            }
            if (j == k) break;
        }
        for (const auto& [key, tc] : arity_sum.terms)
            if (T.admits(tc.first.graph))
                total.add_canonical(key.first, tc.first, tc.second);
    }
    return total;
}

PolarizedCombo linf_relation_check(const LinfStructure& s,
                                   const std::vector<const HairyGraph*>& xs,
                                   const TruncationParams& T) {
    int p = (int)xs.size();
    if (p == 0 || p + 1 > kMaxVars)
        throw std::runtime_error("linf_relation_check: unsupported order");
    std::vector<int> var_degree(p + 1);
    for (int i = 0; i < p; ++i) var_degree[i] = 1 - xs[i]->degree();
    var_degree[p] = -1;  // the adjoined formal variable

    PolarizedCombo x;
    x.var_degree = var_degree;
    for (int i = 0; i < p; ++i) x.add(with_exponent(0, i, 1), *xs[i], Rat(1));

    PolarizedCombo u = polarized_curvature(s, x, T);

    // y = x + eps * U(x): left-multiplying by the odd variable eps crosses
    // the graph, then joins the monomial (eps indexed last).
    PolarizedCombo y = x;
    for (const auto& [key, tc] : u.terms) {
        int sign = 1;
        int gdeg = tc.first.graph.degree();
        if ((gdeg % 2 + 2) % 2 == 1) sign = -sign;
        // eps times the monomial: eps crosses the monomial's odd variables
        // (all have smaller index).
        uint32_t m = key.first;
        if (exponent(m, p) > 0) continue;  // eps^2 = 0
        for (int v = 0; v < p; ++v)
            if ((var_degree[v] % 2 + 2) % 2 == 1 && exponent(m, v) % 2 == 1)
                sign = -sign;
        y.add_canonical(with_exponent(m, p, 1), tc.first, tc.second * sign);
    }

    PolarizedCombo uy = polarized_curvature(s, y, T);
    PolarizedCombo diff;
    diff.var_degree = var_degree;
    for (const auto& [key, tc] : uy.terms)
        diff.add_canonical(key.first, tc.first, tc.second);
    for (const auto& [key, tc] : u.terms)
        diff.add_canonical(key.first, tc.first, -tc.second);
    return diff;
}

}  // namespace gcx
