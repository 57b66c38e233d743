#include "graphcx/hairy.hpp"

#include <functional>
#include <stdexcept>

#include "hairy_internal.hpp"
#include "surgery.hpp"

namespace gcx {

void MCElement::validate() const {
    ValencePolicy mc_policy{2};
    std::optional<int> deg;
    for (const auto& [key, tc] : value.terms()) {
        const HairyGraph& g = tc.first.graph;
        if (g.mode != Mode::Hairy)
            throw std::runtime_error("MC element member not in hairy mode");
        if (!g.internally_connected())
            throw std::runtime_error("MC element member not internally connected");
        if (!is_admissible(g, mc_policy))
            throw std::runtime_error("MC element member inadmissible at valence 2");
        int d = g.degree();
        if (!deg) deg = d;
        else if (*deg != d)
            throw std::runtime_error("MC element not degree-homogeneous");
    }
    if (deg && *deg + 1 != shifted_degree)
        throw std::runtime_error("MC element shifted_degree != degree + 1");
}

LinCombo delta_algebra(const HairyGraph& g) {
    LinCombo out;
    if (g.mode != Mode::Hairy || !g.alg_u || g.alg_u->has_zero_differential())
        return out;
    // Leibniz prefix: the structural block and the decoration block sit to
    // the left of the label block.
    int prefix = surgery::structural_prefix_sign(g);
    for (const auto& d : g.decos)
        if (g.alg_v && g.alg_v->odd(d.symbol)) prefix = -prefix;
    for (int e = 0; e < g.num_external; ++e) {
        const SymCombo& da = g.alg_u->differential(g.hair_label[e]);
        if (da.empty()) continue;
        int sign = prefix;
        for (int j = 0; j < e; ++j)
            if (g.alg_u->odd(g.hair_label[j])) sign = -sign;
        for (const auto& [b, c] : da) {
            HairyGraph h = g;
            h.hair_label[e] = b;
            out.add_graph(h, Rat(sign) * c);
        }
    }
    return out;
}

LinCombo delta_split(const HairyGraph& g, ValencePolicy policy) {
    LinCombo out;
    for (int i = 0; i < g.num_internal; ++i) {
        int v = g.internal_id(i);
        // Star items: half-edge slots and decoration instances at v. The two
        // ends of a tadpole are separate items.
        struct Item {
            bool is_deco;
            int index;  // edge or deco index
            int side;   // 0 = endpoint a, 1 = endpoint b
        };
        std::vector<Item> items;
        for (size_t ei = 0; ei < g.edges.size(); ++ei) {
            if (g.edges[ei].a == v) items.push_back({false, (int)ei, 0});
            if (g.edges[ei].b == v) items.push_back({false, (int)ei, 1});
        }
        for (size_t di = 0; di < g.decos.size(); ++di)
            if (g.decos[di].vertex == v) items.push_back({true, (int)di, 0});
        size_t m = items.size();
        if (m == 0) continue;
        // Unordered partitions: item 0 stays at v, the rest choose sides.
        for (size_t mask = 0; mask < (size_t(1) << (m - 1)); ++mask) {
            int val_v = 1, val_w = 1;  // the fresh edge counts on both sides
            for (size_t j = 1; j < m; ++j)
                ((mask & (size_t(1) << (j - 1))) ? val_w : val_v) += 1;
            ++val_v;  // item 0
            if (val_v < policy.min_internal_valence ||
                val_w < policy.min_internal_valence)
                continue;
            HairyGraph h = g;
            int w = surgery::append_internal_vertex(h);
            for (size_t j = 1; j < m; ++j) {
                if (!(mask & (size_t(1) << (j - 1)))) continue;
                const Item& it = items[j];
                if (it.is_deco) h.decos[it.index].vertex = w;
                else if (it.side == 0) h.edges[it.index].a = w;
                else h.edges[it.index].b = w;
            }
            h.edges.push_back({v, w});
            out.add_graph(h, Rat(1));
        }
    }
    return out;
}

HairyGraph concat_hairy(const std::vector<const HairyGraph*>& gs) {
    HairyGraph base;
    if (gs.empty()) throw std::runtime_error("concat_hairy: no arguments");
    base.mode = Mode::Hairy;
    base.n = gs[0]->n;
    base.alg_v = gs[0]->alg_v;
    base.alg_u = gs[0]->alg_u;
    for (const HairyGraph* g : gs) {
        base.num_external += g->num_external;
        base.num_internal += g->num_internal;
        if (!base.alg_v) base.alg_v = g->alg_v;
    }
    int ext_off = 0, int_off = 0;
    for (const HairyGraph* gp : gs) {
        const HairyGraph& g = *gp;
        auto remap = [&](int v) {
            return g.is_external(v)
                       ? v + ext_off
                       : base.num_external + int_off + (v - g.num_external);
        };
        for (const auto& e : g.edges) base.edges.push_back({remap(e.a), remap(e.b)});
        for (const auto& d : g.decos) base.decos.push_back({remap(d.vertex), d.symbol});
        for (int e = 0; e < g.num_external; ++e)
            base.hair_label.push_back(g.hair_label[e]);
        ext_off += g.num_external;
        int_off += g.num_internal;
    }
    return base;
}

namespace {

SymCombo fold_label_product(const HairyGraph& g, const std::vector<int>& consumed) {
    SymCombo acc{{g.hair_label[consumed[0]], Rat(1)}};
    for (size_t t = 1; t < consumed.size(); ++t) {
        SymCombo next;
        for (const auto& [s, c] : acc)
            next = sym_combo_add(
                next, sym_combo_scale(g.alg_u->product(s, g.hair_label[consumed[t]]), c));
        acc = std::move(next);
    }
    return acc;
}

}  // namespace

void emit_join(const HairyGraph& g, const std::vector<int>& consumed,
               const Rat& coeff, LinCombo& out) {
    int presign = surgery::label_set_extraction_sign(g, consumed);
    SymCombo product = fold_label_product(g, consumed);
    if (product.empty()) return;
    HairyGraph base = g;
    int w = surgery::append_internal_vertex(base);
    for (int e : consumed)
        for (auto& ed : base.edges) {
            if (ed.a == e) ed.a = w;
            if (ed.b == e) ed.b = w;
        }
    for (auto it = consumed.rbegin(); it != consumed.rend(); ++it) {
        surgery::remove_external_vertex(base, *it);
        --w;  // internals shift down with each removed external
    }
    for (const auto& [sym, c] : product) {
        HairyGraph h = base;
        int ext = surgery::append_external_vertex(h, sym);
        h.edges.push_back({w + 1, ext});  // +1: the append shifted internals
        out.add_graph(h, Rat(presign) * c * coeff);
    }
}

LinCombo delta_join(const HairyGraph& g, ValencePolicy policy) {
    LinCombo out;
    if (g.mode != Mode::Hairy) throw std::runtime_error("delta_join: hairy mode");
    std::vector<int> hs;
    for (int e = 0; e < g.num_external; ++e)
        if (g.hair_label[e] != g.alg_u->unit()) hs.push_back(e);
    size_t m = hs.size();
    for (size_t mask = 1; mask < (size_t(1) << m); ++mask) {
        std::vector<int> consumed;
        for (size_t j = 0; j < m; ++j)
            if (mask & (size_t(1) << j)) consumed.push_back(hs[j]);
        if ((int)consumed.size() < 2) continue;
        if ((int)consumed.size() + 1 < policy.min_internal_valence) continue;
        emit_join(g, consumed, Rat(1), out);
    }
    return out;
}

namespace {

// State for one member-attachment enumeration.
struct ZAttach {
    const HairyGraph& w;
    Rat coeff;
    ValencePolicy policy;
    LinCombo& out;
    HairyGraph base;            // concatenated arguments
    int kB;                     // base internal count
    std::vector<int> mu;        // W-internal -> base-internal index
    std::vector<int> unit_hairs;  // W externals with unit label
    std::vector<int> attach;      // -1 stay, else base-internal index

    ZAttach(const std::vector<const HairyGraph*>& gs, const HairyGraph& w_,
            const Rat& c, ValencePolicy p, LinCombo& o)
        : w(w_), coeff(c), policy(p), out(o), base(concat_hairy(gs)) {
        kB = base.num_internal;
        if (!base.alg_v) base.alg_v = w.alg_v;
        mu.assign(w.num_internal, 0);
        for (int e = 0; e < w.num_external; ++e)
            if (!w.alg_u || w.hair_label[e] == w.alg_u->unit())
                unit_hairs.push_back(e);
        attach.assign(unit_hairs.size(), -1);
    }

    bool has_nonunit_hairs_only_ok() const {
        if (!w.alg_u) return true;
        return true;  // non-unit hairs always stay; nothing to check
    }

    // Twist terms carry an intrinsic Koszul prefix at odd ambient parity:
    // the action's tracked-atom footprint is parity-even there (a vertex is
    // inserted and removed, a decoration pair annihilates), so the odd
    // operator degree must be imposed on the input word directly.
    int operator_prefix() const {
        if (base.even_n()) return 1;
        int p = base.num_internal;
        for (int e = 0; e < base.num_external; ++e)
            if (base.alg_u && base.alg_u->odd(base.hair_label[e])) ++p;
        return p % 2 == 0 ? 1 : -1;
    }

    void run() {
        if (base.num_internal == 0) return;
        iterate_mu(0);
    }

    void iterate_mu(int zi) {
        if (zi == w.num_internal) {
            iterate_attach(0);
            return;
        }
        for (int t = 0; t < kB; ++t) {
            mu[zi] = t;
            iterate_mu(zi + 1);
        }
    }

    void iterate_attach(size_t ui) {
        if (ui == unit_hairs.size()) {
            emit();
            return;
        }
        attach[ui] = -1;
        iterate_attach(ui + 1);
        for (int t = 0; t < kB; ++t) {
            attach[ui] = t;
            iterate_attach(ui + 1);
        }
        attach[ui] = -1;
    }

    // Builds the disjoint union (base then W, blockwise) and runs the
    // decoration pairing enumeration, then finalizes each matching.
    void emit() {
        HairyGraph h = base;
        int extB = base.num_external;
        int addExt = w.num_external;
        for (auto& e : h.edges) {
            if (e.a >= extB) e.a += addExt;
            if (e.b >= extB) e.b += addExt;
        }
        for (auto& d : h.decos)
            if (d.vertex >= extB) d.vertex += addExt;
        h.num_external += addExt;
        h.num_internal += w.num_internal;
        auto wmap = [&](int v) {
            return w.is_external(v) ? extB + v
                                    : h.num_external + kB + (v - w.num_external);
        };
        for (int e = 0; e < w.num_external; ++e)
            h.hair_label.push_back(w.hair_label[e]);
        for (const auto& e : w.edges) h.edges.push_back({wmap(e.a), wmap(e.b)});
        size_t w_deco_begin = h.decos.size();
        for (const auto& d : w.decos) h.decos.push_back({wmap(d.vertex), d.symbol});

        std::vector<char> alive(h.decos.size(), 1);
        match(h, alive, w_deco_begin, w_deco_begin, operator_prefix());
    }

    // Pairs W-decoration instances (from index wi on) against live matching
    // instances at their merge targets; enumerates instance choices.
    void match(HairyGraph& h, std::vector<char>& alive, size_t w_deco_begin,
               size_t wi, int sgn) {
        if (wi == h.decos.size()) {
            finalize(h, alive, sgn);
            return;
        }
        int zvert = h.decos[wi].vertex;
        int zidx = zvert - h.num_external - kB;
        int target = h.num_external + mu[zidx];
        int symbol = h.decos[wi].symbol;
        for (size_t ti = 0; ti < w_deco_begin; ++ti) {
            if (!alive[ti]) continue;
            if (h.decos[ti].vertex != target || h.decos[ti].symbol != symbol)
                continue;
            int s = sgn;
            // Move the W-instance left, next to the target instance.
            if (h.alg_v && h.alg_v->odd(symbol))
                for (size_t x = ti + 1; x < wi; ++x)
                    if (alive[x] && h.alg_v->odd(h.decos[x].symbol)) s = -s;
            alive[ti] = 0;
            alive[wi] = 0;
            match(h, alive, w_deco_begin, wi + 1, s);
            alive[ti] = 1;
            alive[wi] = 1;
        }
    }

    void finalize(const HairyGraph& h, const std::vector<char>& alive, int sgn) {
        HairyGraph g = h;
        std::vector<Deco> kept;
        for (size_t x = 0; x < g.decos.size(); ++x)
            if (alive[x]) kept.push_back(g.decos[x]);
        g.decos = std::move(kept);

        int extAll = g.num_external;
        // Re-root W-vertex edge ends onto merge targets.
        for (int z = 0; z < w.num_internal; ++z) {
            int from = extAll + kB + z, to = extAll + mu[z];
            for (auto& e : g.edges) {
                if (e.a == from) e.a = to;
                if (e.b == from) e.b = to;
            }
        }
        // Unit-hair attachments.
        std::vector<int> remove_ext;
        for (size_t ui = 0; ui < unit_hairs.size(); ++ui) {
            if (attach[ui] < 0) continue;
            int ext = base.num_external + unit_hairs[ui];
            int target = extAll + attach[ui];
            for (auto& e : g.edges) {
                if (e.a == ext) e.a = target;
                if (e.b == ext) e.b = target;
            }
            remove_ext.push_back(ext);
        }
        std::sort(remove_ext.rbegin(), remove_ext.rend());
        for (int ext : remove_ext) surgery::remove_external_vertex(g, ext);
        // Merged W-vertices form the trailing block; drop it in reverse.
        for (int z = w.num_internal - 1; z >= 0; --z) {
            int vid = g.num_external + kB + z;
            sgn *= surgery::remove_internal_vertex(g, vid);
        }
#ifdef GCX_DEBUG_Z
        fprintf(stderr, "finalize: %s ic=%d adm=%d sgn=%d\n",
                g.debug_string().c_str(), (int)g.internally_connected(),
                (int)is_admissible(g, policy), sgn);
#endif
        if (!g.internally_connected()) return;
        if (!is_admissible(g, policy)) return;
        out.add_graph(g, Rat(sgn) * coeff);
    }
};

}  // namespace

void z_attach_terms(const std::vector<const HairyGraph*>& gs,
                    const HairyGraph& w, const Rat& coeff, ValencePolicy policy,
                    LinCombo& out) {
    ZAttach za(gs, w, coeff, policy, out);
    za.run();
}

LinCombo delta_Z(const HairyGraph& g, const MCElement& z, ValencePolicy policy) {
    LinCombo out;
    if (g.mode != Mode::Hairy) throw std::runtime_error("delta_Z: hairy mode");
    std::vector<const HairyGraph*> args{&g};
    for (const auto& [key, tc] : z.value.terms())
        z_attach_terms(args, tc.first.graph, tc.second, policy, out);
    return out;
}

LinCombo twisted_d(const HairyGraph& g, const MCElement& z, ValencePolicy policy) {
    LinCombo out = delta_algebra(g);
    out.add(delta_split(g, policy));
    out.add(delta_join(g, policy));
    out.add(delta_Z(g, z, policy));
    return out;
}

LinCombo twisted_d(const LinCombo& x, const MCElement& z, ValencePolicy policy) {
    LinCombo out;
    for (const auto& [key, tc] : x.terms())
        out.add(twisted_d(tc.first.graph, z, policy), tc.second);
    return out;
}

ZParts z_parts_s51(const HairyGraph& g, const MCElement& z51,
                   ValencePolicy policy) {
    for (const auto& [key, tc] : z51.value.terms()) {
        const HairyGraph& w = tc.first.graph;
        bool shape = w.num_internal == 1 && w.num_external == 1 &&
                     w.edges.size() == 1 && w.decos.size() == 1 &&
                     w.alg_u && w.hair_label[0] == w.alg_u->unit();
        if (!shape)
            throw std::runtime_error("z_parts_s51: Z is not of the w---1 shape");
    }
    // The hair part adds one hair (the unit hair stayed); the edge part
    // keeps the count.
    LinCombo all = delta_Z(g, z51, policy);
    ZParts parts;
    for (const auto& [key, tc] : all.terms()) {
        if (tc.first.graph.num_external == g.num_external + 1)
            parts.hair_part.add_canonical(tc.first, tc.second);
        else
            parts.edge_part.add_canonical(tc.first, tc.second);
    }
    return parts;
}

LinCombo strip_to_hairy(const HairyGraph& g) {
    if (g.num_external != 0)
        throw std::runtime_error("strip_to_hairy: input has hairs");
    if (g.decos.empty())
        throw std::runtime_error("strip_to_hairy: input has no decorations");
    // Decorations become hairs carrying the degree -1 marker label, so the
    // map preserves degree and the markers inherit the decorations' parity
    // bookkeeping.
    AlgebraPtr marker = strip_marker_algebra();
    HairyGraph h = g;
    h.alg_u = marker;
    int presign = 1;
    // Convert decorations to marker hairs in list order; each extraction
    // crosses the odd decorations after it.
    while (!h.decos.empty()) {
        Deco d = h.decos.front();
        if (h.alg_v->odd(d.symbol))
            for (size_t j = 1; j < h.decos.size(); ++j)
                if (h.alg_v->odd(h.decos[j].symbol)) presign = -presign;
        h.decos.erase(h.decos.begin());
        int ext = surgery::append_external_vertex(h, marker->symbol_id("s"));
        h.edges.push_back({d.vertex + 1, ext});  // +1: the append shifted ids
    }
    LinCombo out;
    out.add_graph(h, Rat(presign));
    return out;
}

LinCombo hair_attach(const HairyGraph& g) {
    LinCombo out;
    if (g.mode != Mode::Hairy) throw std::runtime_error("hair_attach: hairy mode");
    // Acts on marker-labeled hairs (the strip image of a decoration): the
    // free end re-roots onto an internal vertex and the degree -1 label is
    // consumed. Same operator prefix as the twist action it transports.
    int prefix = 1;
    if (!g.even_n()) {
        int p = g.num_internal;
        for (int e = 0; e < g.num_external; ++e)
            if (g.alg_u->odd(g.hair_label[e])) ++p;
        if (p % 2 == 1) prefix = -prefix;
    } else {
        if (g.edges.size() % 2 == 1) prefix = -prefix;
    }
    for (int e = 0; e < g.num_external; ++e) {
        if (g.alg_u->degree(g.hair_label[e]) != -1) continue;
        int extraction = surgery::label_set_extraction_sign(g, {e});
        for (int i = 0; i < g.num_internal; ++i) {
            int target = g.internal_id(i);
            HairyGraph h = g;
            for (auto& ed : h.edges) {
                if (ed.a == e) ed.a = target;
                if (ed.b == e) ed.b = target;
            }
            surgery::remove_external_vertex(h, e);
            out.add_graph(h, Rat(prefix * extraction));
        }
    }
    return out;
}

}  // namespace gcx
