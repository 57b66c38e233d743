#include "graphcx/canonical.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gcx {

namespace {

// Certificate entries are integer tuples; the lexicographic minimum over all
// candidate labelings defines the canonical form.
using Cert = std::vector<int64_t>;

constexpr int64_t kEdgeTag = 1, kHairTag = 2, kHair2Tag = 3, kLoneHairTag = 4;

struct Labeling {
    std::vector<int> pos;  // internal index -> canonical position
};

// Parity (as +-1) of the permutation sending i to p[i].
int inversion_sign(const std::vector<int>& p) {
    int s = 1;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) s = -s;
    return s;
}

struct Workspace {
    const HairyGraph* g;
    bool hairy;
    bool even;
    int r;  // num_external
    std::vector<int> hair_base;  // hairy: base vertex per external (-1 = lone)

    // canonical vertex encoding under a labeling
    int enc(int v, const Labeling& L) const {
        if (v < r) return v;  // resolved later for hairy hairs; kontsevich fixed
        return r + L.pos[v - r];
    }
};

// Edge entry under a labeling, plus the data needed for sign computation.
struct MappedEdge {
    Cert entry;
    bool flip = false;   // stored direction disagrees with canonical
    int input_index = 0;
};

struct SigmaResult {
    Cert cert;
    int sign;               // 0 allowed
    std::vector<int> hair_cpos;  // external -> canonical hair position
    std::vector<MappedEdge> edges_sorted;
    std::vector<int> deco_perm_positions;  // canonical order of deco list
};

// Builds certificate and orientation sign for one labeling. Deterministic
// tie-breaks; graded kills are applied here (sign may come out 0).
SigmaResult evaluate(const Workspace& W, const Labeling& L) {
    const HairyGraph& g = *W.g;
    SigmaResult R;
    R.sign = 1;

    // Canonical hair order: by (enc(base), label, input external index).
    std::vector<int> hair_order(W.hairy ? W.r : 0);
    if (W.hairy) {
        std::iota(hair_order.begin(), hair_order.end(), 0);
        std::stable_sort(hair_order.begin(), hair_order.end(), [&](int a, int b) {
            int ba = W.hair_base[a], bb = W.hair_base[b];
            int ea = ba < 0 ? -1 : W.enc(ba, L), eb = bb < 0 ? -1 : W.enc(bb, L);
            if (ea != eb) return ea < eb;
            if (g.hair_label[a] != g.hair_label[b])
                return g.hair_label[a] < g.hair_label[b];
            return a < b;
        });
        R.hair_cpos.assign(W.r, 0);
        for (int p = 0; p < W.r; ++p) R.hair_cpos[hair_order[p]] = p;
        // Hair-pair kills: same base, same label.
        for (int p = 0; p + 1 < W.r; ++p) {
            int a = hair_order[p], b = hair_order[p + 1];
            if (W.hair_base[a] == W.hair_base[b] && W.hair_base[a] >= 0 &&
                g.hair_label[a] == g.hair_label[b]) {
                bool odd_label = g.alg_u->odd(g.hair_label[a]);
                if (W.even ? !odd_label : odd_label) R.sign = 0;
            }
        }
    }

    auto hair_enc = [&](int v) {
        return W.hairy && v < W.r ? R.hair_cpos[v] : W.enc(v, L);
    };

    // Map edges to certificate entries.
    std::vector<MappedEdge> mes(g.edges.size());
    for (size_t i = 0; i < g.edges.size(); ++i) {
        int a = g.edges[i].a, b = g.edges[i].b;
        MappedEdge me;
        me.input_index = static_cast<int>(i);
        bool a_ext = g.is_external(a), b_ext = g.is_external(b);
        if (W.hairy && (a_ext || b_ext)) {
            if (a_ext && b_ext) {
                int la = g.hair_label[a], lb = g.hair_label[b];
                me.entry = {kHair2Tag, std::min(la, lb), std::max(la, lb)};
                // Flip detection uses hair canonical positions.
                me.flip = hair_enc(a) > hair_enc(b);
                if (la == lb) {
                    // Flipping an isolated equal-label edge is an automorphism.
                    bool odd_label = g.alg_u->odd(la);
                    int s = W.even ? (odd_label ? -1 : 1)
                                   : -(odd_label ? -1 : 1);
                    if (s == -1) R.sign = 0;
                }
            } else {
                int ext = a_ext ? a : b, iv = a_ext ? b : a;
                me.entry = {kHairTag, W.enc(iv, L), g.hair_label[ext],
                            R.hair_cpos[ext]};
                me.flip = hair_enc(a) > hair_enc(b);
            }
        } else {
            int ea = W.enc(a, L), eb = W.enc(b, L);
            me.entry = {kEdgeTag, std::min(ea, eb), std::max(ea, eb)};
            me.flip = ea > eb;
            if (ea == eb && !W.even) R.sign = 0;  // tadpole, odd n
        }
        mes[i] = std::move(me);
    }
    std::stable_sort(mes.begin(), mes.end(), [](const MappedEdge& x, const MappedEdge& y) {
        if (x.entry != y.entry) return x.entry < y.entry;
        return x.input_index < y.input_index;
    });

    // Parallel kills (even n): identical non-hair entries.
    if (W.even) {
        for (size_t i = 0; i + 1 < mes.size(); ++i)
            if (mes[i].entry == mes[i + 1].entry && mes[i].entry[0] == kEdgeTag)
                R.sign = 0;
    }

    // Structural sign.
    if (R.sign != 0) {
        if (W.even) {
            std::vector<int> perm(mes.size());
            for (size_t p = 0; p < mes.size(); ++p) perm[mes[p].input_index] = (int)p;
            R.sign *= inversion_sign(perm);
        } else {
            R.sign *= inversion_sign(L.pos);
            for (const auto& me : mes)
                if (me.flip) R.sign = -R.sign;
        }
    }

    // Decoration atoms: canonical order by (enc(vertex), symbol, input index);
    // parity counts odd-degree instances only.
    {
        std::vector<int> order(g.decos.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
            int ex = hair_enc(g.decos[x].vertex), ey = hair_enc(g.decos[y].vertex);
            if (ex != ey) return ex < ey;
            if (g.decos[x].symbol != g.decos[y].symbol)
                return g.decos[x].symbol < g.decos[y].symbol;
            return x < y;
        });
        R.deco_perm_positions.assign(g.decos.size(), 0);
        for (size_t p = 0; p < order.size(); ++p) R.deco_perm_positions[order[p]] = (int)p;
        // Repeated odd decoration at one vertex kills the class.
        for (size_t p = 0; p + 1 < order.size(); ++p) {
            const Deco& d1 = g.decos[order[p]], &d2 = g.decos[order[p + 1]];
            if (d1.vertex == d2.vertex && d1.symbol == d2.symbol &&
                g.alg_v->odd(d1.symbol))
                R.sign = 0;
        }
        if (R.sign != 0) {
            std::vector<int> odd_seq;
            for (size_t i = 0; i < g.decos.size(); ++i)
                if (g.alg_v->odd(g.decos[i].symbol))
                    odd_seq.push_back(R.deco_perm_positions[i]);
            R.sign *= inversion_sign(odd_seq);
        }
    }

    // Hair-label atoms: parity of the odd-labeled hairs' reorder.
    if (W.hairy && R.sign != 0) {
        std::vector<int> odd_seq;
        for (int e = 0; e < W.r; ++e)
            if (g.alg_u->odd(g.hair_label[e])) odd_seq.push_back(R.hair_cpos[e]);
        R.sign *= inversion_sign(odd_seq);
    }

    // Assemble certificate.
    R.cert.push_back(g.num_external);
    R.cert.push_back(g.num_internal);
    for (const auto& me : mes)
        R.cert.insert(R.cert.end(), me.entry.begin(), me.entry.end());
    R.cert.push_back(-1);
    {
        std::vector<std::pair<int64_t, int64_t>> ds;
        for (const auto& d : g.decos) ds.emplace_back(hair_enc(d.vertex), d.symbol);
        std::sort(ds.begin(), ds.end());
        for (auto& [v, s] : ds) {
            R.cert.push_back(v);
            R.cert.push_back(s);
        }
    }
    R.cert.push_back(-2);
    if (W.hairy) {
        // Hairs in canonical order, with lone hairs listed.
        std::vector<int> inv(W.r);
        for (int e = 0; e < W.r; ++e) inv[R.hair_cpos[e]] = e;
        for (int p = 0; p < W.r; ++p) {
            int e = inv[p];
            R.cert.push_back(W.hair_base[e] < 0 ? kLoneHairTag : 0);
            R.cert.push_back(g.hair_label[e]);
        }
    }
    R.edges_sorted = std::move(mes);
    return R;
}

// Vertex colors for the refinement: structure-derived, labeling-invariant.
std::vector<int64_t> initial_colors(const Workspace& W) {
    const HairyGraph& g = *W.g;
    std::vector<Cert> raw(g.num_internal);
    for (int i = 0; i < g.num_internal; ++i) {
        int v = g.internal_id(i);
        Cert c;
        int tad = 0;
        std::vector<int64_t> ext_nb, hair_nb;
        int internal_deg = 0;
        for (const auto& e : g.edges) {
            if (e.a == v && e.b == v) {
                ++tad;
                continue;
            }
            int other = -1;
            if (e.a == v) other = e.b;
            else if (e.b == v) other = e.a;
            else continue;
            if (g.is_external(other)) {
                if (W.hairy) hair_nb.push_back(g.hair_label[other]);
                else ext_nb.push_back(other);
            } else {
                ++internal_deg;
            }
        }
        std::sort(ext_nb.begin(), ext_nb.end());
        std::sort(hair_nb.begin(), hair_nb.end());
        std::vector<int64_t> dec;
        for (const auto& d : g.decos)
            if (d.vertex == v) dec.push_back(d.symbol);
        std::sort(dec.begin(), dec.end());
        c.push_back(tad);
        c.push_back(internal_deg);
        c.push_back((int64_t)ext_nb.size());
        c.insert(c.end(), ext_nb.begin(), ext_nb.end());
        c.push_back(-1);
        c.insert(c.end(), hair_nb.begin(), hair_nb.end());
        c.push_back(-2);
        c.insert(c.end(), dec.begin(), dec.end());
        raw[i] = std::move(c);
    }
    // Compress to dense ranks.
    std::vector<Cert> sorted = raw;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int64_t> color(g.num_internal);
    for (int i = 0; i < g.num_internal; ++i)
        color[i] = std::lower_bound(sorted.begin(), sorted.end(), raw[i]) -
                   sorted.begin();
    return color;
}

void refine_colors(const Workspace& W, std::vector<int64_t>& color) {
    const HairyGraph& g = *W.g;
    for (int round = 0; round < g.num_internal + 1; ++round) {
        std::vector<Cert> raw(g.num_internal);
        for (int i = 0; i < g.num_internal; ++i) {
            int v = g.internal_id(i);
            std::vector<int64_t> nb;
            for (const auto& e : g.edges) {
                int other = -1;
                if (e.a == v && e.b != v) other = e.b;
                else if (e.b == v && e.a != v) other = e.a;
                if (other >= 0 && !g.is_external(other))
                    nb.push_back(color[other - W.r]);
            }
            std::sort(nb.begin(), nb.end());
            raw[i] = {color[i]};
            raw[i].insert(raw[i].end(), nb.begin(), nb.end());
        }
        std::vector<Cert> sorted = raw;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int64_t> next(g.num_internal);
        bool changed = false;
        for (int i = 0; i < g.num_internal; ++i) {
            next[i] = std::lower_bound(sorted.begin(), sorted.end(), raw[i]) -
                      sorted.begin();
            if (next[i] != color[i]) changed = true;
        }
        color = std::move(next);
        if (!changed) break;
    }
}

std::string serialize_key(const HairyGraph& g, const Cert& cert) {
    std::ostringstream os;
    os << (g.mode == Mode::Kontsevich ? 'K' : 'H') << g.n << '|'
       << (g.alg_v ? g.alg_v->name() : "-") << '|'
       << (g.alg_u ? g.alg_u->name() : "-") << '|';
    for (int64_t x : cert) os << x << ',';
    return os.str();
}

}  // namespace

CanonResult canonicalize(const HairyGraph& g) {
    g.check_structure();
    Workspace W;
    W.g = &g;
    W.hairy = g.mode == Mode::Hairy;
    W.even = g.even_n();
    W.r = g.num_external;
    if (W.hairy) {
        W.hair_base.assign(W.r, -1);
        for (int e = 0; e < W.r; ++e) {
            int val = 0;
            for (const auto& ed : g.edges) {
                if (ed.a == e) {
                    ++val;
                    W.hair_base[e] = ed.b;
                }
                if (ed.b == e) {
                    ++val;
                    W.hair_base[e] = ed.a;
                }
            }
            if (val > 1)
                throw std::runtime_error("hairy external with valence > 1");
            if (W.hair_base[e] >= 0 && g.is_external(W.hair_base[e]) &&
                W.hair_base[e] == e)
                throw std::runtime_error("hair tadpole");
        }
    }

    // Candidate labelings: permutations within refined color classes,
    // canonical positions ordered by color.
    std::vector<int64_t> color = initial_colors(W);
    refine_colors(W, color);
    std::vector<int> verts(g.num_internal);
    std::iota(verts.begin(), verts.end(), 0);
    std::stable_sort(verts.begin(), verts.end(),
                     [&](int a, int b) { return color[a] < color[b]; });

    // Class boundaries.
    std::vector<std::pair<int, int>> classes;
    for (int i = 0; i < g.num_internal;) {
        int j = i;
        while (j < g.num_internal && color[verts[j]] == color[verts[i]]) ++j;
        classes.emplace_back(i, j);
        i = j;
    }

    std::vector<std::vector<std::vector<int>>> class_perms(classes.size());
    for (size_t c = 0; c < classes.size(); ++c) {
        std::vector<int> m(verts.begin() + classes[c].first,
                           verts.begin() + classes[c].second);
        std::sort(m.begin(), m.end());
        do {
            class_perms[c].push_back(m);
        } while (std::next_permutation(m.begin(), m.end()));
    }

    std::optional<SigmaResult> best;
    Labeling winner;
    bool sign_conflict = false;
    std::vector<size_t> counter(classes.size(), 0);
    while (true) {
        Labeling L;
        L.pos.assign(g.num_internal, 0);
        int p = 0;
        for (size_t c = 0; c < classes.size(); ++c)
            for (int v : class_perms[c][counter[c]]) L.pos[v] = p++;
        SigmaResult res = evaluate(W, L);
        if (!best || res.cert < best->cert) {
            best = std::move(res);
            winner = L;
            sign_conflict = false;
        } else if (res.cert == best->cert && res.sign != best->sign) {
            sign_conflict = true;
        }
        size_t c = 0;
        while (c < classes.size() && ++counter[c] == class_perms[c].size()) {
            counter[c] = 0;
            ++c;
        }
        if (c == classes.size()) break;
    }

    int sign = sign_conflict ? 0 : best->sign;

    // Materialize the canonical representative from the winning labeling.
    HairyGraph cg;
    cg.mode = g.mode;
    cg.n = g.n;
    cg.num_external = g.num_external;
    cg.num_internal = g.num_internal;
    cg.alg_v = g.alg_v;
    cg.alg_u = g.alg_u;

    std::vector<int> vmap(g.vertex_count());
    for (int e = 0; e < W.r; ++e) vmap[e] = W.hairy ? best->hair_cpos[e] : e;
    for (int i = 0; i < g.num_internal; ++i)
        vmap[g.internal_id(i)] = g.num_external + winner.pos[i];

    if (W.hairy) {
        cg.hair_label.assign(W.r, 0);
        for (int e = 0; e < W.r; ++e) cg.hair_label[vmap[e]] = g.hair_label[e];
    }
    for (const auto& me : best->edges_sorted) {
        const EdgeRec& e = g.edges[me.input_index];
        int a = vmap[e.a], b = vmap[e.b];
        if (a > b) std::swap(a, b);
        cg.edges.push_back({a, b});
    }
    {
        std::vector<Deco> ds;
        for (const auto& d : g.decos) ds.push_back({vmap[d.vertex], d.symbol});
        std::sort(ds.begin(), ds.end(), [](const Deco& x, const Deco& y) {
            return std::tie(x.vertex, x.symbol) < std::tie(y.vertex, y.symbol);
        });
        cg.decos = std::move(ds);
    }

    CanonResult out;
    out.canon.graph = std::move(cg);
    out.canon.key = serialize_key(g, best->cert);
    out.sign = sign;
    return out;
}

std::string canonical_key(const HairyGraph& g) { return canonicalize(g).canon.key; }

}  // namespace gcx
