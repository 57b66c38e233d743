#include "graphcx/graph.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gcx {

int HairyGraph::valence(int v) const {
    int val = 0;
    for (const auto& e : edges) {
        if (e.a == v) ++val;
        if (e.b == v) ++val;
    }
    return val;
}

int HairyGraph::num_decos_at(int v) const {
    int k = 0;
    for (const auto& d : decos)
        if (d.vertex == v) ++k;
    return k;
}

int HairyGraph::decorated_valence(int v) const {
    return valence(v) + num_decos_at(v);
}

namespace {

// Union-find over the vertex range [0, nv).
struct DSU {
    std::vector<int> parent;
    explicit DSU(int nv) : parent(nv) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

bool HairyGraph::connected() const {
    int nv = vertex_count();
    if (nv <= 1) return true;
    DSU dsu(nv);
    for (const auto& e : edges) dsu.unite(e.a, e.b);
    int root = dsu.find(0);
    for (int v = 1; v < nv; ++v)
        if (dsu.find(v) != root) return false;
    return true;
}

bool HairyGraph::internally_connected() const {
    if (num_internal <= 1) return true;
    DSU dsu(vertex_count());
    for (const auto& e : edges)
        if (!is_external(e.a) && !is_external(e.b)) dsu.unite(e.a, e.b);
    int root = dsu.find(num_external);
    for (int i = 1; i < num_internal; ++i)
        if (dsu.find(num_external + i) != root) return false;
    return true;
}

int HairyGraph::loop_order() const {
    int nv = vertex_count();
    DSU dsu(nv);
    int merges = 0;
    for (const auto& e : edges) {
        if (dsu.find(e.a) != dsu.find(e.b)) {
            dsu.unite(e.a, e.b);
            ++merges;
        }
    }
    return static_cast<int>(edges.size()) - merges;
}

int HairyGraph::degree() const {
    int deg = (n - 1) * static_cast<int>(edges.size()) - n * num_internal;
    for (const auto& d : decos) deg += alg_v->degree(d.symbol);
    if (mode == Mode::Hairy)
        for (int e = 0; e < num_external; ++e) deg -= alg_u->degree(hair_label[e]);
    return deg;
}

void HairyGraph::check_structure() const {
    int nv = vertex_count();
    for (const auto& e : edges)
        if (e.a < 0 || e.a >= nv || e.b < 0 || e.b >= nv)
            throw std::runtime_error("edge endpoint out of range");
    for (const auto& d : decos) {
        if (d.vertex < 0 || d.vertex >= nv)
            throw std::runtime_error("decoration vertex out of range");
        if (!alg_v || d.symbol < 0 || d.symbol >= alg_v->dim())
            throw std::runtime_error("decoration symbol unresolved");
        if (mode == Mode::Hairy && is_external(d.vertex))
            throw std::runtime_error("hairy-mode external carries a V-decoration");
    }
    if (mode == Mode::Hairy) {
        if (!alg_u) throw std::runtime_error("hairy graph without a label algebra");
        if (static_cast<int>(hair_label.size()) != num_external)
            throw std::runtime_error("hair label count != external count");
        for (int lab : hair_label)
            if (lab < 0 || lab >= alg_u->dim())
                throw std::runtime_error("hair label unresolved");
    }
}

bool is_admissible(const HairyGraph& g, ValencePolicy policy) {
    for (int i = 0; i < g.num_internal; ++i)
        if (g.decorated_valence(g.internal_id(i)) < policy.min_internal_valence)
            return false;
    if (g.mode == Mode::Hairy) {
        for (int e = 0; e < g.num_external; ++e)
            if (g.valence(e) != 1) return false;
    } else {
        // Every connected component must contain an external vertex.
        if (g.num_internal > 0) {
            DSU dsu(g.vertex_count());
            for (const auto& e : g.edges) dsu.unite(e.a, e.b);
            std::vector<bool> has_ext(g.vertex_count(), false);
            for (int v = 0; v < g.num_external; ++v) has_ext[dsu.find(v)] = true;
            for (int i = 0; i < g.num_internal; ++i)
                if (!has_ext[dsu.find(g.internal_id(i))]) return false;
        }
    }
    return true;
}

HairyGraph empty_kontsevich(int n, int r, AlgebraPtr v) {
    HairyGraph g;
    g.mode = Mode::Kontsevich;
    g.n = n;
    g.num_external = r;
    g.alg_v = std::move(v);
    return g;
}

HairyGraph empty_hairy(int n, AlgebraPtr v, AlgebraPtr u) {
    HairyGraph g;
    g.mode = Mode::Hairy;
    g.n = n;
    g.alg_v = std::move(v);
    g.alg_u = std::move(u);
    return g;
}

std::string HairyGraph::debug_string() const {
    std::ostringstream os;
    os << (mode == Mode::Kontsevich ? "K" : "H") << " n=" << n
       << " ext=" << num_external << " int=" << num_internal << " edges[";
    for (const auto& e : edges) os << " " << e.a << "->" << e.b;
    os << " ] decos[";
    for (const auto& d : decos)
        os << " " << d.vertex << ":" << (alg_v ? alg_v->symbol_name(d.symbol) : "?");
    os << " ]";
    if (mode == Mode::Hairy) {
        os << " hairs[";
        for (int e = 0; e < num_external; ++e)
            os << " " << (alg_u ? alg_u->symbol_name(hair_label[e]) : "?");
        os << " ]";
    }
    return os.str();
}

}  // namespace gcx
