#include "graphcx/linalg.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "graphcx/hairy.hpp"
#include "graphcx/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gcx {

int ComplexSlice::find(const std::string& key) const {
    auto it = std::lower_bound(
        basis.begin(), basis.end(), key,
        [](const CanonicalGraph& g, const std::string& k) { return g.key < k; });
    if (it == basis.end() || it->key != key) return -1;
    return (int)(it - basis.begin());
}

namespace {

// One enumeration cell: fixed internal vertex count and total edge count.
struct Cell {
    int num_internal;
    int num_edges;
};

// Emits every admissible canonical graph of the cell into `sink` (callers
// dedupe). Kontsevich mode: undecorated graphs on r fixed externals.
// Hairy mode: connected graphs, hairs labeled from U1, decorations from V.
void generate_cell(const EnumerationSpec& spec, const TruncationParams& T,
                   const Cell& cell,
                   const std::function<void(const HairyGraph&)>& sink) {
    if (spec.mode == Mode::Kontsevich) {
        if (spec.alg_v && spec.alg_v->dim() > 1)
            throw std::runtime_error(
                "enumerate: decorated kontsevich graphs not supported");
        int r = spec.num_external, k = cell.num_internal;
        // Undecorated internal vertices need valence >= 3.
        if (3 * k > 2 * cell.num_edges) return;
        int nv = r + k;
        std::vector<std::pair<int, int>> pairs;
        for (int a = 0; a < nv; ++a)
            for (int b = a; b < nv; ++b) pairs.emplace_back(a, b);
        std::vector<int> mult(pairs.size(), 0);
        // Distribute edges over vertex pairs (multiset).
        std::function<void(int, int)> rec = [&](int pi, int remaining) {
            if (remaining == 0) {
                HairyGraph g = empty_kontsevich(spec.n, r, spec.alg_v);
                g.num_internal = k;
                for (size_t i = 0; i < pairs.size(); ++i)
                    for (int c = 0; c < mult[i]; ++c)
                        g.edges.push_back({pairs[i].first, pairs[i].second});
                if (!is_admissible(g, spec.policy)) return;
                if (spec.require_connected && !g.connected()) return;
                if (g.loop_order() > T.max_loop_order) return;
                sink(g);
                return;
            }
            if (pi == (int)pairs.size()) return;
            // Feasibility: enough remaining slots for minimum valences.
            for (int take = remaining; take >= 0; --take) {
                mult[pi] = take;
                rec(pi + 1, remaining - take);
            }
            mult[pi] = 0;
        };
        rec(0, cell.num_edges);
        return;
    }

    // Hairy mode.
    int k = cell.num_internal;
    if (k == 0) return;
    const int usyms = spec.alg_u ? spec.alg_u->dim() : 1;
    const int vsyms = spec.alg_v ? spec.alg_v->dim() : 0;
    std::vector<std::pair<int, int>> ipairs;
    for (int a = 0; a < k; ++a)
        for (int b = a; b < k; ++b) ipairs.emplace_back(a, b);

    // Hairs: multiset of (target internal, label); decorations: multiset of
    // (vertex, symbol). Enumerated as monotone sequences.
    struct State {
        std::vector<int> edge_mult;
        std::vector<std::pair<int, int>> hairs;
        std::vector<std::pair<int, int>> decos;
    } st;
    st.edge_mult.assign(ipairs.size(), 0);

    auto emit = [&](int internal_edges, int nhairs) {
        HairyGraph g = empty_hairy(spec.n, spec.alg_v, spec.alg_u);
        g.num_internal = k;
        g.num_external = nhairs;
        g.hair_label.assign(nhairs, 0);
        for (int h = 0; h < nhairs; ++h) {
            g.hair_label[h] = st.hairs[h].second;
            g.edges.push_back({h, nhairs + st.hairs[h].first});
        }
        for (size_t i = 0; i < ipairs.size(); ++i)
            for (int c = 0; c < st.edge_mult[i]; ++c)
                g.edges.push_back(
                    {nhairs + ipairs[i].first, nhairs + ipairs[i].second});
        for (const auto& [v, s] : st.decos) g.decos.push_back({nhairs + v, s});
        if (spec.hairless_only && nhairs > 0) return;
        if ((int)g.decos.size() < spec.min_decorations) return;
        if (!is_admissible(g, spec.policy)) return;
        if (spec.require_connected && !g.connected()) return;
        if (g.loop_order() > T.max_loop_order) return;
        int dd = 0;
        for (const auto& d : g.decos) dd += spec.alg_v->degree(d.symbol);
        if (dd > T.max_total_decoration_degree) return;
        sink(g);
    };

    // Decoration enumeration appended after hairs/edges are fixed.
    std::function<void(int, int, int, int)> rec_deco =
        [&](int slot, int remaining_count, int internal_edges, int nhairs) {
            emit(internal_edges, nhairs);
            if (remaining_count == 0) return;
            int last = st.decos.empty() ? 0
                                        : st.decos.back().first * vsyms +
                                              st.decos.back().second;
            for (int v = 0; v < k; ++v)
                for (int s = 0; s < vsyms; ++s) {
                    if (spec.alg_v->degree(s) == 0) continue;  // no unit decorations
                    if (v * vsyms + s < last) continue;        // monotone multiset
                    st.decos.emplace_back(v, s);
                    rec_deco(slot + 1, remaining_count - 1, internal_edges, nhairs);
                    st.decos.pop_back();
                }
        };

    int max_decos = 0;
    if (vsyms > 0) {
        int min_pos_deg = 1 << 20;
        for (int s = 0; s < vsyms; ++s)
            if (spec.alg_v->degree(s) > 0)
                min_pos_deg = std::min(min_pos_deg, spec.alg_v->degree(s));
        if (min_pos_deg < (1 << 20))
            max_decos = T.max_total_decoration_degree / min_pos_deg;
    }

    std::function<void(int, int, int)> rec_hair =
        [&](int nhairs, int remaining, int internal_edges) {
            if (remaining == 0) {
                st.decos.clear();
                rec_deco(0, max_decos, internal_edges, nhairs);
                return;
            }
            int last = st.hairs.empty()
                           ? 0
                           : st.hairs.back().first * usyms + st.hairs.back().second;
            for (int v = 0; v < k; ++v)
                for (int s = 0; s < usyms; ++s) {
                    if (v * usyms + s < last) continue;
                    st.hairs.emplace_back(v, s);
                    rec_hair(nhairs, remaining - 1, internal_edges);
                    st.hairs.pop_back();
                }
        };

    // Valence feasibility over the whole cell.
    if (3 * k > 2 * cell.num_edges + max_decos) return;

    // Edges split between internal edges and hairs: E = E_int + H.
    for (int H = 0; H <= std::min(T.max_hairs, cell.num_edges); ++H) {
        if (spec.hairless_only && H > 0) break;
        int E_int = cell.num_edges - H;
        std::function<void(int, int)> rec_e = [&](int pi, int remaining) {
            if (remaining == 0) {
                st.hairs.clear();
                rec_hair(H, H, E_int);
                return;
            }
            if (pi == (int)ipairs.size()) return;
            for (int take = remaining; take >= 0; --take) {
                st.edge_mult[pi] = take;
                rec_e(pi + 1, remaining - take);
            }
            st.edge_mult[pi] = 0;
        };
        rec_e(0, E_int);
    }
}

std::vector<Cell> window_cells(const EnumerationSpec& spec,
                               const TruncationParams& T) {
    std::vector<Cell> cells;
    int vmin = spec.mode == Mode::Hairy ? 1 : 0;
    for (int v = vmin; v <= T.max_internal_vertices; ++v)
        for (int e = 0; e <= T.max_edges; ++e) cells.push_back({v, e});
    return cells;
}

std::vector<CanonicalGraph> enumerate_cells(const EnumerationSpec& spec,
                                            const TruncationParams& T,
                                            const std::vector<Cell>& cells,
                                            std::optional<int> degree,
                                            bool parallel) {
    std::vector<std::vector<CanonicalGraph>> per_cell(cells.size());
    auto run_cell = [&](size_t ci) {
        std::set<std::string> seen;
        std::vector<CanonicalGraph>& out = per_cell[ci];
        generate_cell(spec, T, cells[ci], [&](const HairyGraph& g) {
            if (degree && g.degree() != *degree) return;
            CanonResult r = canonicalize(g);
            if (r.sign == 0) return;
            if (seen.insert(r.canon.key).second) out.push_back(std::move(r.canon));
        });
    };
#ifdef _OPENMP
    if (parallel) {
        int width = parallelism();
#pragma omp parallel for schedule(dynamic) num_threads(width)
        for (size_t ci = 0; ci < cells.size(); ++ci) run_cell(ci);
    } else
#endif
    {
        (void)parallel;
        for (size_t ci = 0; ci < cells.size(); ++ci) run_cell(ci);
    }
    std::vector<CanonicalGraph> all;
    for (auto& v : per_cell)
        for (auto& cg : v) all.push_back(std::move(cg));
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

ComplexSlice make_slice(const EnumerationSpec& spec, int degree,
                        const TruncationParams& T, bool parallel) {
    ComplexSlice s;
    s.params = T;
    s.degree = degree;
    s.basis = enumerate_cells(spec, T, window_cells(spec, T), degree, parallel);
    return s;
}

}  // namespace

ComplexSlice enumerate_basis(const EnumerationSpec& spec, int degree,
                             const TruncationParams& T) {
    return make_slice(spec, degree, T, true);
}

ComplexSlice enumerate_basis_serial(const EnumerationSpec& spec, int degree,
                                    const TruncationParams& T) {
    return make_slice(spec, degree, T, false);
}

std::vector<CanonicalGraph> enumerate_all(const EnumerationSpec& spec,
                                          const TruncationParams& T) {
    return enumerate_cells(spec, T, window_cells(spec, T), std::nullopt, true);
}

std::vector<CanonicalGraph> enumerate_all_serial(const EnumerationSpec& spec,
                                                 const TruncationParams& T) {
    return enumerate_cells(spec, T, window_cells(spec, T), std::nullopt, false);
}

namespace {

BoundaryResult boundary_impl(const ComplexSlice& src, const ComplexSlice& dst,
                             const DiffOp& d, bool require_closed, bool parallel) {
    BoundaryResult res;
    res.matrix.rows = (int)dst.basis.size();
    res.matrix.cols = (int)src.basis.size();
    std::vector<std::vector<std::tuple<int, int, Rat>>> cols(src.basis.size());
    std::vector<char> open(src.basis.size(), 0);
    auto run_col = [&](size_t j) {
        LinCombo image = d(src.basis[j].graph);
        for (const auto& [key, tc] : image.terms()) {
            int i = dst.find(key);
            if (i < 0) {
                open[j] = 1;
                continue;
            }
            cols[j].emplace_back(i, (int)j, tc.second);
        }
    };
#ifdef _OPENMP
    if (parallel) {
        int width = parallelism();
#pragma omp parallel for schedule(dynamic) num_threads(width)
        for (size_t j = 0; j < src.basis.size(); ++j) run_col(j);
    } else
#endif
    {
        (void)parallel;
        for (size_t j = 0; j < src.basis.size(); ++j) run_col(j);
    }
    for (size_t j = 0; j < src.basis.size(); ++j) {
        if (open[j]) res.closed = false;
        for (auto& t : cols[j]) res.matrix.entries.push_back(std::move(t));
    }
    if (require_closed && !res.closed)
        throw std::runtime_error("boundary_matrix: image escapes the window");
    return res;
}

}  // namespace

BoundaryResult boundary_matrix(const ComplexSlice& src, const ComplexSlice& dst,
                               const DiffOp& d, bool require_closed) {
    return boundary_impl(src, dst, d, require_closed, true);
}

BoundaryResult boundary_matrix_serial(const ComplexSlice& src,
                                      const ComplexSlice& dst, const DiffOp& d,
                                      bool require_closed) {
    return boundary_impl(src, dst, d, require_closed, false);
}

int rank(const SparseMatrix& m) {
    // Fraction-free Bareiss elimination on integer-scaled rows, with
    // Markowitz-style pivot selection; deterministic tie-breaks.
    std::vector<std::map<int, mpz_class>> rows(m.rows);
    // Scale each row by the lcm of denominators.
    {
        std::vector<std::map<int, Rat>> qrows(m.rows);
        for (const auto& [i, j, q] : m.entries)
            if (q != 0) qrows[i][j] += q;
        for (int i = 0; i < m.rows; ++i) {
            if (qrows[i].empty()) continue;
            mpz_class l(1);
            for (const auto& [j, q] : qrows[i]) {
                mpz_class den = q.get_den();
                mpz_class g;
                mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
                l = l / g * den;
            }
            for (const auto& [j, q] : qrows[i]) {
                mpz_class v = q.get_num() * (l / q.get_den());
                if (v != 0) rows[i][j] = v;
            }
        }
    }
    std::vector<char> row_used(m.rows, 0);
    std::vector<char> col_used(m.cols, 0);
    mpz_class prev_pivot(1);
    int r = 0;
    while (true) {
        // Column fill counts among live entries.
        std::vector<int> col_nnz(m.cols, 0);
        for (int i = 0; i < m.rows; ++i) {
            if (row_used[i]) continue;
            for (const auto& [j, v] : rows[i])
                if (!col_used[j] && v != 0) ++col_nnz[j];
        }
        long best_score = -1;
        int bi = -1, bj = -1;
        for (int i = 0; i < m.rows; ++i) {
            if (row_used[i]) continue;
            int rn = 0;
            for (const auto& [j, v] : rows[i])
                if (!col_used[j] && v != 0) ++rn;
            if (rn == 0) continue;
            for (const auto& [j, v] : rows[i]) {
                if (col_used[j] || v == 0) continue;
                long score = (long)(rn - 1) * (col_nnz[j] - 1);
                if (best_score < 0 || score < best_score ||
                    (score == best_score && (i < bi || (i == bi && j < bj)))) {
                    best_score = score;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (bi < 0) break;
        mpz_class pivot = rows[bi][bj];
        for (int i = 0; i < m.rows; ++i) {
            if (row_used[i] || i == bi) continue;
            auto it = rows[i].find(bj);
            if (it == rows[i].end() || it->second == 0) {
                // Still must scale by pivot/prev for fraction-freeness.
                for (auto& [j, v] : rows[i]) {
                    if (col_used[j]) continue;
                    v = v * pivot / prev_pivot;
                }
                continue;
            }
            mpz_class factor = it->second;
            for (const auto& [j, pv] : rows[bi]) {
                if (col_used[j] || j == bj) continue;
                mpz_class& tv = rows[i][j];
                tv = (tv * pivot - factor * pv) / prev_pivot;
            }
            for (auto& [j, v] : rows[i]) {
                if (col_used[j] || j == bj) continue;
                bool in_pivot_row = rows[bi].count(j) > 0;
                if (!in_pivot_row) v = v * pivot / prev_pivot;
            }
            rows[i][bj] = 0;
        }
        row_used[bi] = 1;
        col_used[bj] = 1;
        prev_pivot = pivot;
        ++r;
    }
    return r;
}

int rank_dense_oracle(const SparseMatrix& m) {
    std::vector<std::vector<Rat>> a(m.rows, std::vector<Rat>(m.cols, Rat(0)));
    for (const auto& [i, j, q] : m.entries) a[i][j] += q;
    int r = 0;
    for (int col = 0; col < m.cols && r < m.rows; ++col) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (a[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[piv], a[r]);
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || a[i][col] == 0) continue;
            Rat f = a[i][col] / a[r][col];
            for (int j = col; j < m.cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

SparseMatrix sparse_multiply(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols != b.rows) throw std::runtime_error("sparse_multiply: shape");
    std::map<std::pair<int, int>, Rat> acc;
    std::vector<std::vector<std::pair<int, Rat>>> brows(b.rows);
    for (const auto& [i, j, q] : b.entries) brows[i].emplace_back(j, q);
    for (const auto& [i, k, q] : a.entries)
        for (const auto& [j, r] : brows[k]) acc[{i, j}] += q * r;
    SparseMatrix out;
    out.rows = a.rows;
    out.cols = b.cols;
    for (const auto& [ij, q] : acc)
        if (q != 0) out.entries.emplace_back(ij.first, ij.second, q);
    return out;
}

bool is_zero_matrix(const SparseMatrix& m) {
    for (const auto& [i, j, q] : m.entries)
        if (q != 0) return false;
    return true;
}

CohomologyTable cohomology_dims(const std::vector<ComplexSlice>& window,
                                const DiffOp& d) {
    CohomologyTable table;
    size_t n = window.size();
    if (n == 0) return table;
    std::vector<BoundaryResult> maps(n - 1);
    for (size_t i = 0; i + 1 < n; ++i)
        maps[i] = boundary_matrix(window[i], window[i + 1], d, false);
    for (size_t i = 0; i < n; ++i) {
        int dim = (int)window[i].basis.size();
        int r_out = i + 1 < n ? rank(maps[i].matrix) : 0;
        int r_in = i > 0 ? rank(maps[i - 1].matrix) : 0;
        bool trusted = i > 0 && i + 1 < n && maps[i].closed && maps[i - 1].closed;
        table.dims[window[i].degree] = {dim - r_out - r_in, trusted};
    }
    return table;
}

IhxResult ihx_reduce(const ComplexSlice& tree_slice, const EnumerationSpec& spec) {
    for (const auto& cg : tree_slice.basis)
        if (cg.graph.loop_order() != 0)
            throw std::runtime_error("ihx_reduce: non-tree member");
    // Relator sources: one-lower-edge trees with exactly one 4-valent
    // internal vertex (decoration-inclusive), all others 3-valent.
    TruncationParams T = tree_slice.params;
    EnumerationSpec sspec = spec;
    sspec.policy.min_internal_valence = 3;
    ComplexSlice sources = enumerate_basis(sspec, tree_slice.degree + 1, T);
    IhxResult res;
    // Sources must carry a hair/decoration profile present in the slice, or
    // their split images could not land inside it.
    std::set<std::pair<std::vector<int>, std::vector<int>>> profiles;
    for (const auto& cg : tree_slice.basis) {
        std::vector<int> hl = cg.graph.hair_label;
        std::sort(hl.begin(), hl.end());
        std::vector<int> ds;
        for (const auto& d : cg.graph.decos) ds.push_back(d.symbol);
        std::sort(ds.begin(), ds.end());
        profiles.insert({hl, ds});
    }
    std::vector<LinCombo> relators;
    for (const auto& cg : sources.basis) {
        const HairyGraph& g = cg.graph;
        if (g.loop_order() != 0) continue;
        int fours = 0;
        bool ok = true;
        for (int i = 0; i < g.num_internal; ++i) {
            int val = g.decorated_valence(g.internal_id(i));
            if (val == 4) ++fours;
            else if (val != 3) ok = false;
        }
        if (!ok || fours != 1) continue;
        std::vector<int> hl = g.hair_label;
        std::sort(hl.begin(), hl.end());
        std::vector<int> ds;
        for (const auto& d : g.decos) ds.push_back(d.symbol);
        std::sort(ds.begin(), ds.end());
        if (!profiles.count({hl, ds})) continue;
        LinCombo img = delta_split(g, spec.policy);
        if (img.is_zero()) continue;
        res.relator_sources.push_back(cg);
        relators.push_back(std::move(img));
    }
    res.relators.rows = (int)tree_slice.basis.size();
    res.relators.cols = (int)relators.size();
    for (size_t c = 0; c < relators.size(); ++c)
        for (const auto& [key, tc] : relators[c].terms()) {
            int i = tree_slice.find(key);
            if (i < 0)
                throw std::runtime_error("ihx_reduce: relator escapes the slice");
            res.relators.entries.emplace_back(i, (int)c, tc.second);
        }
    // Column echelon of the transpose: pivot columns are eliminated basis
    // vectors; the rest represent the quotient.
    SparseMatrix t;
    t.rows = res.relators.cols;
    t.cols = res.relators.rows;
    for (const auto& [i, j, q] : res.relators.entries)
        t.entries.emplace_back(j, i, q);
    std::vector<std::vector<Rat>> a(t.rows, std::vector<Rat>(t.cols, Rat(0)));
    for (const auto& [i, j, q] : t.entries) a[i][j] += q;
    std::vector<char> pivot_col(t.cols, 0);
    int r = 0;
    for (int col = 0; col < t.cols && r < t.rows; ++col) {
        int piv = -1;
        for (int i = r; i < t.rows; ++i)
            if (a[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[piv], a[r]);
        for (int i = 0; i < t.rows; ++i) {
            if (i == r || a[i][col] == 0) continue;
            Rat f = a[i][col] / a[r][col];
            for (int j = col; j < t.cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_col[col] = 1;
        ++r;
    }
    for (int j = 0; j < t.cols; ++j)
        if (!pivot_col[j]) res.surviving.push_back(j);
    res.quotient_dim = (int)res.surviving.size();
    return res;
}

}  // namespace gcx
