#include "graphcx/io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace gcx {

namespace {

std::string strip_comment(const std::string& line) {
    size_t pos = line.find('#');
    std::string s = pos == std::string::npos ? line : line.substr(0, pos);
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

// Identifier iN / eN -> (is_internal, 1-based index).
std::pair<bool, int> parse_vertex_id(const std::string& tok, int line) {
    if (tok.size() < 2 || (tok[0] != 'i' && tok[0] != 'e'))
        throw ParseError(line, "bad vertex identifier: " + tok);
    for (size_t i = 1; i < tok.size(); ++i)
        if (!isdigit(tok[i])) throw ParseError(line, "bad vertex identifier: " + tok);
    return {tok[0] == 'i', std::stoi(tok.substr(1))};
}

struct RawEdge {
    bool a_int, b_int;
    int a, b;  // 1-based file indices
};

}  // namespace

HairyGraph parse_graph_block(std::istream& in, const AlgebraRegistry& reg,
                             int& line_no) {
    std::string line;
    bool started = false;
    Mode mode = Mode::Kontsevich;
    bool even = true;
    int n_explicit = 0;
    AlgebraPtr alg_v, alg_u;
    std::map<int, std::vector<std::string>> iv_decos;  // file index -> symbols
    std::map<int, std::vector<std::string>> ev_decos;
    std::vector<RawEdge> raw_edges;
    std::vector<int> orient_edges, orient_ivs, orient_dirs;
    std::vector<std::pair<int, int>> orient_halves;  // (edge 1-based, side)
    bool have_orient_edges = false, have_orient_ivs = false,
         have_orient_halves = false;

    while (std::getline(in, line)) {
        ++line_no;
        std::string s = strip_comment(line);
        if (s.empty()) {
            if (started) break;
            continue;
        }
        std::vector<std::string> toks = split_ws(s);
        const std::string& key = toks[0];
        if (key == "graph") {
            if (started) throw ParseError(line_no, "unexpected second graph header");
            started = true;
            for (size_t t = 1; t < toks.size(); ++t) {
                size_t eq = toks[t].find('=');
                if (eq == std::string::npos)
                    throw ParseError(line_no, "bad graph attribute: " + toks[t]);
                std::string k = toks[t].substr(0, eq), v = toks[t].substr(eq + 1);
                if (k == "mode") {
                    if (v == "hairy") mode = Mode::Hairy;
                    else if (v == "kontsevich") mode = Mode::Kontsevich;
                    else throw ParseError(line_no, "unknown mode: " + v);
                } else if (k == "nparity") {
                    if (v == "even") even = true;
                    else if (v == "odd") even = false;
                    else throw ParseError(line_no, "unknown nparity: " + v);
                } else if (k == "n") {
                    n_explicit = std::stoi(v);
                } else {
                    throw ParseError(line_no, "unknown graph attribute: " + k);
                }
            }
            continue;
        }
        if (!started) throw ParseError(line_no, "expected graph header, got: " + key);
        if (key == "alg") {
            if (toks.size() != 3) throw ParseError(line_no, "alg needs role and name");
            if (toks[1] == "V") alg_v = reg.get(toks[2]);
            else if (toks[1] == "U") alg_u = reg.get(toks[2]);
            else throw ParseError(line_no, "unknown algebra role: " + toks[1]);
        } else if (key == "iv" || key == "ev") {
            if (toks.size() < 2) throw ParseError(line_no, key + " needs an index");
            int idx = std::stoi(toks[1]);
            std::vector<std::string> decos;
            for (size_t t = 2; t < toks.size(); ++t) {
                if (toks[t].rfind("deco=", 0) != 0)
                    throw ParseError(line_no, "unknown key: " + toks[t]);
                std::string list = toks[t].substr(5);
                std::istringstream ls(list);
                std::string sym;
                while (std::getline(ls, sym, ','))
                    if (!sym.empty()) decos.push_back(sym);
            }
            auto& m = key == "iv" ? iv_decos : ev_decos;
            if (m.count(idx)) throw ParseError(line_no, "duplicate vertex " + toks[1]);
            m[idx] = std::move(decos);
        } else if (key == "edge") {
            if (toks.size() != 3) throw ParseError(line_no, "edge needs two endpoints");
            auto [ai, a] = parse_vertex_id(toks[1], line_no);
            auto [bi, b] = parse_vertex_id(toks[2], line_no);
            raw_edges.push_back({ai, bi, a, b});
        } else if (key == "orient") {
            if (toks.size() < 2) throw ParseError(line_no, "orient needs a kind");
            std::string kind = toks[1];
            if (!kind.empty() && kind.back() == ':') kind.pop_back();
            if (kind == "edges") {
                have_orient_edges = true;
                for (size_t t = 2; t < toks.size(); ++t)
                    orient_edges.push_back(std::stoi(toks[t]));
            } else if (kind == "ivs") {
                have_orient_ivs = true;
                for (size_t t = 2; t < toks.size(); ++t)
                    orient_ivs.push_back(std::stoi(toks[t]));
            } else if (kind == "halfedges") {
                have_orient_halves = true;
                for (size_t t = 2; t < toks.size(); ++t) {
                    std::string h = toks[t];
                    if (h.size() < 2 || (h.back() != 'a' && h.back() != 'b'))
                        throw ParseError(line_no, "bad half-edge: " + h);
                    int side = h.back() == 'a' ? 0 : 1;
                    orient_halves.emplace_back(std::stoi(h.substr(0, h.size() - 1)),
                                               side);
                }
            } else {
                throw ParseError(line_no, "unknown orient kind: " + kind);
            }
        } else {
            throw ParseError(line_no, "unknown key: " + key);
        }
    }
    if (!started) throw ParseError(line_no, "no graph block found");

    HairyGraph g;
    g.mode = mode;
    g.n = n_explicit != 0 ? n_explicit : (even ? 2 : 3);
    if ((g.n % 2 == 0) != even)
        throw ParseError(line_no, "n contradicts nparity");
    g.alg_v = alg_v;
    g.alg_u = alg_u;

    // Vertex index maps: file indices must be 1..count.
    int num_iv = (int)iv_decos.size(), num_ev = (int)ev_decos.size();
    for (auto& [idx, d] : iv_decos)
        if (idx < 1 || idx > num_iv)
            throw ParseError(line_no, "internal indices must be 1..k");
    for (auto& [idx, d] : ev_decos)
        if (idx < 1 || idx > num_ev)
            throw ParseError(line_no, "external indices must be 1..r");
    g.num_external = num_ev;
    g.num_internal = num_iv;

    // Internal order from orient ivs (odd parity), else declaration order.
    std::vector<int> iv_order(num_iv);
    for (int i = 0; i < num_iv; ++i) iv_order[i] = i + 1;
    if (have_orient_ivs) {
        if ((int)orient_ivs.size() != num_iv)
            throw ParseError(line_no, "orient ivs must list every internal vertex");
        iv_order = orient_ivs;
    }
    std::vector<int> iv_pos(num_iv + 1, -1);
    for (int p = 0; p < num_iv; ++p) {
        int idx = iv_order[p];
        if (idx < 1 || idx > num_iv || iv_pos[idx] >= 0)
            throw ParseError(line_no, "orient ivs is not a permutation");
        iv_pos[idx] = p;
    }
    auto vmap = [&](bool is_int, int idx1) {
        if (is_int) {
            if (idx1 < 1 || idx1 > num_iv)
                throw ParseError(line_no, "edge references unknown internal vertex");
            return g.num_external + iv_pos[idx1];
        }
        if (idx1 < 1 || idx1 > num_ev)
            throw ParseError(line_no, "edge references unknown external vertex");
        return idx1 - 1;
    };

    // Edge order from orient edges (even parity), else declaration order.
    int ne = (int)raw_edges.size();
    std::vector<int> edge_order(ne);
    for (int i = 0; i < ne; ++i) edge_order[i] = i + 1;
    if (have_orient_edges) {
        if ((int)orient_edges.size() != ne)
            throw ParseError(line_no, "orient edges must list every edge");
        edge_order = orient_edges;
        std::vector<bool> seen(ne + 1, false);
        for (int idx : edge_order) {
            if (idx < 1 || idx > ne || seen[idx])
                throw ParseError(line_no, "orient edges is not a permutation");
            seen[idx] = true;
        }
    }

    // Directions / residual parity from the half-edge sequence (odd parity).
    std::vector<int> flip(ne + 1, 0);
    int residual = 1;
    if (have_orient_halves) {
        if ((int)orient_halves.size() != 2 * ne)
            throw ParseError(line_no, "orient halfedges must list every half-edge");
        // Parity of the sequence relative to [1a 1b 2a 2b ...], then express
        // as per-edge direction flips; an odd residual flips edge 1.
        std::vector<int> seq;
        std::vector<int> first_side(ne + 1, -1);
        for (const auto& [e, side] : orient_halves) {
            if (e < 1 || e > ne)
                throw ParseError(line_no, "half-edge references unknown edge");
            seq.push_back((e - 1) * 2 + side);
            if (first_side[e] < 0) first_side[e] = side;
        }
        {
            std::vector<bool> seen(2 * ne, false);
            for (int x : seq) {
                if (seen[x]) throw ParseError(line_no, "repeated half-edge");
                seen[x] = true;
            }
        }
        int sgn = permutation_sign(seq);
        for (int e = 1; e <= ne; ++e)
            if (first_side[e] == 1) {
                flip[e] = 1;
                sgn = -sgn;  // normal form lists side a first
            }
        residual = sgn;
        if (residual == -1) {
            if (ne == 0)
                throw ParseError(line_no, "odd half-edge order on an edgeless graph");
            flip[edge_order[0]] ^= 1;
            residual = 1;
        }
    }

    for (int p = 0; p < ne; ++p) {
        const RawEdge& re = raw_edges[edge_order[p] - 1];
        int a = vmap(re.a_int, re.a), b = vmap(re.b_int, re.b);
        if (flip[edge_order[p]]) std::swap(a, b);
        g.edges.push_back({a, b});
    }

    // Decorations in declaration order (iv 1, iv 2, ...), then resolve hair
    // labels.
    for (int idx = 1; idx <= num_iv; ++idx)
        for (const std::string& sym : iv_decos[idx]) {
            if (!alg_v) throw ParseError(line_no, "decoration without alg V");
            int id = alg_v->symbol_id(sym);
            if (id < 0) throw ParseError(line_no, "unknown V symbol: " + sym);
            g.decos.push_back({g.num_external + iv_pos[idx], id});
        }
    if (mode == Mode::Hairy) {
        if (!alg_u && num_ev > 0)
            throw ParseError(line_no, "hairy graph without alg U");
        g.hair_label.assign(num_ev, alg_u ? alg_u->unit() : 0);
        for (int idx = 1; idx <= num_ev; ++idx) {
            const auto& ds = ev_decos[idx];
            if (ds.size() > 1)
                throw ParseError(line_no, "hair carries more than one label");
            if (ds.size() == 1) {
                int id = alg_u->symbol_id(ds[0]);
                if (id < 0) throw ParseError(line_no, "unknown U symbol: " + ds[0]);
                g.hair_label[idx - 1] = id;
            }
        }
        if (!alg_u) g.alg_u = trivial_unital();
    } else {
        for (int idx = 1; idx <= num_ev; ++idx)
            for (const std::string& sym : ev_decos[idx]) {
                if (!alg_v) throw ParseError(line_no, "decoration without alg V");
                int id = alg_v->symbol_id(sym);
                if (id < 0) throw ParseError(line_no, "unknown V symbol: " + sym);
                g.decos.push_back({idx - 1, id});
            }
    }
    g.check_structure();
    return g;
}

HairyGraph parse_graph_file(const std::string& path, const AlgebraRegistry& reg) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    int line_no = 0;
    return parse_graph_block(in, reg, line_no);
}

std::string write_graph_block(const HairyGraph& g) {
    std::ostringstream os;
    bool even = g.even_n();
    os << "graph mode=" << (g.mode == Mode::Hairy ? "hairy" : "kontsevich")
       << " nparity=" << (even ? "even" : "odd");
    if (g.n != (even ? 2 : 3)) os << " n=" << g.n;
    os << "\n";
    if (g.alg_v) os << "alg V " << g.alg_v->name() << "\n";
    if (g.alg_u) os << "alg U " << g.alg_u->name() << "\n";
    for (int i = 0; i < g.num_internal; ++i) {
        os << "iv " << (i + 1);
        std::string sep = " deco=";
        for (const auto& d : g.decos)
            if (d.vertex == g.internal_id(i)) {
                os << sep << g.alg_v->symbol_name(d.symbol);
                sep = ",";
            }
        os << "\n";
    }
    for (int e = 0; e < g.num_external; ++e) {
        os << "ev " << (e + 1);
        if (g.mode == Mode::Hairy) {
            if (g.hair_label[e] != g.alg_u->unit())
                os << " deco=" << g.alg_u->symbol_name(g.hair_label[e]);
        } else {
            std::string sep = " deco=";
            for (const auto& d : g.decos)
                if (d.vertex == e) {
                    os << sep << g.alg_v->symbol_name(d.symbol);
                    sep = ",";
                }
        }
        os << "\n";
    }
    auto vid = [&](int v) {
        std::ostringstream vs;
        if (g.is_external(v)) vs << "e" << (v + 1);
        else vs << "i" << (v - g.num_external + 1);
        return vs.str();
    };
    for (const auto& e : g.edges)
        os << "edge " << vid(e.a) << " " << vid(e.b) << "\n";
    if (even) {
        os << "orient edges:";
        for (size_t i = 0; i < g.edges.size(); ++i) os << " " << (i + 1);
        os << "\n";
    } else {
        os << "orient halfedges:";
        for (size_t i = 0; i < g.edges.size(); ++i)
            os << " " << (i + 1) << "a " << (i + 1) << "b";
        os << "\n";
        os << "orient ivs:";
        for (int i = 0; i < g.num_internal; ++i) os << " " << (i + 1);
        os << "\n";
    }
    return os.str();
}

MCElement parse_mc_file(const std::string& path, const AlgebraRegistry& reg) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    MCElement z;
    std::string line;
    int line_no = 0;
    bool have_header = false;
    std::optional<Rat> pending_coeff;
    while (true) {
        std::streampos pos = in.tellg();
        if (!std::getline(in, line)) break;
        ++line_no;
        std::string s = strip_comment(line);
        if (s.empty()) continue;
        std::vector<std::string> toks = split_ws(s);
        if (toks[0] == "mc") {
            for (size_t t = 1; t < toks.size(); ++t) {
                if (toks[t].rfind("shifted_degree=", 0) == 0)
                    z.shifted_degree = std::stoi(toks[t].substr(15));
                else
                    throw ParseError(line_no, "unknown mc attribute: " + toks[t]);
            }
            have_header = true;
        } else if (toks[0] == "coeff") {
            if (toks.size() != 2) throw ParseError(line_no, "coeff needs a value");
            auto q = parse_rat(toks[1]);
            if (!q) throw ParseError(line_no, "bad rational: " + toks[1]);
            pending_coeff = *q;
        } else if (toks[0] == "graph") {
            if (!have_header) throw ParseError(line_no, "missing mc header");
            if (!pending_coeff) throw ParseError(line_no, "graph without coeff");
            in.seekg(pos);
            --line_no;
            HairyGraph g = parse_graph_block(in, reg, line_no);
            z.value.add_graph(g, *pending_coeff);
            pending_coeff.reset();
        } else {
            throw ParseError(line_no, "unknown key: " + toks[0]);
        }
    }
    z.validate();
    return z;
}

std::string write_mc_file(const MCElement& z) {
    std::ostringstream os;
    os << "mc shifted_degree=" << z.shifted_degree << "\n";
    for (const auto& [key, tc] : z.value.terms()) {
        os << "\ncoeff " << rat_to_string(tc.second) << "\n";
        os << write_graph_block(tc.first.graph);
    }
    return os.str();
}

std::string write_cocomposition_terms(const std::vector<CocompositionTerm>& ts) {
    std::ostringstream os;
    for (const auto& t : ts) {
        os << "coeff " << rat_to_string(t.coefficient) << "\n";
        os << write_graph_block(t.quotient.graph);
        os << "(x)\n";
        os << write_graph_block(t.subgraph.graph);
        os << "\n";
    }
    return os.str();
}

std::string write_matrix(const SparseMatrix& m) {
    std::ostringstream os;
    os << m.rows << " " << m.cols << " " << m.entries.size() << "\n";
    for (const auto& [i, j, q] : m.entries)
        os << i << " " << j << " " << rat_to_string(q) << "\n";
    return os.str();
}

SparseMatrix parse_matrix(std::istream& in) {
    SparseMatrix m;
    size_t nnz;
    if (!(in >> m.rows >> m.cols >> nnz))
        throw std::runtime_error("matrix: bad header");
    for (size_t t = 0; t < nnz; ++t) {
        int i, j;
        std::string q;
        if (!(in >> i >> j >> q)) throw std::runtime_error("matrix: short file");
        auto r = parse_rat(q);
        if (!r) throw std::runtime_error("matrix: bad rational " + q);
        m.entries.emplace_back(i, j, *r);
    }
    return m;
}

std::string write_basis(const ComplexSlice& slice) {
    std::ostringstream os;
    os << "# basis degree=" << slice.degree << " size=" << slice.basis.size()
       << "\n";
    for (size_t i = 0; i < slice.basis.size(); ++i) {
        os << "\n# basis " << i << "\n";
        os << write_graph_block(slice.basis[i].graph);
    }
    return os.str();
}

RunConfig parse_config_file(const std::string& path) {
    RunConfig cfg;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string s = strip_comment(line);
        if (s.empty()) continue;
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ParseError(line_no, "config line is not key=value");
        std::string k = s.substr(0, eq), v = s.substr(eq + 1);
        if (k.rfind("algebra.", 0) == 0) cfg.algebra_files[k.substr(8)] = v;
        else if (k == "max_edges") cfg.default_truncation.max_edges = std::stoi(v);
        else if (k == "max_internal")
            cfg.default_truncation.max_internal_vertices = std::stoi(v);
        else if (k == "max_hairs") cfg.default_truncation.max_hairs = std::stoi(v);
        else if (k == "max_loops")
            cfg.default_truncation.max_loop_order = std::stoi(v);
        else if (k == "max_deco_degree")
            cfg.default_truncation.max_total_decoration_degree = std::stoi(v);
        else if (k == "output_dir") cfg.output_dir = v;
        else if (k == "seed") cfg.seed = (unsigned)std::stoul(v);
        else if (k == "parallelism") cfg.parallelism = std::stoi(v);
        else if (k == "strict") cfg.strict = v == "1" || v == "true";
        else throw ParseError(line_no, "unknown config key: " + k);
    }
    return cfg;
}

AlgebraPtr parse_algebra_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open algebra file " + path);
    std::string line, name;
    int line_no = 0;
    std::vector<std::string> syms;
    std::vector<int> degs;
    int unit = -1;
    struct PendingMult {
        std::string a, b, value;
        int line;
    };
    std::vector<PendingMult> mults, diffs;
    while (std::getline(in, line)) {
        ++line_no;
        std::string s = strip_comment(line);
        if (s.empty()) continue;
        std::vector<std::string> toks = split_ws(s);
        if (toks[0] == "algebra") {
            if (toks.size() != 2) throw ParseError(line_no, "algebra needs a name");
            name = toks[1];
        } else if (toks[0] == "sym") {
            if (toks.size() < 4 || toks[2] != "deg")
                throw ParseError(line_no, "sym <name> deg <d> [unit]");
            syms.push_back(toks[1]);
            degs.push_back(std::stoi(toks[3]));
            if (toks.size() == 5 && toks[4] == "unit") unit = (int)syms.size() - 1;
            else if (toks.size() > 4) throw ParseError(line_no, "unknown sym flag");
        } else if (toks[0] == "mult" || toks[0] == "diff") {
            // mult a b = expr ; diff a = expr
            size_t eq = s.find('=');
            if (eq == std::string::npos) throw ParseError(line_no, "missing =");
            std::vector<std::string> lhs = split_ws(s.substr(0, eq));
            std::string rhs = s.substr(eq + 1);
            if (toks[0] == "mult" && lhs.size() == 3)
                mults.push_back({lhs[1], lhs[2], rhs, line_no});
            else if (toks[0] == "diff" && lhs.size() == 2)
                diffs.push_back({lhs[1], "", rhs, line_no});
            else
                throw ParseError(line_no, "bad " + toks[0] + " line");
        } else {
            throw ParseError(line_no, "unknown key: " + toks[0]);
        }
    }
    if (name.empty()) throw ParseError(line_no, "missing algebra name");
    if (unit < 0) throw ParseError(line_no, "missing unit symbol");
    auto alg = std::make_shared<GradedAlgebra>(name, syms, degs, unit);
    auto sym_id = [&](const std::string& s, int ln) {
        int id = alg->symbol_id(s);
        if (id < 0) throw ParseError(ln, "unknown symbol: " + s);
        return id;
    };
    auto parse_expr = [&](const std::string& expr, int ln) {
        // "0" or "c1*s1 + c2*s2 - s3" with optional coefficients.
        SymCombo out;
        std::string cur;
        std::vector<std::string> terms;
        std::string norm;
        for (char c : expr) {
            if (c == '+') norm += " + ";
            else if (c == '-') norm += " - ";
            else norm += c;
        }
        std::vector<std::string> toks = split_ws(norm);
        int sign = 1;
        for (size_t i = 0; i < toks.size(); ++i) {
            if (toks[i] == "+") {
                sign = 1;
                continue;
            }
            if (toks[i] == "-") {
                sign = -1;
                continue;
            }
            std::string t = toks[i];
            if (t == "0") continue;
            Rat c(sign);
            std::string symname = t;
            size_t star = t.find('*');
            if (star != std::string::npos) {
                auto q = parse_rat(t.substr(0, star));
                if (!q) throw ParseError(ln, "bad coefficient in: " + t);
                c = *q * sign;
                symname = t.substr(star + 1);
            }
            out = sym_combo_add(out, {{sym_id(symname, ln), c}});
            sign = 1;
        }
        (void)cur;
        return out;
    };
    for (const auto& pm : mults)
        alg->set_product(sym_id(pm.a, pm.line), sym_id(pm.b, pm.line),
                         parse_expr(pm.value, pm.line));
    for (const auto& pd : diffs)
        alg->set_differential(sym_id(pd.a, pd.line), parse_expr(pd.value, pd.line));
    alg->validate();
    return alg;
}

MCElement make_z51(int n) {
    HairyGraph g = empty_hairy(n, reduced_sphere_cohomology(n), trivial_unital());
    g.num_internal = 1;
    g.num_external = 1;
    g.hair_label = {g.alg_u->unit()};
    g.edges.push_back({0, 1});
    g.decos.push_back({1, g.alg_v->symbol_id("w")});
    MCElement z;
    z.value.add_graph(g, Rat(2));
    z.shifted_degree = g.degree() + 1;
    z.validate();
    return z;
}

MCElement make_z52(int d) {
    HairyGraph g = empty_hairy(2 * d, punctured_product_cohomology(d),
                               trivial_unital());
    g.num_internal = 2;
    g.edges.push_back({0, 1});
    g.decos.push_back({0, g.alg_v->symbol_id("w1")});
    g.decos.push_back({1, g.alg_v->symbol_id("w2")});
    MCElement z;
    z.value.add_graph(g, Rat(1));
    z.shifted_degree = g.degree() + 1;
    z.validate();
    return z;
}

}  // namespace gcx
