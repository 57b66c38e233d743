// Command-line front end: basis enumeration, differential checks, cohomology
// tables, Maurer-Cartan verification, structure-relation checks, and the two
// worked pipelines. Exit codes: 0 success, 2 usage error, 3 verification
// failure, 4 closure/trust failure under --strict.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "graphcx/io.hpp"
#include "graphcx/parallel.hpp"
#include "graphcx/pipelines.hpp"

using namespace gcx;

namespace {

constexpr int kExitOk = 0, kExitUsage = 2, kExitVerify = 3, kExitTrust = 4;

struct CommonOpts {
    TruncationParams T;
    bool strict = false;
    bool oracle = false;
    int parallelism = 0;
    std::string output_dir = ".";
    unsigned seed = 1;
};

void add_truncation_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--max-edges", o.T.max_edges, "edge bound");
    cmd->add_option("--max-internal", o.T.max_internal_vertices,
                    "internal vertex bound");
    cmd->add_option("--max-hairs", o.T.max_hairs, "hair bound");
    cmd->add_option("--max-loops", o.T.max_loop_order, "loop order bound");
    cmd->add_option("--max-deco-degree", o.T.max_total_decoration_degree,
                    "total decoration degree bound");
    cmd->add_flag("--strict", o.strict, "escalate warnings to errors");
    cmd->add_flag("--oracle", o.oracle,
                  "re-derive key numbers via the independent oracle");
    cmd->add_option("--parallelism", o.parallelism, "worker pool width");
}

void apply_config(CommonOpts& o) {
    if (const char* env = std::getenv("GRAPHCX_CONFIG")) {
        RunConfig cfg = parse_config_file(env);
        o.T = cfg.default_truncation;
        o.strict = o.strict || cfg.strict;
        o.output_dir = cfg.output_dir;
        o.seed = cfg.seed;
        if (cfg.parallelism > 0 && o.parallelism == 0)
            o.parallelism = cfg.parallelism;
    }
    set_parallelism(o.parallelism);
}

EnumerationSpec make_spec(const std::string& mode, int n, int externals,
                          const std::string& vname, const std::string& uname,
                          int min_valence, const AlgebraRegistry& reg) {
    EnumerationSpec spec;
    spec.mode = mode == "hairy" ? Mode::Hairy : Mode::Kontsevich;
    spec.n = n;
    spec.num_external = externals;
    if (!vname.empty()) spec.alg_v = reg.get(vname);
    if (!uname.empty()) spec.alg_u = reg.get(uname);
    spec.policy.min_internal_valence = min_valence;
    spec.require_connected = spec.mode == Mode::Hairy;
    return spec;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graphcx: exact graph complex computations"};
    app.require_subcommand(1);
    AlgebraRegistry reg;

    CommonOpts opt;
    std::string mode = "kontsevich", vname, uname;
    int n = 3, externals = 2, degree = 0, min_valence = 3;
    int deg_lo = 0, deg_hi = 2;
    std::string z_path, out_path, twist_path;
    int order = 2;
    int s51_n = 3, s51_k = 3, s52_d = 3, s52_k = 3;

    auto* basis = app.add_subcommand("basis", "enumerate a canonical basis slice");
    basis->add_option("--mode", mode, "kontsevich|hairy");
    basis->add_option("--n", n, "ambient dimension parameter");
    basis->add_option("--externals", externals, "kontsevich arity");
    basis->add_option("--alg-v", vname, "decoration algebra name");
    basis->add_option("--alg-u", uname, "hair label algebra name");
    basis->add_option("--degree", degree, "graph degree")->required();
    basis->add_option("--min-valence", min_valence, "internal valence policy");
    basis->add_option("--out", out_path, "write the basis file here");
    add_truncation_flags(basis, opt);

    auto* dsq = app.add_subcommand("dsq", "d^2 = 0 suite on a window");
    dsq->add_option("--mode", mode, "kontsevich|hairy");
    dsq->add_option("--n", n, "ambient dimension parameter");
    dsq->add_option("--externals", externals, "kontsevich arity");
    dsq->add_option("--alg-v", vname, "decoration algebra name");
    dsq->add_option("--alg-u", uname, "hair label algebra name");
    dsq->add_option("--min-valence", min_valence, "internal valence policy");
    dsq->add_option("--z", z_path, "twist by this MC element file");
    add_truncation_flags(dsq, opt);

    auto* coh = app.add_subcommand("cohomology", "cohomology dimension table");
    coh->add_option("--mode", mode, "kontsevich|hairy");
    coh->add_option("--n", n, "ambient dimension parameter");
    coh->add_option("--externals", externals, "kontsevich arity");
    coh->add_option("--alg-v", vname, "decoration algebra name");
    coh->add_option("--alg-u", uname, "hair label algebra name");
    coh->add_option("--deg-low", deg_lo, "lowest degree");
    coh->add_option("--deg-high", deg_hi, "highest degree");
    coh->add_option("--min-valence", min_valence, "internal valence policy");
    add_truncation_flags(coh, opt);

    auto* mc = app.add_subcommand("mc-check", "verify a Maurer-Cartan element");
    mc->add_option("--z", z_path, "MC element file")->required();
    mc->add_option("--twist", twist_path, "ambient twist MC file (optional)");
    mc->add_option("--min-valence", min_valence, "internal valence policy");
    add_truncation_flags(mc, opt);

    auto* lch = app.add_subcommand("linf-check", "structure relation residuals");
    lch->add_option("--order", order, "polarization order (1..3)");
    lch->add_option("--n", n, "ambient dimension parameter");
    lch->add_option("--alg-v", vname, "decoration algebra name");
    lch->add_option("--alg-u", uname, "hair label algebra name");
    lch->add_option("--min-valence", min_valence, "internal valence policy");
    add_truncation_flags(lch, opt);

    auto* ex = app.add_subcommand("example", "the worked pipelines");
    auto* s51 = ex->add_subcommand("s51", "sphere comparison");
    s51->add_option("--n", s51_n, "target sphere dimension");
    s51->add_option("--k", s51_k, "source sphere dimension");
    add_truncation_flags(s51, opt);
    auto* s52 = ex->add_subcommand("s52", "product-sphere enumeration");
    s52->add_option("--d", s52_d, "factor sphere dimension");
    s52->add_option("--k", s52_k, "source sphere dimension");
    add_truncation_flags(s52, opt);
    ex->require_subcommand(1);

    auto* canon = app.add_subcommand("canon", "canonicalize a graph file");
    canon->add_option("--graph", z_path, "graph file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        apply_config(opt);

        if (basis->parsed()) {
            EnumerationSpec spec =
                make_spec(mode, n, externals, vname, uname, min_valence, reg);
            ComplexSlice slice = enumerate_basis(spec, degree, opt.T);
            std::string text = write_basis(slice);
            if (!out_path.empty()) {
                std::ofstream os(out_path);
                os << text;
            } else {
                std::cout << text;
            }
            std::cout << "basis: degree " << degree << " size "
                      << slice.basis.size() << "\n";
            return kExitOk;
        }

        if (dsq->parsed()) {
            EnumerationSpec spec =
                make_spec(mode, n, externals, vname, uname, min_valence, reg);
            std::optional<MCElement> z;
            if (!z_path.empty()) z = parse_mc_file(z_path, reg);
            std::vector<CanonicalGraph> all = enumerate_all(spec, opt.T);
            long failures = 0;
            for (const auto& cg : all) {
                LinCombo first, second;
                if (spec.mode == Mode::Kontsevich) {
                    first = d_contract(cg.graph, spec.policy);
                    for (const auto& [key, tc] : first.terms())
                        second.add(d_contract(tc.first.graph, spec.policy), tc.second);
                } else {
                    MCElement zz = z ? *z : MCElement{};
                    first = twisted_d(cg.graph, zz, spec.policy);
                    second = twisted_d(first, zz, spec.policy);
                }
                if (!second.is_zero()) ++failures;
            }
            std::cout << "dsq: " << all.size() << " graphs, " << failures
                      << " nonzero d^2\n";
            return failures == 0 ? kExitOk : kExitVerify;
        }

        if (coh->parsed()) {
            EnumerationSpec spec =
                make_spec(mode, n, externals, vname, uname, min_valence, reg);
            std::vector<ComplexSlice> window;
            for (int d = deg_lo - 1; d <= deg_hi + 1; ++d)
                window.push_back(enumerate_basis(spec, d, opt.T));
            DiffOp op = [&](const HairyGraph& g) {
                return d_contract(g, spec.policy);
            };
            CohomologyTable table = cohomology_dims(window, op);
            bool all_trusted = true;
            for (int d = deg_lo; d <= deg_hi; ++d) {
                auto it = table.dims.find(d);
                if (it == table.dims.end()) continue;
                std::cout << "degree " << d << ": dim " << it->second.first
                          << (it->second.second ? " (trusted)" : " (untrusted)")
                          << "\n";
                if (!it->second.second) all_trusted = false;
            }
            if (opt.oracle) {
                // Re-derive every rank on the dense elimination route.
                for (int i = 0; i + 1 < (int)window.size(); ++i) {
                    BoundaryResult b = boundary_matrix(
                        window[i], window[i + 1], op, false);
                    if (rank(b.matrix) != rank_dense_oracle(b.matrix)) {
                        std::cerr << "oracle mismatch on boundary " << i << "\n";
                        return kExitVerify;
                    }
                }
                std::cout << "oracle: dense elimination agrees\n";
            }
            if (opt.strict && !all_trusted) return kExitTrust;
            return kExitOk;
        }

        if (mc->parsed()) {
            MCElement z = parse_mc_file(z_path, reg);
            LinfStructure s;
            s.policy.min_internal_valence = min_valence;
            std::optional<MCElement> twist;
            if (!twist_path.empty()) {
                twist = parse_mc_file(twist_path, reg);
                s.twist = &*twist;
            }
            MCReport repm = mc_check(s, z, opt.T);
            if (repm.empty()) {
                std::cout << "mc-check: empty residual through the window\n";
                return kExitOk;
            }
            for (const auto& [deg, combo] : repm.residual_by_degree)
                std::cout << "degree " << deg << ": " << combo.size()
                          << " terms, norm " << rat_to_string(combo.l1_norm())
                          << "\n";
            return kExitVerify;
        }

        if (lch->parsed()) {
            if (order < 1 || order > 3) {
                std::cerr << "order must be 1..3\n";
                return kExitUsage;
            }
            AlgebraPtr av = vname.empty() ? nullptr : reg.get(vname);
            AlgebraPtr au = reg.get(uname.empty() ? "sphere3" : uname);
            // Single-hair test graphs: a vertex with one labeled hair plus a
            // stabilizing tadpole.
            std::vector<HairyGraph> args;
            for (int i = 0; i < order; ++i) {
                HairyGraph g = empty_hairy(n, av, au);
                g.num_internal = 1;
                g.num_external = 1;
                g.hair_label = {1 % au->dim()};
                g.edges.push_back({0, 1});
                g.edges.push_back({1, 1});
                args.push_back(g);
            }
            std::vector<const HairyGraph*> ptrs;
            for (const auto& g : args) ptrs.push_back(&g);
            LinfStructure s;
            s.policy.min_internal_valence = min_valence;
            PolarizedCombo diff = linf_relation_check(s, ptrs, opt.T);
            if (diff.is_zero()) {
                std::cout << "linf-check: relations hold through order " << order
                          << "\n";
                return kExitOk;
            }
            std::cout << "linf-check: " << diff.terms.size()
                      << " residual terms\n";
            return kExitVerify;
        }

        if (ex->parsed()) {
            if (s51->parsed()) {
                S51Report repp = sphere_comparison(s51_n, s51_k, opt.T);
                std::cout << repp.to_text();
                if (!repp.mc_ok || !repp.chain_map_ok) return kExitVerify;
                if (opt.strict && !repp.all_trusted_zero) return kExitTrust;
                return kExitOk;
            }
            S52Report repp = product_sphere_enumerate(s52_d, s52_k, opt.T);
            std::cout << repp.to_text();
            std::cout << "\nmachine-readable shapes:\n";
            for (const auto& shape : repp.shapes)
                std::cout << write_graph_block(shape.graph.graph) << "\n";
            if (!repp.mc_ok) return kExitVerify;
            return kExitOk;
        }

        if (canon->parsed()) {
            HairyGraph g = parse_graph_file(z_path, reg);
            CanonResult r = canonicalize(g);
            std::cout << "sign " << r.sign << "\n"
                      << write_graph_block(r.canon.graph);
            return kExitOk;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
