#include <doctest.h>

#include "helpers.hpp"

using namespace gcx;
using namespace gcxtest;

TEST_CASE("single external vertex is its own canonical form") {
    for (int n : {2, 3}) {
        HairyGraph g = kgraph(n, 1, 0, {});
        CanonResult r = canonicalize(g);
        CHECK(r.sign == 1);
        CHECK(r.canon.graph.num_external == 1);
        CHECK(r.canon.graph.edges.empty());
    }
}

TEST_CASE("double edge between externals dies for even n") {
    HairyGraph g = kgraph(2, 2, 0, {{0, 1}, {0, 1}});
    CHECK(canonicalize(g).sign == 0);
    CHECK(has_odd_automorphism_bruteforce(g));
    // Odd n keeps parallel edges.
    HairyGraph h = kgraph(3, 2, 0, {{0, 1}, {0, 1}});
    CHECK(canonicalize(h).sign != 0);
    CHECK_FALSE(has_odd_automorphism_bruteforce(h));
}

TEST_CASE("tadpole at an internal vertex dies for odd n") {
    // Internal vertex with a tadpole, tied to external 1 by an edge.
    HairyGraph g = kgraph(3, 1, 1, {{1, 1}, {0, 1}});
    CHECK(canonicalize(g).sign == 0);
    CHECK(has_odd_automorphism_bruteforce(g));
    HairyGraph h = kgraph(2, 1, 1, {{1, 1}, {0, 1}, {0, 1}});
    // Even n: the tadpole is fine but the parallel pair kills it.
    CHECK(canonicalize(h).sign == 0);
    HairyGraph h2 = kgraph(2, 2, 1, {{2, 2}, {0, 2}, {1, 2}});
    CHECK(canonicalize(h2).sign != 0);
    CHECK_FALSE(has_odd_automorphism_bruteforce(h2));
}

namespace {

// The five-external two-internal example graph: externals 0..4, internals
// 5, 6; ten edges including a tadpole at external 4 and one at internal 5.
HairyGraph example_graph(int n) {
    return kgraph(n, 5, 2,
                  {{0, 1},
                   {0, 5},
                   {1, 5},
                   {1, 6},
                   {2, 5},
                   {2, 6},
                   {3, 6},
                   {5, 6},
                   {4, 4},
                   {5, 5}});
}

}  // namespace

TEST_CASE("the worked example graph canonicalizes nonzero for even n") {
    HairyGraph g = example_graph(2);
    CanonResult r = canonicalize(g);
    CHECK(r.sign != 0);
    CHECK_FALSE(has_odd_automorphism_bruteforce(g));
    CHECK(is_admissible(g));
    // Odd n: the tadpoles kill it.
    CHECK(canonicalize(example_graph(3)).sign == 0);
    CHECK(has_odd_automorphism_bruteforce(example_graph(3)));
}

TEST_CASE("canonicalize is idempotent") {
    std::vector<HairyGraph> gs = {
        example_graph(2),
        kgraph(3, 2, 2, {{0, 2}, {1, 3}, {2, 3}, {2, 3}, {2, 3}}),
        kgraph(2, 1, 2, {{0, 1}, {0, 2}, {1, 2}, {1, 2}}),
    };
    for (const auto& g : gs) {
        CanonResult r = canonicalize(g);
        if (r.sign == 0) continue;
        CanonResult r2 = canonicalize(r.canon.graph);
        CHECK(r2.sign == 1);
        CHECK(r2.canon.key == r.canon.key);
    }
}

TEST_CASE("relabeling invariance with sign tracking") {
    // Swapping two internal labels must preserve the key; the sign follows
    // the orientation data (vertex order for odd n, nothing for even n when
    // the edge list is fixed).
    HairyGraph g = kgraph(3, 2, 2, {{0, 2}, {1, 3}, {2, 3}});
    HairyGraph swapped = kgraph(3, 2, 2, {{0, 3}, {1, 2}, {3, 2}});
    // swapped = g with internals 2<->3 relabeled; vertex order transposed and
    // edge 3's direction preserved under the relabel.
    CanonResult a = canonicalize(g), b = canonicalize(swapped);
    CHECK(a.canon.key == b.canon.key);
    CHECK(a.sign == -b.sign);  // one vertex transposition, no flips

    // Flipping one stored edge direction negates the odd-n sign.
    HairyGraph flipped = g;
    std::swap(flipped.edges[2].a, flipped.edges[2].b);
    CanonResult c = canonicalize(flipped);
    CHECK(c.canon.key == a.canon.key);
    CHECK(c.sign == -a.sign);

    // Even n: reordering the edge list flips by the permutation sign.
    HairyGraph e1 = kgraph(2, 2, 1, {{0, 2}, {1, 2}, {2, 2}});
    HairyGraph e2 = e1;
    std::swap(e2.edges[0], e2.edges[1]);
    CanonResult d1 = canonicalize(e1), d2 = canonicalize(e2);
    CHECK(d1.canon.key == d2.canon.key);
    CHECK(d1.sign == -d2.sign);
}

TEST_CASE("same-label hair pairs follow the parity rule") {
    AlgebraPtr u3 = sphere_cohomology(3);
    AlgebraPtr u2 = sphere_cohomology(2);
    AlgebraPtr v = reduced_sphere_cohomology(3);
    // Two unit hairs at one vertex: dies for even n, survives for odd n.
    HairyGraph unit_even =
        hgraph(2, v, u3, {0, 0}, 1, {{0, 2}, {1, 2}, {2, 2}});
    CHECK(canonicalize(unit_even).sign == 0);
    HairyGraph unit_odd = hgraph(3, v, u3, {0, 0}, 1, {{0, 2}, {1, 2}},
                                 {{2, 1}});
    CHECK(canonicalize(unit_odd).sign != 0);
    // Two odd-degree labels: survives even n, dies odd n.
    HairyGraph odd_even = hgraph(2, v, u3, {1, 1}, 1, {{0, 2}, {1, 2}, {2, 2}});
    CHECK(canonicalize(odd_even).sign != 0);
    HairyGraph odd_odd = hgraph(3, v, u3, {1, 1}, 1, {{0, 2}, {1, 2}}, {{2, 1}});
    CHECK(canonicalize(odd_odd).sign == 0);
    // Even-degree labels behave like unit labels.
    HairyGraph even_even =
        hgraph(2, v, u2, {1, 1}, 1, {{0, 2}, {1, 2}, {2, 2}});
    CHECK(canonicalize(even_even).sign == 0);
}

TEST_CASE("repeated odd decorations die") {
    AlgebraPtr v3 = reduced_sphere_cohomology(3);
    AlgebraPtr v2 = reduced_sphere_cohomology(2);
    AlgebraPtr u = trivial_unital();
    HairyGraph g = hgraph(3, v3, u, {0}, 1, {{0, 1}}, {{1, 1}, {1, 1}});
    CHECK(canonicalize(g).sign == 0);
    // Even-degree decorations may repeat.
    HairyGraph h = hgraph(2, v2, u, {0}, 1, {{0, 1}}, {{1, 1}, {1, 1}});
    CHECK(canonicalize(h).sign != 0);
}

TEST_CASE("brute-force oracle agrees on an exhaustive window") {
    // All kontsevich graphs with r = 2, up to 2 internals and 4 edges.
    for (int n : {2, 3}) {
        for (int k = 0; k <= 2; ++k) {
            int nv = 2 + k;
            std::vector<std::pair<int, int>> pairs;
            for (int a = 0; a < nv; ++a)
                for (int b = a; b < nv; ++b) pairs.emplace_back(a, b);
            // Enumerate edge multisets of size <= 4 via multi-index.
            std::function<void(size_t, int, std::vector<std::pair<int, int>>&)>
                rec = [&](size_t pi, int budget,
                          std::vector<std::pair<int, int>>& acc) {
                    if (pi == pairs.size() || budget == 0) {
                        HairyGraph g = kgraph(n, 2, k, acc);
                        if (!is_admissible(g)) return;
                        bool killed = canonicalize(g).sign == 0;
                        CHECK(killed == has_odd_automorphism_bruteforce(g));
                        return;
                    }
                    for (int take = 0; take <= budget; ++take) {
                        for (int c = 0; c < take; ++c) acc.push_back(pairs[pi]);
                        rec(pi + 1, budget - take, acc);
                        for (int c = 0; c < take; ++c) acc.pop_back();
                    }
                };
            std::vector<std::pair<int, int>> acc;
            rec(0, 4, acc);
        }
    }
}
