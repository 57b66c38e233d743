#include <doctest.h>

#include "helpers.hpp"

using namespace gcx;
using namespace gcxtest;

TEST_CASE("degree formula on kontsevich graphs") {
    for (int n : {2, 3, 4}) {
        HairyGraph e12 = kgraph(n, 2, 0, {{0, 1}});
        CHECK(e12.degree() == n - 1);
    }
    // The ten-edge, two-internal example graph at n = 3.
    HairyGraph ex = kgraph(3, 5, 2,
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
    CHECK(ex.degree() == 2 * 10 - 3 * 2);
    CHECK(ex.degree() == 14);
}

TEST_CASE("hairy degree counts hair edges and label degrees") {
    // Unitrivalent tree with v internal vertices and v+2 hairs, every hair
    // labeled by the top class of H^*(S^k): degree + 1 must equal
    // (2d-1)(2v+1) - 2dv - k(v+2) + 1.
    int d = 4, k = 3;
    AlgebraPtr u = sphere_cohomology(k);
    AlgebraPtr v = punctured_product_cohomology(d);
    auto shifted = [&](const HairyGraph& g) { return g.degree() + 1; };

    // v = 1: star with three hairs.
    HairyGraph star =
        hgraph(2 * d, v, u, {1, 1, 1}, 1, {{0, 3}, {1, 3}, {2, 3}});
    CHECK(shifted(star) == (2 * d - 1) * 3 - 2 * d - k * 3 + 1);

    // v = 2: caterpillar with four hairs.
    HairyGraph cat = hgraph(2 * d, v, u, {1, 1, 1, 1}, 2,
                            {{0, 4}, {1, 4}, {4, 5}, {2, 5}, {3, 5}});
    int vv = 2;
    CHECK(shifted(cat) ==
          (2 * d - 1) * (2 * vv + 1) - 2 * d * vv - k * (vv + 2) + 1);
}

TEST_CASE("admissibility") {
    HairyGraph ex = kgraph(2, 5, 2,
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
    CHECK(is_admissible(ex));
    // Isolated internal vertex with one edge: valence 1 < 3.
    HairyGraph low = kgraph(2, 1, 1, {{0, 1}});
    CHECK_FALSE(is_admissible(low));
    // One edge plus one decoration passes at minimum valence 2.
    AlgebraPtr v = reduced_sphere_cohomology(2);
    HairyGraph dec = empty_kontsevich(2, 1, v);
    dec.num_internal = 1;
    dec.edges.push_back({0, 1});
    dec.decos.push_back({1, 1});
    CHECK(is_admissible(dec, ValencePolicy{2}));
    CHECK_FALSE(is_admissible(dec, ValencePolicy{3}));
    // A component without an external vertex is inadmissible.
    HairyGraph orphan = kgraph(2, 1, 2, {{1, 2}, {1, 2}, {1, 2}});
    CHECK_FALSE(is_admissible(orphan));
}

TEST_CASE("permute_externals") {
    HairyGraph e12 = kgraph(2, 2, 0, {{0, 1}});
    SUBCASE("identity") {
        LinCombo r = permute_externals(e12, {0, 1});
        REQUIRE(r.size() == 1);
        CHECK(r.terms().begin()->second.second == Rat(1));
    }
    SUBCASE("swap fixes the edge graph for even n") {
        LinCombo r = permute_externals(e12, {1, 0});
        REQUIRE(r.size() == 1);
        CHECK(r.terms().begin()->first == canonicalize(e12).canon.key);
        CHECK(r.terms().begin()->second.second == Rat(1));
    }
    SUBCASE("involution") {
        LinCombo once = permute_externals(e12, {1, 0});
        LinCombo twice;
        for (const auto& [key, tc] : once.terms())
            twice.add(permute_externals(tc.first.graph, {1, 0}), tc.second);
        CHECK(twice == permute_externals(e12, {0, 1}));
    }
    SUBCASE("wrong size throws") {
        CHECK_THROWS(permute_externals(e12, {0, 1, 2}));
    }
}

TEST_CASE("graph_product") {
    SUBCASE("the worked gluing") {
        // Three externals; left factor has two internal vertices, right
        // factor is the 2-3 arc; the product is the union graph.
        HairyGraph left =
            kgraph(2, 3, 2, {{0, 3}, {3, 4}, {1, 3}, {1, 4}, {2, 4}});
        HairyGraph right = kgraph(2, 3, 0, {{1, 2}});
        HairyGraph expected =
            kgraph(2, 3, 2, {{0, 3}, {3, 4}, {1, 3}, {1, 4}, {2, 4}, {1, 2}});
        LinCombo p = graph_product(left, right);
        REQUIRE(p.size() == 1);
        CanonResult e = canonicalize(expected);
        CHECK(p.terms().begin()->first == e.canon.key);
        CHECK(p.terms().begin()->second.second == Rat(e.sign));
    }
    SUBCASE("empty graph is the unit") {
        HairyGraph g = kgraph(3, 2, 1, {{0, 2}, {1, 2}, {0, 2}});
        HairyGraph unit = kgraph(3, 2, 0, {});
        LinCombo p = graph_product(g, unit);
        REQUIRE(p.size() == 1);
        CHECK(p.terms().begin()->first == canonicalize(g).canon.key);
        CHECK(p.terms().begin()->second.second == Rat(canonicalize(g).sign));
    }
    SUBCASE("squares of odd edges vanish for even n") {
        HairyGraph e12 = kgraph(2, 2, 0, {{0, 1}});
        CHECK(graph_product(e12, e12).is_zero());
    }
    SUBCASE("degree is additive") {
        HairyGraph a = kgraph(3, 2, 1, {{0, 2}, {1, 2}, {0, 2}});
        HairyGraph b = kgraph(3, 2, 0, {{0, 1}});
        LinCombo p = graph_product(a, b);
        REQUIRE(p.size() == 1);
        CHECK(p.terms().begin()->second.first.graph.degree() ==
              a.degree() + b.degree());
    }
    SUBCASE("arity mismatch throws") {
        CHECK_THROWS(graph_product(kgraph(2, 2, 0, {}), kgraph(2, 3, 0, {})));
    }
}

TEST_CASE("graph_product is graded-commutative and associative on a window") {
    // Small exhaustive family: undecorated graphs on two externals.
    std::vector<HairyGraph> gs = {
        kgraph(3, 2, 0, {}),
        kgraph(3, 2, 0, {{0, 1}}),
        kgraph(3, 2, 1, {{0, 2}, {1, 2}, {0, 2}}),
        kgraph(3, 2, 1, {{0, 2}, {1, 2}, {1, 2}}),
        kgraph(3, 2, 2, {{0, 2}, {1, 3}, {2, 3}, {2, 3}, {2, 3}}),
    };
    for (const auto& a : gs)
        for (const auto& b : gs) {
            LinCombo ab = graph_product(a, b);
            LinCombo ba = graph_product(b, a);
            int sign = (a.degree() * b.degree()) % 2 == 0 ? 1 : -1;
            CHECK(ab == Rat(sign) * ba);
            for (const auto& c : gs) {
                LinCombo left, right;
                for (const auto& [key, tc] : ab.terms())
                    left.add(graph_product(tc.first.graph, c), tc.second);
                LinCombo bc = graph_product(b, c);
                for (const auto& [key, tc] : bc.terms())
                    right.add(graph_product(a, tc.first.graph), tc.second);
                CHECK(left == right);
            }
        }
}

TEST_CASE("add_external") {
    HairyGraph empty1 = kgraph(2, 1, 0, {});
    HairyGraph out = add_external(empty1);
    CHECK(out.num_external == 2);
    CHECK(out.edges.empty());

    HairyGraph e12 = kgraph(2, 2, 0, {{0, 1}});
    HairyGraph out2 = add_external(e12);
    CHECK(out2.num_external == 3);
    CHECK(out2.edges.size() == 1);
    CHECK(out2.degree() == e12.degree());
    // The new external is the last one; the edge still joins 0 and 1.
    CHECK(out2.edges[0].a == 0);
    CHECK(out2.edges[0].b == 1);
}
