#include <doctest.h>

#include "graphcx/io.hpp"
#include "graphcx/linf.hpp"
#include "helpers.hpp"

using namespace gcx;
using namespace gcxtest;

TEST_CASE("l_2 standard bracket on single-hair vertices") {
    // Two square-zero generators a, b of even degree.
    auto ab = std::make_shared<GradedAlgebra>(
        "ab", std::vector<std::string>{"one", "a", "b", "ab"},
        std::vector<int>{0, 2, 2, 4}, 0);
    ab->set_product(1, 1, {});
    ab->set_product(2, 2, {});
    ab->set_product(1, 2, {{3, Rat(1)}});
    ab->set_product(1, 3, {});
    ab->set_product(2, 3, {});
    ab->set_product(3, 3, {});
    AlgebraPtr v = reduced_sphere_cohomology(2);
    // Vertices need a tadpole to stay 3-valent with one hair.
    HairyGraph ga = hgraph(2, v, ab, {1}, 1, {{0, 1}, {1, 1}});
    HairyGraph gb = hgraph(2, v, ab, {2}, 1, {{0, 1}, {1, 1}});
    LinCombo l2 = l_k_std({&ga, &gb});
    REQUIRE(l2.size() == 1);
    const HairyGraph& out = l2.terms().begin()->second.first.graph;
    CHECK(out.num_internal == 3);
    CHECK(out.num_external == 1);
    CHECK(out.hair_label[0] == 3);  // ab
    CHECK(out.degree() == ga.degree() + gb.degree() - 1);
}

TEST_CASE("l_k vanishes without hairs and is graded symmetric") {
    AlgebraPtr u = sphere_cohomology(3);
    AlgebraPtr v = reduced_sphere_cohomology(3);
    HairyGraph hairless = hgraph(3, v, u, {}, 2, {{0, 1}, {0, 1}, {0, 1}});
    HairyGraph hairy = hgraph(3, v, u, {1}, 1, {{0, 1}, {1, 1}});
    CHECK(l_k_std({&hairless, &hairy}).is_zero());

    HairyGraph g2 = hgraph(3, v, u, {1, 1}, 2,
                           {{0, 2}, {1, 3}, {2, 3}, {2, 3}});
    LinCombo ab = l_k_std({&hairy, &g2});
    LinCombo ba = l_k_std({&g2, &hairy});
    int sign = (hairy.degree() * g2.degree()) % 2 == 0 ? 1 : -1;
    CHECK(ab == Rat(sign) * ba);
}

TEST_CASE("l_k_Z bridges arguments through the product twist") {
    int d = 3;
    MCElement z = make_z52(d);
    AlgebraPtr v = z.value.terms().begin()->second.first.graph.alg_v;
    AlgebraPtr u = sphere_cohomology(3);
    // Two one-vertex graphs, decorated by w1 and w2 respectively.
    HairyGraph g1 = hgraph(2 * d, v, u, {1, 1}, 1, {{0, 2}, {1, 2}}, {{2, 1}});
    HairyGraph g2 = hgraph(2 * d, v, u, {1, 1}, 1, {{0, 2}, {1, 2}}, {{2, 2}});
    LinCombo out = l_k_Z({&g1, &g2}, z);
    REQUIRE(out.size() == 1);
    const HairyGraph& og = out.terms().begin()->second.first.graph;
    CHECK(og.num_internal == 2);
    CHECK(og.decos.empty());
    CHECK(og.edges.size() == 5);  // four hair edges plus the bridging edge
    CHECK(og.internally_connected());

    // Patterns attaching only to one argument would disconnect; both
    // decorations sit on g1 here and the action must vanish.
    HairyGraph both = hgraph(2 * d, v, u, {1, 1}, 1, {{0, 2}, {1, 2}},
                             {{2, 1}, {2, 2}});
    CHECK(l_k_Z({&both, &g2}, z).is_zero());

    // Zero twist gives zero.
    MCElement zero;
    CHECK(l_k_Z({&g1, &g2}, zero).is_zero());
}

TEST_CASE("curvature of zero and of the sphere element") {
    LinfStructure s;
    TruncationParams T;
    T.max_edges = 4;
    T.max_internal_vertices = 3;
    CHECK(curvature(s, LinCombo{}, T).is_zero());

    MCElement z51 = make_z51(3);
    CHECK(mc_check(s, z51, T).empty());
    MCElement z51e = make_z51(4);
    CHECK(mc_check(s, z51e, T).empty());
    MCElement z52 = make_z52(3);
    CHECK(mc_check(s, z52, T).empty());
}

TEST_CASE("curvature reduces to the differential on hairless input") {
    AlgebraPtr u = sphere_cohomology(3);
    AlgebraPtr v = reduced_sphere_cohomology(3);
    HairyGraph g = hgraph(3, v, u, {}, 2, {{0, 1}, {0, 1}, {0, 1}});
    LinCombo x;
    x.add_graph(g, Rat(1));
    LinfStructure s;
    TruncationParams T;
    LinCombo c = curvature(s, x, T);
    LinCombo expected = delta_split(g) + delta_join(g);
    CHECK(c == expected);
}

TEST_CASE("a non-MC element leaves a residual") {
    // A single 4-valent vertex with four odd hairs has a nonzero split image.
    AlgebraPtr u = sphere_cohomology(3);
    AlgebraPtr v = reduced_sphere_cohomology(3);
    HairyGraph star = hgraph(2, v, u, {1, 1, 1, 1}, 1,
                             {{0, 4}, {1, 4}, {2, 4}, {3, 4}});
    MCElement fake;
    fake.value.add_graph(star, Rat(1));
    fake.shifted_degree = star.degree() + 1;
    LinfStructure s;
    TruncationParams T;
    MCReport rep = mc_check(s, fake, T);
    CHECK_FALSE(rep.empty());
}

TEST_CASE("structure relations hold through order 3") {
    AlgebraPtr u = sphere_cohomology(3);
    AlgebraPtr v = reduced_sphere_cohomology(3);
    std::vector<HairyGraph> pool = {
        hgraph(3, v, u, {1}, 1, {{0, 1}, {1, 1}}),
        hgraph(3, v, u, {1, 1}, 2, {{0, 2}, {1, 3}, {2, 3}, {2, 3}}),
        hgraph(3, v, u, {1, 0}, 1, {{0, 2}, {1, 2}, {2, 2}}),
    };
    // Keep windows small: relation checks expand double curvature sums.
    TruncationParams T;
    T.max_edges = 7;
    T.max_internal_vertices = 5;
    T.max_hairs = 6;
    LinfStructure s;
    SUBCASE("order 1") {
        for (const auto& g : pool) {
            PolarizedCombo diff = linf_relation_check(s, {&g}, T);
            CAPTURE(g.debug_string());
            CHECK(diff.is_zero());
        }
    }
    SUBCASE("order 2") {
        for (const auto& a : pool)
            for (const auto& b : pool) {
                PolarizedCombo diff = linf_relation_check(s, {&a, &b}, T);
                CAPTURE(a.debug_string());
                CAPTURE(b.debug_string());
                CHECK(diff.is_zero());
            }
    }
    SUBCASE("order 3") {
        PolarizedCombo diff =
            linf_relation_check(s, {&pool[0], &pool[0], &pool[2]}, T);
        CHECK(diff.is_zero());
    }
}

TEST_CASE("edge filtration: the bracket raises edge count") {
    AlgebraPtr u = sphere_cohomology(3);
    AlgebraPtr v = reduced_sphere_cohomology(3);
    HairyGraph a = hgraph(3, v, u, {1}, 1, {{0, 1}, {1, 1}});
    LinCombo l2 = l_k_std({&a, &a});
    for (const auto& [key, tc] : l2.terms())
        CHECK(tc.first.graph.edges.size() >=
              a.edges.size() + a.edges.size() + 1);
}
