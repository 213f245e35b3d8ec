#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "duality.hpp"
#include "oracles.hpp"

using namespace seps;

namespace {

Graph path(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}
Graph complete(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}
// Two K4s sharing the vertex pair {2,3}.
Graph two_k4() {
    Graph g(6);
    for (int u : {0, 1, 2, 3})
        for (int v : {0, 1, 2, 3})
            if (u < v) g.add_edge(u, v);
    for (int u : {2, 3, 4, 5})
        for (int v : {2, 3, 4, 5})
            if (u < v && !g.has_edge(u, v)) g.add_edge(u, v);
    return g;
}
Graph grid(int rows, int cols) {
    Graph g(rows * cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) g.add_edge(r * cols + c, r * cols + c + 1);
            if (r + 1 < rows) g.add_edge(r * cols + c, (r + 1) * cols + c);
        }
    return g;
}

VSet vs(std::initializer_list<int> xs) {
    VSet out = 0;
    for (int x : xs) out |= vs_bit(x);
    return out;
}

const OSep K4_SPLIT{vs({0, 1, 2, 3}), vs({2, 3, 4, 5})};  // order 2, two_k4

}  // namespace

TEST_CASE("verdicts on the worked examples") {
    Graph p3 = path(3);
    Graph k4 = complete(4);

    // Path on three vertices: an order-2 avoiding orientation exists.
    auto c1 = duality(p3, 2, FamilySpec::tk_star(2));
    CHECK(c1.verdict == DualityCertificate::Verdict::Tangle);
    CHECK(is_consistent(c1.tangle()));
    CHECK(avoids_family(c1.tangle(), FamilySpec::tk_star(2)));

    // Same graph against the low-interior family one order up: a tree exists.
    auto c2 = duality(p3, 3, FamilySpec::uk(3));
    CHECK(c2.verdict == DualityCertificate::Verdict::STree);
    auto v2 = validate_stree(p3, c2.stree, FamilySpec::uk(3));
    CHECK(v2.valid);
    CHECK(v2.over_f);

    // K4 has no order-4 tangle.
    auto c3 = duality(k4, 4, FamilySpec::tk_star(4));
    CHECK(c3.verdict == DualityCertificate::Verdict::STree);
    auto v3 = validate_stree(k4, c3.stree, FamilySpec::tk_star(4));
    CHECK(v3.valid);
    CHECK(v3.over_f);
    TreeDec td3 = stree_to_td(k4, c3.stree);
    for (VSet bag : td3.bags) CHECK(vs_size(bag) <= 3 * 4 - 3);

    // But it does have an order-3 tangle.
    auto c4 = duality(k4, 3, FamilySpec::tk_star(3));
    CHECK(c4.verdict == DualityCertificate::Verdict::Tangle);
}

TEST_CASE("unsupported families and mismatched order are rejected") {
    Graph p3 = path(3);
    CHECK_THROWS_AS(duality(p3, 2, FamilySpec::pk(2)), std::invalid_argument);
    CHECK_THROWS_AS(duality(p3, 2, FamilySpec::uk_inf(2)), std::invalid_argument);
    CHECK_THROWS_AS(duality(p3, 3, FamilySpec::tk_star(2)), std::invalid_argument);
}

TEST_CASE("exactness holds across the small corpus") {
    // The engine cross-checks tree against tangle internally and throws on
    // any disagreement, so a clean run is the assertion.
    for (const Graph& g : oracle::all_graphs(3)) {
        for (int k = 1; k <= 3; ++k) {
            CHECK_NOTHROW(duality(g, k, FamilySpec::tk_star(k)));
            CHECK_NOTHROW(duality(g, k, FamilySpec::uk(k)));
        }
    }
    oracle::Rng rng(12345);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = oracle::random_graph(5, rng);
        for (int k = 2; k <= 3; ++k) {
            CHECK_NOTHROW(duality(g, k, FamilySpec::tk_star(k)));
            CHECK_NOTHROW(duality(g, k, FamilySpec::uk(k)));
        }
    }
}

TEST_CASE("width route agrees with the engine on the low-interior family") {
    Graph p3 = path(3);
    auto r1 = uk_tree_via_treewidth(p3, 3);
    CHECK(r1.built);
    CHECK(r1.tw == 1);

    auto r2 = uk_tree_via_treewidth(p3, 2);
    CHECK_FALSE(r2.built);
    CHECK(r2.tw == 1);

    Graph e4(4);
    auto r3 = uk_tree_via_treewidth(e4, 1);
    CHECK_FALSE(r3.built);
    CHECK(r3.tw == 0);

    oracle::Rng rng(777);
    for (int trial = 0; trial < 15; ++trial) {
        Graph g = oracle::random_graph(5, rng);
        for (int k = 2; k <= 4; ++k) {
            auto via_tw = uk_tree_via_treewidth(g, k);
            auto via_engine = duality(g, k, FamilySpec::uk(k));
            CHECK(via_tw.built ==
                  (via_engine.verdict == DualityCertificate::Verdict::STree));
        }
    }
}

TEST_CASE("refining the empty star reproduces the plain verdict") {
    Graph p3 = path(3);
    Graph k4 = complete(4);
    auto r1 = refine_inessential_star(p3, 2, FamilySpec::tk_star(2), {});
    REQUIRE_FALSE(r1.refused);
    CHECK(r1.verdict == DualityCertificate::Verdict::Tangle);
    CHECK(is_consistent(r1.tangle()));
    CHECK(avoids_family(r1.tangle(), FamilySpec::tk_star(2)));

    auto r2 = refine_inessential_star(k4, 4, FamilySpec::tk_star(4), {});
    REQUIRE_FALSE(r2.refused);
    CHECK(r2.verdict == DualityCertificate::Verdict::STree);
}

TEST_CASE("refining a two-element star splits along it") {
    Graph g = two_k4();
    OSep s = K4_SPLIT;
    auto r = refine_inessential_star(g, 3, FamilySpec::tk_star(3),
                                     {s, s.reversed()});
    REQUIRE_FALSE(r.refused);
    REQUIRE(r.verdict == DualityCertificate::Verdict::STree);
    FamilySpec fp = FamilySpec::tk_star(3).with_singletons({s.reversed(), s});
    auto v = validate_stree(g, r.stree, fp);
    CHECK(v.valid);
    CHECK(v.over_f);
    auto has_leaf = [&](const OSep& x) {
        return std::find(v.leaf_separations.begin(), v.leaf_separations.end(), x) !=
               v.leaf_separations.end();
    };
    CHECK(has_leaf(s));
    CHECK(has_leaf(s.reversed()));
}

TEST_CASE("refining a one-element star lifts the far tangle") {
    Graph g = two_k4();
    auto r = refine_inessential_star(g, 3, FamilySpec::tk_star(3), {K4_SPLIT});
    REQUIRE_FALSE(r.refused);
    REQUIRE(r.verdict == DualityCertificate::Verdict::Tangle);
    Orientation t = r.tangle();
    CHECK(t.contains(K4_SPLIT));
    CHECK(is_consistent(t));
    CHECK(avoids_family(t, FamilySpec::tk_star(3)));
}

TEST_CASE("refinement refusals name the problem") {
    Graph g = path(3);
    VSet full = g.vertices();
    auto r1 = refine_inessential_star(g, 2, FamilySpec::tk_star(2),
                                      {OSep{full, full}});
    CHECK(r1.refused);
    CHECK(r1.reason.find("star") != std::string::npos);

    // Order too high for the system.
    Graph h = complete(4);
    auto r2 = refine_inessential_star(h, 2, FamilySpec::tk_star(2),
                                      {OSep{vs({0, 1, 2}), vs({0, 1, 2, 3})}});
    CHECK(r2.refused);
}

TEST_CASE("tree of tangles for the double K4") {
    Graph g = two_k4();
    TreeOfTangles t = build_tree_of_tangles(g, 3);
    REQUIRE(t.count() == 2);
    REQUIRE(t.td.nodes == 2);
    REQUIRE(t.td.edges.size() == 1);
    CHECK(t.home[0] != t.home[1]);
    auto [u, v] = t.td.edges[0];
    OSep e = td_edge_separation(t.td, u, v);
    CHECK((e == K4_SPLIT || e == K4_SPLIT.reversed()));
    CHECK(validate_td(g, t.td).valid);
}

TEST_CASE("tree of tangles degenerate shapes") {
    Graph k4 = complete(4);
    TreeOfTangles single = build_tree_of_tangles(k4, 3);
    CHECK(single.count() == 1);
    CHECK(single.td.nodes == 1);
    CHECK(single.td.bags[0] == k4.vertices());

    // A single edge still admits an order-3 avoiding orientation (everything
    // points at the edge), so the decomposition is one bag.
    Graph p2 = path(2);
    TreeOfTangles tiny = build_tree_of_tangles(p2, 3);
    CHECK(tiny.count() == 1);
    CHECK(tiny.td.nodes == 1);
    CHECK(tiny.home[0] == 0);
}

TEST_CASE("tree of tangles properties on random graphs") {
    oracle::Rng rng(4242);
    for (int trial = 0; trial < 10; ++trial) {
        Graph g = oracle::random_graph(5, rng, 60);
        TreeOfTangles t = build_tree_of_tangles(g, 3);
        CHECK(validate_td(g, t.td).valid);
        for (int i = 0; i < t.count(); ++i)
            for (int j = i + 1; j < t.count(); ++j) {
                CHECK(t.home[i] != t.home[j]);
                bool eff = false;
                for (auto [u, v] : t.td.edges) {
                    int m = t.system.member_of(td_edge_separation(t.td, u, v));
                    if (m >= 0 && t.tangle_sides[i][m] != t.tangle_sides[j][m] &&
                        distinguishes_efficiently(t.tangle(i), t.tangle(j), m))
                        eff = true;
                }
                CHECK(eff);
            }
    }
}

TEST_CASE("minimized exclusive stars") {
    Graph g = two_k4();
    SepSystem sys = enumerate_system(g, 3);
    auto tangles = find_f_tangles(sys, FamilySpec::tk_star(3));
    REQUIRE(tangles.size() == 2);
    // The tangle pointing at the right K4 contains the split left-to-right.
    int right = tangles[0].contains(K4_SPLIT) ? 0 : 1;
    REQUIRE(tangles[right].contains(K4_SPLIT));

    auto ms = minimize_exclusive_star(g, 3, FamilySpec::tk_star(3), tangles[right],
                                      {K4_SPLIT});
    REQUIRE_FALSE(ms.refused);
    CHECK(ms.interior_size == 4);
    CHECK(star_interior(g, ms.star) == vs({2, 3, 4, 5}));

    // The empty star sits inside both tangles, so it is not exclusive here.
    auto bad = minimize_exclusive_star(g, 3, FamilySpec::tk_star(3), tangles[right], {});
    CHECK(bad.refused);

    // With a single tangle the empty star is already exclusive and optimal.
    Graph k4 = complete(4);
    SepSystem sys4 = enumerate_system(k4, 3);
    auto t4 = find_f_tangles(sys4, FamilySpec::tk_star(3));
    REQUIRE(t4.size() == 1);
    auto ms4 = minimize_exclusive_star(k4, 3, FamilySpec::tk_star(3), t4[0], {});
    REQUIRE_FALSE(ms4.refused);
    CHECK(ms4.interior_size == 4);
    CHECK(ms4.star.empty());
}

TEST_CASE("refining a tree of tangles tightens the bags") {
    Graph g = two_k4();
    TreeOfTangles t = build_tree_of_tangles(g, 3);
    auto r = refine_tree_of_tangles(g, 3, FamilySpec::tk_star(3), t.td);
    REQUIRE_FALSE(r.refused);
    TDCheck c = validate_td(g, r.td, &t.td);
    CHECK(c.valid);
    CHECK(c.refines_other);
    std::set<VSet> bags(r.td.bags.begin(), r.td.bags.end());
    CHECK(bags.count(vs({0, 1, 2, 3})) == 1);
    CHECK(bags.count(vs({2, 3, 4, 5})) == 1);

    // Single node, single tangle: nothing to refine.
    Graph k4 = complete(4);
    TreeOfTangles t4 = build_tree_of_tangles(k4, 3);
    auto r4 = refine_tree_of_tangles(k4, 3, FamilySpec::tk_star(3), t4.td);
    REQUIRE_FALSE(r4.refused);
    CHECK(r4.td.nodes == 1);
    CHECK(r4.td.bags[0] == k4.vertices());
}

TEST_CASE("refining rejects decompositions breaking the premise") {
    Graph g = two_k4();
    TreeDec bad{1, {}, {0}};  // empty bag misses every vertex
    auto r = refine_tree_of_tangles(g, 3, FamilySpec::tk_star(3), bad);
    CHECK(r.refused);

    // A valid decomposition whose edge distinguishes nothing efficiently.
    TreeDec loose{2, {{0, 1}}, {vs({0, 1, 2, 3, 4, 5}), vs({4, 5})}};
    auto r2 = refine_tree_of_tangles(g, 3, FamilySpec::tk_star(3), loose);
    CHECK(r2.refused);
}

TEST_CASE("torso width checks") {
    Graph p4 = path(4);
    auto ok = torso_width_check(p4, 1, {});
    REQUIRE(ok.ok);
    CHECK(ok.width <= 1);
    CHECK(validate_td(ok.torso.graph, ok.torso_td).valid);

    Graph g24 = grid(2, 4);
    auto ok2 = torso_width_check(g24, 2, {});
    REQUIRE(ok2.ok);
    CHECK(ok2.width <= 2);

    Graph k4 = complete(4);
    auto wide = torso_width_check(k4, 1, {});
    CHECK_FALSE(wide.ok);
    CHECK(wide.reason.find("treewidth") != std::string::npos);

    // Robustness demands more anchor material than a five-vertex path has.
    Graph p5 = path(5);
    auto frail = torso_width_check(p5, 1,
                                   {OSep{vs({0, 1, 2}), vs({2, 3, 4})}});
    CHECK_FALSE(frail.ok);
    CHECK(frail.reason.find("robust") != std::string::npos);
}

TEST_CASE("separability of small systems") {
    Graph p3 = path(3);
    Graph dk = two_k4();
    SepSystem s1 = enumerate_system(p3, 2);
    auto rep1 = check_f_separable(s1, FamilySpec::tk_star(2), 0);
    CHECK(rep1.separable());
    CHECK(rep1.pairs > 0);

    SepSystem s2 = enumerate_system(dk, 3);
    auto rep2 = check_f_separable(s2, FamilySpec::tk_star(3), 0);
    CHECK(rep2.separable());

    auto capped = check_f_separable(s2, FamilySpec::tk_star(3), 1);
    CHECK(capped.checked <= 1);
}
