#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brambles.hpp"
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

VSet vs(std::initializer_list<int> xs) {
    VSet out = 0;
    for (int x : xs) out |= vs_bit(x);
    return out;
}

}  // namespace

TEST_CASE("bramble validity and order") {
    Graph k3 = complete(3);
    auto c1 = bramble_order(k3, {{vs({0}), vs({1}), vs({2})}});
    CHECK(c1.valid);
    CHECK(c1.order == 3);

    Graph p3 = path(3);
    auto c2 = bramble_order(p3, {{vs({0, 1}), vs({2})}});
    CHECK(c2.valid);
    CHECK(c2.order == 2);

    auto c3 = bramble_order(p3, {{vs({0})}});
    CHECK(c3.valid);
    CHECK(c3.order == 1);

    // {0} and {2} do not touch on the path.
    auto c4 = bramble_order(p3, {{vs({0}), vs({2})}});
    CHECK_FALSE(c4.valid);
    CHECK(c4.reason.find("touch") != std::string::npos);

    // Disconnected element.
    auto c5 = bramble_order(p3, {{vs({0, 2})}});
    CHECK_FALSE(c5.valid);

    auto c6 = bramble_order(p3, {{}});
    CHECK_FALSE(c6.valid);
}

TEST_CASE("bramble to tangle on the worked examples") {
    Graph p3 = path(3);
    auto r1 = bramble_to_tangle(p3, 2, {{vs({0, 1}), vs({2})}});
    REQUIRE_FALSE(r1.refused);
    Orientation t1 = r1.tangle();
    CHECK(t1.contains(OSep{vs({0, 1}), vs({1, 2})}));
    CHECK(is_consistent(t1));
    CHECK(avoids_family(t1, FamilySpec::uk(2)));

    // K3 with the three singletons: everything points at the full set.
    Graph k3 = complete(3);
    auto r2 = bramble_to_tangle(k3, 3, {{vs({0}), vs({1}), vs({2})}});
    REQUIRE_FALSE(r2.refused);
    Orientation t2 = r2.tangle();
    for (int i = 0; i < r2.system.size(); ++i) {
        OSep o = t2.at(i);
        if (o.A != o.B) CHECK(o.B == k3.vertices());
    }

    Graph k4 = complete(4);
    auto r3 = bramble_to_tangle(k4, 4, {{vs({0}), vs({1}), vs({2}), vs({3})}});
    REQUIRE_FALSE(r3.refused);
    CHECK(avoids_family(r3.tangle(), FamilySpec::uk(4)));

    // Too small for the requested order.
    auto r4 = bramble_to_tangle(p3, 3, {{vs({0, 1}), vs({2})}});
    CHECK(r4.refused);
    CHECK(r4.reason.find("order") != std::string::npos);
}

TEST_CASE("tangle to bramble and the round trip") {
    Graph p3 = path(3);
    SepSystem sys = enumerate_system(p3, 2);
    auto tangles = find_f_tangles(sys, FamilySpec::uk(2));
    REQUIRE_FALSE(tangles.empty());
    Bramble b = tangle_to_bramble(p3, 2, tangles[0]);
    auto c = bramble_order(p3, b);
    CHECK(c.valid);
    CHECK(c.order >= 2);

    // Round trip lands on some avoiding orientation (not necessarily the
    // same one); the conversion re-validates internally.
    auto back = bramble_to_tangle(p3, 2, b);
    CHECK_FALSE(back.refused);

    Graph k4 = complete(4);
    SepSystem sys4 = enumerate_system(k4, 4);
    auto t4 = find_f_tangles(sys4, FamilySpec::uk(4));
    REQUIRE_FALSE(t4.empty());
    Bramble b4 = tangle_to_bramble(k4, 4, t4[0]);
    CHECK(bramble_order(k4, b4).order >= 4);

    // Precondition failures throw.
    CHECK_THROWS_AS(tangle_to_bramble(p3, 3, tangles[0]), std::invalid_argument);
}

TEST_CASE("round trip across random tangles") {
    oracle::Rng rng(909);
    for (int trial = 0; trial < 12; ++trial) {
        Graph g = oracle::random_graph(5, rng, 60);
        for (int k = 2; k <= 3; ++k) {
            SepSystem sys = enumerate_system(g, k);
            for (const Orientation& t : find_f_tangles(sys, FamilySpec::uk(k), 4)) {
                Bramble b = tangle_to_bramble(g, k, t);
                auto back = bramble_to_tangle(g, k, b);
                CHECK_FALSE(back.refused);
                CHECK(avoids_family(back.tangle(), FamilySpec::uk(k)));
            }
        }
    }
}

TEST_CASE("exhaustive bramble search") {
    Graph k4 = complete(4);
    Bramble w;
    CHECK(exists_bramble_of_order(k4, 4, &w));
    CHECK(bramble_order(k4, w).order >= 4);
    CHECK_FALSE(exists_bramble_of_order(k4, 5));

    Graph p3 = path(3);
    CHECK(exists_bramble_of_order(p3, 2));
    CHECK_FALSE(exists_bramble_of_order(p3, 3));

    Graph big(7);
    CHECK_THROWS_AS(exists_bramble_of_order(big, 1), std::invalid_argument);
}

TEST_CASE("max bramble order tracks treewidth") {
    oracle::Rng rng(5150);
    for (int trial = 0; trial < 10; ++trial) {
        Graph g = oracle::random_graph(5, rng);
        int tw = exact_treewidth(g).tw;
        for (int k = 1; k <= 4; ++k)
            CHECK(exists_bramble_of_order(g, k) == (tw >= k - 1));
    }
}

TEST_CASE("equivalence report on the frozen examples") {
    Graph p3 = path(3);
    auto r1 = equivalence_report(p3, 2);
    CHECK(r1.all());
    CHECK(r1.tw == 1);

    auto r2 = equivalence_report(p3, 3);
    CHECK_FALSE(r2.all());
    CHECK_FALSE(r2.has_tangle);
    CHECK_FALSE(r2.has_bramble);
    CHECK_FALSE(r2.no_uk_tree);
    CHECK_FALSE(r2.tw_at_least);

    Graph k4 = complete(4);
    auto r3 = equivalence_report(k4, 4);
    CHECK(r3.all());
    CHECK(r3.tw == 3);
}

TEST_CASE("equivalence report agreement on the small corpus") {
    // The report itself raises soundness_error if its four routes disagree.
    for (const Graph& g : oracle::all_graphs(3))
        for (int k = 1; k <= 3; ++k) CHECK_NOTHROW(equivalence_report(g, k));
    oracle::Rng rng(31337);
    for (int trial = 0; trial < 10; ++trial) {
        Graph g = oracle::random_graph(5, rng);
        for (int k = 1; k <= 4; ++k) CHECK_NOTHROW(equivalence_report(g, k));
    }
}
