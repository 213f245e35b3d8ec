#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "orientation.hpp"

using namespace seps;

namespace {

Graph path(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}
Graph cycle(int n) {
    Graph g = path(n);
    g.add_edge(0, n - 1);
    return g;
}
Graph complete(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

// ---- Naive reference implementations, independent of the search code ----

bool nv_leq(const OSep& a, const OSep& b) {
    return (a.A & ~b.A) == 0 && (b.B & ~a.B) == 0;
}
bool nv_consistent(const std::vector<OSep>& elems) {
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = 0; j < elems.size(); ++j)
            if (i != j && nv_leq(elems[i].reversed(), elems[j])) return false;
    return true;
}
bool nv_star(const std::vector<OSep>& sigma, VSet full) {
    for (const OSep& s : sigma)
        if (s.A == full && s.B == full) return false;
    for (std::size_t i = 0; i < sigma.size(); ++i)
        for (std::size_t j = 0; j < sigma.size(); ++j)
            if (i != j && (sigma[i] == sigma[j] || !nv_leq(sigma[i], sigma[j].reversed())))
                return false;
    return true;
}
bool nv_cover(const Graph& g, const std::vector<OSep>& sigma) {
    VSet uni = 0;
    for (const OSep& s : sigma) uni |= s.A;
    if (uni != g.vertices()) return false;
    for (auto [u, v] : g.edges()) {
        bool hit = false;
        for (const OSep& s : sigma)
            if (vs_has(s.A, u) && vs_has(s.A, v)) hit = true;
        if (!hit) return false;
    }
    return true;
}
VSet nv_interior(const std::vector<OSep>& sigma, VSet full) {
    VSet b = full;
    for (const OSep& s : sigma) b &= s.B;
    return b;
}

// All violating subsets of the family over the full oriented ground set,
// encoded as (member mask, side mask). Degenerate members use side 0.
struct NaiveSet {
    std::uint64_t members = 0, sides = 0;
};

std::vector<NaiveSet> naive_violations(const SepSystem& sys, const FamilySpec& F) {
    const Graph& g = sys.graph();
    VSet full = g.vertices();
    int M = sys.size();
    std::vector<NaiveSet> out;
    auto add = [&](const std::vector<int>& oids) {
        NaiveSet s;
        for (int oid : oids) {
            s.members |= std::uint64_t{1} << (oid >> 1);
            if (oid & 1) s.sides |= std::uint64_t{1} << (oid >> 1);
        }
        out.push_back(s);
    };
    auto elems = [&](const std::vector<int>& oids) {
        std::vector<OSep> v;
        for (int oid : oids) v.push_back(sys.oriented(oid));
        return v;
    };
    for (const OSep& x : F.singletons) {
        int oid = sys.oid_of(x);
        if (oid >= 0) add({oid});
    }
    bool stars = F.kind == FamilySpec::Kind::TkStar || F.kind == FamilySpec::Kind::Uk;
    if (F.kind == FamilySpec::Kind::Tk || F.kind == FamilySpec::Kind::TkStar) {
        // All subsets of size <= 3.
        std::vector<int> oids;
        for (int i = 0; i < sys.osize(); ++i)
            if (!((i & 1) && sys.members()[i >> 1].A == sys.members()[i >> 1].B))
                oids.push_back(i);
        int N = static_cast<int>(oids.size());
        for (int a = 0; a < N; ++a) {
            std::vector<int> one{oids[a]};
            if ((!stars || nv_star(elems(one), full)) && nv_cover(g, elems(one))) add(one);
            for (int b = a + 1; b < N; ++b) {
                if ((oids[a] >> 1) == (oids[b] >> 1)) continue;
                std::vector<int> two{oids[a], oids[b]};
                if ((!stars || nv_star(elems(two), full)) && nv_cover(g, elems(two)))
                    add(two);
                for (int c = b + 1; c < N; ++c) {
                    if ((oids[c] >> 1) == (oids[a] >> 1) ||
                        (oids[c] >> 1) == (oids[b] >> 1))
                        continue;
                    std::vector<int> tri{oids[a], oids[b], oids[c]};
                    if ((!stars || nv_star(elems(tri), full)) && nv_cover(g, elems(tri)))
                        add(tri);
                }
            }
        }
    } else if (F.kind == FamilySpec::Kind::Uk) {
        // All stars via DFS with pairwise pruning; keep those with small interior.
        REQUIRE(M <= 20);
        std::vector<int> chosen;
        auto dfs = [&](auto&& self, int from) -> void {
            if (vs_size(nv_interior(elems(chosen), full)) < F.k) add(chosen);
            for (int oid = from; oid < sys.osize(); ++oid) {
                if ((oid & 1) && sys.members()[oid >> 1].A == sys.members()[oid >> 1].B)
                    continue;
                bool ok = true;
                for (int c : chosen)
                    if ((c >> 1) == (oid >> 1) ||
                        !nv_star({sys.oriented(c), sys.oriented(oid)}, full))
                        ok = false;
                if (!ok) continue;
                chosen.push_back(oid);
                self(self, oid + 1);
                chosen.pop_back();
            }
        };
        dfs(dfs, 0);
    }
    return out;
}

// All consistent F-avoiding orientations by sheer enumeration.
std::vector<std::vector<OSep>> naive_tangles(const SepSystem& sys, const FamilySpec& F) {
    int M = sys.size();
    REQUIRE(M <= 20);
    auto viol = naive_violations(sys, F);
    // The empty star in U_k: nothing avoids F then.
    if (F.kind == FamilySpec::Kind::Uk && sys.graph().n() < F.k) return {};
    std::uint64_t degenerate = 0;
    for (int i = 0; i < M; ++i)
        if (sys.members()[i].A == sys.members()[i].B) degenerate |= std::uint64_t{1} << i;
    std::vector<std::vector<OSep>> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << M); ++m) {
        if (m & degenerate) continue;  // single orientation only
        std::vector<OSep> elems;
        for (int i = 0; i < M; ++i) {
            const OSep& mem = sys.members()[i];
            elems.push_back((m >> i) & 1 ? mem.reversed() : mem);
        }
        if (!nv_consistent(elems)) continue;
        bool bad = false;
        std::uint64_t allm = (std::uint64_t{1} << M) - 1;
        for (const NaiveSet& v : viol)
            if (((m ^ v.sides) & v.members & allm) == 0) { bad = true; break; }
        if (bad) continue;
        out.push_back(elems);
    }
    return out;
}

std::set<std::set<OSep>> as_sets(const std::vector<Orientation>& os) {
    std::set<std::set<OSep>> out;
    for (const Orientation& o : os) {
        auto e = o.elements();
        out.insert(std::set<OSep>(e.begin(), e.end()));
    }
    return out;
}
std::set<std::set<OSep>> as_sets(const std::vector<std::vector<OSep>>& os) {
    std::set<std::set<OSep>> out;
    for (const auto& e : os) out.insert(std::set<OSep>(e.begin(), e.end()));
    return out;
}

}  // namespace

TEST_CASE("frozen tangle counts on tiny graphs") {
    Graph k3 = complete(3), p3 = path(3);
    auto sk3 = enumerate_system(k3, 2);
    CHECK(find_f_tangles(sk3, FamilySpec::tk_star(2), 100).size() == 1);
    auto sp3 = enumerate_system(p3, 2);
    CHECK(find_f_tangles(sp3, FamilySpec::tk_star(2), 100).size() == 2);
    auto sk33 = enumerate_system(k3, 3);
    CHECK(find_f_tangles(sk33, FamilySpec::tk_star(3), 100).size() == 0);
    // The covering-set and covering-star families agree here.
    CHECK(find_f_tangles(sk3, FamilySpec::tk(2), 100).size() == 1);
    CHECK(find_f_tangles(sp3, FamilySpec::tk(2), 100).size() == 2);
    // Small-interior stars: same counts on these graphs.
    CHECK(find_f_tangles(sp3, FamilySpec::uk(2), 100).size() == 2);
    CHECK(find_f_tangles(sk3, FamilySpec::uk(2), 100).size() == 1);
}

TEST_CASE("search agrees with the naive all-orientations oracle (n <= 3)") {
    for (const Graph& g : oracle::all_graphs(3)) {
        for (int k = 1; k <= 3; ++k) {
            auto sys = enumerate_system(g, k);
            if (sys.size() > 20) continue;
            for (auto F : {FamilySpec::tk(k), FamilySpec::tk_star(k), FamilySpec::uk(k)}) {
                auto got = as_sets(find_f_tangles(sys, F, 1 << 20));
                auto want = as_sets(naive_tangles(sys, F));
                CHECK(got == want);
            }
        }
    }
}

TEST_CASE("search agrees with the naive oracle on selected 4-vertex graphs") {
    std::vector<Graph> graphs{path(4), cycle(4), complete(4),
                              load_edge_list("4 3\n0 3\n1 3\n2 3\n")};
    for (const Graph& g : graphs) {
        for (int k = 2; k <= 3; ++k) {
            auto sys = enumerate_system(g, k);
            if (sys.size() > 20) continue;
            for (auto F : {FamilySpec::tk(k), FamilySpec::tk_star(k), FamilySpec::uk(k)}) {
                auto got = as_sets(find_f_tangles(sys, F, 1 << 20));
                auto want = as_sets(naive_tangles(sys, F));
                CHECK(got == want);
            }
        }
    }
    // Frozen: K4 has a unique 3-tangle, C4 has none.
    CHECK(find_f_tangles(enumerate_system(complete(4), 3), FamilySpec::tk_star(3), 10)
              .size() == 1);
    CHECK(find_f_tangles(enumerate_system(cycle(4), 3), FamilySpec::tk_star(3), 10)
              .size() == 0);
}

TEST_CASE("every covering-set tangle is a consistent regular profile and principal") {
    for (const Graph& g : oracle::all_graphs(4)) {
        for (int k = 1; k <= 3; ++k) {
            auto sys = enumerate_system(g, k);
            for (const Orientation& t : find_f_tangles(sys, FamilySpec::tk(k), 1 << 20)) {
                auto flags = check_orientation(t, FamilySpec::tk(k));
                CHECK(flags.consistent);
                CHECK(flags.avoids_f);
                CHECK(flags.profile);
                CHECK(flags.principal);
            }
        }
    }
}

TEST_CASE("regular corner-closed tangles of finite graphs are principal") {
    // Finite analog of the fact that a regular non-principal tangle of the
    // corner-triple family cannot contain any star with small interior: since
    // the empty star always qualifies, such tangles cannot exist at all.
    for (const Graph& g : oracle::all_graphs(3)) {
        for (int k = 1; k <= 3; ++k) {
            auto sys = enumerate_system(g, k);
            if (sys.size() > 20) continue;
            for (const Orientation& t :
                 find_f_tangles(sys, FamilySpec::pk_prime(k), 1 << 20)) {
                auto flags = check_orientation(t, FamilySpec::pk_prime(k));
                if (flags.regular) CHECK(flags.principal);
            }
        }
    }
}

TEST_CASE("family membership verdicts") {
    Graph k3 = complete(3);
    VSet v01 = vs_bit(0) | vs_bit(1), v12 = vs_bit(1) | vs_bit(2),
         v02 = vs_bit(0) | vs_bit(2);
    VSet full = k3.vertices();
    std::vector<OSep> tri{{v01, full}, {v12, full}, {v02, full}};
    CHECK(family_member(k3, tri, FamilySpec::tk_star(3)).member);
    CHECK(!family_member(k3, tri, FamilySpec::tk_star(2)).member);  // orders too big
    CHECK(!family_member(k3, tri, FamilySpec::uk(3)).member);       // interior is V
    // A covering pair that is not a star.
    Graph p3 = path(3);
    std::vector<OSep> pair{{v01, v12}, {v01 | vs_bit(2), vs_bit(2)}};
    CHECK(family_member(p3, pair, FamilySpec::tk(3)).member);
    CHECK(!family_member(p3, pair, FamilySpec::tk_star(3)).member);
    // Singleton augmentation.
    OSep extra{v01, v12};
    auto F = FamilySpec::uk(2).with_singletons({extra});
    CHECK(family_member(p3, {extra}, F).member);
    CHECK(!family_member(p3, {extra}, FamilySpec::uk(2)).member);
    // {(V, A)} with |A| < k is always a member of U_k and T*_k.
    std::vector<OSep> vx{{full, vs_bit(1)}};
    CHECK(family_member(k3, vx, FamilySpec::uk(2)).member);
    CHECK(family_member(k3, vx, FamilySpec::tk_star(2)).member);
}

TEST_CASE("corner triples: membership and tangle avoidance") {
    Graph c4 = cycle(4);
    auto sys = enumerate_system(c4, 3);
    // Pick two crossing order-2 separations and build the corner triple.
    OSep r{vs_bit(0) | vs_bit(1) | vs_bit(2), vs_bit(0) | vs_bit(2) | vs_bit(3)};
    OSep s{vs_bit(1) | vs_bit(2) | vs_bit(3), vs_bit(0) | vs_bit(1) | vs_bit(3)};
    REQUIRE(sys.oid_of(r) >= 0);
    REQUIRE(sys.oid_of(s) >= 0);
    std::vector<OSep> triple{r, OSep{r.B & s.A, r.A | s.B}, OSep{r.B & s.B, r.A | s.A}};
    CHECK(family_member(c4, triple, FamilySpec::pk(3), &sys).member);
    CHECK(is_star(c4, triple));
    // Every profile found for the corner family re-validates as a profile.
    for (const Orientation& t : find_f_tangles(sys, FamilySpec::pk(3), 1 << 20)) {
        auto flags = check_orientation(t, FamilySpec::pk(3));
        CHECK(flags.consistent);
        CHECK(flags.avoids_f);
        CHECK(flags.profile);
    }
    // An orientation containing all three triple elements is not a P_3-tangle.
    // (The profile flag and P_k-avoidance agree on all consistent orientations.)
    for (const Graph& g : oracle::all_graphs(3)) {
        auto s3 = enumerate_system(g, 2);
        std::uint64_t degenerate = 0;
        for (int i = 0; i < s3.size(); ++i)
            if (s3.members()[i].A == s3.members()[i].B)
                degenerate |= std::uint64_t{1} << i;
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << s3.size()); ++m) {
            if (m & degenerate) continue;
            Orientation o{&s3, {}};
            for (int i = 0; i < s3.size(); ++i)
                o.side.push_back(static_cast<std::uint8_t>((m >> i) & 1));
            if (!is_consistent(o)) continue;
            auto flags = check_orientation(o, FamilySpec::pk(2));
            CHECK(flags.avoids_f == flags.profile);
        }
    }
}

TEST_CASE("distinguishers: the two tangles of a path") {
    Graph p3 = path(3);
    auto sys = enumerate_system(p3, 2);
    auto tangles = find_f_tangles(sys, FamilySpec::tk_star(2), 10);
    REQUIRE(tangles.size() == 2);
    auto d = distinguishers(tangles[0], tangles[1]);
    CHECK(combinatorially_distinguishable(tangles[0], tangles[1]));
    REQUIRE(d.members.size() == 1);
    // The only disagreement is the middle separation {01|12}, of order 1.
    OSep mid{vs_bit(0) | vs_bit(1), vs_bit(1) | vs_bit(2)};
    CHECK(sys.members()[d.members[0]] == std::min(mid, mid.reversed()));
    CHECK(d.efficient == d.members);
    CHECK(distinguishes_efficiently(tangles[0], tangles[1], d.members[0]));
    CHECK(distinguishers(tangles[0], tangles[0]).members.empty());
}

TEST_CASE("closely related separations of the K4 tangle") {
    Graph k4 = complete(4);
    auto sys = enumerate_system(k4, 3);
    auto tangles = find_f_tangles(sys, FamilySpec::tk_star(3), 10);
    REQUIRE(tangles.size() == 1);
    // Everything oriented by the tangle has small-order infima with the rest.
    for (const OSep& s : tangles[0].elements()) CHECK(closely_related(s, tangles[0]));
    // A separation not in the tangle is not closely related.
    OSep rev = tangles[0].at(sys.size() - 1).reversed();
    CHECK(!closely_related(rev, tangles[0]));
}

TEST_CASE("emulation and shifting") {
    Graph p3 = path(3);
    auto sys = enumerate_system(p3, 2);
    OSep r{0, p3.vertices()};
    OSep mid{vs_bit(0) | vs_bit(1), vs_bit(1) | vs_bit(2)};
    // (∅, V) is emulated by itself; shifting a star by it is the identity.
    std::vector<OSep> sigma{mid};
    auto res = emulate_and_shift(r, r, sys, sigma, mid);
    CHECK(res.emulates);
    CHECK(res.shifted == sigma);
    CHECK_THROWS(emulate_and_shift(mid, mid.reversed(), sys, sigma, mid));
}

TEST_CASE("shifts of small-interior and covering stars stay in the family") {
    // For s emulating r, stars of separations orientable above r shift to stars
    // again, and the bounded families are closed under this operation.
    for (const Graph& g : oracle::all_graphs(3)) {
        for (int k = 2; k <= 3; ++k) {
            auto sys = enumerate_system(g, k);
            auto big = enumerate_system(g, 2 * k - 1);
            for (int ro = 0; ro < big.osize(); ++ro) {
                OSep r = big.oriented(ro);
                for (int so = 0; so < sys.osize(); ++so) {
                    OSep s = sys.oriented(so);
                    if (!leq(r, s)) continue;
                    // Does s emulate r in S_k?
                    bool emu = true;
                    for (int xo = 0; xo < sys.osize() && emu; ++xo) {
                        OSep x = sys.oriented(xo);
                        if (leq(r, x) && sys.oid_of(sup(s, x)) < 0) emu = false;
                    }
                    if (!emu) continue;
                    // Shift every small star of elements orientable above r.
                    for (int t1 = 0; t1 < sys.osize(); ++t1) {
                        OSep t = sys.oriented(t1);
                        if (!leq(r, t) || t == r) continue;
                        for (int t2 = -1; t2 < sys.osize(); ++t2) {
                            std::vector<OSep> sigma{t};
                            if (t2 >= 0) {
                                OSep u = sys.oriented(t2);
                                if (u == t || u == r) continue;
                                if (!leq(r, u) && !leq(r, u.reversed())) continue;
                                sigma.push_back(u);
                            }
                            if (!is_star(g, sigma)) continue;
                            for (auto F :
                                 {FamilySpec::tk_star(k), FamilySpec::uk(k)}) {
                                if (!family_member(g, sigma, F).member) continue;
                                auto res = emulate_and_shift(s, r, sys, sigma, t);
                                REQUIRE(res.emulates);
                                CHECK(is_star(g, res.shifted));
                                CHECK(family_member(g, res.shifted, F).member);
                            }
                        }
                    }
                }
            }
        }
    }
}
