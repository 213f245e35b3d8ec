#include "separation.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

#include "flow.hpp"

namespace seps {

bool is_separation(const Graph& g, VSet A, VSet B) {
    if ((A | B) != g.vertices()) return false;
    VSet sa = A & ~B, sb = B & ~A;
    for (VSet t = sa; t; t &= t - 1)
        if (g.adj(vs_min(t)) & sb) return false;
    return true;
}

SepCheck make_separation(const Graph& g, VSet A, VSet B) {
    SepCheck out;
    out.s = {A, B};
    if ((A | B) != g.vertices()) {
        out.error = "A ∪ B does not cover the vertex set";
        return out;
    }
    VSet sa = A & ~B, sb = B & ~A;
    for (VSet t = sa; t; t &= t - 1) {
        int u = vs_min(t);
        if (VSet hit = g.adj(u) & sb) {
            out.witness_edge = {u, vs_min(hit)};
            out.error = "edge between the strict sides";
            return out;
        }
    }
    out.valid = true;
    out.order = out.s.order();
    out.proper = A != g.vertices() && B != g.vertices();
    VSet sep = A & B;
    for (VSet comp : components(g, g.vertices() & ~sa))
        if (g.neighbourhood(comp) == sep) out.left_tight = true;
    for (VSet comp : components(g, g.vertices() & ~sb))
        if (g.neighbourhood(comp) == sep) out.right_tight = true;
    out.tight = out.left_tight && out.right_tight;
    return out;
}

CornerBox corner_box(const OSep& r, const OSep& s) {
    CornerBox box;
    box.infimum = inf(r, s);
    box.supremum = sup(r, s);
    box.corners[0] = box.infimum;
    box.corners[1] = box.supremum;
    box.corners[2] = inf(r.reversed(), s);  // (B∩C, A∪D)
    box.corners[3] = sup(r.reversed(), s);  // (B∪C, A∩D)
    box.order_sum_ok =
        box.infimum.order() + box.supremum.order() == r.order() + s.order();
    return box;
}

SepSystem::SepSystem(const Graph* g, int k, std::vector<OSep> members,
                     std::vector<OSep> sigma)
    : g_(g), k_(k), mem_(std::move(members)), sigma_(std::move(sigma)) {
    std::sort(mem_.begin(), mem_.end(), [](const OSep& a, const OSep& b) {
        return std::tuple(a.order(), a.A, a.B) < std::tuple(b.order(), b.A, b.B);
    });
    for (int i = 0; i < size(); ++i) {
        index_[{mem_[i].A, mem_[i].B}] = 2 * i;
        index_[{mem_[i].B, mem_[i].A}] = mem_[i].A == mem_[i].B ? 2 * i : 2 * i + 1;
    }
}

int SepSystem::oid_of(const OSep& s) const {
    auto it = index_.find({s.A, s.B});
    return it == index_.end() ? -1 : it->second;
}

int SepSystem::member_of(const OSep& s) const {
    int oid = oid_of(s);
    return oid < 0 ? -1 : oid >> 1;
}

bool SepSystem::trivial(const OSep& r) const {
    for (const OSep& m : mem_) {
        if (m == r || m.reversed() == r) continue;
        if (lt(r, m) && lt(r, m.reversed())) return true;
    }
    return false;
}

namespace {

void for_each_subset_of_size(const std::vector<int>& verts, int size, int from,
                             VSet cur, const std::function<void(VSet)>& fn) {
    if (size == 0) {
        fn(cur);
        return;
    }
    for (int i = from; i + size <= static_cast<int>(verts.size()); ++i)
        for_each_subset_of_size(verts, size - 1, i + 1, cur | vs_bit(verts[i]), fn);
}

bool nested_with_sigma(const OSep& r, const std::vector<OSep>& sigma) {
    for (const OSep& s : sigma)
        if (!leq(s, r) && !leq(s, r.reversed())) return false;
    return true;
}

}  // namespace

SepSystem enumerate_system(const Graph& g, int k, const std::vector<OSep>& sigma) {
    std::vector<int> verts = vs_list(g.vertices());
    std::map<std::pair<VSet, VSet>, OSep> seen;
    auto emit = [&](VSet A, VSet B) {
        OSep s{A, B};
        OSep c = std::min(s, s.reversed());
        if (!sigma.empty() && !nested_with_sigma(c, sigma)) return;
        seen.try_emplace({c.A, c.B}, c);
    };
    for (int xs = 0; xs < k && xs <= g.n(); ++xs) {
        for_each_subset_of_size(verts, xs, 0, 0, [&](VSet X) {
            std::vector<VSet> comps = components(g, X);
            int c = static_cast<int>(comps.size());
            // Every separation with separator X assigns each component of G - X
            // wholly to one side, so this sweep is exhaustive.
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << c); ++mask) {
                VSet A = X, B = X;
                for (int i = 0; i < c; ++i)
                    ((mask >> i) & 1 ? A : B) |= comps[i];
                emit(A, B);
            }
        });
    }
    std::vector<OSep> members;
    members.reserve(seen.size());
    for (auto& [key, s] : seen) members.push_back(s);
    return SepSystem(&g, k, std::move(members), sigma);
}

CompareResult compare(const OSep& r, const OSep& s, const SepSystem& system) {
    CompareResult out;
    out.leq = leq(r, s);
    out.geq = leq(s, r);
    out.nested = nested(r, s);
    out.crossing = !out.nested;
    out.r_trivial_in_system = system.trivial(r);
    return out;
}

bool is_star(const Graph& g, const std::vector<OSep>& sigma,
             std::pair<OSep, OSep>* offending) {
    OSep vv{g.vertices(), g.vertices()};
    for (const OSep& s : sigma)
        if (s == vv) {
            if (offending) *offending = {s, s};
            return false;
        }
    for (std::size_t i = 0; i < sigma.size(); ++i)
        for (std::size_t j = 0; j < sigma.size(); ++j) {
            if (i == j) continue;
            if (!leq(sigma[i], sigma[j].reversed())) {
                if (offending) *offending = {sigma[i], sigma[j]};
                return false;
            }
        }
    return true;
}

VSet star_interior(const Graph& g, const std::vector<OSep>& sigma) {
    VSet out = g.vertices();
    for (const OSep& s : sigma) out &= s.B;
    return out;
}

Torso star_torso(const Graph& g, const std::vector<OSep>& sigma) {
    Torso t;
    t.interior = star_interior(g, sigma);
    t.vertex_of = vs_list(t.interior);
    int tn = static_cast<int>(t.vertex_of.size());
    std::vector<int> local(64, -1);
    for (int i = 0; i < tn; ++i) local[t.vertex_of[i]] = i;
    t.graph = Graph(tn);
    for (int i = 0; i < tn; ++i)
        for (int j = i + 1; j < tn; ++j) {
            int u = t.vertex_of[i], v = t.vertex_of[j];
            bool joined = g.has_edge(u, v);
            for (const OSep& s : sigma)
                if (!joined && vs_has(s.separator(), u) && vs_has(s.separator(), v))
                    joined = true;
            if (joined) t.graph.add_edge(i, j);
        }
    return t;
}

StarOps star_ops(const Graph& g, const std::vector<OSep>& sigma, int k) {
    StarOps out;
    out.is_star = is_star(g, sigma, &out.offending);
    out.interior = star_interior(g, sigma);
    if (out.is_star) {
        out.torso = star_torso(g, sigma);
        out.in_u_k = vs_size(out.interior) < k;
    }
    return out;
}

long long count_all_separations(const Graph& g) {
    if (g.n() > 22) return -1;  // guard: this scan is exponential
    std::map<std::pair<VSet, VSet>, char> seen;
    for (VSet X = 0;; ++X) {
        X &= g.vertices();
        std::vector<VSet> comps = components(g, X);
        int c = static_cast<int>(comps.size());
        if (c <= 22) {
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << c); ++mask) {
                VSet A = X, B = X;
                for (int i = 0; i < c; ++i)
                    ((mask >> i) & 1 ? A : B) |= comps[i];
                OSep s{A, B};
                OSep cs = std::min(s, s.reversed());
                seen.try_emplace({cs.A, cs.B}, 1);
            }
        }
        if (X == g.vertices()) break;
    }
    return static_cast<long long>(seen.size());
}

// ---- Robustness ----

namespace {

// Greedy pairwise-disjoint anchor paths: start each path at its separator
// vertex and extend through unused strict-small-side vertices.
std::vector<std::vector<int>> greedy_anchor_paths(const Graph& g, const OSep& s) {
    VSet strictA = s.A & ~s.B;
    VSet used = s.separator();
    std::vector<std::vector<int>> out;
    for (int x : vs_list(s.separator())) {
        std::vector<int> path{x};
        int cur = x;
        for (;;) {
            VSet nxt = g.adj(cur) & strictA & ~used;
            if (!nxt) break;
            cur = vs_min(nxt);
            used |= vs_bit(cur);
            path.push_back(cur);
        }
        std::reverse(path.begin(), path.end());  // P_x ends in x
        out.push_back(std::move(path));
    }
    return out;
}

std::vector<std::vector<int>> trivial_anchor_paths(const OSep& s) {
    std::vector<std::vector<int>> out;
    for (int x : vs_list(s.separator())) out.push_back({x});
    return out;
}

VSet path_vertices(const std::vector<int>& p) {
    VSet out = 0;
    for (int v : p) out |= vs_bit(v);
    return out;
}

// Checks one candidate hub U against every separator vertex; fills fans on
// success. All fans are certified by unit-vertex-capacity flows.
bool try_hub(const Graph& g, const OSep& s, int ell,
             const std::vector<std::vector<int>>& anchors, VSet U,
             RobustWitness* w) {
    VSet strictA = s.A & ~s.B;
    std::vector<std::vector<std::vector<int>>> fans;
    auto xs = vs_list(s.separator());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        VSet allowed = strictA | vs_bit(xs[i]);
        VSet targets = path_vertices(anchors[i]) & allowed;
        DisjointPaths dp =
            vertex_disjoint_paths(g, allowed, U, targets, /*cap_targets=*/false, ell);
        if (dp.count < ell) return false;
        fans.push_back(std::move(dp.paths));
    }
    if (w) {
        w->U = U;
        w->anchor_paths = anchors;
        w->fans = std::move(fans);
    }
    return true;
}

VSet first_k(VSet pool, int k) {
    VSet out = 0;
    for (VSet t = pool; t && k > 0; t &= t - 1, --k) out |= vs_bit(vs_min(t));
    return k == 0 ? out : 0;
}

VSet last_k(VSet pool, int k) {
    std::vector<int> vs = vs_list(pool);
    if (static_cast<int>(vs.size()) < k) return 0;
    VSet out = 0;
    for (int i = static_cast<int>(vs.size()) - k; i < static_cast<int>(vs.size()); ++i)
        out |= vs_bit(vs[i]);
    return out;
}

}  // namespace

RobustResult left_robust(const Graph& g, const OSep& s, int ell) {
    RobustResult res;
    if (ell > vs_size(s.A)) {
        res.kind = RobustResult::Impossible;
        res.reason = "no hub set exists: ell exceeds |A|";
        return res;
    }
    VSet strictA = s.A & ~s.B;
    if (vs_size(strictA) < ell && vs_size(s.separator()) > 1) {
        // Hub vertices in A ∩ B other than x cannot appear in G[(A\B) ∪ {x}],
        // so with more than one separator vertex the hub must fit in A \ B.
        res.kind = RobustResult::RefusedWithinBudget;
        res.reason = "hub cannot fit into the strict small side";
        return res;
    }
    std::vector<std::vector<std::vector<int>>> families = {
        trivial_anchor_paths(s), greedy_anchor_paths(g, s)};
    VSet pool = vs_size(s.separator()) <= 1 ? s.A : strictA;
    std::vector<VSet> candidates;
    if (VSet u = first_k(pool, ell)) candidates.push_back(u);
    if (VSet u = last_k(pool, ell)) candidates.push_back(u);
    for (const auto& fam : families)
        for (VSet u : candidates)
            if (try_hub(g, s, ell, fam, u, &res.witness)) {
                res.kind = RobustResult::Witness;
                return res;
            }
    // Exhaustive hub sweep at small scale, budget-capped.
    if (vs_size(pool) <= 16) {
        long long budget = 20000;
        std::vector<int> verts = vs_list(pool);
        bool found = false;
        std::function<void(int, int, VSet)> rec = [&](int from, int need, VSet cur) {
            if (found || --budget < 0) return;
            if (need == 0) {
                for (const auto& fam : families)
                    if (!found && try_hub(g, s, ell, fam, cur, &res.witness)) found = true;
                return;
            }
            for (int i = from; i + need <= static_cast<int>(verts.size()) && !found; ++i)
                rec(i + 1, need - 1, cur | vs_bit(verts[i]));
        };
        rec(0, ell, 0);
        if (found) {
            res.kind = RobustResult::Witness;
            return res;
        }
    }
    res.kind = RobustResult::RefusedWithinBudget;
    res.reason = "no hub/anchor combination within the search budget";
    return res;
}

bool verify_left_robust(const Graph& g, const OSep& s, int ell,
                        const RobustWitness& w, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (vs_size(w.U) != ell) return fail("hub size != ell");
    if (w.U & ~s.A) return fail("hub not inside A");
    auto xs = vs_list(s.separator());
    if (w.anchor_paths.size() != xs.size()) return fail("anchor path count mismatch");
    VSet all_anchor = 0;
    auto path_ok = [&](const std::vector<int>& p, VSet inside) {
        if (p.empty()) return false;
        VSet pv = path_vertices(p);
        if (static_cast<int>(p.size()) != vs_size(pv)) return false;  // repeats
        if (pv & ~inside) return false;
        for (std::size_t i = 0; i + 1 < p.size(); ++i)
            if (!g.has_edge(p[i], p[i + 1])) return false;
        return true;
    };
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto& p = w.anchor_paths[i];
        if (!path_ok(p, s.A)) return fail("invalid anchor path");
        if (p.back() != xs[i]) return fail("anchor path does not end in its separator vertex");
        VSet pv = path_vertices(p);
        if (pv & all_anchor) return fail("anchor paths not disjoint");
        all_anchor |= pv;
    }
    VSet strictA = s.A & ~s.B;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        VSet allowed = strictA | vs_bit(xs[i]);
        VSet px = path_vertices(w.anchor_paths[i]);
        if (w.fans.size() != xs.size() || static_cast<int>(w.fans[i].size()) != ell)
            return fail("fan count mismatch");
        for (const auto& q : w.fans[i]) {
            if (!path_ok(q, allowed)) return fail("invalid fan path");
            if (!vs_has(w.U, q.front())) return fail("fan path does not start in the hub");
            if (!vs_has(px, q.back())) return fail("fan path does not end on its anchor path");
        }
        for (std::size_t a = 0; a < w.fans[i].size(); ++a)
            for (std::size_t b = a + 1; b < w.fans[i].size(); ++b) {
                VSet common = path_vertices(w.fans[i][a]) & path_vertices(w.fans[i][b]);
                for (int v : vs_list(common)) {
                    bool end_a = v == w.fans[i][a].front() || v == w.fans[i][a].back();
                    bool end_b = v == w.fans[i][b].front() || v == w.fans[i][b].back();
                    if (!end_a || !end_b || !vs_has(px, v))
                        return fail("fan paths meet outside anchor-path endvertices");
                }
            }
    }
    return true;
}

}  // namespace seps
