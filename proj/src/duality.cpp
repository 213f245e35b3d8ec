#include "duality.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <deque>
#include <functional>
#include <set>

namespace seps {

namespace {

bool star_pair(const OSep& a, const OSep& b, VSet full) {
    if ((a.A == full && a.B == full) || (b.A == full && b.B == full)) return false;
    return a != b && leq(a, b.reversed()) && leq(b, a.reversed());
}

std::string sep_str(const OSep& s) {
    auto side = [](VSet v) {
        std::string out = "{";
        for (int x : vs_list(v)) out += std::to_string(x) + ",";
        if (out.back() == ',') out.pop_back();
        return out + "}";
    };
    return "(" + side(s.A) + "," + side(s.B) + ")";
}

using EdgeMask = std::array<std::uint64_t, 4>;

// The least fixed point of: an oriented separation hangs if some star in F
// contains it with the reverses of all other elements already hanging.
struct HangEngine {
    const SepSystem& sys;
    const FamilySpec& F;
    const Graph& g;
    VSet full;
    int O;
    std::vector<char> hang;
    std::vector<int> rank;                  // hang order, for witness unwinding
    std::vector<std::vector<int>> wit;      // the witness star, oids, self included
    std::vector<std::vector<int>> partners; // star-compatible other orientations
    std::vector<EdgeMask> emask;            // edges covered by the small side
    EdgeMask all_edges{};
    int counter = 0;

    HangEngine(const SepSystem& s, const FamilySpec& f)
        : sys(s), F(f), g(s.graph()), full(g.vertices()), O(s.osize()),
          hang(O, 0), rank(O, -1), wit(O), partners(O), emask(O) {
        if (g.m() > 256)
            throw std::invalid_argument("duality engine supports at most 256 edges");
        for (int i = 0; i < O; ++i) {
            OSep a = sys.oriented(i);
            for (std::size_t e = 0; e < g.edges().size(); ++e) {
                auto [u, v] = g.edges()[e];
                if (vs_has(a.A, u) && vs_has(a.A, v)) emask[i][e >> 6] |= 1ull << (e & 63);
            }
        }
        for (std::size_t e = 0; e < g.edges().size(); ++e)
            all_edges[e >> 6] |= 1ull << (e & 63);
        for (int i = 0; i < O; ++i) {
            OSep a = sys.oriented(i);
            for (int j = 0; j < O; ++j)
                if (j != i && star_pair(a, sys.oriented(j), full)) partners[i].push_back(j);
        }
    }

    bool covers(std::initializer_list<int> oids) const {
        VSet verts = 0;
        EdgeMask em{};
        for (int i : oids) {
            verts |= sys.oriented(i).A;
            for (int w = 0; w < 4; ++w) em[w] |= emask[i][w];
        }
        return verts == full && em == all_edges;
    }

    bool singleton_member(const OSep& s) const {
        for (const OSep& x : F.singletons)
            if (s == x) return true;
        switch (F.kind) {
            case FamilySpec::Kind::TkStar:
                return s.A == full && s.B != full;
            case FamilySpec::Kind::Uk:
                return !(s.A == full && s.B == full) && vs_size(s.B) < F.k;
            case FamilySpec::Kind::Explicit:
                for (const auto& set : F.explicit_sets)
                    if (set.size() == 1 && set[0] == s) return true;
                return false;
            default:
                return false;
        }
    }

    void mark(int i, std::vector<int> witness) {
        hang[i] = 1;
        rank[i] = counter++;
        wit[i] = std::move(witness);
    }

    // Exact star extension for the low-interior family: a subset of `pool`
    // (pairwise compatible, all compatible with i) shrinking the interior
    // below k. Branch and bound on the interior still reachable.
    bool uk_extend(int from, VSet interior, const std::vector<int>& pool,
                   std::vector<char>& allowed, std::vector<int>& chosen) {
        if (vs_size(interior) < F.k) return true;
        VSet reach = interior;
        for (int j = from; j < static_cast<int>(pool.size()); ++j)
            if (allowed[j]) reach &= sys.oriented(pool[j]).B;
        if (vs_size(reach) >= F.k) return false;
        for (int j = from; j < static_cast<int>(pool.size()); ++j) {
            if (!allowed[j]) continue;
            std::vector<char> next(allowed);
            OSep oj = sys.oriented(pool[j]);
            for (int x = 0; x < static_cast<int>(pool.size()); ++x)
                if (next[x] && x != j && !star_pair(oj, sys.oriented(pool[x]), full))
                    next[x] = 0;
            chosen.push_back(pool[j]);
            if (uk_extend(j + 1, interior & oj.B, pool, next, chosen)) return true;
            chosen.pop_back();
            allowed[j] = 0;
        }
        return false;
    }

    bool try_hang(int i) {
        OSep a = sys.oriented(i);
        if (singleton_member(a)) { mark(i, {i}); return true; }
        std::vector<int> P;
        for (int j : partners[i])
            if (hang[sys.rev(j)]) P.push_back(j);
        switch (F.kind) {
            case FamilySpec::Kind::TkStar: {
                for (int j : P)
                    if (covers({i, j})) { mark(i, {i, j}); return true; }
                for (std::size_t x = 0; x < P.size(); ++x)
                    for (std::size_t y = x + 1; y < P.size(); ++y) {
                        if (!star_pair(sys.oriented(P[x]), sys.oriented(P[y]), full))
                            continue;
                        if (covers({i, P[x], P[y]})) {
                            mark(i, {i, P[x], P[y]});
                            return true;
                        }
                    }
                return false;
            }
            case FamilySpec::Kind::Uk: {
                std::vector<char> allowed(P.size(), 1);
                std::vector<int> chosen;
                if (!uk_extend(0, a.B, P, allowed, chosen)) return false;
                chosen.insert(chosen.begin(), i);
                mark(i, std::move(chosen));
                return true;
            }
            case FamilySpec::Kind::Explicit: {
                for (const auto& set : F.explicit_sets) {
                    if (std::find(set.begin(), set.end(), a) == set.end()) continue;
                    bool ok = true;
                    std::vector<int> w{i};
                    for (const OSep& x : set) {
                        if (x == a) continue;
                        int oid = sys.oid_of(x);
                        if (oid < 0 || !hang[sys.rev(oid)]) { ok = false; break; }
                        w.push_back(oid);
                    }
                    if (ok) { mark(i, std::move(w)); return true; }
                }
                return false;
            }
            default:
                return false;
        }
    }

    void run() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int i = 0; i < O; ++i)
                if (!hang[i] && try_hang(i)) changed = true;
        }
    }

    // Unwinds witnesses into the subtree whose incoming edge carries
    // oriented(oid); returns the node that edge points at.
    int build(int oid, STree& st) const {
        int u = st.nodes++;
        for (int j : wit[oid]) {
            if (j == oid) continue;
            int w = build(sys.rev(j), st);
            st.edges.emplace_back(std::min(u, w), std::max(u, w));
            st.alpha[{w, u}] = sys.oriented(j);
            st.alpha[{u, w}] = sys.oriented(j).reversed();
        }
        return u;
    }

    STree assemble(int member) const {
        STree st;
        st.nodes = 0;
        const OSep& m = sys.members()[member];
        int b = build(2 * member, st);
        int a = build(m.A == m.B ? 2 * member : 2 * member + 1, st);
        st.edges.emplace_back(std::min(a, b), std::max(a, b));
        st.alpha[{a, b}] = sys.oriented(2 * member);
        st.alpha[{b, a}] = sys.oriented(2 * member).reversed();
        return st;
    }
};

bool supported_family(const FamilySpec& F) {
    return F.kind == FamilySpec::Kind::TkStar || F.kind == FamilySpec::Kind::Uk ||
           F.kind == FamilySpec::Kind::Explicit;
}

}  // namespace

DualityCertificate duality_on(SepSystem sys, const FamilySpec& F) {
    if (!supported_family(F))
        throw std::invalid_argument("unsupported family for the duality engine: " +
                                    F.name());
    const Graph& g = sys.graph();
    DualityCertificate out;
    out.provenance = "hang fixed point + exhaustive orientation search, family=" +
                     F.name() + (sys.restricted() ? ", restricted system" : "");

    STree tree;
    bool have_tree = false;
    if (family_member(g, {}, F).member) {
        tree.nodes = 1;  // the one-node tree over the empty star
        have_tree = true;
    } else {
        HangEngine eng(sys, F);
        eng.run();
        for (int i = 0; i < eng.O; ++i)
            if (eng.hang[i]) out.hang_set.push_back(sys.oriented(i));
        for (int m = 0; m < sys.size(); ++m) {
            const OSep& s = sys.members()[m];
            bool both = s.A == s.B ? eng.hang[2 * m]
                                   : eng.hang[2 * m] && eng.hang[2 * m + 1];
            if (both) {
                tree = eng.assemble(m);
                have_tree = true;
                break;
            }
        }
    }
    if (have_tree) {
        STreeCheck c = validate_stree(g, tree, F);
        if (!c.valid || !c.over_f)
            throw soundness_error("assembled tree fails validation: " + c.error);
    }

    std::vector<Orientation> tangles = find_f_tangles(sys, F, 1);
    bool have_tangle = !tangles.empty();

    if (have_tree == have_tangle)
        throw soundness_error(std::string("duality exactness violated: ") +
                              (have_tree ? "both a tree and a tangle exist"
                                         : "neither a tree nor a tangle exists"));
    if (have_tree) {
        out.verdict = DualityCertificate::Verdict::STree;
        out.stree = std::move(tree);
    } else {
        out.verdict = DualityCertificate::Verdict::Tangle;
        out.tangle_side = tangles[0].side;
    }
    out.system = std::move(sys);
    return out;
}

DualityCertificate duality(const Graph& g, int k, const FamilySpec& F) {
    if (F.k != k) throw std::invalid_argument("family order does not match k");
    return duality_on(enumerate_system(g, k), F);
}

UkTreeResult uk_tree_via_treewidth(const Graph& g, int k) {
    UkTreeResult out;
    TwResult tw = exact_treewidth(g);
    out.tw = tw.tw;
    if (tw.tw > k - 2) {
        out.reason = "treewidth " + std::to_string(tw.tw) + " exceeds k-2 = " +
                     std::to_string(k - 2);
        return out;
    }
    std::set<std::pair<int, int>> equal_bag;
    for (auto [u, v] : tw.td.edges)
        if (tw.td.bags[u] == tw.td.bags[v]) equal_bag.insert({u, v});
    TreeDec td = equal_bag.empty() ? tw.td : contract_td(tw.td, equal_bag);
    out.stree = td_to_stree(g, td, k);
    STreeCheck c = validate_stree(g, out.stree, FamilySpec::uk(k));
    if (!c.valid || !c.over_f)
        throw soundness_error("width route produced a tree not over the family: " +
                              c.error);
    out.built = true;
    return out;
}

namespace {

// Profile property: no two elements whose supremum's reverse is also chosen.
bool is_profile_orientation(const Orientation& P) {
    if (!is_consistent(P)) return false;
    std::vector<OSep> es = P.elements();
    for (std::size_t i = 0; i < es.size(); ++i)
        for (std::size_t j = 0; j < es.size(); ++j) {
            if (i == j) continue;
            if (P.contains(sup(es[i], es[j]).reversed())) return false;
        }
    return true;
}

}  // namespace

Orientation extend_tangle(const Graph& g, const Orientation& tau, const OSep& s,
                          const ExtendMode& mode, const SepSystem& target,
                          const FamilySpec& Fprime) {
    if (mode.kind == ExtendMode::Kind::Robust) {
        std::string why;
        if (!verify_left_robust(g, s, mode.ell, mode.robust, &why))
            throw std::invalid_argument("invalid robustness witness: " + why);
    } else {
        if (!mode.profile.sys || !closely_related(s.reversed(), mode.profile))
            throw std::invalid_argument(
                "witness orientation is not closely related to the reverse element");
    }

    std::vector<VSet> paths;  // anchor paths as vertex sets, Robust mode
    if (mode.kind == ExtendMode::Kind::Robust)
        for (const auto& p : mode.robust.anchor_paths) {
            VSet m = 0;
            for (int v : p) m |= vs_bit(v);
            paths.push_back(m);
        }
    auto meets_all = [&](VSet side) {
        for (VSet p : paths)
            if ((side & p) == 0) return false;
        return true;
    };

    Orientation out{&target, std::vector<std::uint8_t>(target.size(), 0)};
    for (int i = 0; i < target.size(); ++i) {
        const OSep& r = target.members()[i];
        if (tau.sys->oid_of(r) >= 0) {
            out.side[i] = tau.contains(r) ? 0 : 1;
            continue;
        }
        if (mode.kind == ExtendMode::Kind::Robust) {
            // Rule: a side meeting every anchor path orients like its corner
            // with s pushed onto it.
            OSep up{r.A | s.A, r.B & s.B}, down{r.B | s.A, r.A & s.B};
            if (meets_all(r.A)) {
                if (tau.sys->oid_of(up) < 0)
                    throw soundness_error("corner " + sep_str(up) +
                                          " missing from the restricted system");
                out.side[i] = tau.contains(up) ? 0 : 1;
            } else if (meets_all(r.B)) {
                if (tau.sys->oid_of(down) < 0)
                    throw soundness_error("corner " + sep_str(down) +
                                          " missing from the restricted system");
                out.side[i] = tau.contains(down) ? 1 : 0;
            } else {
                throw soundness_error("no side of " + sep_str(r) +
                                      " meets every anchor path");
            }
        } else {
            if (nested(r, s)) {
                // Not pointed-nested with s, so an orientation lies below s.
                if (leq(r, s))
                    out.side[i] = 0;
                else if (leq(r.reversed(), s))
                    out.side[i] = 1;
                else
                    throw soundness_error("separation " + sep_str(r) +
                                          " nested with the lifted element but not below it");
            } else {
                // Corner of order < k: the infimum with the closely related
                // inverse when the profile holds r, else the supremum with s
                // (whose order is that of an infimum of two profile members).
                OSep t = mode.profile.contains(r) ? inf(r, s.reversed()) : sup(r, s);
                if (tau.sys->oid_of(t) < 0)
                    throw soundness_error("corner " + sep_str(t) +
                                          " missing from the restricted system");
                out.side[i] = tau.contains(t) ? 0 : 1;
            }
        }
    }

    if (!is_consistent(out))
        throw soundness_error("extended orientation is inconsistent");
    std::vector<OSep> viol;
    if (!avoids_family(out, Fprime, &viol))
        throw soundness_error("extended orientation hits the family");
    for (int j = 0; j < tau.sys->size(); ++j)
        if (!out.contains(tau.at(j)))
            throw soundness_error("extension dropped " + sep_str(tau.at(j)));
    return out;
}

RefineStarResult refine_inessential_star(const Graph& g, int k, const FamilySpec& F,
                                         const std::vector<OSep>& sigma_in) {
    RefineStarResult out;
    std::vector<OSep> sigma;
    for (const OSep& s : sigma_in)
        if (std::find(sigma.begin(), sigma.end(), s) == sigma.end())
            sigma.push_back(s);

    std::pair<OSep, OSep> off;
    if (!is_star(g, sigma, &off)) {
        out.refused = true;
        out.reason = "not a star: " + sep_str(off.first) + " vs " + sep_str(off.second);
        return out;
    }
    for (const OSep& s : sigma) {
        if (!is_separation(g, s.A, s.B) || s.order() >= k) {
            out.refused = true;
            out.reason = "element " + sep_str(s) + " is not a separation of order < k";
            return out;
        }
    }
    int m = F.m_bound();
    if (m < 0) {
        out.refused = true;
        out.reason = "family " + F.name() + " has no interior bound";
        return out;
    }
    out.ell = std::max(3 * k - 2, k * (k - 1) * m + m);
    out.full_system = enumerate_system(g, k);

    // Lift certificates: robustness first, else an avoiding profile whose
    // orientation is closely related to the reverse.
    std::vector<Orientation> profiles;
    bool profiles_ready = false;
    for (const OSep& s : sigma) {
        LiftWitness w;
        w.s = s;
        RobustResult rr = left_robust(g, s, out.ell);
        if (rr.kind == RobustResult::Witness) {
            w.kind = LiftWitness::Kind::Robust;
            w.robust = rr.witness;
        } else {
            if (!profiles_ready) {
                for (const Orientation& t : find_f_tangles(out.full_system, F, 4096))
                    if (is_profile_orientation(t)) profiles.push_back(t);
                profiles_ready = true;
            }
            bool found = false;
            for (const Orientation& P : profiles)
                if (closely_related(s.reversed(), P)) {
                    w.kind = LiftWitness::Kind::CloselyRelated;
                    w.profile_side = P.side;
                    found = true;
                    break;
                }
            if (!found) {
                out.refused = true;
                out.reason = "element " + sep_str(s) +
                             " is neither left-robust (ell=" + std::to_string(out.ell) +
                             ") nor reverse-closely-related to an avoiding profile";
                return out;
            }
        }
        out.witnesses.push_back(std::move(w));
    }

    std::vector<OSep> revs;
    for (const OSep& s : sigma) revs.push_back(s.reversed());
    FamilySpec Fp = F.with_singletons(revs);

    DualityCertificate cert = duality_on(enumerate_system(g, k, sigma), Fp);
    if (cert.verdict == DualityCertificate::Verdict::STree) {
        STreeCheck c = validate_stree(g, cert.stree, Fp);
        for (const OSep& s : sigma)
            if (std::find(c.leaf_separations.begin(), c.leaf_separations.end(), s) ==
                c.leaf_separations.end())
                throw soundness_error("element " + sep_str(s) +
                                      " is not a leaf separation of the refined tree");
        out.verdict = DualityCertificate::Verdict::STree;
        out.stree = std::move(cert.stree);
        return out;
    }

    // Lift the restricted tangle one element at a time.
    Orientation tau = cert.tangle();
    std::vector<OSep> cur = sigma;
    std::deque<SepSystem> owned;
    while (!cur.empty()) {
        OSep s = cur.back();
        cur.pop_back();
        const SepSystem* target;
        if (cur.empty()) {
            target = &out.full_system;
        } else {
            owned.push_back(enumerate_system(g, k, cur));
            target = &owned.back();
        }
        const LiftWitness* lw = nullptr;
        for (const LiftWitness& w : out.witnesses)
            if (w.s == s) lw = &w;
        ExtendMode mode;
        mode.ell = out.ell;
        if (lw->kind == LiftWitness::Kind::Robust) {
            mode.kind = ExtendMode::Kind::Robust;
            mode.robust = lw->robust;
        } else {
            mode.kind = ExtendMode::Kind::CloselyRelated;
            mode.profile = Orientation{&out.full_system, lw->profile_side};
        }
        tau = extend_tangle(g, tau, s, mode, *target, Fp);
    }
    out.verdict = DualityCertificate::Verdict::Tangle;
    out.tangle_side = tau.side;
    return out;
}

TreeOfTangles build_tree_of_tangles(const Graph& g, int k) {
    TreeOfTangles out;
    out.system = enumerate_system(g, k);
    const SepSystem& sys = out.system;
    std::vector<Orientation> ts = find_f_tangles(sys, FamilySpec::tk_star(k), 4096);
    if (ts.size() >= 4096) throw std::runtime_error("too many tangles");
    for (const Orientation& t : ts) out.tangle_sides.push_back(t.side);
    int T = static_cast<int>(ts.size());
    if (T <= 1) {
        out.td = TreeDec{1, {}, {g.vertices()}};
        out.home.assign(T, 0);
        return out;
    }

    // Greedy nested set of efficient distinguishers, uncrossed via corners.
    std::vector<int> N;
    auto crossings = [&](int m) {
        int c = 0;
        for (int x : N)
            if (crossing(sys.members()[m], sys.members()[x])) ++c;
        return c;
    };
    for (int i = 0; i < T; ++i) {
        for (int j = i + 1; j < T; ++j) {
            Distinguishers d = distinguishers(ts[i], ts[j]);
            std::set<int> eff(d.efficient.begin(), d.efficient.end());
            bool done = false;
            for (int x : N)
                if (eff.count(x)) { done = true; break; }
            if (done) continue;
            int c = -1, cc = INT_MAX;
            for (int cand : d.efficient) {
                int cr = crossings(cand);
                if (cr < cc) { cc = cr; c = cand; }
            }
            while (cc > 0) {
                bool improved = false;
                for (int x : N) {
                    if (!crossing(sys.members()[c], sys.members()[x])) continue;
                    CornerBox cb = corner_box(sys.members()[c], sys.members()[x]);
                    for (const OSep& corner : cb.corners) {
                        int cm = sys.member_of(corner);
                        if (cm < 0 || !eff.count(cm)) continue;
                        int cr = crossings(cm);
                        if (cr < cc) { c = cm; cc = cr; improved = true; break; }
                    }
                    if (improved) break;
                }
                if (!improved)
                    throw soundness_error("uncrossing failed for a tangle pair");
            }
            N.push_back(c);
        }
    }

    // Tree from the nested set: nodes are its consistent orientations, edges
    // flip exactly one separation, bags intersect the chosen big sides.
    int p = static_cast<int>(N.size());
    if (p > 25) throw std::runtime_error("distinguisher set too large");
    std::vector<OSep> ns;
    for (int x : N) ns.push_back(sys.members()[x]);
    std::vector<std::vector<std::uint8_t>> nodes;
    std::vector<std::uint8_t> cur(p, 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == p) { nodes.push_back(cur); return; }
        for (std::uint8_t side : {0, 1}) {
            OSep a = side ? ns[i].reversed() : ns[i];
            bool ok = true;
            for (int j = 0; j < i; ++j) {
                OSep b = cur[j] ? ns[j].reversed() : ns[j];
                if (leq(a.reversed(), b) || leq(b.reversed(), a)) { ok = false; break; }
            }
            if (!ok) continue;
            cur[i] = side;
            rec(i + 1);
        }
    };
    rec(0);

    out.td.nodes = static_cast<int>(nodes.size());
    out.td.edges.clear();
    out.td.bags.assign(out.td.nodes, 0);
    for (int a = 0; a < out.td.nodes; ++a) {
        VSet bag = g.vertices();
        for (int x = 0; x < p; ++x) bag &= nodes[a][x] ? ns[x].A : ns[x].B;
        out.td.bags[a] = bag;
        for (int b = a + 1; b < out.td.nodes; ++b) {
            int diff = 0;
            for (int x = 0; x < p; ++x) diff += nodes[a][x] != nodes[b][x];
            if (diff == 1) out.td.edges.emplace_back(a, b);
        }
    }
    TDCheck c = validate_td(g, out.td);
    if (!c.valid)
        throw soundness_error("nested distinguishers gave no decomposition: " + c.error);
    for (auto [u, v] : out.td.edges) {
        OSep e = td_edge_separation(out.td, u, v);
        bool listed = false;
        for (const OSep& x : ns)
            if (e == x || e == x.reversed()) { listed = true; break; }
        if (!listed)
            throw soundness_error("decomposition edge induces a foreign separation");
    }
    for (int i = 0; i < T; ++i) {
        int home = -1;
        for (int a = 0; a < out.td.nodes; ++a) {
            bool match = true;
            for (int x = 0; x < p; ++x)
                if (nodes[a][x] != ts[i].side[N[x]]) { match = false; break; }
            if (match) { home = a; break; }
        }
        if (home < 0) throw soundness_error("a tangle lives at no node");
        out.home.push_back(home);
    }
    return out;
}

namespace {

// Exhaustive minimum-interior search over exclusive stars inside a tangle.
// Tangle-containment masks shrink monotonically, so branches that cannot
// reach exclusivity or beat the best interior are cut.
struct StarMin {
    const std::vector<OSep>& pool;
    const std::vector<std::uint64_t>& masks;  // tangles containing each element
    VSet full;
    std::uint64_t taubit;
    const std::vector<OSep>* above;  // require every element of this below some choice
    long long budget = 5'000'000;
    int best = INT_MAX;
    std::vector<int> best_set;

    void rec(int from, VSet interior, std::uint64_t mask, std::uint32_t cov,
             std::vector<int>& chosen, std::vector<char>& allowed) {
        if (--budget < 0)
            throw std::runtime_error("exclusive-star search exceeded its budget");
        std::uint32_t all_cov =
            above ? (1u << above->size()) - 1 : 0;
        if (mask == taubit && cov == all_cov && vs_size(interior) < best) {
            best = vs_size(interior);
            best_set = chosen;
        }
        VSet reach = interior;
        std::uint64_t mreach = mask;
        for (int j = from; j < static_cast<int>(pool.size()); ++j)
            if (allowed[j]) { reach &= pool[j].B; mreach &= masks[j]; }
        if (vs_size(reach) >= best) return;
        if (mreach != taubit) return;
        for (int j = from; j < static_cast<int>(pool.size()); ++j) {
            if (!allowed[j]) continue;
            VSet ni = interior & pool[j].B;
            std::uint64_t nm = mask & masks[j];
            std::uint32_t nc = cov;
            if (above)
                for (std::size_t r = 0; r < above->size(); ++r)
                    if (leq((*above)[r], pool[j])) nc |= 1u << r;
            if (ni == interior && nm == mask && nc == cov) continue;  // no effect
            std::vector<char> next(allowed);
            for (int x = 0; x < static_cast<int>(pool.size()); ++x)
                if (next[x] && x != j && !star_pair(pool[j], pool[x], full)) next[x] = 0;
            chosen.push_back(j);
            rec(j + 1, ni, nm, nc, chosen, next);
            chosen.pop_back();
            allowed[j] = 0;
        }
    }
};

}  // namespace

MinStarResult minimize_exclusive_star(const Graph& g, int k, const FamilySpec& F,
                                      const Orientation& tau,
                                      const std::vector<OSep>& sigma) {
    MinStarResult out;
    const SepSystem& sys = *tau.sys;
    std::vector<Orientation> tangles = find_f_tangles(sys, F, 64);
    if (tangles.size() >= 64)
        throw std::runtime_error("too many tangles for the exclusivity search");
    int ti = -1;
    for (std::size_t i = 0; i < tangles.size(); ++i)
        if (tangles[i] == tau) ti = static_cast<int>(i);
    if (ti < 0) {
        out.refused = true;
        out.reason = "orientation is not one of the tangles";
        return out;
    }
    std::pair<OSep, OSep> off;
    if (!is_star(g, sigma, &off)) {
        out.refused = true;
        out.reason = "not a star";
        return out;
    }
    for (const OSep& s : sigma)
        if (!tau.contains(s)) {
            out.refused = true;
            out.reason = "element " + sep_str(s) + " is not in the orientation";
            return out;
        }
    std::uint64_t contained = 0;
    for (std::size_t i = 0; i < tangles.size(); ++i) {
        bool all = true;
        for (const OSep& s : sigma)
            if (!tangles[i].contains(s)) { all = false; break; }
        if (all) contained |= 1ull << i;
    }
    if (contained != (1ull << ti)) {
        out.refused = true;
        out.reason = "star is contained in " + std::to_string(vs_size(contained)) +
                     " tangles, not exclusively one";
        return out;
    }

    std::vector<OSep> pool;
    VSet full = g.vertices();
    for (const OSep& e : tau.elements())
        if (!(e.A == full && e.B == full)) pool.push_back(e);
    std::vector<std::uint64_t> masks;
    for (const OSep& e : pool) {
        std::uint64_t m = 0;
        for (std::size_t i = 0; i < tangles.size(); ++i)
            if (tangles[i].contains(e)) m |= 1ull << i;
        masks.push_back(m);
    }

    // Pass one: the unconstrained optimum over all exclusive stars.
    StarMin a{pool, masks, full, 1ull << ti, nullptr};
    {
        std::vector<int> chosen;
        std::vector<char> allowed(pool.size(), 1);
        a.rec(0, full, ~0ull >> (64 - std::max<std::size_t>(tangles.size(), 1)), 0,
              chosen, allowed);
    }
    // Pass two: restricted to closely related elements above sigma.
    std::vector<OSep> poolB;
    std::vector<std::uint64_t> masksB;
    for (std::size_t i = 0; i < pool.size(); ++i)
        if (closely_related(pool[i], tau)) {
            poolB.push_back(pool[i]);
            masksB.push_back(masks[i]);
        }
    StarMin b{poolB, masksB, full, 1ull << ti, &sigma};
    {
        std::vector<int> chosen;
        std::vector<char> allowed(poolB.size(), 1);
        b.rec(0, full, ~0ull >> (64 - std::max<std::size_t>(tangles.size(), 1)), 0,
              chosen, allowed);
    }
    if (b.best != a.best)
        throw soundness_error(
            "no closely related exclusive star above the input reaches the optimum (" +
            std::to_string(a.best) + " vs " + std::to_string(b.best) + ")");
    out.interior_size = a.best;
    for (int j : b.best_set) out.star.push_back(poolB[j]);
    return out;
}

namespace {

// Disjoint union of trees with one designated leaf each, all identified into
// a single fresh center node.
STree merge_at_leaves(const std::vector<STree>& parts, const std::vector<int>& leaves) {
    STree out;
    out.nodes = 1;  // center
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const STree& p = parts[i];
        std::vector<int> id(p.nodes, -1);
        for (int x = 0; x < p.nodes; ++x)
            id[x] = (x == leaves[i]) ? 0 : out.nodes++;
        for (auto [u, v] : p.edges) {
            int a = id[u], b = id[v];
            out.edges.emplace_back(std::min(a, b), std::max(a, b));
            out.alpha[{a, b}] = p.alpha.at({u, v});
            out.alpha[{b, a}] = p.alpha.at({v, u});
        }
    }
    return out;
}

}  // namespace

RefineToTResult refine_tree_of_tangles(const Graph& g, int k, const FamilySpec& F,
                                       const TreeDec& td) {
    RefineToTResult out;
    TDCheck base = validate_td(g, td);
    if (!base.valid) {
        out.refused = true;
        out.reason = "input is not a tree-decomposition: " + base.error;
        return out;
    }
    SepSystem sys = enumerate_system(g, k);
    std::vector<Orientation> tangles = find_f_tangles(sys, F, 4096);
    int T = static_cast<int>(tangles.size());

    // Premise: each induced separation efficiently distinguishes some pair.
    std::vector<int> induced;
    for (auto [u, v] : td.edges) {
        OSep e = td_edge_separation(td, u, v);
        int m = sys.member_of(e);
        bool ok = false;
        if (m >= 0) {
            for (int i = 0; i < T && !ok; ++i)
                for (int j = i + 1; j < T; ++j)
                    if (tangles[i].side[m] != tangles[j].side[m] &&
                        distinguishes_efficiently(tangles[i], tangles[j], m)) {
                        ok = true;
                        break;
                    }
        }
        if (!ok) {
            out.refused = true;
            out.reason = "edge " + std::to_string(u) + "-" + std::to_string(v) +
                         " induces " + sep_str(e) +
                         ", which distinguishes no tangle pair efficiently";
            return out;
        }
        induced.push_back(m);
    }
    // Premise: all combinatorially distinguishable pairs are distinguished.
    for (int i = 0; i < T; ++i)
        for (int j = i + 1; j < T; ++j) {
            if (!combinatorially_distinguishable(tangles[i], tangles[j])) continue;
            bool ok = false;
            for (int m : induced)
                if (tangles[i].side[m] != tangles[j].side[m]) { ok = true; break; }
            if (!ok) {
                out.refused = true;
                out.reason = "tangles " + std::to_string(i) + " and " +
                             std::to_string(j) + " are not distinguished";
                return out;
            }
        }

    std::map<int, STree> pieces;
    for (int t = 0; t < td.nodes; ++t) {
        std::vector<OSep> sigma;
        for (int n : td.neighbours(t)) {
            OSep s = td_edge_separation(td, n, t);
            if (std::find(sigma.begin(), sigma.end(), s) == sigma.end())
                sigma.push_back(s);
        }
        std::vector<int> living;
        for (int i = 0; i < T; ++i) {
            bool all = true;
            for (const OSep& s : sigma)
                if (!tangles[i].contains(s)) { all = false; break; }
            if (all) living.push_back(i);
        }
        if (living.empty()) {
            RefineStarResult r = refine_inessential_star(g, k, F, sigma);
            if (r.refused) {
                out.refused = true;
                out.reason = "node " + std::to_string(t) + ": " + r.reason;
                return out;
            }
            if (r.verdict == DualityCertificate::Verdict::Tangle)
                throw soundness_error("node without a resident tangle refined to one");
            pieces[t] = std::move(r.stree);
        } else if (living.size() > 1) {
            out.refused = true;
            out.reason = "tangles " + std::to_string(living[0]) + " and " +
                         std::to_string(living[1]) + " both live at node " +
                         std::to_string(t);
            return out;
        } else {
            const Orientation& tau = tangles[living[0]];
            MinStarResult ms = minimize_exclusive_star(g, k, F, tau, sigma);
            if (ms.refused) {
                out.refused = true;
                out.reason = "node " + std::to_string(t) + ": " + ms.reason;
                return out;
            }
            if (ms.star.empty() && !sigma.empty()) {
                out.refused = true;
                out.reason = "node " + std::to_string(t) +
                             ": empty minimized star cannot carry the node's leaves";
                return out;
            }
            std::vector<STree> parts;
            std::vector<int> leaves;
            bool bad = false;
            for (const OSep& s : ms.star) {
                std::vector<OSep> rho{s.reversed()};
                for (const OSep& r : sigma)
                    if (leq(r, s) && r != s.reversed()) rho.push_back(r);
                RefineStarResult r = refine_inessential_star(g, k, F, rho);
                if (r.refused) {
                    out.refused = true;
                    out.reason = "node " + std::to_string(t) + ", element " +
                                 sep_str(s) + ": " + r.reason;
                    return out;
                }
                if (r.verdict == DualityCertificate::Verdict::Tangle) {
                    out.refused = true;
                    out.reason = "node " + std::to_string(t) + ", element " +
                                 sep_str(s) + " does not split off a tree";
                    return out;
                }
                int leaf = -1;
                for (int x = 0; x < r.stree.nodes && leaf < 0; ++x) {
                    if (r.stree.degree(x) != 1) continue;
                    if (r.stree.alpha.at({x, r.stree.neighbours(x)[0]}) == s.reversed())
                        leaf = x;
                }
                if (leaf < 0) { bad = true; break; }
                parts.push_back(std::move(r.stree));
                leaves.push_back(leaf);
            }
            if (bad)
                throw soundness_error("refined piece lacks its center leaf");
            pieces[t] = merge_at_leaves(parts, leaves);
        }
    }

    out.stree = glue_pieces(g, td, k, pieces);
    out.td = stree_to_td(g, out.stree);
    TDCheck check = validate_td(g, out.td, &td);
    if (!check.valid)
        throw soundness_error("refined decomposition is invalid: " + check.error);
    if (!check.refines_other)
        throw soundness_error("refined decomposition lost an induced separation");
    return out;
}

TorsoWidthResult torso_width_check(const Graph& g, int w, const std::vector<OSep>& sigma) {
    TorsoWidthResult out;
    std::pair<OSep, OSep> off;
    if (!is_star(g, sigma, &off)) {
        out.reason = "not a star";
        return out;
    }
    for (const OSep& s : sigma)
        if (!is_separation(g, s.A, s.B) || s.order() > w + 1) {
            out.reason = "element " + sep_str(s) + " has order above w+1";
            return out;
        }
    TwResult tw = exact_treewidth(g);
    if (tw.tw > w) {
        out.reason = "treewidth " + std::to_string(tw.tw) + " exceeds " +
                     std::to_string(w);
        return out;
    }
    int ell = (w + 1) * (w + 1) * (w + 2) + w + 1;
    for (const OSep& s : sigma) {
        RobustResult rr = left_robust(g, s, ell);
        if (rr.kind != RobustResult::Witness) {
            out.reason = "element " + sep_str(s) + " is not left-" +
                         std::to_string(ell) + "-robust: " + rr.reason;
            return out;
        }
    }
    RefineStarResult r = refine_inessential_star(g, w + 2, FamilySpec::uk(w + 2), sigma);
    if (r.refused) {
        out.reason = r.reason;
        return out;
    }
    if (r.verdict == DualityCertificate::Verdict::Tangle)
        throw soundness_error("low-interior tangle found despite small treewidth");

    TreeDec full_td = stree_to_td(g, r.stree);
    out.torso = star_torso(g, sigma);
    std::vector<int> local(64, -1);
    for (std::size_t i = 0; i < out.torso.vertex_of.size(); ++i)
        local[out.torso.vertex_of[i]] = static_cast<int>(i);
    TreeDec ttd;
    ttd.nodes = full_td.nodes;
    ttd.edges = full_td.edges;
    for (VSet bag : full_td.bags) {
        VSet nb = 0;
        for (int v : vs_list(bag & out.torso.interior)) nb |= vs_bit(local[v]);
        ttd.bags.push_back(nb);
    }
    TDCheck c = validate_td(out.torso.graph, ttd);
    if (!c.valid)
        throw soundness_error("restricted bags do not decompose the torso: " + c.error);
    if (c.classic_width > w)
        throw soundness_error("torso decomposition exceeds width " + std::to_string(w));
    out.torso_td = std::move(ttd);
    out.width = c.classic_width;
    out.ok = true;
    return out;
}

SeparabilityReport check_f_separable(const SepSystem& sys, const FamilySpec& F,
                                     long long sample_budget) {
    SeparabilityReport rep;
    const Graph& g = sys.graph();
    int O = sys.osize();
    auto emulates = [&](const OSep& s, const OSep& r) {
        for (int x = 0; x < O; ++x) {
            OSep xo = sys.oriented(x);
            if (!leq(r, xo)) continue;
            if (sys.oid_of(sup(s, xo)) < 0) return false;
        }
        return true;
    };
    for (int a = 0; a < O; ++a) {
        OSep r = sys.oriented(a);
        for (int b = 0; b < O; ++b) {
            OSep rp = sys.oriented(b);
            if (!leq(r, rp)) continue;
            ++rep.pairs;
            if (sample_budget > 0 && rep.checked >= sample_budget) return rep;
            if (r.A == r.B || rp.A == rp.B || sys.trivial(r) ||
                sys.trivial(rp.reversed()) || family_member(g, {r}, F).member ||
                family_member(g, {rp}, F).member) {
                ++rep.skipped;
                continue;
            }
            ++rep.checked;
            std::vector<OSep> cand;
            for (int c = 0; c < O; ++c) {
                OSep s = sys.oriented(c);
                if (leq(r, s) && leq(s, rp)) cand.push_back(s);
            }
            std::sort(cand.begin(), cand.end(), [](const OSep& x, const OSep& y) {
                return std::make_tuple(x.order(), x.A, x.B) <
                       std::make_tuple(y.order(), y.A, y.B);
            });
            bool found = false;
            for (const OSep& s : cand)
                if (emulates(s, r) && emulates(s.reversed(), rp.reversed())) {
                    found = true;
                    break;
                }
            if (!found && rep.failures.size() < 200) rep.failures.push_back({r, rp});
        }
    }
    return rep;
}

}  // namespace seps
