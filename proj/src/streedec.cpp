#include "streedec.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace seps {

namespace {

std::vector<std::vector<int>> adjacency(int nodes,
                                        const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(nodes);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
}

bool is_tree(int nodes, const std::vector<std::pair<int, int>>& edges, std::string* why) {
    if (nodes <= 0) { *why = "no nodes"; return false; }
    for (auto [u, v] : edges)
        if (u < 0 || v < 0 || u >= nodes || v >= nodes || u == v) {
            *why = "edge endpoint out of range";
            return false;
        }
    if (static_cast<int>(edges.size()) != nodes - 1) {
        *why = "edge count is not nodes-1";
        return false;
    }
    auto adj = adjacency(nodes, edges);
    std::vector<char> seen(nodes, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int cnt = 1;
    while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        for (int u : adj[t])
            if (!seen[u]) {
                seen[u] = 1;
                ++cnt;
                stack.push_back(u);
            }
    }
    if (cnt != nodes) { *why = "tree is disconnected"; return false; }
    return true;
}

}  // namespace

std::vector<int> STree::neighbours(int t) const {
    std::vector<int> out;
    for (auto [u, v] : edges) {
        if (u == t) out.push_back(v);
        if (v == t) out.push_back(u);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<OSep> STree::star_at(int t) const {
    std::vector<OSep> out;
    for (int u : neighbours(t)) {
        OSep s = alpha.at({u, t});
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    }
    return out;
}

std::vector<int> TreeDec::neighbours(int t) const {
    std::vector<int> out;
    for (auto [u, v] : edges) {
        if (u == t) out.push_back(v);
        if (v == t) out.push_back(u);
    }
    std::sort(out.begin(), out.end());
    return out;
}

OSep td_edge_separation(const TreeDec& td, int t0, int t1) {
    auto adj = adjacency(td.nodes, td.edges);
    // Collect the side containing t0 when edge {t0, t1} is removed.
    std::vector<char> side(td.nodes, 0);
    std::vector<int> stack{t0};
    side[t0] = 1;
    while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        for (int u : adj[t]) {
            if ((t == t0 && u == t1) || (t == t1 && u == t0)) continue;
            if (!side[u]) {
                side[u] = 1;
                stack.push_back(u);
            }
        }
    }
    VSet A = 0, B = 0;
    for (int t = 0; t < td.nodes; ++t) (side[t] ? A : B) |= td.bags[t];
    return {A, B};
}

STreeCheck validate_stree(const Graph& g, const STree& st, const FamilySpec& F) {
    STreeCheck out;
    if (!is_tree(st.nodes, st.edges, &out.error)) return out;
    for (auto [u, v] : st.edges) {
        auto f = st.alpha.find({u, v}), r = st.alpha.find({v, u});
        if (f == st.alpha.end() || r == st.alpha.end()) {
            out.error = "missing alpha value on a tree edge";
            return out;
        }
        if (f->second.reversed() != r->second) {
            out.error = "alpha is not reversal-consistent";
            return out;
        }
        SepCheck c = make_separation(g, f->second.A, f->second.B);
        if (!c.valid) {
            out.error = "alpha value is not a separation: " + c.error;
            return out;
        }
    }
    if (st.alpha.size() != 2 * st.edges.size()) {
        out.error = "alpha defined on non-edges";
        return out;
    }
    out.valid = true;
    out.over_f = true;
    for (int t = 0; t < st.nodes; ++t) {
        int deg = st.degree(t);
        out.max_degree = std::max(out.max_degree, deg);
        MemberVerdict v = family_member(g, st.star_at(t), F);
        if (!v.member) out.over_f = false;
        out.node_verdicts.push_back(std::move(v));
        if (deg == 1)
            out.leaf_separations.push_back(st.alpha.at({t, st.neighbours(t)[0]}));
    }
    // A one-node tree is over F iff the empty star lies in F; family_member
    // already decided that above via the empty star at the single node.
    return out;
}

TDCheck validate_td(const Graph& g, const TreeDec& td, const TreeDec* other) {
    TDCheck out;
    if (!is_tree(td.nodes, td.edges, &out.error)) return out;
    if (static_cast<int>(td.bags.size()) != td.nodes) {
        out.error = "bag count mismatch";
        return out;
    }
    VSet uni = 0;
    for (VSet b : td.bags) {
        if ((b & ~g.vertices()) != 0) {
            out.error = "bag contains unknown vertices";
            return out;
        }
        uni |= b;
    }
    if (uni != g.vertices()) {
        out.error = "bags do not cover all vertices";
        return out;
    }
    for (auto [u, v] : g.edges()) {
        bool hit = false;
        for (VSet b : td.bags)
            if (vs_has(b, u) && vs_has(b, v)) { hit = true; break; }
        if (!hit) {
            out.error = "edge " + std::to_string(u) + "-" + std::to_string(v) +
                        " lies in no bag";
            return out;
        }
    }
    // Subtree connectivity per vertex.
    auto adj = adjacency(td.nodes, td.edges);
    for (int v = 0; v < g.n(); ++v) {
        int start = -1, have = 0;
        for (int t = 0; t < td.nodes; ++t)
            if (vs_has(td.bags[t], v)) {
                if (start < 0) start = t;
                ++have;
            }
        std::vector<char> seen(td.nodes, 0);
        std::vector<int> stack{start};
        seen[start] = 1;
        int cnt = 1;
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            for (int u : adj[t])
                if (!seen[u] && vs_has(td.bags[u], v)) {
                    seen[u] = 1;
                    ++cnt;
                    stack.push_back(u);
                }
        }
        if (cnt != have) {
            out.error = "bags of vertex " + std::to_string(v) + " are not connected";
            return out;
        }
    }
    out.valid = true;
    for (VSet b : td.bags) out.classic_width = std::max(out.classic_width, vs_size(b) - 1);
    for (auto [u, v] : td.edges)
        out.adhesion = std::max(out.adhesion, vs_size(td.bags[u] & td.bags[v]));
    if (other) {
        std::set<std::pair<VSet, VSet>> ours, theirs;
        auto canon = [](OSep s) {
            OSep c = std::min(s, s.reversed());
            return std::make_pair(c.A, c.B);
        };
        for (auto [u, v] : td.edges) ours.insert(canon(td_edge_separation(td, u, v)));
        for (auto [u, v] : other->edges)
            theirs.insert(canon(td_edge_separation(*other, u, v)));
        out.refines_other = std::includes(ours.begin(), ours.end(), theirs.begin(),
                                          theirs.end());
    }
    return out;
}

bool bags_at_most(const TreeDec& td, int k) {
    for (VSet b : td.bags)
        if (vs_size(b) > k) return false;
    return true;
}

STree td_to_stree(const Graph& g, const TreeDec& td, int k) {
    TDCheck c = validate_td(g, td);
    if (!c.valid) throw std::invalid_argument("invalid tree-decomposition: " + c.error);
    if (c.adhesion >= k)
        throw std::invalid_argument("adhesion " + std::to_string(c.adhesion) +
                                    " is not below " + std::to_string(k));
    STree st;
    st.nodes = td.nodes;
    st.edges = td.edges;
    for (auto [u, v] : td.edges) {
        OSep s = td_edge_separation(td, u, v);
        st.alpha[{u, v}] = s;
        st.alpha[{v, u}] = s.reversed();
    }
    return st;
}

TreeDec stree_to_td(const Graph& g, const STree& st) {
    TreeDec td;
    td.nodes = st.nodes;
    td.edges = st.edges;
    for (int t = 0; t < st.nodes; ++t)
        td.bags.push_back(star_interior(g, st.star_at(t)));
    TDCheck c = validate_td(g, td);
    if (!c.valid)
        throw std::invalid_argument("star interiors do not form a decomposition: " +
                                    c.error);
    return td;
}

namespace {

// Number of vertices outside S+{v} reachable from v through S.
int dp_reach(const Graph& g, VSet S, int v) {
    VSet seen = vs_bit(v), frontier = vs_bit(v), out = 0;
    while (frontier) {
        VSet next = 0;
        for (int u : vs_list(frontier)) next |= g.adj(u);
        next &= ~seen;
        out |= next & ~S;
        frontier = next & S;
        seen |= next;
    }
    return vs_size(out);
}

}  // namespace

TwResult exact_treewidth(const Graph& g, int max_n) {
    int n = g.n();
    if (n > max_n || n > 22)
        throw std::invalid_argument("exact treewidth is limited to " +
                                    std::to_string(std::min(max_n, 22)) + " vertices");
    TwResult res;
    if (n == 0) { res.tw = -1; res.td = TreeDec{1, {}, {0}}; return res; }
    std::size_t full = std::size_t{1} << n;
    std::vector<std::int8_t> f(full, 0);
    std::vector<std::int8_t> pick(full, -1);
    for (std::size_t S = 1; S < full; ++S) {
        int best = 127, who = -1;
        for (int v : vs_list(S)) {
            VSet rest = S & ~vs_bit(v);
            int cand = std::max<int>(f[rest], dp_reach(g, rest, v));
            if (cand < best) { best = cand; who = v; }
        }
        f[S] = static_cast<std::int8_t>(best);
        pick[S] = static_cast<std::int8_t>(who);
    }
    res.tw = f[full - 1];
    // Elimination order: pick[] chooses the vertex eliminated last in S.
    std::vector<int> order(n);
    VSet S = g.vertices();
    for (int i = n - 1; i >= 0; --i) {
        order[i] = pick[S];
        S &= ~vs_bit(order[i]);
    }
    res.elimination_order = order;
    // Build the decomposition along the elimination order with fill-in edges.
    std::vector<VSet> fill(n);
    for (int v = 0; v < n; ++v) fill[v] = g.adj(v);
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    TreeDec td;
    td.nodes = n;
    td.bags.assign(n, 0);
    VSet done = 0;
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        VSet later = fill[v] & ~done;
        td.bags[i] = vs_bit(v) | later;
        for (int a : vs_list(later))
            for (int b : vs_list(later))
                if (a != b) fill[a] |= vs_bit(b), fill[a] &= ~vs_bit(a);
        done |= vs_bit(v);
        if (later != 0) {
            int first = -1;
            for (int u : vs_list(later))
                if (first < 0 || pos[u] < pos[first]) first = u;
            td.edges.emplace_back(std::min(i, pos[first]), std::max(i, pos[first]));
        } else if (i + 1 < n) {
            td.edges.emplace_back(i, i + 1);  // keep the tree connected
        }
    }
    TDCheck c = validate_td(g, td);
    if (!c.valid || c.classic_width != res.tw)
        throw std::logic_error("treewidth witness construction failed: " + c.error);
    res.td = std::move(td);
    return res;
}

STree glue_pieces(const Graph& g, const TreeDec& td, int k,
                  const std::map<int, STree>& pieces) {
    TDCheck c = validate_td(g, td);
    if (!c.valid) throw std::invalid_argument("invalid decomposition: " + c.error);
    if (c.adhesion >= k) throw std::invalid_argument("adhesion not below k");
    // Materialize a piece for every node: mapped pieces as given, other nodes
    // as the one-level star tree of their TD neighbourhood.
    struct Piece {
        STree tree;
        int center = -1;  // only for generated star pieces
    };
    std::vector<Piece> ps(td.nodes);
    for (int t = 0; t < td.nodes; ++t) {
        auto it = pieces.find(t);
        if (it != pieces.end()) {
            ps[t].tree = it->second;
        } else {
            auto nb = td.neighbours(t);
            STree star;
            star.nodes = 1 + static_cast<int>(nb.size());
            for (std::size_t i = 0; i < nb.size(); ++i) {
                star.edges.emplace_back(0, static_cast<int>(i) + 1);
                OSep s = td_edge_separation(td, nb[i], t);
                star.alpha[{static_cast<int>(i) + 1, 0}] = s;
                star.alpha[{0, static_cast<int>(i) + 1}] = s.reversed();
            }
            ps[t].tree = std::move(star);
            ps[t].center = 0;
        }
    }
    // Locate, per TD edge {t, t'}, the canonical leaf of piece t whose inward
    // separation is the one induced by (t', t).
    auto find_leaf = [&](int t, int other) {
        OSep want = td_edge_separation(td, other, t);  // = alpha(leaf, nbr)
        const STree& p = ps[t].tree;
        for (int x = 0; x < p.nodes; ++x) {
            if (p.degree(x) != 1) continue;
            int nbr = p.neighbours(x)[0];
            if (p.alpha.at({x, nbr}) == want) return std::make_pair(x, nbr);
        }
        throw std::invalid_argument("piece of node " + std::to_string(t) +
                                    " lacks the required leaf separation");
    };
    // Disjoint union with union-find identification across TD edges.
    std::vector<int> offset(td.nodes, 0);
    int total = 0;
    for (int t = 0; t < td.nodes; ++t) { offset[t] = total; total += ps[t].tree.nodes; }
    std::vector<int> uf(total);
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    std::set<std::pair<int, int>> dropped;  // leaf edges replaced by the join
    for (auto [t1, t2] : td.edges) {
        auto [x1, n1] = find_leaf(t1, t2);
        auto [x2, n2] = find_leaf(t2, t1);
        // Identify leaf x1 with the neighbour n2, and leaf x2 with n1.
        uf[find(offset[t1] + x1)] = find(offset[t2] + n2);
        uf[find(offset[t2] + x2)] = find(offset[t1] + n1);
        dropped.insert({offset[t1] + std::min(x1, n1), offset[t1] + std::max(x1, n1)});
        dropped.insert({offset[t2] + std::min(x2, n2), offset[t2] + std::max(x2, n2)});
    }
    // Collect surviving edges; exactly one copy of each identified pair keeps
    // its label (both carry the same separation by construction).
    std::map<int, int> rename;
    STree out;
    out.nodes = 0;
    auto node_id = [&](int raw) {
        int r = find(raw);
        auto it = rename.find(r);
        if (it != rename.end()) return it->second;
        rename[r] = out.nodes;
        return out.nodes++;
    };
    for (int t = 0; t < td.nodes; ++t) {
        const STree& p = ps[t].tree;
        for (auto [u, v] : p.edges) {
            int ru = offset[t] + u, rv = offset[t] + v;
            if (dropped.count({std::min(ru, rv), std::max(ru, rv)})) continue;
            int a = node_id(ru), b = node_id(rv);
            out.edges.emplace_back(std::min(a, b), std::max(a, b));
            out.alpha[{a, b}] = p.alpha.at({u, v});
            out.alpha[{b, a}] = p.alpha.at({v, u});
        }
    }
    // The dropped leaf edges are re-added once per TD edge, joining the pieces.
    for (auto [t1, t2] : td.edges) {
        auto [x1, n1] = find_leaf(t1, t2);
        int a = node_id(offset[t1] + n1), b = node_id(offset[t1] + x1);
        OSep s = ps[t1].tree.alpha.at({n1, x1});  // (U_{t1}, U_{t2})
        out.edges.emplace_back(std::min(a, b), std::max(a, b));
        out.alpha[{a, b}] = s;
        out.alpha[{b, a}] = s.reversed();
    }
    if (out.nodes == 0) {  // single-node td with a single-node piece
        out.nodes = 1;
    }
    return out;
}

STree prune_irredundant(const STree& st) {
    // Keep, per node and per distinct inward separation, one canonical
    // neighbour: the parent if it matches, else the smallest child; delete the
    // subtrees hanging off the rest. Surviving stars are unchanged as sets.
    std::vector<char> alive(st.nodes, 1);
    std::vector<int> order{0};
    std::vector<int> parent(st.nodes, -1);
    for (std::size_t qi = 0; qi < order.size(); ++qi) {
        int t = order[qi];
        if (!alive[t]) continue;
        std::map<std::pair<VSet, VSet>, int> keep;
        if (parent[t] >= 0) {
            OSep p = st.alpha.at({parent[t], t});
            keep[{p.A, p.B}] = parent[t];
        }
        for (int u : st.neighbours(t)) {
            if (u == parent[t] || !alive[u]) continue;
            OSep s = st.alpha.at({u, t});
            auto [it, fresh] = keep.try_emplace({s.A, s.B}, u);
            if (!fresh) {
                // Drop the whole subtree hanging off t at u.
                std::vector<int> stack{u};
                alive[u] = 0;
                while (!stack.empty()) {
                    int x = stack.back();
                    stack.pop_back();
                    for (int y : st.neighbours(x)) {
                        if (x == u && y == t) continue;
                        if (alive[y]) {
                            alive[y] = 0;
                            stack.push_back(y);
                        }
                    }
                }
            }
        }
        for (int u : st.neighbours(t))
            if (alive[u] && u != parent[t]) {
                parent[u] = t;
                order.push_back(u);
            }
    }
    std::map<int, int> rename;
    STree out;
    out.nodes = 0;
    for (int t = 0; t < st.nodes; ++t)
        if (alive[t]) rename[t] = out.nodes++;
    for (auto [u, v] : st.edges) {
        if (!alive[u] || !alive[v]) continue;
        int a = rename[u], b = rename[v];
        out.edges.emplace_back(std::min(a, b), std::max(a, b));
        out.alpha[{a, b}] = st.alpha.at({u, v});
        out.alpha[{b, a}] = st.alpha.at({v, u});
    }
    if (out.nodes == 0) out.nodes = 1;
    return out;
}

TreeDec contract_td(const TreeDec& td, const std::set<std::pair<int, int>>& f_edges) {
    std::vector<int> uf(td.nodes);
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    for (auto [u, v] : f_edges) uf[find(u)] = find(v);
    std::map<int, int> rename;
    TreeDec out;
    out.nodes = 0;
    for (int t = 0; t < td.nodes; ++t) {
        int r = find(t);
        if (!rename.count(r)) {
            rename[r] = out.nodes++;
            out.bags.push_back(0);
        }
    }
    for (int t = 0; t < td.nodes; ++t) out.bags[rename[find(t)]] |= td.bags[t];
    for (auto [u, v] : td.edges) {
        int a = rename[find(u)], b = rename[find(v)];
        if (a == b) continue;
        out.edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    return out;
}

}  // namespace seps
