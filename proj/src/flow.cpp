#include "flow.hpp"

#include <algorithm>
#include <queue>

namespace seps {

// Unit-capacity max flow on the standard vertex-split network, small enough
// here (<= 130 nodes) that BFS augmentation is plenty.
namespace {

struct Net {
    struct Arc {
        int to, cap;
    };
    std::vector<Arc> arcs;                 // paired: arc i and i^1 are reverses
    std::vector<std::vector<int>> out;

    explicit Net(int nodes) : out(nodes) {}
    void add(int u, int v, int cap) {
        out[u].push_back(static_cast<int>(arcs.size()));
        arcs.push_back({v, cap});
        out[v].push_back(static_cast<int>(arcs.size()));
        arcs.push_back({u, 0});
    }
    bool augment(int s, int t) {
        std::vector<int> pre(out.size(), -1);
        std::queue<int> q;
        q.push(s);
        pre[s] = -2;
        while (!q.empty() && pre[t] == -1) {
            int u = q.front();
            q.pop();
            for (int ai : out[u]) {
                if (arcs[ai].cap > 0 && pre[arcs[ai].to] == -1) {
                    pre[arcs[ai].to] = ai;
                    q.push(arcs[ai].to);
                }
            }
        }
        if (pre[t] == -1) return false;
        for (int v = t; v != s;) {
            int ai = pre[v];
            arcs[ai].cap -= 1;
            arcs[ai ^ 1].cap += 1;
            v = arcs[ai ^ 1].to;
        }
        return true;
    }
};

}  // namespace

DisjointPaths vertex_disjoint_paths(const Graph& g, VSet allowed, VSet sources,
                                    VSet targets, bool cap_targets, int limit) {
    sources &= allowed;
    targets &= allowed;
    DisjointPaths res;
    if (!sources || !targets) return res;

    const int n = g.n();
    // Node ids: in(v) = 2v, out(v) = 2v+1, source = 2n, sink = 2n+1.
    const int S = 2 * n, T = 2 * n + 1;
    const int BIG = 1 << 20;
    Net net(2 * n + 2);
    for (int v = 0; v < n; ++v) {
        if (!vs_has(allowed, v)) continue;
        if (vs_has(targets, v)) {
            // Paths end on first contact with a target.
            net.add(2 * v, T, cap_targets ? 1 : BIG);
        } else {
            net.add(2 * v, 2 * v + 1, 1);
        }
        if (vs_has(sources, v)) net.add(S, 2 * v, 1);
    }
    for (auto [u, v] : g.edges()) {
        if (!vs_has(allowed, u) || !vs_has(allowed, v)) continue;
        if (!vs_has(targets, u)) net.add(2 * u + 1, 2 * v, 1);
        if (!vs_has(targets, v)) net.add(2 * v + 1, 2 * u, 1);
    }
    while (res.count < limit && net.augment(S, T)) ++res.count;

    // Decompose: follow saturated arcs from each used source.
    // used[ai] marks arcs already claimed by an extracted path.
    std::vector<char> used(net.arcs.size(), 0);
    auto flow_of = [&](int ai) { return net.arcs[ai ^ 1].cap; };  // pushed units
    for (int v = 0; v < n && static_cast<int>(res.paths.size()) < res.count; ++v) {
        if (!vs_has(sources, v)) continue;
        bool started = false;
        for (int ai : net.out[S])
            if (net.arcs[ai].to == 2 * v && flow_of(ai) > 0) started = true;
        if (!started) continue;
        std::vector<int> path;
        int node = 2 * v;
        while (node != T) {
            if (node % 2 == 0 && node < 2 * n) path.push_back(node / 2);
            int next = -1;
            for (int ai : net.out[node]) {
                if ((ai & 1) == 0 && flow_of(ai) > used[ai] && net.arcs[ai].to != node) {
                    used[ai] += 1;
                    next = net.arcs[ai].to;
                    break;
                }
            }
            if (next == -1) break;  // should not happen on a valid decomposition
            node = next;
        }
        if (node == T) res.paths.push_back(std::move(path));
    }
    return res;
}

}  // namespace seps
