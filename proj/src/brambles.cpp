#include "brambles.hpp"

#include <algorithm>
#include <climits>

namespace seps {

namespace {

bool connected_set(const Graph& g, VSet s) {
    if (!s) return false;
    VSet seen = vs_bit(vs_min(s));
    for (;;) {
        VSet next = seen;
        for (int v : vs_list(seen)) next |= g.adj(v) & s;
        if (next == seen) break;
        seen = next;
    }
    return seen == s;
}

bool touch(const Graph& g, VSet a, VSet b) {
    return (a & b) != 0 || (g.neighbourhood(a) & b) != 0;
}

// Exact minimum hitting set: branch on the vertices of a smallest uncovered
// element.
struct CoverSearch {
    const std::vector<VSet>& elems;
    int best = INT_MAX;
    VSet best_cover = 0;

    void rec(VSet chosen, int size) {
        if (size >= best) return;
        VSet pick = 0;
        int pick_size = INT_MAX;
        for (VSet e : elems)
            if ((e & chosen) == 0 && vs_size(e) < pick_size) {
                pick = e;
                pick_size = vs_size(e);
            }
        if (!pick) {
            best = size;
            best_cover = chosen;
            return;
        }
        for (int v : vs_list(pick)) rec(chosen | vs_bit(v), size + 1);
    }
};

int min_cover(const std::vector<VSet>& elems, VSet* cover) {
    CoverSearch cs{elems};
    cs.rec(0, 0);
    if (cover) *cover = cs.best_cover;
    return cs.best;
}

std::string set_str(VSet s) {
    std::string out = "{";
    for (int v : vs_list(s)) out += std::to_string(v) + ",";
    if (out.back() == ',') out.pop_back();
    return out + "}";
}

}  // namespace

BrambleCheck bramble_order(const Graph& g, const Bramble& b) {
    BrambleCheck out;
    if (b.elements.empty()) {
        out.reason = "no elements";
        return out;
    }
    for (VSet e : b.elements) {
        if ((e & ~g.vertices()) != 0 || !connected_set(g, e)) {
            out.reason = "element " + set_str(e) + " is not a connected vertex set";
            return out;
        }
    }
    for (std::size_t i = 0; i < b.elements.size(); ++i)
        for (std::size_t j = i + 1; j < b.elements.size(); ++j)
            if (!touch(g, b.elements[i], b.elements[j])) {
                out.reason = "elements " + set_str(b.elements[i]) + " and " +
                             set_str(b.elements[j]) + " do not touch";
                return out;
            }
    out.valid = true;
    out.order = min_cover(b.elements, &out.cover);
    return out;
}

BrambleTangleResult bramble_to_tangle(const Graph& g, int k, const Bramble& b) {
    BrambleTangleResult out;
    BrambleCheck c = bramble_order(g, b);
    if (!c.valid) {
        out.refused = true;
        out.reason = "not a bramble: " + c.reason;
        return out;
    }
    if (c.order < k) {
        out.refused = true;
        out.reason = "bramble order " + std::to_string(c.order) + " is below " +
                     std::to_string(k);
        return out;
    }
    out.system = enumerate_system(g, k);
    out.side.assign(out.system.size(), 0);
    for (int i = 0; i < out.system.size(); ++i) {
        const OSep& m = out.system.members()[i];
        if (m.A == m.B) continue;  // degenerate, orientation immaterial
        auto holds = [&](VSet strict) {
            for (VSet e : b.elements)
                if ((e & ~strict) == 0) return true;
            return false;
        };
        bool big = holds(m.B & ~m.A), small = holds(m.A & ~m.B);
        if (big == small)
            throw soundness_error("separation " + set_str(m.A) + "/" + set_str(m.B) +
                                  (big ? " has bramble elements on both sides"
                                       : " has no side holding a bramble element"));
        out.side[i] = big ? 0 : 1;
    }
    Orientation t = out.tangle();
    if (!is_consistent(t) || !avoids_family(t, FamilySpec::uk(k)))
        throw soundness_error("bramble orientation fails tangle re-validation");
    return out;
}

Bramble tangle_to_bramble(const Graph& g, int k, const Orientation& tau) {
    if (tau.sys->k() != k || !is_consistent(tau) ||
        !avoids_family(tau, FamilySpec::uk(k)))
        throw std::invalid_argument(
            "input is not a consistent low-interior-avoiding orientation of order " +
            std::to_string(k));

    std::vector<OSep> elems;
    for (const OSep& e : tau.elements())
        if (e.A != e.B) elems.push_back(e);
    Bramble out;
    for (const OSep& s : elems) {
        bool maximal = true;
        for (const OSep& t : elems)
            if (t != s && leq(s, t)) { maximal = false; break; }
        if (!maximal) continue;

        VSet big = s.B & ~s.A;
        if (!big)
            throw soundness_error("maximal element " + set_str(s.A) + "/" +
                                  set_str(s.B) + " has an empty strict big side");
        VSet U = vs_bit(vs_min(big));
        for (;;) {
            VSet uncovered = 0;
            for (int x : vs_list(s.A & s.B))
                if ((g.adj(x) & U) == 0) uncovered |= vs_bit(x);
            if (!uncovered) break;
            VSet target = 0;
            for (int x : vs_list(uncovered)) target |= g.adj(x);
            target &= big;
            if (!target)
                throw soundness_error("separator vertex of " + set_str(s.A) + "/" +
                                      set_str(s.B) +
                                      " has no neighbour in the strict big side");
            VSet frontier = g.neighbourhood(U) & big;
            if (VSet direct = frontier & target) {
                U |= vs_bit(vs_min(direct));
                continue;
            }
            // No frontier vertex helps directly; step towards the targets
            // along the smallest-index vertex that shrinks the distance.
            std::vector<int> dist(64, -1);
            std::vector<int> queue;
            for (int v : vs_list(target)) {
                dist[v] = 0;
                queue.push_back(v);
            }
            for (std::size_t h = 0; h < queue.size(); ++h)
                for (int w : vs_list(g.adj(queue[h]) & big))
                    if (dist[w] < 0) {
                        dist[w] = dist[queue[h]] + 1;
                        queue.push_back(w);
                    }
            int pick = -1, pd = INT_MAX;
            for (int v : vs_list(frontier))
                if (dist[v] >= 0 && dist[v] < pd) { pd = dist[v]; pick = v; }
            if (pick < 0)
                throw soundness_error("strict big side of " + set_str(s.A) + "/" +
                                      set_str(s.B) + " is not connected enough");
            U |= vs_bit(pick);
        }
        if (std::find(out.elements.begin(), out.elements.end(), U) ==
            out.elements.end())
            out.elements.push_back(U);
    }

    BrambleCheck c = bramble_order(g, out);
    if (!c.valid)
        throw soundness_error("grown sets are not a bramble: " + c.reason);
    if (c.order < k)
        throw soundness_error("grown bramble has order " + std::to_string(c.order) +
                              " < " + std::to_string(k));
    return out;
}

namespace {

// DFS over connected sets in canonical order. Cover number is monotone in
// the element set, so a family already needing >= k cover vertices wins and
// a family whose union with all still-compatible sets needs fewer loses.
struct BrambleSearch {
    const Graph& g;
    const std::vector<VSet>& sets;
    int k;
    std::vector<VSet> cur;
    Bramble* witness;
    bool found = false;

    void rec(int from, std::vector<char>& allowed) {
        if (found) return;
        if (!cur.empty() && min_cover(cur, nullptr) >= k) {
            found = true;
            if (witness) witness->elements = cur;
            return;
        }
        std::vector<VSet> all = cur;
        for (int j = from; j < static_cast<int>(sets.size()); ++j)
            if (allowed[j]) all.push_back(sets[j]);
        if (all.empty() || min_cover(all, nullptr) < k) return;
        for (int j = from; j < static_cast<int>(sets.size()) && !found; ++j) {
            if (!allowed[j]) continue;
            std::vector<char> next(allowed);
            for (int x = 0; x < static_cast<int>(sets.size()); ++x)
                if (next[x] && x != j && !touch(g, sets[j], sets[x])) next[x] = 0;
            cur.push_back(sets[j]);
            rec(j + 1, next);
            cur.pop_back();
            allowed[j] = 0;
        }
    }
};

}  // namespace

bool exists_bramble_of_order(const Graph& g, int k, Bramble* witness) {
    if (g.n() > 6)
        throw std::invalid_argument("exhaustive bramble search is capped at 6 vertices");
    if (k <= 0) return true;
    std::vector<VSet> sets;
    for (VSet s = 1; s <= g.vertices(); ++s)
        if ((s & ~g.vertices()) == 0 && connected_set(g, s)) sets.push_back(s);
    BrambleSearch bs{g, sets, k, {}, witness};
    std::vector<char> allowed(sets.size(), 1);
    bs.rec(0, allowed);
    return bs.found;
}

EquivalenceReport equivalence_report(const Graph& g, int k) {
    if (g.n() > 6)
        throw std::invalid_argument("equivalence report is capped at 6 vertices");
    EquivalenceReport out;
    out.system = enumerate_system(g, k);

    auto tangles = find_f_tangles(out.system, FamilySpec::uk(k), 1);
    out.has_tangle = !tangles.empty();
    if (out.has_tangle) out.tangle_side = tangles[0].side;

    out.has_bramble = exists_bramble_of_order(g, k, &out.bramble);

    DualityCertificate cert = duality(g, k, FamilySpec::uk(k));
    out.no_uk_tree = cert.verdict == DualityCertificate::Verdict::Tangle;
    if (!out.no_uk_tree) out.stree = std::move(cert.stree);

    out.tw = exact_treewidth(g).tw;
    out.tw_at_least = out.tw >= k - 1;

    if (out.has_bramble != out.has_tangle || out.no_uk_tree != out.has_tangle ||
        out.tw_at_least != out.has_tangle)
        throw soundness_error(
            "equivalence broken: tangle=" + std::to_string(out.has_tangle) +
            " bramble=" + std::to_string(out.has_bramble) +
            " no-tree=" + std::to_string(out.no_uk_tree) +
            " tw>=k-1=" + std::to_string(out.tw_at_least));
    return out;
}

}  // namespace seps
