#include "limits.hpp"

#include <algorithm>
#include <stdexcept>

#include "flow.hpp"

namespace seps {

std::string FamilyDescriptor::name() const {
    switch (kind) {
        case Kind::Grid: return "grid(rows=" + std::to_string(rows) + ")";
        case Kind::RayClique: return "ray+clique(" + std::to_string(clique) + ")";
        case Kind::Edgeless: return "edgeless";
        case Kind::FourColumns: return "four-columns";
    }
    return "?";
}

FamilyDescriptor FamilyDescriptor::grid(int rows) {
    FamilyDescriptor f;
    f.kind = Kind::Grid;
    f.rows = rows;
    f.declared = {1, rows, 0};
    return f;
}
FamilyDescriptor FamilyDescriptor::ray_clique(int clique_size) {
    FamilyDescriptor f;
    f.kind = Kind::RayClique;
    f.clique = clique_size;
    f.declared = {1, 1, 0};
    return f;
}
FamilyDescriptor FamilyDescriptor::edgeless() {
    FamilyDescriptor f;
    f.kind = Kind::Edgeless;
    f.declared = {0, 0, 0};
    return f;
}
FamilyDescriptor FamilyDescriptor::four_columns() {
    FamilyDescriptor f;
    f.kind = Kind::FourColumns;
    f.declared = {1, 4, 0};
    return f;
}

namespace {

TruncatedGraph columns_graph(int rows, int n, bool join_all) {
    TruncatedGraph out;
    out.graph = Graph(rows * n);
    for (int c = 0; c < n; ++c)
        for (int i = 0; i < rows; ++i) {
            int v = c * rows + i;
            if (join_all)
                for (int j = i + 1; j < rows; ++j) out.graph.add_edge(v, c * rows + j);
            else if (i + 1 < rows)
                out.graph.add_edge(v, v + 1);
            if (c + 1 < n) {
                if (join_all)
                    for (int j = 0; j < rows; ++j)
                        out.graph.add_edge(v, (c + 1) * rows + j);
                else
                    out.graph.add_edge(v, v + rows);
            }
        }
    for (int i = 0; i < rows; ++i) out.boundary |= vs_bit((n - 1) * rows + i);
    return out;
}

}  // namespace

TruncatedGraph truncate(const FamilyDescriptor& fam, int n) {
    if (n < fam.min_n)
        throw std::invalid_argument("truncation below the family minimum");
    switch (fam.kind) {
        case FamilyDescriptor::Kind::Grid:
            return columns_graph(fam.rows, n, false);
        case FamilyDescriptor::Kind::FourColumns:
            return columns_graph(4, n, true);
        case FamilyDescriptor::Kind::Edgeless:
            return {Graph(n), 0};
        case FamilyDescriptor::Kind::RayClique: {
            TruncatedGraph out;
            out.graph = Graph(n + fam.clique);
            for (int i = 0; i < n; ++i) out.graph.add_edge(i, i + 1);
            // Clique on vertex 0 plus the appended extras.
            std::vector<int> kv{0};
            for (int i = 0; i < fam.clique - 1; ++i) kv.push_back(n + 1 + i);
            for (std::size_t a = 0; a < kv.size(); ++a)
                for (std::size_t b = a + 1; b < kv.size(); ++b)
                    out.graph.add_edge(kv[a], kv[b]);
            out.boundary = vs_bit(n);
            return out;
        }
    }
    throw std::invalid_argument("unknown family");
}

int embed_vertex(const FamilyDescriptor& fam, int n, int v) {
    if (fam.kind == FamilyDescriptor::Kind::RayClique && v > n) return v + 1;
    return v;
}

EndDegreeProxy end_degree_proxy(const FamilyDescriptor& fam, int n, int k) {
    TruncatedGraph t = truncate(fam, n);
    if (!is_connected(t.graph))
        throw std::invalid_argument("disconnected truncation of " + fam.name());
    EndDegreeProxy out;
    out.k = k > 0 ? k : fam.declared.degree + 1;

    VSet level0 = 0;
    switch (fam.kind) {
        case FamilyDescriptor::Kind::Grid:
            for (int i = 0; i < fam.rows; ++i) level0 |= vs_bit(i);
            break;
        case FamilyDescriptor::Kind::FourColumns:
            for (int i = 0; i < 4; ++i) level0 |= vs_bit(i);
            break;
        case FamilyDescriptor::Kind::RayClique:
            level0 = vs_bit(0);
            for (int i = 0; i < fam.clique - 1; ++i) level0 |= vs_bit(n + 1 + i);
            break;
        default:
            break;
    }
    out.disjoint_paths =
        vertex_disjoint_paths(t.graph, t.graph.vertices(), level0, t.boundary).count;

    // Boundary-ward partial orientation: orient separations with exactly one
    // boundary-free strict side towards the boundary.
    SepSystem sys = enumerate_system(t.graph, out.k);
    std::vector<OSep> oriented;
    for (const OSep& m : sys.members()) {
        bool a_free = (m.A & ~m.B & t.boundary) == 0;
        bool b_free = (m.B & ~m.A & t.boundary) == 0;
        if (a_free == b_free) continue;
        oriented.push_back(a_free ? m : m.reversed());
    }
    out.oriented = static_cast<int>(oriented.size());

    out.consistent = true;
    for (std::size_t i = 0; i < oriented.size() && out.consistent; ++i)
        for (std::size_t j = i + 1; j < oriented.size(); ++j)
            if (leq(oriented[i].reversed(), oriented[j]) ||
                leq(oriented[j].reversed(), oriented[i])) {
                out.consistent = false;
                break;
            }

    // Covers by <= 3 elements only ever improve when an element's small side
    // grows, so it suffices to scan the inclusion-maximal small sides.
    std::vector<OSep> mx;
    for (const OSep& a : oriented) {
        bool dominated = false;
        for (const OSep& b : oriented)
            if (a != b && (a.A & ~b.A) == 0 && (!(b.A == a.A) || a < b)) {
                dominated = true;
                break;
            }
        if (!dominated) mx.push_back(a);
    }
    auto covers = [&](std::initializer_list<const OSep*> xs) {
        std::vector<OSep> sigma;
        for (const OSep* x : xs) sigma.push_back(*x);
        return family_member(t.graph, sigma, FamilySpec::tk(out.k)).member;
    };
    out.avoids_tk = true;
    for (std::size_t a = 0; a < mx.size() && out.avoids_tk; ++a) {
        if (covers({&mx[a]})) out.avoids_tk = false;
        for (std::size_t b = a + 1; b < mx.size() && out.avoids_tk; ++b) {
            if (covers({&mx[a], &mx[b]})) out.avoids_tk = false;
            for (std::size_t c = b + 1; c < mx.size() && out.avoids_tk; ++c)
                if (covers({&mx[a], &mx[b], &mx[c]})) out.avoids_tk = false;
        }
    }
    return out;
}

SequenceReport sequence_report(const FamilyDescriptor& fam, int n,
                               const std::vector<OSep>& seq, int expected_order) {
    TruncatedGraph t = truncate(fam, n);
    SequenceReport out;
    out.big_side_core = t.graph.vertices();
    for (std::size_t i = 0; i < seq.size(); ++i) {
        SepCheck c = make_separation(t.graph, seq[i].A, seq[i].B);
        if (!c.valid) {
            out.bad_index = static_cast<int>(i);
            out.error = "label " + std::to_string(i) + ": " + c.error;
            return out;
        }
        if (expected_order >= 0 && c.order != expected_order) {
            out.bad_index = static_cast<int>(i);
            out.error = "label " + std::to_string(i) + ": order " +
                        std::to_string(c.order) + ", expected " +
                        std::to_string(expected_order);
            return out;
        }
        out.orders.push_back(c.order);
        out.big_side_core &= seq[i].B & ~seq[i].A;
    }
    out.strictly_increasing = true;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        if (!lt(seq[i], seq[i + 1])) {
            out.strictly_increasing = false;
            break;
        }
    out.ok = out.strictly_increasing;
    if (!out.strictly_increasing) out.error = "sequence is not strictly increasing";
    return out;
}

std::vector<OSep> builtin_sequence(const FamilyDescriptor& fam, int n) {
    TruncatedGraph t = truncate(fam, n);
    std::vector<OSep> out;
    switch (fam.kind) {
        case FamilyDescriptor::Kind::Grid:
        case FamilyDescriptor::Kind::FourColumns: {
            int rows = fam.kind == FamilyDescriptor::Kind::Grid ? fam.rows : 4;
            for (int c = 1; c < n; ++c) {
                VSet A = 0, B = 0;
                for (int v = 0; v < rows * n; ++v) {
                    if (v / rows <= c) A |= vs_bit(v);
                    if (v / rows >= c) B |= vs_bit(v);
                }
                out.push_back({A, B});
            }
            break;
        }
        case FamilyDescriptor::Kind::RayClique: {
            // Towards the clique: big sides keep the whole of K.
            VSet kset = vs_bit(0);
            for (int i = 0; i < fam.clique - 1; ++i) kset |= vs_bit(n + 1 + i);
            for (int p = n - 1; p >= 0; --p) {
                VSet A = 0;
                for (int v = p + 1; v <= n; ++v) A |= vs_bit(v);
                VSet B = kset;
                for (int v = 0; v <= p + 1; ++v) B |= vs_bit(v);
                out.push_back({A, B});
            }
            break;
        }
        case FamilyDescriptor::Kind::Edgeless:
            break;
    }
    return out;
}

int edgeless_tangle_count(int m, int k) {
    if (k != 1)
        throw std::invalid_argument("only order 1 is meaningful for the edgeless family");
    if (m < 1 || m > 10)
        throw std::invalid_argument("edgeless count supported for 1..10 vertices");
    Graph g(m);
    SepSystem sys = enumerate_system(g, 1);
    return static_cast<int>(find_f_tangles(sys, FamilySpec::tk(1), m + 8).size());
}

}  // namespace seps
