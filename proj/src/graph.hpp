#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace seps {

// Vertex sets are bitmasks; everything in this repo is capped at 64 vertices.
using VSet = std::uint64_t;

inline int vs_size(VSet s) { return __builtin_popcountll(s); }
inline bool vs_has(VSet s, int v) { return (s >> v) & VSet{1}; }
inline VSet vs_bit(int v) { return VSet{1} << v; }
inline int vs_min(VSet s) { return __builtin_ctzll(s); }  // s != 0

inline std::vector<int> vs_list(VSet s) {
    std::vector<int> out;
    for (VSet t = s; t; t &= t - 1) out.push_back(vs_min(t));
    return out;
}

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Finite simple graph with dense 0-based vertex indices. Immutable once built
// (the loaders and generators are the only writers), so all queries are pure.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }
    VSet vertices() const { return n_ == 64 ? ~VSet{0} : (VSet{1} << n_) - 1; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    VSet adj(int v) const { return adj_[v]; }
    bool has_edge(int u, int v) const { return u < n_ && vs_has(adj_[u], v); }

    // Rejects loops, duplicates and out-of-range endpoints.
    void add_edge(int u, int v);

    // N(S): all neighbours of S outside S.
    VSet neighbourhood(VSet s) const;

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;  // stored with u < v, insertion order
    std::vector<VSet> adj_;
};

// Edge-list format: first line "n m", then m lines "u v" (0-based, ASCII).
Graph load_edge_list(const std::string& text);
// graph6 (single line, no header bytes beyond the standard ">>graph6<<" prefix).
Graph load_graph6(const std::string& text);
// Auto-detects: a leading digit means edge-list, anything else graph6.
Graph load_graph(const std::string& text, const std::string& format = "auto");
std::string emit_edge_list(const Graph& g);

// Connected components of G - deleted. With tight_only, keeps only components
// K with N(K) equal to the deleted set exactly.
std::vector<VSet> components(const Graph& g, VSet deleted, bool tight_only = false);

bool is_connected(const Graph& g);

// Stable content hash of (n, canonical edge list); used to tie certificates
// to the graph they were computed from.
std::uint64_t graph_hash(const Graph& g);

}  // namespace seps
