#include "graph.hpp"

#include <algorithm>
#include <sstream>

namespace seps {

Graph::Graph(int n) : n_(n), adj_(n, 0) {
    if (n < 0 || n > 64) throw ParseError("vertex count out of range (0..64): " + std::to_string(n));
}

void Graph::add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw ParseError("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
    if (u == v) throw ParseError("self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    if (vs_has(adj_[u], v))
        throw ParseError("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    adj_[u] |= vs_bit(v);
    adj_[v] |= vs_bit(u);
    edges_.emplace_back(u, v);
}

VSet Graph::neighbourhood(VSet s) const {
    VSet out = 0;
    for (VSet t = s; t; t &= t - 1) out |= adj_[vs_min(t)];
    return out & ~s;
}

Graph load_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    };
    if (!next_line()) throw ParseError("empty input");
    std::istringstream head(line);
    int n, m;
    if (!(head >> n >> m)) throw ParseError("line " + std::to_string(lineno) + ": expected header \"n m\"");
    Graph g(n);
    for (int i = 0; i < m; ++i) {
        if (!next_line()) throw ParseError("unexpected end of input: " + std::to_string(m - i) + " edge lines missing");
        std::istringstream es(line);
        int u, v;
        if (!(es >> u >> v)) throw ParseError("line " + std::to_string(lineno) + ": expected edge \"u v\"");
        try {
            g.add_edge(u, v);
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return g;
}

Graph load_graph6(const std::string& text) {
    std::string s = text;
    if (auto p = s.find_first_of("\r\n"); p != std::string::npos) s.resize(p);
    const std::string prefix = ">>graph6<<";
    if (s.rfind(prefix, 0) == 0) s = s.substr(prefix.size());
    if (s.empty()) throw ParseError("empty graph6 input");
    std::size_t pos = 0;
    auto byte = [&](std::size_t i) -> int {
        int c = static_cast<unsigned char>(s[i]);
        if (c < 63 || c > 126) throw ParseError("invalid graph6 byte at position " + std::to_string(i));
        return c - 63;
    };
    long long n;
    if (s[0] != '~') {
        n = byte(0);
        pos = 1;
    } else {
        if (s.size() < 4) throw ParseError("truncated graph6 size field");
        if (s[1] == '~') throw ParseError("graph6 graphs beyond 2^18 vertices are not supported");
        n = (static_cast<long long>(byte(1)) << 12) | (byte(2) << 6) | byte(3);
        pos = 4;
    }
    if (n > 64) throw ParseError("graph6 graph too large (max 64 vertices)");
    Graph g(static_cast<int>(n));
    int bits_needed = static_cast<int>(n * (n - 1) / 2);
    int bit = 0;
    for (int v = 1; v < n; ++v) {
        for (int u = 0; u < v; ++u) {
            std::size_t idx = pos + bit / 6;
            if (idx >= s.size()) throw ParseError("truncated graph6 bit vector");
            if ((byte(idx) >> (5 - bit % 6)) & 1) g.add_edge(u, v);
            ++bit;
        }
    }
    (void)bits_needed;
    return g;
}

Graph load_graph(const std::string& text, const std::string& format) {
    if (format == "edgelist") return load_edge_list(text);
    if (format == "graph6") return load_graph6(text);
    if (format != "auto") throw ParseError("unknown format: " + format);
    std::size_t p = text.find_first_not_of(" \t\r\n");
    if (p != std::string::npos && std::isdigit(static_cast<unsigned char>(text[p])))
        return load_edge_list(text);
    return load_graph6(text);
}

std::string emit_edge_list(const Graph& g) {
    std::ostringstream out;
    out << g.n() << ' ' << g.m() << '\n';
    auto sorted = g.edges();
    std::sort(sorted.begin(), sorted.end());
    for (auto [u, v] : sorted) out << u << ' ' << v << '\n';
    return out.str();
}

std::vector<VSet> components(const Graph& g, VSet deleted, bool tight_only) {
    std::vector<VSet> out;
    VSet todo = g.vertices() & ~deleted;
    while (todo) {
        VSet comp = vs_bit(vs_min(todo));
        for (;;) {
            VSet grown = comp | (g.neighbourhood(comp) & ~deleted);
            if (grown == comp) break;
            comp = grown;
        }
        if (!tight_only || g.neighbourhood(comp) == deleted) out.push_back(comp);
        todo &= ~comp;
    }
    return out;
}

bool is_connected(const Graph& g) {
    return g.n() == 0 || components(g, 0).size() == 1;
}

std::uint64_t graph_hash(const Graph& g) {
    // FNV-1a over the canonical edge list.
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 1099511628211ULL;
        }
    };
    mix(static_cast<std::uint64_t>(g.n()));
    auto sorted = g.edges();
    std::sort(sorted.begin(), sorted.end());
    for (auto [u, v] : sorted) mix((static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v));
    return h;
}

}  // namespace seps
