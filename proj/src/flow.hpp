#pragma once

#include <vector>

#include "graph.hpp"

namespace seps {

struct DisjointPaths {
    int count = 0;
    std::vector<std::vector<int>> paths;  // vertex lists, source first
};

// Maximum family of paths from `sources` to `targets` inside G[allowed] that
// are vertex-disjoint outside `targets`; each source starts at most one path.
// With cap_targets, target vertices are also used by at most one path each
// (classic Menger form). Paths stop at their first target vertex. A vertex in
// sources ∩ targets yields a trivial one-vertex path.
DisjointPaths vertex_disjoint_paths(const Graph& g, VSet allowed, VSet sources,
                                    VSet targets, bool cap_targets = true,
                                    int limit = 64);

}  // namespace seps
