#pragma once

#include <string>
#include <vector>

#include "duality.hpp"
#include "orientation.hpp"

namespace seps {

// Mutually touching connected vertex sets. Order = size of a minimum cover,
// a vertex set meeting every element.
struct Bramble {
    std::vector<VSet> elements;
};

struct BrambleCheck {
    bool valid = false;
    std::string reason;
    int order = 0;
    VSet cover = 0;  // a minimum cover, when valid
};
BrambleCheck bramble_order(const Graph& g, const Bramble& b);

struct BrambleTangleResult {
    bool refused = false;
    std::string reason;
    SepSystem system;
    std::vector<std::uint8_t> side;

    Orientation tangle() const { return Orientation{&system, side}; }
};
// Orients every separation of order < k towards the strict side holding a
// bramble element; exactly one side does when the bramble has order >= k.
// The result is re-validated as a consistent low-interior-avoiding
// orientation. Refuses brambles of smaller order.
BrambleTangleResult bramble_to_tangle(const Graph& g, int k, const Bramble& b);

// For every maximal element (A,B) of the orientation, grows a connected set
// inside the strict big side that contains its minimum vertex and a neighbour
// of every separator vertex (canonical smallest-index growth). Throws
// invalid_argument unless tau is a consistent U_k-avoiding orientation;
// soundness_error if the grown sets fail to form a bramble of order >= k.
Bramble tangle_to_bramble(const Graph& g, int k, const Orientation& tau);

// Exhaustive search for a bramble of order >= k (branch and bound over
// connected sets; the cover number only grows when elements are added).
// Refuses graphs with more than 6 vertices.
bool exists_bramble_of_order(const Graph& g, int k, Bramble* witness = nullptr);

// Four equivalent assertions, each decided by its own route, plus witnesses.
// Any disagreement raises soundness_error.
struct EquivalenceReport {
    bool has_tangle = false;      // some U_k-avoiding orientation exists
    bool has_bramble = false;     // some bramble of order >= k exists
    bool no_uk_tree = false;      // the duality engine finds no tree over U_k
    bool tw_at_least = false;     // treewidth >= k-1

    SepSystem system;
    std::vector<std::uint8_t> tangle_side;  // when has_tangle
    Bramble bramble;                        // when has_bramble
    STree stree;                            // when !no_uk_tree
    int tw = -1;

    bool all() const { return has_tangle; }
};
EquivalenceReport equivalence_report(const Graph& g, int k);

}  // namespace seps
