#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "orientation.hpp"
#include "separation.hpp"

namespace seps {

// S-tree (T, alpha): a finite tree with an oriented separation per oriented
// edge, alpha(t', t) pointing towards t; alpha(t, t') is its reverse.
struct STree {
    int nodes = 1;
    std::vector<std::pair<int, int>> edges;        // u < v
    std::map<std::pair<int, int>, OSep> alpha;     // both orientations

    std::vector<int> neighbours(int t) const;
    int degree(int t) const { return static_cast<int>(neighbours(t).size()); }
    // Star associated with t: {alpha(t', t) : t' ~ t}, deduplicated.
    std::vector<OSep> star_at(int t) const;
};

struct TreeDec {
    int nodes = 1;
    std::vector<std::pair<int, int>> edges;  // u < v
    std::vector<VSet> bags;                  // one per node

    std::vector<int> neighbours(int t) const;
};

// Separation induced by the oriented tree edge (t0, t1): small side is the
// union of bags on the t0 side.
OSep td_edge_separation(const TreeDec& td, int t0, int t1);

struct STreeCheck {
    bool valid = false;   // tree shape + alpha reversal discipline + separations
    bool over_f = false;  // every node's star lies in F
    std::string error;
    std::vector<OSep> leaf_separations;  // alpha(x, t) for each leaf x
    std::vector<MemberVerdict> node_verdicts;
    int max_degree = 0;
    // On finite trees the exhaustiveness condition on rays holds vacuously.
    bool weak_exhaustiveness_vacuous = true;
};
STreeCheck validate_stree(const Graph& g, const STree& st, const FamilySpec& F);

struct TDCheck {
    bool valid = false;
    std::string error;
    int classic_width = -1;  // max bag size - 1
    int adhesion = 0;        // max adhesion-set size
    bool refines_other = false;  // induced separations of other ⊆ ours
};
TDCheck validate_td(const Graph& g, const TreeDec& td, const TreeDec* other = nullptr);

// Width by bag size: do all bags have at most k vertices?
bool bags_at_most(const TreeDec& td, int k);

// TD of adhesion < k -> S-tree with the induced separations. Throws if some
// adhesion set has >= k vertices or the decomposition is invalid.
STree td_to_stree(const Graph& g, const TreeDec& td, int k);

// S-tree whose node labels form stars -> TD with bags int(sigma_t). Throws if
// the result fails the tree-decomposition axioms.
TreeDec stree_to_td(const Graph& g, const STree& st);

struct TwResult {
    int tw = -1;
    TreeDec td;
    std::vector<int> elimination_order;
};
// Exact treewidth by dynamic programming over vertex subsets, with a witness
// decomposition of exactly that width. Refuses graphs above the bound.
TwResult exact_treewidth(const Graph& g, int max_n = 16);

// Glues per-node S-trees along a tree-decomposition: pieces replace their TD
// node, matching leaf edges of adjacent pieces are identified pairwise; nodes
// without a piece contribute the one-level star tree of their TD node.
STree glue_pieces(const Graph& g, const TreeDec& td, int k,
                  const std::map<int, STree>& pieces);

// Deletes subtrees so that distinct neighbours of every node carry distinct
// inward separations; surviving node stars are unchanged as sets.
STree prune_irredundant(const STree& st);

// Contracts the given tree edges, unioning bags over branch sets.
TreeDec contract_td(const TreeDec& td, const std::set<std::pair<int, int>>& f_edges);

}  // namespace seps
