#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"

namespace seps {

// Oriented separation (A, B). A is the "small" side: A \ B is the strict small
// side, B \ A the strict big side, A & B the separator.
struct OSep {
    VSet A = 0, B = 0;

    int order() const { return vs_size(A & B); }
    VSet separator() const { return A & B; }
    OSep reversed() const { return {B, A}; }

    friend bool operator==(const OSep&, const OSep&) = default;
    // Lexicographic; used only for canonical tie-breaks, not the separation order.
    friend auto operator<=>(const OSep&, const OSep&) = default;
};

// (A,B) <= (C,D) iff A ⊆ C and B ⊇ D.
inline bool leq(const OSep& r, const OSep& s) {
    return (r.A & ~s.A) == 0 && (s.B & ~r.B) == 0;
}
inline bool lt(const OSep& r, const OSep& s) { return leq(r, s) && r != s; }
inline OSep inf(const OSep& r, const OSep& s) { return {r.A & s.A, r.B | s.B}; }
inline OSep sup(const OSep& r, const OSep& s) { return {r.A | s.A, r.B & s.B}; }

// Nested = some orientations are comparable; the four checks below cover all
// orientation pairs (the others follow by reversal antisymmetry).
inline bool nested(const OSep& r, const OSep& s) {
    return leq(r, s) || leq(s, r) || leq(r, s.reversed()) || leq(s.reversed(), r);
}
inline bool crossing(const OSep& r, const OSep& s) { return !nested(r, s); }

// Validation + classification of a candidate pair of sides.
struct SepCheck {
    bool valid = false;
    std::pair<int, int> witness_edge{-1, -1};  // a strict-side crossing edge, if any
    std::string error;
    OSep s;
    int order = 0;
    bool proper = false;
    bool left_tight = false;   // some component of G[A\B] has neighbourhood exactly A∩B
    bool right_tight = false;
    bool tight = false;
};
SepCheck make_separation(const Graph& g, VSet A, VSet B);
bool is_separation(const Graph& g, VSet A, VSet B);

struct CornerBox {
    OSep infimum, supremum;
    OSep corners[4];  // {A∩C,B∪D}, {A∪C,B∩D}, {B∩C,A∪D}, {B∪C,A∩D}
    bool order_sum_ok = false;  // |r∧s| + |r∨s| == |r| + |s|, exact
};
CornerBox corner_box(const OSep& r, const OSep& s);

// The set S_k(G) of separations of order < k, optionally restricted to those
// nested with a star sigma in the "pointed" sense: for every s in sigma,
// s <= r or s <= r.reversed().
class SepSystem {
public:
    SepSystem() = default;
    SepSystem(const Graph* g, int k, std::vector<OSep> members, std::vector<OSep> sigma);

    const Graph& graph() const { return *g_; }
    int k() const { return k_; }
    int size() const { return static_cast<int>(mem_.size()); }  // unoriented members
    const std::vector<OSep>& members() const { return mem_; }
    const std::vector<OSep>& sigma() const { return sigma_; }
    bool restricted() const { return !sigma_.empty(); }

    // Oriented ids: member i has orientations 2i (canonical) and 2i+1 (reverse).
    // Degenerate members with A == B have a single orientation, id 2i.
    int osize() const { return 2 * size(); }
    OSep oriented(int oid) const {
        const OSep& m = mem_[oid >> 1];
        return (oid & 1) ? m.reversed() : m;
    }
    int rev(int oid) const {
        const OSep& m = mem_[oid >> 1];
        return m.A == m.B ? oid : (oid ^ 1);
    }
    // -1 if the oriented separation is not in the system.
    int oid_of(const OSep& s) const;
    int member_of(const OSep& s) const;  // unoriented lookup, -1 if absent

    // r is trivial in this system: some member s != r with r < s and r < s.reversed().
    bool trivial(const OSep& r) const;

private:
    const Graph* g_ = nullptr;
    int k_ = 0;
    std::vector<OSep> mem_;  // canonical orientation (min of the two), sorted by (order, A, B)
    std::vector<OSep> sigma_;
    std::map<std::pair<VSet, VSet>, int> index_;  // oriented -> oid
};

// Enumerates S_k(G) by iterating separators X (|X| < k) and bipartitions of the
// components of G - X; with sigma, keeps only members nested with sigma in the
// pointed sense above.
SepSystem enumerate_system(const Graph& g, int k,
                           const std::vector<OSep>& sigma = {});

struct CompareResult {
    bool leq = false, geq = false, nested = false, crossing = false;
    bool r_trivial_in_system = false;
};
CompareResult compare(const OSep& r, const OSep& s, const SepSystem& system);

// ---- Stars ----

// Pairwise (A,B) <= (D,C) for distinct elements; (V,V) excluded.
bool is_star(const Graph& g, const std::vector<OSep>& sigma,
             std::pair<OSep, OSep>* offending = nullptr);

// Intersection of big sides; V for the empty star.
VSet star_interior(const Graph& g, const std::vector<OSep>& sigma);

struct Torso {
    Graph graph;                 // on interior vertices, re-indexed 0..n-1
    std::vector<int> vertex_of;  // torso index -> original vertex
    VSet interior = 0;           // in original indices
};
Torso star_torso(const Graph& g, const std::vector<OSep>& sigma);

struct StarOps {
    bool is_star = false;
    std::pair<OSep, OSep> offending;
    VSet interior = 0;
    Torso torso;
    bool in_u_k = false;  // against the order bound passed in
};
StarOps star_ops(const Graph& g, const std::vector<OSep>& sigma, int k);

// Number of unoriented separations (of any order) of a graph; exponential in n,
// used for the restricted-system size bound on torsos only.
long long count_all_separations(const Graph& g);

// ---- Robustness ----

struct RobustWitness {
    VSet U = 0;
    // One path per separator vertex x (in vs_list order of A∩B): vertex lists,
    // each ending in x, pairwise disjoint, inside G[A].
    std::vector<std::vector<int>> anchor_paths;
    // Per separator vertex x: ell U-P_x paths in G[(A\B) ∪ {x}] that pairwise
    // meet at most in endvertices lying on P_x.
    std::vector<std::vector<std::vector<int>>> fans;
};

struct RobustResult {
    enum Kind { Witness, Impossible, RefusedWithinBudget } kind = RefusedWithinBudget;
    std::string reason;
    RobustWitness witness;  // valid iff kind == Witness
};

// Searches candidate hub sets U and anchor-path families, certifying each fan
// with a unit-vertex-capacity flow. "Impossible" is only reported for the
// trivially infeasible case ell > |A|; other failures are budget refusals.
RobustResult left_robust(const Graph& g, const OSep& s, int ell);

// Re-checks a claimed witness from scratch (used by the certificate verifier).
bool verify_left_robust(const Graph& g, const OSep& s, int ell, const RobustWitness& w,
                        std::string* why = nullptr);

}  // namespace seps
