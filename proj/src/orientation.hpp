#pragma once

#include <optional>
#include <string>
#include <vector>

#include "separation.hpp"

namespace seps {

// Forbidden families over S⃗_k(G). The built-in kinds follow the standard
// definitions; Explicit carries a literal list of sets; any kind may be
// augmented with extra singleton stars (used by the restricted-duality
// pipeline, which adds {reverse(s)} for the elements s of a star).
struct FamilySpec {
    enum class Kind { Tk, TkStar, Pk, PkPrime, Uk, UkInf, Explicit };

    Kind kind = Kind::TkStar;
    int k = 0;
    std::vector<OSep> singletons;                 // extra singleton stars {x}
    std::vector<std::vector<OSep>> explicit_sets; // for Kind::Explicit

    static FamilySpec tk(int k) { return {Kind::Tk, k, {}, {}}; }
    static FamilySpec tk_star(int k) { return {Kind::TkStar, k, {}, {}}; }
    static FamilySpec pk(int k) { return {Kind::Pk, k, {}, {}}; }
    static FamilySpec pk_prime(int k) { return {Kind::PkPrime, k, {}, {}}; }
    static FamilySpec uk(int k) { return {Kind::Uk, k, {}, {}}; }
    static FamilySpec uk_inf(int k) { return {Kind::UkInf, k, {}, {}}; }
    static FamilySpec explicit_list(int k, std::vector<std::vector<OSep>> sets) {
        return {Kind::Explicit, k, {}, std::move(sets)};
    }

    // F ∪ {{x} : x in xs}.
    FamilySpec with_singletons(const std::vector<OSep>& xs) const;

    // Interior bound m: every member has |int| <= m. -1 if unbounded/unknown.
    int m_bound() const;
    bool stars_only() const { return kind != Kind::Tk && kind != Kind::Pk; }
    std::string name() const;
};

// Does the union of the A-side induced subgraphs equal G (vertices and edges)?
bool small_sides_cover(const Graph& g, const std::vector<OSep>& sigma);

struct MemberVerdict {
    bool member = false;
    std::string reason;
};
MemberVerdict family_member(const Graph& g, const std::vector<OSep>& sigma,
                            const FamilySpec& F, const SepSystem* ambient = nullptr);

// One orientation per member of a system.
struct Orientation {
    const SepSystem* sys = nullptr;
    std::vector<std::uint8_t> side;  // per member: 0 = canonical, 1 = reversed

    OSep at(int i) const {
        const OSep& m = sys->members()[i];
        return side[i] ? m.reversed() : m;
    }
    std::vector<OSep> elements() const;
    bool contains(const OSep& s) const;
    bool operator==(const Orientation& o) const { return side == o.side; }
};

struct OrientationFlags {
    bool consistent = false;
    bool regular = false;
    bool avoids_f = false;
    bool profile = false;
    bool principal = false;
    std::vector<OSep> violating_subset;  // witness when avoids_f is false
};
OrientationFlags check_orientation(const Orientation& O, const FamilySpec& F);

bool is_consistent(const Orientation& O);
// Exact F-avoidance check; fills a violating subset if requested.
bool avoids_family(const Orientation& O, const FamilySpec& F,
                   std::vector<OSep>* violating = nullptr);

// All consistent F-avoiding orientations (up to limit), deterministic order.
// Backtracks over members in (order, lex) sequence with consistency forcing.
std::vector<Orientation> find_f_tangles(const SepSystem& sys, const FamilySpec& F,
                                        int limit = 16);

struct Distinguishers {
    std::vector<int> members;   // members oriented oppositely
    std::vector<int> efficient; // the minimum-order ones among them
};
Distinguishers distinguishers(const Orientation& a, const Orientation& b);

// At least one of the two is principal, or both are non-principal but some
// X ⊆ V lets one orient every component of G - X inwards while the other
// orients some component of G - X outwards.
bool combinatorially_distinguishable(const Orientation& a, const Orientation& b);

// Does {A,B} distinguish a and b efficiently (no smaller-order member does)?
bool distinguishes_efficiently(const Orientation& a, const Orientation& b, int member);

// s in O and every infimum with a member of O has order < k.
bool closely_related(const OSep& s, const Orientation& O);

struct ShiftResult {
    bool emulates = false;
    std::vector<OSep> shifted;  // {s ∨ t} ∪ {rev(s) ∧ t' : t' in sigma \ {t}}
};
// Preconditions checked: s >= r, t in sigma, t >= r. Throws on violation.
ShiftResult emulate_and_shift(const OSep& s, const OSep& r, const SepSystem& sys,
                              const std::vector<OSep>& sigma, const OSep& t);

// Principality: for every X with |X| < k some component K of G - X has
// (V(G-K), V(K) ∪ X) in O.
bool is_principal(const Orientation& O);

}  // namespace seps
