#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "orientation.hpp"
#include "streedec.hpp"

namespace seps {

// Raised when two certified results contradict each other. Never caught
// internally: it means a bug in the engine, not bad input.
struct soundness_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Outcome of the exactness engine: either a consistent F-avoiding orientation
// of the system, or an S-tree over F. Exactly one exists; the engine verifies
// both sides and raises soundness_error if they agree.
struct DualityCertificate {
    enum class Verdict { Tangle, STree };

    Verdict verdict = Verdict::Tangle;
    SepSystem system;
    std::vector<std::uint8_t> tangle_side;  // Verdict::Tangle
    STree stree;                            // Verdict::STree
    std::vector<OSep> hang_set;             // oriented separations marked buildable
    std::string provenance;

    Orientation tangle() const { return Orientation{&system, tangle_side}; }
};

// Least-fixed-point engine: an oriented separation hangs if some member of F
// contains it with all other elements' reverses already hanging; an S-tree
// exists iff the empty star lies in F or some separation hangs both ways.
// The tree is assembled by unwinding the hang witnesses; the tangle side is
// an exhaustive backtracking search. Both verdicts re-validate.
DualityCertificate duality_on(SepSystem sys, const FamilySpec& F);
DualityCertificate duality(const Graph& g, int k, const FamilySpec& F);

struct UkTreeResult {
    bool built = false;
    int tw = -1;
    std::string reason;  // refusal, when !built
    STree stree;
};
// Width route to a tree over the low-interior star family: treewidth <= k-2
// yields a decomposition with bags of at most k-1 vertices whose equal-bag
// edges are contracted, then converted. Independent of the hang engine.
UkTreeResult uk_tree_via_treewidth(const Graph& g, int k);

// Certificate that a star element may be lifted out of the restricted system:
// either a left-robustness witness or an F-avoiding k-profile to which the
// element's reverse is closely related.
struct LiftWitness {
    enum class Kind { Robust, CloselyRelated };
    Kind kind = Kind::Robust;
    OSep s;
    RobustWitness robust;                     // Kind::Robust
    std::vector<std::uint8_t> profile_side;   // Kind::CloselyRelated, full system
};

struct RefineStarResult {
    bool refused = false;
    std::string reason;
    DualityCertificate::Verdict verdict = DualityCertificate::Verdict::Tangle;
    SepSystem full_system;                  // all separations of order < k
    std::vector<std::uint8_t> tangle_side;  // Verdict::Tangle, over full_system
    STree stree;                            // Verdict::STree
    std::vector<LiftWitness> witnesses;     // one per sigma element
    int ell = 0;

    Orientation tangle() const { return Orientation{&full_system, tangle_side}; }
};
// Runs the engine on the system restricted to separations pointed-nested with
// sigma, against F plus the reversed-singleton stars of sigma. A restricted
// tangle is extended element by element to the full system; a restricted tree
// is returned directly and carries every sigma element as a leaf separation.
// Each element must come with a lift certificate, else refusal.
RefineStarResult refine_inessential_star(const Graph& g, int k, const FamilySpec& F,
                                         const std::vector<OSep>& sigma);

struct ExtendMode {
    enum class Kind { CloselyRelated, Robust };
    Kind kind = Kind::CloselyRelated;
    Orientation profile;   // reverse(s) is closely related to it
    RobustWitness robust;
    int ell = 0;
};
// Lifts a tangle of the system restricted by sigma to the system restricted
// by sigma minus {s} (the caller passes that target system). Separations
// nested with s keep their orientation or orient towards s; crossing ones are
// decided through a corner of order < k. The result is re-validated as a
// consistent Fprime-avoiding orientation containing tau.
Orientation extend_tangle(const Graph& g, const Orientation& tau, const OSep& s,
                          const ExtendMode& mode, const SepSystem& target,
                          const FamilySpec& Fprime);

struct TreeOfTangles {
    SepSystem system;
    std::vector<std::vector<std::uint8_t>> tangle_sides;
    TreeDec td;
    std::vector<int> home;  // node of td at which tangle i lives

    int count() const { return static_cast<int>(tangle_sides.size()); }
    Orientation tangle(int i) const { return Orientation{&system, tangle_sides[i]}; }
};
// A tree-decomposition every induced separation of which efficiently
// distinguishes two k-tangles, with any two k-tangles distinguished. Built by
// greedy selection of efficient distinguishers, uncrossed via corners.
TreeOfTangles build_tree_of_tangles(const Graph& g, int k);

struct RefineToTResult {
    bool refused = false;
    std::string reason;
    STree stree;
    TreeDec td;
};
// Refines a tangle-distinguishing decomposition so that nodes without a
// resident F-tangle carry stars in F and nodes with one carry a star of
// minimum exclusive interior. The output refines the input.
RefineToTResult refine_tree_of_tangles(const Graph& g, int k, const FamilySpec& F,
                                       const TreeDec& td);

struct MinStarResult {
    bool refused = false;
    std::string reason;
    std::vector<OSep> star;
    int interior_size = -1;  // exhaustive minimum over all tau-exclusive stars
};
// Among all stars inside tau that no other F-tangle contains, finds one of
// minimum interior that lies above sigma and whose elements are all closely
// related to tau. Refuses when sigma itself is not exclusive.
MinStarResult minimize_exclusive_star(const Graph& g, int k, const FamilySpec& F,
                                      const Orientation& tau,
                                      const std::vector<OSep>& sigma);

struct TorsoWidthResult {
    bool ok = false;
    std::string reason;
    Torso torso;
    TreeDec torso_td;  // on torso.graph indices
    int width = -1;
};
// If G has treewidth <= w and sigma is a star of order <= w+1 separations all
// left-robust at the required strength, the torso of sigma inherits a
// width-<= w decomposition, obtained by restricting the refined tree's bags
// to the star interior.
TorsoWidthResult torso_width_check(const Graph& g, int w, const std::vector<OSep>& sigma);

struct SeparabilityReport {
    int pairs = 0;
    int skipped = 0;
    int checked = 0;
    struct Fail {
        OSep r, rp;
    };
    std::vector<Fail> failures;
    bool separable() const { return failures.empty(); }
};
// For comparable non-trivial oriented pairs r <= r', exhibits a separation s
// between them emulating r downwards and reverse(r') upwards, preferring
// minimal order. A budget of 0 checks every pair.
SeparabilityReport check_f_separable(const SepSystem& sys, const FamilySpec& F,
                                     long long sample_budget);

}  // namespace seps
