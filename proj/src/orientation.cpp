#include "orientation.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

namespace seps {

FamilySpec FamilySpec::with_singletons(const std::vector<OSep>& xs) const {
    FamilySpec f = *this;
    for (const OSep& x : xs)
        if (std::find(f.singletons.begin(), f.singletons.end(), x) == f.singletons.end())
            f.singletons.push_back(x);
    return f;
}

int FamilySpec::m_bound() const {
    switch (kind) {
        case Kind::TkStar: return 3 * k - 3;
        case Kind::Uk:
        case Kind::UkInf:
        case Kind::PkPrime: return k - 1;
        default: return -1;
    }
}

std::string FamilySpec::name() const {
    std::string base;
    switch (kind) {
        case Kind::Tk: base = "T_" + std::to_string(k); break;
        case Kind::TkStar: base = "T*_" + std::to_string(k); break;
        case Kind::Pk: base = "P_" + std::to_string(k); break;
        case Kind::PkPrime: base = "P'_" + std::to_string(k); break;
        case Kind::Uk: base = "U_" + std::to_string(k); break;
        case Kind::UkInf: base = "U^inf_" + std::to_string(k); break;
        case Kind::Explicit: base = "explicit"; break;
    }
    if (!singletons.empty()) base += "+" + std::to_string(singletons.size()) + "singl";
    return base;
}

bool small_sides_cover(const Graph& g, const std::vector<OSep>& sigma) {
    VSet uni = 0;
    for (const OSep& s : sigma) uni |= s.A;
    if (uni != g.vertices()) return false;
    for (auto [u, v] : g.edges()) {
        bool hit = false;
        for (const OSep& s : sigma)
            if (vs_has(s.A, u) && vs_has(s.A, v)) { hit = true; break; }
        if (!hit) return false;
    }
    return true;
}

namespace {

bool same_set(const std::vector<OSep>& a, const std::vector<OSep>& b) {
    std::set<OSep> x(a.begin(), a.end()), y(b.begin(), b.end());
    return x == y;
}

// The corner triple {(A,B), (B∩C, A∪D), (B∩D, A∪C)} for r=(A,B), s=(C,D).
std::vector<OSep> corner_triple(const OSep& r, const OSep& s) {
    return {r, OSep{r.B & s.A, r.A | s.B}, OSep{r.B & s.B, r.A | s.A}};
}

}  // namespace

MemberVerdict family_member(const Graph& g, const std::vector<OSep>& sigma,
                            const FamilySpec& F, const SepSystem* ambient) {
    for (const OSep& x : F.singletons)
        if (sigma.size() == 1 && sigma[0] == x) return {true, "augmented singleton"};

    for (const OSep& s : sigma) {
        if (!is_separation(g, s.A, s.B)) return {false, "element is not a separation"};
        if (s.order() >= F.k) return {false, "element order >= k"};
    }

    switch (F.kind) {
        case FamilySpec::Kind::Tk:
            if (sigma.size() > 3) return {false, "more than three elements"};
            if (!small_sides_cover(g, sigma)) return {false, "small sides do not cover G"};
            return {true, "covering set of <= 3 low-order separations"};
        case FamilySpec::Kind::TkStar: {
            if (sigma.size() > 3) return {false, "more than three elements"};
            if (!is_star(g, sigma)) return {false, "not a star"};
            if (!small_sides_cover(g, sigma)) return {false, "small sides do not cover G"};
            return {true, "covering star of <= 3 low-order separations"};
        }
        case FamilySpec::Kind::Pk:
        case FamilySpec::Kind::PkPrime: {
            if (sigma.empty() || sigma.size() > 3) return {false, "wrong size"};
            if (F.kind == FamilySpec::Kind::PkPrime &&
                vs_size(star_interior(g, sigma)) >= F.k)
                return {false, "interior not smaller than k"};
            SepSystem local;
            if (!ambient) { local = enumerate_system(g, F.k); ambient = &local; }
            for (const OSep& r : sigma) {
                for (int oid = 0; oid < ambient->osize(); ++oid) {
                    if (same_set(sigma, corner_triple(r, ambient->oriented(oid))))
                        return {true, "corner triple"};
                }
            }
            return {false, "no generating pair of low-order separations found"};
        }
        case FamilySpec::Kind::Uk: {
            if (!is_star(g, sigma)) return {false, "not a star"};
            if (vs_size(star_interior(g, sigma)) >= F.k)
                return {false, "interior not smaller than k"};
            return {true, "star with interior smaller than k"};
        }
        case FamilySpec::Kind::UkInf:
            return {false, "no finite-interior violations on a finite graph"};
        case FamilySpec::Kind::Explicit:
            for (const auto& s : F.explicit_sets)
                if (same_set(sigma, s)) return {true, "listed"};
            return {false, "not listed"};
    }
    return {false, "unreachable"};
}

std::vector<OSep> Orientation::elements() const {
    std::vector<OSep> out;
    out.reserve(side.size());
    for (int i = 0; i < static_cast<int>(side.size()); ++i) out.push_back(at(i));
    return out;
}

bool Orientation::contains(const OSep& s) const {
    int oid = sys->oid_of(s);
    if (oid < 0) return false;
    int i = oid >> 1;
    const OSep& m = sys->members()[i];
    if (m.A == m.B) return true;
    return side[i] == static_cast<std::uint8_t>(oid & 1);
}

bool is_consistent(const Orientation& O) {
    int n = static_cast<int>(O.side.size());
    for (int i = 0; i < n; ++i) {
        OSep a = O.at(i);
        OSep ra = a.reversed();
        for (int j = i + 1; j < n; ++j) {
            OSep b = O.at(j);
            if (leq(ra, b) || leq(b.reversed(), a)) return false;
        }
    }
    return true;
}

namespace {

// Star compatibility of two oriented separations: {a, b} is a star. The
// degenerate (V, V) cannot lie in a star.
bool star_pair(const OSep& a, const OSep& b, VSet full) {
    if ((a.A == full && a.B == full) || (b.A == full && b.B == full)) return false;
    return a != b && leq(a, b.reversed()) && leq(b, a.reversed());
}

// Exact search for a star with interior < k among `elems`, branch and bound on
// the interior still reachable through the remaining compatible elements.
struct UkSearch {
    const std::vector<OSep>& elems;
    VSet all_vertices;
    int k;
    std::vector<std::vector<int>> compat;
    std::vector<int> chosen, best;
    bool found = false;

    UkSearch(const std::vector<OSep>& e, VSet verts, int k)
        : elems(e), all_vertices(verts), k(k) {
        int n = static_cast<int>(elems.size());
        compat.assign(n, {});
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && star_pair(elems[i], elems[j], all_vertices))
                    compat[i].push_back(j);
    }

    void run() {
        if (vs_size(all_vertices) < k) { found = true; best = {}; return; }  // empty star
        std::vector<char> allowed(elems.size(), 1);
        descend(0, all_vertices, allowed);
    }

    void descend(int from, VSet interior, std::vector<char>& allowed) {
        if (found) return;
        if (vs_size(interior) < k) { found = true; best = chosen; return; }
        VSet reach = interior;
        for (int j = from; j < static_cast<int>(elems.size()); ++j)
            if (allowed[j]) reach &= elems[j].B;
        if (vs_size(reach) >= k) return;
        for (int j = from; j < static_cast<int>(elems.size()); ++j) {
            if (!allowed[j]) continue;
            std::vector<char> next(allowed.begin(), allowed.end());
            for (int x = 0; x < static_cast<int>(elems.size()); ++x)
                if (next[x] && x != j &&
                    std::find(compat[j].begin(), compat[j].end(), x) == compat[j].end())
                    next[x] = 0;
            chosen.push_back(j);
            descend(j + 1, interior & elems[j].B, next);
            chosen.pop_back();
            if (found) return;
            allowed[j] = 0;  // exclude j entirely from this branch on
        }
    }
};

// Covering check for candidate triples/pairs/singletons out of masks.
bool covers(const Graph& g, std::initializer_list<const OSep*> xs) {
    VSet uni = 0;
    for (const OSep* s : xs) uni |= s->A;
    if (uni != g.vertices()) return false;
    for (auto [u, v] : g.edges()) {
        bool hit = false;
        for (const OSep* s : xs)
            if (vs_has(s->A, u) && vs_has(s->A, v)) { hit = true; break; }
        if (!hit) return false;
    }
    return true;
}

// Finds a violating <=3 subset for T_k / T*_k among `elems`; returns indices.
std::optional<std::vector<int>> find_cover_subset(const Graph& g,
                                                  const std::vector<OSep>& elems,
                                                  bool stars_only) {
    int n = static_cast<int>(elems.size());
    VSet full = g.vertices();
    auto sp = [&](const OSep& a, const OSep& b) { return star_pair(a, b, full); };
    for (int i = 0; i < n; ++i) {
        if (stars_only && elems[i].A == elems[i].B && elems[i].A == full) continue;
        if (elems[i].A == full) return std::vector<int>{i};
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if ((elems[i].A | elems[j].A) != full) continue;
            if (stars_only && !sp(elems[i], elems[j])) continue;
            if (covers(g, {&elems[i], &elems[j]})) return std::vector<int>{i, j};
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (stars_only && !sp(elems[i], elems[j])) continue;
            VSet ij = elems[i].A | elems[j].A;
            for (int l = j + 1; l < n; ++l) {
                if ((ij | elems[l].A) != full) continue;
                if (stars_only &&
                    (!sp(elems[i], elems[l]) || !sp(elems[j], elems[l])))
                    continue;
                if (covers(g, {&elems[i], &elems[j], &elems[l]}))
                    return std::vector<int>{i, j, l};
            }
        }
    }
    return std::nullopt;
}

}  // namespace

bool avoids_family(const Orientation& O, const FamilySpec& F,
                   std::vector<OSep>* violating) {
    const Graph& g = O.sys->graph();
    std::vector<OSep> elems = O.elements();

    for (const OSep& x : F.singletons) {
        if (O.contains(x)) {
            if (violating) *violating = {x};
            return false;
        }
    }

    switch (F.kind) {
        case FamilySpec::Kind::Tk:
        case FamilySpec::Kind::TkStar: {
            bool stars = F.kind == FamilySpec::Kind::TkStar;
            if (g.n() == 0) {  // the empty set covers the empty graph
                if (violating) violating->clear();
                return false;
            }
            if (auto sub = find_cover_subset(g, elems, stars)) {
                if (violating) {
                    violating->clear();
                    for (int i : *sub) violating->push_back(elems[i]);
                }
                return false;
            }
            return true;
        }
        case FamilySpec::Kind::Pk:
        case FamilySpec::Kind::PkPrime: {
            for (const OSep& a : elems) {
                for (int oid = 0; oid < O.sys->osize(); ++oid) {
                    auto triple = corner_triple(a, O.sys->oriented(oid));
                    if (!O.contains(triple[1]) || !O.contains(triple[2])) continue;
                    if (F.kind == FamilySpec::Kind::PkPrime &&
                        vs_size(star_interior(g, triple)) >= F.k)
                        continue;
                    if (violating) *violating = triple;
                    return false;
                }
            }
            return true;
        }
        case FamilySpec::Kind::Uk: {
            UkSearch search(elems, g.vertices(), F.k);
            search.run();
            if (search.found) {
                if (violating) {
                    violating->clear();
                    for (int i : search.best) violating->push_back(elems[i]);
                }
                return false;
            }
            return true;
        }
        case FamilySpec::Kind::UkInf:
            return true;
        case FamilySpec::Kind::Explicit: {
            for (const auto& s : F.explicit_sets) {
                bool all = true;
                for (const OSep& x : s)
                    if (!O.contains(x)) { all = false; break; }
                if (all) {
                    if (violating) *violating = s;
                    return false;
                }
            }
            return true;
        }
    }
    return true;
}

bool is_principal(const Orientation& O) {
    const Graph& g = O.sys->graph();
    int k = O.sys->k();
    VSet full = g.vertices();
    for (VSet X = 0; X <= full; ++X) {
        if ((X & ~full) != 0 || vs_size(X) >= k) continue;
        auto comps = components(g, X);
        bool ok = false;
        for (VSet K : comps) {
            if (O.contains(OSep{full & ~K, K | X})) { ok = true; break; }
        }
        if (!ok) return false;
    }
    return true;
}

OrientationFlags check_orientation(const Orientation& O, const FamilySpec& F) {
    OrientationFlags f;
    f.consistent = is_consistent(O);
    f.regular = true;
    VSet full = O.sys->graph().vertices();
    for (const OSep& s : O.elements())
        if (s.A == full) { f.regular = false; break; }
    f.avoids_f = avoids_family(O, F, &f.violating_subset);
    // Profile: no pair (A,B),(C,D) in P with (B∩D, A∪C) also in P.
    f.profile = true;
    std::vector<OSep> elems = O.elements();
    for (const OSep& a : elems) {
        for (const OSep& b : elems) {
            if (O.contains(sup(a, b).reversed())) { f.profile = false; break; }
        }
        if (!f.profile) break;
    }
    f.principal = is_principal(O);
    return f;
}

namespace {

struct TangleSearch {
    const SepSystem& sys;
    const FamilySpec& F;
    const Graph& g;
    int limit;
    std::vector<Orientation> out;
    std::vector<std::uint8_t> side;       // current partial choice
    std::vector<char> forbidden;          // per oriented id
    std::vector<int> assigned;            // member indices in assignment order

    TangleSearch(const SepSystem& s, const FamilySpec& f, int lim)
        : sys(s), F(f), g(s.graph()), limit(lim) {
        side.assign(sys.size(), 0);
        forbidden.assign(sys.osize(), 0);
        for (const OSep& x : F.singletons) {
            int oid = sys.oid_of(x);
            if (oid >= 0) forbidden[oid] = 1;
        }
    }

    OSep chosen(int i) const {
        const OSep& m = sys.members()[i];
        return side[i] ? m.reversed() : m;
    }

    // Violation of F introduced by adding `x` to the current partial set.
    bool breaks_family(const OSep& x) {
        switch (F.kind) {
            case FamilySpec::Kind::Tk:
            case FamilySpec::Kind::TkStar: {
                bool stars = F.kind == FamilySpec::Kind::TkStar;
                VSet full = g.vertices();
                if (x.A == full && !(stars && x.A == x.B)) return true;
                for (std::size_t a = 0; a < assigned.size(); ++a) {
                    OSep p = chosen(assigned[a]);
                    bool xp = !stars || star_pair(x, p, full);
                    if (xp && (x.A | p.A) == full && covers(g, {&x, &p})) return true;
                    if (!xp) continue;
                    for (std::size_t b = a + 1; b < assigned.size(); ++b) {
                        OSep q = chosen(assigned[b]);
                        if ((x.A | p.A | q.A) != full) continue;
                        if (stars && (!star_pair(x, q, full) || !star_pair(p, q, full))) continue;
                        if (covers(g, {&x, &p, &q})) return true;
                    }
                }
                return false;
            }
            case FamilySpec::Kind::Uk: {
                // Any new violating star must contain x.
                std::vector<OSep> pool{x};
                for (int i : assigned) {
                    OSep p = chosen(i);
                    if (star_pair(x, p, g.vertices())) pool.push_back(p);
                }
                UkSearch search(pool, g.vertices(), F.k);
                // Force x into the star: start from interior B_x with x chosen.
                if (vs_size(x.B) < F.k) return true;
                std::vector<char> allowed(pool.size(), 1);
                allowed[0] = 0;
                for (std::size_t j = 1; j < pool.size(); ++j)
                    if (!star_pair(pool[0], pool[j], g.vertices())) allowed[j] = 0;
                search.chosen.push_back(0);
                search.descend(1, x.B, allowed);
                return search.found;
            }
            case FamilySpec::Kind::Pk:
            case FamilySpec::Kind::PkPrime: {
                auto in_partial = [&](const OSep& s) {
                    if (s == x) return true;
                    int oid = sys.oid_of(s);
                    if (oid < 0) return false;
                    int i = oid >> 1;
                    const OSep& m = sys.members()[i];
                    if (m.A != m.B && std::find(assigned.begin(), assigned.end(), i) ==
                                          assigned.end())
                        return false;
                    return m.A == m.B || side[i] == static_cast<std::uint8_t>(oid & 1);
                };
                std::vector<OSep> firsts{x};
                for (int i : assigned) firsts.push_back(chosen(i));
                for (const OSep& a : firsts) {
                    for (int oid = 0; oid < sys.osize(); ++oid) {
                        auto t = corner_triple(a, sys.oriented(oid));
                        if (!in_partial(t[1]) || !in_partial(t[2])) continue;
                        if (a != x && t[1] != x && t[2] != x) continue;
                        if (F.kind == FamilySpec::Kind::PkPrime &&
                            vs_size(star_interior(g, t)) >= F.k)
                            continue;
                        return true;
                    }
                }
                return false;
            }
            case FamilySpec::Kind::UkInf:
                return false;
            case FamilySpec::Kind::Explicit: {
                auto have = [&](const OSep& s) {
                    if (s == x) return true;
                    for (int i : assigned)
                        if (chosen(i) == s) return true;
                    int oid = sys.oid_of(s);
                    if (oid >= 0) {
                        const OSep& m = sys.members()[oid >> 1];
                        if (m.A == m.B) return true;  // degenerate, always present
                    }
                    return false;
                };
                for (const auto& set : F.explicit_sets) {
                    bool all = !set.empty();
                    bool touches = false;
                    for (const OSep& s : set) {
                        if (s == x) touches = true;
                        if (!have(s)) { all = false; break; }
                    }
                    if (all && touches) return true;
                }
                return false;
            }
        }
        return false;
    }

    void recurse(int i) {
        if (static_cast<int>(out.size()) >= limit) return;
        if (i == sys.size()) {
            out.push_back(Orientation{&sys, side});
            return;
        }
        const OSep& m = sys.members()[i];
        int tries = (m.A == m.B) ? 1 : 2;
        for (int s = 0; s < tries; ++s) {
            int oid = 2 * i + s;
            if (forbidden[oid]) continue;
            side[i] = static_cast<std::uint8_t>(s);
            OSep x = chosen(i);
            if (breaks_family(x)) continue;
            // Consistency: forbid future orientations conflicting with x.
            std::vector<int> newly;
            OSep rx = x.reversed();
            bool dead = false;
            for (int j = i + 1; j < sys.size() && !dead; ++j) {
                for (int t = 0; t < 2; ++t) {
                    int yo = 2 * j + t;
                    if (forbidden[yo]) continue;
                    OSep y = sys.oriented(yo);
                    if (leq(rx, y) || leq(y.reversed(), x)) {
                        forbidden[yo] = 1;
                        newly.push_back(yo);
                    }
                }
                const OSep& mj = sys.members()[j];
                if (mj.A == mj.B ? forbidden[2 * j]
                                 : (forbidden[2 * j] && forbidden[2 * j + 1]))
                    dead = true;
            }
            if (!dead) {
                assigned.push_back(i);
                recurse(i + 1);
                assigned.pop_back();
            }
            for (int yo : newly) forbidden[yo] = 0;
            if (static_cast<int>(out.size()) >= limit) return;
        }
    }
};

}  // namespace

std::vector<Orientation> find_f_tangles(const SepSystem& sys, const FamilySpec& F,
                                        int limit) {
    // If the empty set lies in F, nothing avoids F.
    if (F.kind == FamilySpec::Kind::Uk && sys.graph().n() < F.k) return {};
    if ((F.kind == FamilySpec::Kind::Tk || F.kind == FamilySpec::Kind::TkStar) &&
        sys.graph().n() == 0)
        return {};
    if (F.kind == FamilySpec::Kind::Explicit)
        for (const auto& s : F.explicit_sets)
            if (s.empty()) return {};
    TangleSearch search(sys, F, limit);
    search.recurse(0);
    return search.out;
}

Distinguishers distinguishers(const Orientation& a, const Orientation& b) {
    assert(a.sys == b.sys);
    Distinguishers d;
    int best = 1 << 30;
    for (int i = 0; i < static_cast<int>(a.side.size()); ++i) {
        const OSep& m = a.sys->members()[i];
        if (m.A == m.B) continue;
        if (a.side[i] == b.side[i]) continue;
        d.members.push_back(i);
        best = std::min(best, m.order());
    }
    for (int i : d.members)
        if (a.sys->members()[i].order() == best) d.efficient.push_back(i);
    return d;
}

bool combinatorially_distinguishable(const Orientation& a, const Orientation& b) {
    if (is_principal(a) || is_principal(b)) return true;
    const Graph& g = a.sys->graph();
    int k = a.sys->k();
    VSet full = g.vertices();
    auto witness = [&](const Orientation& t1, const Orientation& t2) {
        for (VSet X = 0; X <= full; ++X) {
            if ((X & ~full) != 0 || vs_size(X) >= k) continue;
            auto comps = components(g, X);
            bool all_in = !comps.empty();
            for (VSet K : comps)
                if (!t1.contains(OSep{K | X, full & ~K})) { all_in = false; break; }
            if (!all_in) continue;
            for (VSet K : comps)
                if (t2.contains(OSep{full & ~K, K | X})) return true;
        }
        return false;
    };
    return witness(a, b) || witness(b, a);
}

bool distinguishes_efficiently(const Orientation& a, const Orientation& b, int member) {
    Distinguishers d = distinguishers(a, b);
    return std::find(d.efficient.begin(), d.efficient.end(), member) != d.efficient.end();
}

bool closely_related(const OSep& s, const Orientation& O) {
    if (!O.contains(s)) return false;
    int k = O.sys->k();
    for (const OSep& c : O.elements())
        if (inf(s, c).order() >= k) return false;
    return true;
}

ShiftResult emulate_and_shift(const OSep& s, const OSep& r, const SepSystem& sys,
                              const std::vector<OSep>& sigma, const OSep& t) {
    if (!leq(r, s)) throw std::invalid_argument("shift: s does not lie above r");
    if (!leq(r, t)) throw std::invalid_argument("shift: t does not lie above r");
    if (std::find(sigma.begin(), sigma.end(), t) == sigma.end())
        throw std::invalid_argument("shift: t is not an element of the star");
    ShiftResult res;
    res.emulates = true;
    for (int oid = 0; oid < sys.osize(); ++oid) {
        OSep x = sys.oriented(oid);
        if (!leq(r, x)) continue;
        if (sys.oid_of(sup(s, x)) < 0) { res.emulates = false; break; }
    }
    res.shifted.push_back(sup(s, t));
    OSep rs = s.reversed();
    for (const OSep& t2 : sigma)
        if (t2 != t) res.shifted.push_back(inf(rs, t2));
    return res;
}

}  // namespace seps
