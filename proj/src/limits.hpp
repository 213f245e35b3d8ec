#pragma once

#include <string>
#include <vector>

#include "orientation.hpp"

namespace seps {

// Declared asymptotic data of a truncation family: number of ends, maximum
// count of pairwise disjoint rays into the end, and dominating vertices.
struct EndData {
    int ends = 0;
    int degree = 0;
    int dominating = 0;
};

struct TruncatedGraph {
    Graph graph;
    VSet boundary = 0;  // separates G_n from the rest of the limit
};

// Finitely presented families G_n with marked boundaries. G_n embeds in
// G_{n+1} via embed_vertex, and the boundary separates the embedded G_n from
// the new vertices.
struct FamilyDescriptor {
    enum class Kind { Grid, RayClique, Edgeless, FourColumns };

    Kind kind = Kind::Grid;
    int rows = 3;    // Grid: number of rows
    int clique = 5;  // RayClique: clique size including the attachment vertex
    int min_n = 1;
    EndData declared;

    std::string name() const;

    static FamilyDescriptor grid(int rows);
    static FamilyDescriptor ray_clique(int clique_size);
    static FamilyDescriptor edgeless();
    // Columns of four vertices; vertices are adjacent within a column and
    // across consecutive columns.
    static FamilyDescriptor four_columns();
};

// G_n: grids/four-columns get n columns (column-major indexing), ray+clique a
// path 0..n with the extra clique vertices appended, edgeless n isolated
// vertices. Boundary = last column / last path vertex / empty.
TruncatedGraph truncate(const FamilyDescriptor& fam, int n);

// Vertex map of the embedding G_n -> G_{n+1} (identity except that the
// ray+clique extras shift by one).
int embed_vertex(const FamilyDescriptor& fam, int n, int v);

struct EndDegreeProxy {
    int disjoint_paths = 0;  // level-0 slice to boundary, vertex-disjoint
    int k = 0;
    int oriented = 0;        // separations with exactly one boundary-free strict side
    bool consistent = false;
    bool avoids_tk = false;  // no <=3 oriented members cover the graph
};
// Finite stand-in for the end degree: a flow count plus the boundary-ward
// partial orientation of S_k. k == 0 uses the declared degree + 1.
EndDegreeProxy end_degree_proxy(const FamilyDescriptor& fam, int n, int k = 0);

struct SequenceReport {
    bool ok = false;
    std::string error;
    int bad_index = -1;
    std::vector<int> orders;
    bool strictly_increasing = false;
    VSet big_side_core = 0;  // intersection of the strict big sides
};
// Validates a labelled separation sequence on G_n: separation axioms, the
// expected order (when >= 0), strict increase, and the persistent core.
SequenceReport sequence_report(const FamilyDescriptor& fam, int n,
                               const std::vector<OSep>& seq, int expected_order = -1);

// The family's canonical sequence on G_n: column splits for grids and the
// four-column family, the ray labels (big sides holding the clique) for
// ray+clique, empty for edgeless.
std::vector<OSep> builtin_sequence(const FamilyDescriptor& fam, int n);

// Number of order-1 avoiding orientations of the edgeless graph on m
// vertices: one per vertex, with no finite analogue of the ultrafilter
// orientation. Only k == 1 is meaningful.
int edgeless_tangle_count(int m, int k);

}  // namespace seps
