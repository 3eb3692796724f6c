#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wpl/linalg.hpp"
#include "wpl/report.hpp"

namespace wpl::arquiver {

// Star-shaped tree with three arms of lengths 1, 2 and p-1 attached to a
// central vertex (the underlying graph T(2,3,p)), optionally extended by one
// extra vertex to the affine diagram whose translation quiver governs the
// domestic weights.  Vertex indices are fixed by construction:
//   0            center
//   1            arm-1 vertex
//   2, 3         arm-2 vertices (2 adjacent to the center)
//   4 .. p+2     arm-3 vertices (4 adjacent to the center)
//   p+3          extension vertex (only when extended)
// The extension attaches at the unique spot that produces an affine diagram:
//   p = 2  -> at vertex 2   (D~5)
//   p = 3  -> at vertex 1   (E~6)
//   p = 4  -> at vertex 3   (E~7)
//   p >= 5 -> at the arm-3 end p+2 (E~8 for p = 5)
struct StarTree {
    int p = 2;
    bool extended = false;
};

// Number of vertices: p+3 for the base tree, p+4 when extended.
int star_vertex_count(const StarTree& t);

// Edges as (closer-to-center, farther) index pairs, in a fixed order:
// arm 1, arm 2, arm 3, then the extension edge.
std::vector<std::pair<int, int>> star_edges(const StarTree& t);

// Stable display names parallel to the vertex indices above:
// "center", "a1", "b1", "b2", "t1", ..., "t{p-1}", "ext".
std::vector<std::string> star_vertex_names(const StarTree& t);

// The unique positive integer vector in the kernel of (adjacency - 2*id),
// normalized so its minimum entry is 1.  Throws NoNullRoot when the kernel
// is not one-dimensional or the generator is not strictly one-signed; this
// happens exactly when the tree is not an affine (extended Dynkin) diagram.
IntVec null_root(const StarTree& t);

// Vertex decoration produced by mark_pattern.  Rank-one (line bundle)
// vertices are Persistent or Fading; all other vertices are NonLine.
enum class Mark { NonLine, Persistent, Fading };

struct QVertex {
    int orbit = 0;  // tau-orbit id (star vertex for domestic, row otherwise)
    int slice = 0;  // position along the orbit
};

struct QArrow {
    int from = 0;  // vertex index
    int to = 0;    // vertex index
};

// Finite window of a stable translation quiver.  Vertices are sorted by
// (slice, orbit); arrows keep construction order.  All parallel arrays are
// indexed by vertex index.  tau[i] is the vertex index of the translate one
// slice back, or -1 when it falls outside the window.
struct TransQuiver {
    int p = 2;
    std::string kind;  // "domestic" | "tube" | "wild"
    int num_orbits = 0;
    int slice_begin = 0;
    int slice_end = 0;   // half-open window [slice_begin, slice_end)
    bool cyclic = false; // tube whose window closes up to a full period
    int period = 0;      // tau-period when cyclic, otherwise 0
    int distinguished_components = 1;  // separating line-bundle components

    std::vector<QVertex> vertices;
    std::vector<QArrow> arrows;
    std::vector<int> tau;
    std::vector<int> rank;
    std::vector<bool> is_line;
    std::vector<Mark> mark;
    std::vector<std::string> orbit_name;  // size num_orbits

    // Vertex index of (orbit, slice), honoring cyclic slice wrap; -1 if absent.
    int at(int orbit, int slice) const;
};

// Window of the translation quiver Z(affine star tree) for a domestic weight
// 2 <= p <= 5.  One tau-orbit per tree vertex (p+4 of them); rank labels are
// the null-root entries, so the rank-1 orbits are the line-bundle orbits.
// Arrows per slice i and tree edge u -> v (oriented away from the center):
// (i,u) -> (i,v) and (i,v) -> (i+1,u).
TransQuiver build_domestic(int p, int slice_begin, int slice_end);

// Window of a rank-graded tube.  Rows 0..height-1 are the tau-orbits, row r
// carrying rank r+1; row 0 is the mouth and the only line-bundle orbit.
// Arrows: (r,j) -> (r+1,j) and, for r >= 1, (r,j) -> (r-1,j+1).  When the
// window length equals the period the slices close up and tau has that
// period on every row.
TransQuiver build_tube(int period, int slice_begin, int slice_end, int height = 3);

// Window of one ZA_infinity component for a wild weight p >= 7, truncated to
// the given number of rows.  Same arrow pattern as a tube but without wrap;
// the boundary row 0 is the line-bundle orbit and the number of pairwise
// non-isomorphic such components is p - 6.
TransQuiver build_wild_window(int p, int slice_begin, int slice_end, int height = 3);

// Mesh test at every vertex x where the full mesh fits inside the window
// (tau x defined and, for tube/wild windows, x not in the truncated top
// row): the arrows into x biject with the arrows out of tau x, and
// rank(x) + rank(tau x) equals the sum of the middle-term ranks.
Report check_mesh(const TransQuiver& q);

// Ascending orbit ids whose vertices have rank 1.
std::vector<int> line_orbits(const TransQuiver& q);

// Marks line-bundle vertices with the six-periodic persistence pattern
// "+-+---": vertex (orbit, slice) of the k-th line orbit becomes Persistent
// when the pattern has '+' at (slice + phases[k]) mod 6, Fading otherwise.
// Non-line vertices are marked NonLine.  phases must have one entry per
// line orbit, in ascending orbit order.
TransQuiver mark_pattern(const TransQuiver& q, const std::vector<int>& phases);

// Search constraints for phase tuples.  window[k] is the number of
// consecutive slices of the k-th line orbit that one fundamental domain
// meets; the windows must cover 6 line vertices in total.  total_persistent
// is the required number of Persistent vertices over all windows, and the
// optional per_orbit vector pins the count within each window.
struct PhaseConstraints {
    std::vector<int> window;
    int total_persistent = 2;
    std::vector<int> per_orbit;  // empty = unconstrained
};

// The fundamental-domain constraints for weight p: windows summing to 6
// with 2 persistent vertices overall, refined per orbit where the split is
// forced ({1,1} for p = 4).
PhaseConstraints default_constraints(int p);

// All phase tuples (entries in 0..5, one per line orbit) satisfying the
// constraints, in lexicographic order.  Throws NoConsistentPhase when no
// tuple satisfies them.
std::vector<std::vector<int>> phase_search(const TransQuiver& q,
                                           const PhaseConstraints& c);

// Removes Fading vertices together with all incident arrows, reindexing the
// survivors; tau is kept where both endpoints survive.
TransQuiver delete_fading(const TransQuiver& q);

// Counts over one degree-fundamental domain 0 <= delta < delta(x3) of the
// weight lattice, computed by direct enumeration of normal forms:
// the line-bundle classes, the persistent ones among them, and the classes
// whose Auslander-bundle slope delta + delta(omega)/2 lies in the same
// window.  Requires p >= 3 (throws WeightTooSmall otherwise).
struct FdCounts {
    int line_bundles = 0;
    int persistent = 0;
    int auslander = 0;
    std::vector<std::string> lines;             // normal forms, delta-sorted
    std::vector<std::string> persistent_lines;  // subsequence of lines
};
FdCounts fd_counts(int p);

// Renders the window byte-deterministically.  format "dot": a digraph with
// one node per vertex (filled = persistent, dotted = fading, box = rank > 1)
// and dotted arrows at fading endpoints.  format "ascii": one row per orbit,
// slices left to right, with cells "•" (persistent), "∘" (fading), the rank
// digit (non-line) or "." (absent).  Any other format is a UsageError.
std::string emit(const TransQuiver& q, const std::string& format);

}  // namespace wpl::arquiver
