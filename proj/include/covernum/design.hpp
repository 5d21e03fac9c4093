// Finite incidence designs: the projective plane of order 4, its one-point
// extension to the 22-point Steiner system with block size 6, the odd-meeting
// 7-point subsets of that system, and the 275-vertex strongly regular graph
// assembled from points, blocks, and one family of those subsets.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "covernum/srgraph.hpp"

namespace covernum {

struct Design {
    int v = 0;                             // points are 0..v-1
    int t = 0, k = 0, lambda = 0;          // every t-subset in exactly lambda blocks
    std::vector<std::vector<int>> blocks;  // sorted k-subsets, sorted lexicographically
};

// Exhaustive defining-property check: every t-subset of points lies in
// exactly lambda blocks, and every block is a sorted k-subset in range.
bool check_design(const Design& d);

// Projective plane of order 4 as a (2,5,1) design: 21 points = projective
// nonzero vectors over the 4-element field, 21 lines = kernels of the same
// vectors under the standard bilinear form.
Design build_pg24();

// All 6-point subsets of the plane meeting every line in at most 2 points.
// There are 168, and the parity of pairwise intersections splits them into
// three families of 56 (verified); exactly the families that extend the
// plane to a 22-point design.
std::vector<std::vector<int>> hyperovals(const Design& pg);

// The 22-point Steiner system with parameters (3,6,1): point 21 is new, the
// 77 blocks are the 21 extended lines plus one intersection-parity family of
// hyperovals. Families are tried in deterministic order and the first one
// whose design passes the exhaustive 1540-triple check wins; throws if none
// does (guards transcription bugs; cannot happen for a correct plane).
Design build_s3622(const Design& pg);

// 7-point subsets meeting every block in an odd number of points. There are
// 352; intersection parity links them into exactly two families of 176,
// returned in deterministic order (each sorted lexicographically).
std::pair<std::vector<std::vector<int>>, std::vector<std::vector<int>>> heptad_families(
    const Design& s);

// The 275-vertex graph: vertices 0..21 are the design's points, 22..98 its
// blocks (in design order), 99..274 one heptad family. Adjacency: a point
// and a block meet iff the point is outside the block; a point and a heptad
// iff the point is inside; two blocks iff disjoint; a block and a heptad iff
// they share 3 points; two heptads iff they share exactly 1 point; points
// are pairwise non-adjacent. Both heptad families are tried; the graph is
// accepted purely on the exhaustive strongly-regular (275,112,30,56) check,
// which pins it up to isomorphism. Throws if no family passes.
SRGraph build_mclaughlin_graph(const Design& s);

}  // namespace covernum
