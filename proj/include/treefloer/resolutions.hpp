#pragma once

// Complete resolutions whose black-graph subgraph is a spanning tree, the
// order of marked points along each resolved circle, and double successors.

#include "treefloer/diagram.hpp"
#include "treefloer/marking.hpp"

#include <cstdint>
#include <vector>

namespace treefloer {

/// Resolution bits: bit j is I_{j+1}.
using ResolutionBits = std::uint64_t;

/// The smoothing bit at crossing j that merges the two black quadrants.
/// Bit 1 is the oriented smoothing at a positive crossing and bit 0 at a
/// negative one.
int joins_black_bit(const PlanarDiagram& d, const BlackGraph& bg, int j);

inline bool joins_black(const PlanarDiagram& d, const BlackGraph& bg, int j, int bit) {
    return joins_black_bit(d, bg, j) == bit;
}

/// Tree resolutions in lexicographic order of (I_1, ..., I_n).
std::vector<ResolutionBits> enumerate_trees(const PlanarDiagram& d, const BlackGraph& bg);

/// Same set by checking all 2^n resolutions (n <= 20).
std::vector<ResolutionBits> enumerate_trees_brute_force(const PlanarDiagram& d, const BlackGraph& bg);

/// Number of spanning trees from the Laplacian cofactor (loops ignored).
long long matrix_tree_count(const BlackGraph& bg);

bool lex_less(ResolutionBits a, ResolutionBits b, int n);

struct TreeResolution {
    ResolutionBits bits = 0;
    int ones = 0;
    std::vector<int> sigma;           // sigma[r] = point at rank r+1; sigma.back() is the outer point
    std::vector<int> rank;            // point -> 1-based rank
    std::vector<long> cumweight;      // point -> W_I(point)
};

/// Traces D_I with black regions on the left, starting just after the outer
/// point. Throws NotSingleCircle when D_I is not one circle.
TreeResolution trace_resolution(const PlanarDiagram& d, const Coloring& col, const BlackGraph& bg,
                                const Marking& mk, const WeightTable& wt, ResolutionBits bits);

struct SuccessorPair {
    int source = 0; // tree index of I
    int target = 0; // tree index of I''
    int j1 = 0;     // crossing whose special ranks are {a, c}
    int j2 = 0;     // crossing whose special ranks are {b, d}
    int a = 0, b = 0, c = 0, d = 0; // 1-based ranks in sigma_I order
    int nu = 0;
    long A = 0, B = 0, C = 0, D = 0;
};

/// All double-successor pairs among the trees, ordered by (source, target).
/// Throws NonGenericWeights or InterleavingViolation.
std::vector<SuccessorPair> double_successors(const PlanarDiagram& d, const BlackGraph& bg,
                                             const WeightTable& wt,
                                             const std::vector<TreeResolution>& trees);

} // namespace treefloer
