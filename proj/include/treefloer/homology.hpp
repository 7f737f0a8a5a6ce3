#pragma once

// Graded homology of the complex and the invariants read off from it.

#include "treefloer/complex.hpp"
#include "treefloer/diagram.hpp"

#include <cstdint>
#include <map>
#include <optional>

namespace treefloer {

/// Exact rank: column denominators cleared, then fraction-free elimination
/// over GF(2)[T] with content removal after every step.
long block_rank(const SparseMatrix& m);

/// Dense Gaussian elimination in GF(2)(T); used as an oracle.
long block_rank_dense(const SparseMatrix& m);

/// Rank of the matrix evaluated at a point of GF(2^64) that is not a pole of
/// any entry. Never exceeds the rank over GF(2)(T). `seed` picks the point.
long block_rank_lower_bound(const SparseMatrix& m, std::uint64_t seed = 1);

/// How an exact block rank was obtained: the evaluated rank met an upper
/// bound from the shape and from d^2 = 0, or fraction-free elimination.
enum class RankMethod { Bounds, Elimination };

/// Keys are doubled gradings.
struct GradedRanks {
    std::map<int, long> chain;
    std::map<int, long> rank_out; // rank of the block leaving the grading
    std::map<int, RankMethod> method;
    std::map<int, long> homology;
};

/// Exact ranks of all blocks, preferring certified bounds over elimination.
GradedRanks graded_homology(const ChainComplex& cx, int threads = 1);

/// Same, always by fraction-free elimination.
GradedRanks graded_homology_by_elimination(const ChainComplex& cx, int threads = 1);

struct InvariantReport {
    std::map<int, long> normalized; // doubled grading -> rank, nonzero only
    long total = 0;
    int width = 0;
    bool thin = false;
    std::optional<int> supported_grading; // doubled, when thin
    long trees = 0;
    int m = 0;
    int n = 0;
    int components = 0;
    int n_plus = 0;
    int n_minus = 0;
};

/// Divides by 2^{m - components}; throws NotDivisible when that fails.
InvariantReport normalize_and_report(const GradedRanks& gr, const SignData& sd, int m, int n, long trees);

} // namespace treefloer
