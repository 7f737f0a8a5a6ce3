#pragma once

// The chain complex: one exterior algebra per tree resolution and the
// differential between double successors.

#include "treefloer/field.hpp"
#include "treefloer/resolutions.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace treefloer {

/// Squarefree monomial in the y's as a bitmask. In point labels bit p is
/// y_{p+1}; in rank labels bit r-1 is the generator at rank r of sigma_I.
using Monomial = std::uint64_t;

/// Element of an exterior algebra over GF(2)(T). No zero coefficients.
using ExtVector = std::map<Monomial, RationalFn>;

void add_term(ExtVector& v, Monomial mono, const RationalFn& coeff);
void add_scaled(ExtVector& v, const ExtVector& w, const RationalFn& coeff);
/// y_mono wedge v (characteristic 2, so signs do not matter).
ExtVector wedge(Monomial mono, const ExtVector& v);
ExtVector scaled(const ExtVector& v, const RationalFn& coeff);

/// Rewrites every term containing the outer point using
/// y_outer = sum_{j != outer} T^{W(j)} y_j of the given tree.
ExtVector eliminate_outer(const TreeResolution& tr, const ExtVector& v);

/// The relation element sum_p T^{W(p)} y_p of a tree, in point labels.
ExtVector relation_element(const TreeResolution& tr);

ExtVector to_ranks(const TreeResolution& tr, const ExtVector& v);
ExtVector to_points(const TreeResolution& tr, const ExtVector& v);
Monomial monomial_to_ranks(const TreeResolution& tr, Monomial points);

/// d^{k,l}(1) in rank labels; k, l in {1, 2}. Throws NonGenericWeights.
ExtVector d_base(const SuccessorPair& sp, const TreeResolution& src, int k, int l);

enum class PeelOrder { Ascending, Descending };

/// d^{k,l}(y_ranks) by literal recursion on the factors.
ExtVector d_recurse(const SuccessorPair& sp, const TreeResolution& src, int k, int l, Monomial ranks,
                    PeelOrder order = PeelOrder::Ascending);

/// Closed form of the same recursion.
ExtVector d_component(const SuccessorPair& sp, const TreeResolution& src, int k, int l, Monomial ranks);

/// Sum of the four components on a point-labeled vector, before reduction.
ExtVector d_formal(const SuccessorPair& sp, const TreeResolution& src, const ExtVector& points);

/// d_{I,I''} of one basis monomial (point labels, no outer point), reduced in
/// the target tree.
ExtVector d_pair_apply(const SuccessorPair& sp, const TreeResolution& src, const TreeResolution& tgt,
                       Monomial points);

/// Whether d_{I,I''} kills (relation of I) wedge x for every basis monomial x.
bool relation_annihilated(const SuccessorPair& sp, const TreeResolution& src, const TreeResolution& tgt,
                          int m);

/// Column-major sparse matrix over GF(2)(T); each column sorted by row.
struct SparseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, RationalFn>>> columns;

    SparseMatrix() = default;
    SparseMatrix(int r, int c) : rows(r), cols(c), columns(static_cast<std::size_t>(c)) {}

    std::size_t nonzeros() const;
    bool is_zero() const { return nonzeros() == 0; }
    RationalFn at(int row, int col) const;
    /// Adds to an entry; columns must be re-sorted with `normalize` afterwards.
    void push(int row, int col, const RationalFn& value) { columns[col].emplace_back(row, value); }
    /// Sorts columns, merges duplicate rows and drops zeros.
    void normalize();

    friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;
};

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

/// The d_{I,I''} matrix of one successor pair: 2^{m-1} square, rows and
/// columns indexed by monomials without the outer point.
SparseMatrix pair_tile(const SuccessorPair& sp, const TreeResolution& src, const TreeResolution& tgt, int m);

/// Differential from doubled grading `from` to `from + 2`.
struct DifferentialBlock {
    int from = 0;
    SparseMatrix matrix;
};

struct ChainComplex {
    int m = 0;
    std::vector<TreeResolution> trees;
    std::vector<SuccessorPair> pairs;
    std::vector<int> grading;                   // per tree, doubled
    std::map<int, std::vector<int>> groups;     // doubled grading -> trees in order
    std::vector<int> position;                  // per tree, index inside its group
    std::vector<DifferentialBlock> blocks;      // ascending `from`

    std::size_t generators_per_tree() const { return std::size_t{1} << (m - 1); }
    long dimension(int g2) const;
    long total_dimension() const;
    const DifferentialBlock* block_from(int g2) const;
};

/// Assembles the graded groups and the blocks. `threads` > 1 builds the
/// pair tiles concurrently.
ChainComplex build_complex(std::vector<TreeResolution> trees, std::vector<SuccessorPair> pairs, int n_minus,
                           int m, int threads = 1);

/// Composite of consecutive blocks is zero.
bool verify_d_squared(const ChainComplex& cx);

/// Doubled grading as text: "1", "-3/2".
std::string grading_string(int g2);

/// Complex dump: per-grading dimensions and per-block triplets.
std::string complex_to_json(const ChainComplex& cx);

} // namespace treefloer
