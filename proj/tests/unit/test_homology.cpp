#include "support.hpp"

#include "treefloer/error.hpp"
#include "treefloer/homology.hpp"

#include <doctest.h>

#include <random>

using namespace treefloer;

namespace {

RationalFn T(long k) { return RationalFn::tpow(k); }

SparseMatrix from_rows(const std::vector<std::vector<RationalFn>>& rows) {
    SparseMatrix m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c)
            if (!rows[r][c].is_zero())
                m.push(r, c, rows[r][c]);
    m.normalize();
    return m;
}

// Sparse random matrix with a planted rank deficit: the last columns are
// combinations of the first ones.
SparseMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, int dependent, double density) {
    std::bernoulli_distribution keep(density);
    std::vector<std::vector<RationalFn>> a(static_cast<std::size_t>(rows), std::vector<RationalFn>(cols));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols - dependent; ++c)
            if (keep(rng))
                a[r][c] = tfs::random_fn(rng, 4);
    for (int c = cols - dependent; c < cols; ++c) {
        const RationalFn u = tfs::random_fn(rng, 3), v = tfs::random_fn(rng, 3);
        const int i = static_cast<int>(rng() % (cols - dependent)), j = static_cast<int>(rng() % (cols - dependent));
        for (int r = 0; r < rows; ++r)
            a[r][c] = u * a[r][i] + v * a[r][j];
    }
    return from_rows(a);
}

} // namespace

TEST_SUITE("homology") {

TEST_CASE("rank examples") {
    CHECK(block_rank(SparseMatrix(3, 4)) == 0);
    CHECK(block_rank(from_rows({{T(1) / RationalFn::one_plus_tpow(1)}})) == 1);
    const auto inv = RationalFn::one() / RationalFn::one_plus_tpow(1);
    const auto m = from_rows({{RationalFn::one(), T(1)}, {inv, T(1) * inv}});
    CHECK(block_rank(m) == 1);
    CHECK(block_rank_dense(m) == 1);
    CHECK(block_rank_lower_bound(m) == 1);
    CHECK(block_rank(from_rows({{RationalFn::one(), T(1)}, {T(1), T(3)}})) == 2);
}

TEST_CASE("fraction-free rank agrees with plain elimination") {
    std::mt19937_64 rng(41);
    for (int it = 0; it < 100; ++it) {
        const int rows = 1 + static_cast<int>(rng() % 12), cols = 1 + static_cast<int>(rng() % 12);
        const int dep = static_cast<int>(rng() % cols);
        const auto m = random_matrix(rng, rows, cols, dep, 0.5);
        const long exact = block_rank_dense(m);
        REQUIRE(block_rank(m) == exact);
        REQUIRE(exact <= std::min(rows, cols));
        for (std::uint64_t seed = 1; seed <= 3; ++seed)
            REQUIRE(block_rank_lower_bound(m, seed) <= exact);
    }
}

TEST_CASE("the evaluated rank is exact on generic matrices") {
    std::mt19937_64 rng(42);
    int equal = 0;
    for (int it = 0; it < 50; ++it) {
        const auto m = random_matrix(rng, 8, 8, static_cast<int>(rng() % 4), 0.6);
        equal += block_rank_lower_bound(m) == block_rank(m);
    }
    CHECK(equal == 50);
}

TEST_CASE("certified ranks agree with elimination on the corpus") {
    for (const auto& pd : tfs::corpus()) {
        CAPTURE(pd);
        const tfs::Staged s(pd);
        const auto cx = build_complex(s.trees, s.pairs, s.sd.n_minus, s.m());
        const auto fast = graded_homology(cx);
        const auto slow = graded_homology_by_elimination(cx);
        CHECK(fast.chain == slow.chain);
        CHECK(fast.rank_out == slow.rank_out);
        CHECK(fast.homology == slow.homology);
        long total = 0;
        for (const auto& [g2, h] : fast.homology) {
            CHECK(h >= 0);
            total += h;
            CHECK(h == fast.chain.at(g2) - (fast.rank_out.count(g2) ? fast.rank_out.at(g2) : 0) -
                           (fast.rank_out.count(g2 - 2) ? fast.rank_out.at(g2 - 2) : 0));
        }
        CHECK(total % (1L << (s.m() - s.sd.components)) == 0);
    }
}

TEST_CASE("alternating diagrams: homology equals the chain groups") {
    for (const char* pd : {tfs::kTrefoil, tfs::kFigureEight}) {
        const tfs::Staged s(pd);
        const auto cx = build_complex(s.trees, s.pairs, s.sd.n_minus, s.m());
        const auto gr = graded_homology(cx);
        CHECK(gr.homology == gr.chain);
    }
}

TEST_CASE("one-crossing unknot: total homology 2^{m-1}") {
    const tfs::Staged s(tfs::kUnknot1);
    const auto cx = build_complex(s.trees, s.pairs, s.sd.n_minus, s.m());
    long total = 0;
    for (const auto& [g2, h] : graded_homology(cx).homology)
        total += h;
    CHECK(total == (1L << (s.m() - 1)));
}

TEST_CASE("normalization") {
    GradedRanks gr;
    gr.chain = {{-1, 8}, {1, 8}};
    gr.homology = {{-1, 8}, {1, 8}};
    SignData sd;
    sd.components = 2;
    const auto rep = normalize_and_report(gr, sd, 5, 2, 2);
    CHECK(rep.normalized == std::map<int, long>{{-1, 1}, {1, 1}});
    CHECK(rep.total == 2);
    CHECK(rep.width == 2);
    CHECK_FALSE(rep.thin);
    gr.homology = {{0, 12}};
    sd.components = 1;
    const auto thin = normalize_and_report(gr, sd, 3, 1, 3);
    CHECK(thin.total == 3);
    CHECK(thin.thin);
    CHECK(thin.supported_grading == 0);
    gr.homology = {{0, 6}};
    CHECK_THROWS_AS(normalize_and_report(gr, sd, 3, 1, 3), Error);
    gr.homology = {{0, 0}};
    CHECK_THROWS_AS(normalize_and_report(gr, sd, 3, 1, 3), Error);
    CHECK(grading_string(-3) == "-3/2");
    CHECK(grading_string(4) == "2");
}

} // TEST_SUITE
