#include "support.hpp"

#include "treefloer/error.hpp"
#include "treefloer/marking.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace treefloer;

namespace {

// Independent oracle: try every {-1,0,1} vector.
bool generic_by_brute_force(const std::vector<long>& om) {
    const std::size_t n = om.size();
    std::vector<int> coef(n, -1);
    for (;;) {
        long s = 0;
        bool nonzero = false;
        for (std::size_t j = 0; j < n; ++j) {
            s += coef[j] * om[j];
            nonzero = nonzero || coef[j] != 0;
        }
        if (nonzero && s == 0)
            return false;
        std::size_t j = 0;
        while (j < n && coef[j] == 1)
            coef[j++] = -1;
        if (j == n)
            return true;
        ++coef[j];
    }
}

} // namespace

TEST_SUITE("marking") {

TEST_CASE("default Omega") {
    CHECK(default_omega(3).values == std::vector<long>{2, 4, 8});
    CHECK(default_omega(1).values == std::vector<long>{2});
    CHECK(default_omega(3).mode == GenericityMode::Verified);
}

TEST_CASE("genericity examples") {
    const auto v = check_generic({1, 2, 3}, true);
    CHECK_FALSE(v.generic);
    CHECK(v.witness == std::vector<int>{1, 1, -1});
    CHECK(check_generic({2, 4, 8}, true).generic);
    CHECK(check_generic({5}, true).generic);
    CHECK_FALSE(check_generic({0}, true).generic);
    CHECK(check_generic({1, 2, 3}, false).mode == GenericityMode::Assumed);
    CHECK_THROWS_AS(make_omega({1, 2, 3}, true), Error);
    CHECK_THROWS_AS(make_omega({1L << 40, 3, 5}, true), Error);
    try {
        make_omega({1, 2, 3}, true);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotGeneric);
        CHECK(std::string(e.what()).find("(1,1,-1)") != std::string::npos);
    }
}

TEST_CASE("genericity agrees with brute force and witnesses vanish") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<long> val(-12, 12);
    std::uniform_int_distribution<int> len(1, 7);
    for (int it = 0; it < 400; ++it) {
        std::vector<long> om(static_cast<std::size_t>(len(rng)));
        for (auto& x : om)
            x = val(rng);
        const auto v = check_generic(om, true);
        REQUIRE(v.generic == generic_by_brute_force(om));
        if (!v.generic) {
            long s = 0;
            for (std::size_t j = 0; j < om.size(); ++j)
                s += v.witness[j] * om[j];
            REQUIRE(s == 0);
            REQUIRE(std::any_of(v.witness.begin(), v.witness.end(), [](int c) { return c != 0; }));
        }
    }
}

TEST_CASE("automatic marking") {
    const auto d = parse_pd(tfs::kTrefoil);
    const auto col = faces_and_coloring(d);
    const auto mk = auto_mark(d, col, black_graph(d, col));
    CHECK(mk.num_points() == 6);
    CHECK(auto_mark(parse_pd(tfs::kUnknot1), faces_and_coloring(parse_pd(tfs::kUnknot1)),
                    black_graph(parse_pd(tfs::kUnknot1), faces_and_coloring(parse_pd(tfs::kUnknot1))))
              .num_points() >= 2);
    // The outer point sits on an arc of the unbounded face.
    bool on_outer = false;
    for (const auto& e : col.faces[col.unbounded_face])
        on_outer = on_outer || d.arc_at(e) == mk.outer_arc;
    CHECK(on_outer);
    CHECK(mk.point_arc[mk.outer_point()] == mk.outer_arc);
    CHECK(mk.arc_points[mk.outer_arc].back() == mk.outer_point());
}

TEST_CASE("weight laws on every corpus diagram, both orientations and several markings") {
    for (const auto& pd : tfs::corpus())
        for (auto o : {EdgeOrientation::SmallerTail, EdgeOrientation::LargerTail})
            for (int k = 0; k <= 3; ++k) {
                CAPTURE(pd);
                CAPTURE(k);
                const auto d = parse_pd(pd);
                const auto col = faces_and_coloring(d);
                const auto bg = black_graph(d, col, o);
                const auto mk = k == 0 ? auto_mark(d, col, bg)
                                       : make_marking(d, col, std::vector<int>(d.num_arcs(), k), default_outer_arc(d, col));
                const auto om = default_omega(d.num_crossings());
                // One point per arc never conflicts: the two ends of an arc
                // have quadrants on opposite sides, so one end is special
                // and the other weighted.
                const auto wt = assign_weights(d, mk, bg, om);
                CHECK(std::accumulate(wt.r.begin(), wt.r.end(), 0L) == 0);
                std::vector<long> got, want;
                for (long r : wt.r)
                    if (r != 0)
                        got.push_back(r);
                for (long w : om.values) {
                    want.push_back(w);
                    want.push_back(-w);
                }
                std::sort(got.begin(), got.end());
                std::sort(want.begin(), want.end());
                CHECK(got == want);
                for (int c = 0; c < d.num_crossings(); ++c) {
                    const auto& s = wt.special[c];
                    const auto& w = wt.weighted[c];
                    CHECK(s[0] != s[1]);
                    CHECK(w[0] != w[1]);
                    // Only a kink arc with a single point can be special and
                    // weighted at the same crossing; automatic marking splits it.
                    if (k == 0 || k >= 2)
                        for (int x : s)
                            CHECK(std::find(w.begin(), w.end(), x) == w.end());
                    CHECK(wt.r[w[0]] == om.values[c]);
                    CHECK(wt.r[w[1]] == -om.values[c]);
                }
            }
}

TEST_CASE("marking overrides") {
    const auto d = parse_pd(tfs::kTrefoil);
    const auto col = faces_and_coloring(d);
    const auto mk = marking_from_json(d, col, R"({"points_per_arc": {"1": 3, "4": 2}})");
    CHECK(mk.num_points() == 6 + 2 + 1);
    CHECK(mk.arc_points[d.arc_from_label(1)].size() == 3);
    CHECK_THROWS_AS(marking_from_json(d, col, R"({"points_per_arc": {"9": 1}})"), Error);
    CHECK_THROWS_AS(marking_from_json(d, col, "not json"), Error);
    CHECK_THROWS_AS(make_marking(d, col, std::vector<int>(6, 0), default_outer_arc(d, col)), Error);
    CHECK_THROWS_AS(assign_weights(d, auto_mark(d, col, black_graph(d, col)), black_graph(d, col), default_omega(2)),
                    Error);
}

} // TEST_SUITE
