#pragma once

#include "treefloer/complex.hpp"
#include "treefloer/diagram.hpp"
#include "treefloer/marking.hpp"
#include "treefloer/resolutions.hpp"

#include <random>
#include <string>
#include <vector>

namespace tfs {

using namespace treefloer;

inline const char* const kTrefoil = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
inline const char* const kFigureEight = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";
inline const char* const kUnknot1 = "X[2,1,1,2]";
inline const char* const kUnknot2 = "X[2,4,1,2] X[1,3,3,4]";
inline const char* const kUnknot3 = "X[6,4,1,2] X[1,5,3,2] X[3,5,4,6]";
inline const char* const kUnknot5 = "X[6,10,1,2] X[8,5,3,2] X[3,5,4,6] X[1,10,7,9] X[7,4,8,9]";
inline const char* const kUnlink2 = "X[1,3,2,4] X[2,3,1,4]";
inline const char* const kTrefoilKink = "X[8,4,2,5] X[3,6,4,1] X[5,2,6,3] X[1,7,7,8]";
inline const char* const kTrefoilR2 = "X[8,4,2,5] X[10,6,4,1] X[5,2,6,3] X[1,9,7,10] X[7,9,8,3]";

inline std::vector<std::string> corpus() {
    return {kUnknot1, kUnknot2, kUnknot3, kUnlink2, kTrefoil, kTrefoilKink, kFigureEight, kUnknot5, kTrefoilR2};
}

// Every stage up to the double successors, with default choices.
struct Staged {
    PlanarDiagram d;
    Coloring col;
    BlackGraph bg;
    SignData sd;
    Marking mk;
    OmegaAssignment om;
    WeightTable wt;
    std::vector<ResolutionBits> bits;
    std::vector<TreeResolution> trees;
    std::vector<SuccessorPair> pairs;

    explicit Staged(const std::string& pd, EdgeOrientation o = EdgeOrientation::SmallerTail)
        : d(parse_pd(pd)), col(faces_and_coloring(d)), bg(black_graph(d, col, o)), sd(sign_data(d)),
          mk(auto_mark(d, col, bg)), om(default_omega(d.num_crossings())), wt(assign_weights(d, mk, bg, om)),
          bits(enumerate_trees(d, bg)) {
        for (auto b : bits)
            trees.push_back(trace_resolution(d, col, bg, mk, wt, b));
        pairs = double_successors(d, bg, wt, trees);
    }
    int m() const { return mk.num_points(); }
};

inline BinPoly random_poly(std::mt19937_64& rng, int max_degree) {
    std::uniform_int_distribution<int> deg(-1, max_degree);
    const int dg = deg(rng);
    if (dg < 0)
        return {};
    std::vector<std::uint64_t> words(static_cast<std::size_t>(dg / 64 + 1));
    for (auto& w : words)
        w = rng();
    words.back() &= (dg % 64 == 63) ? ~0ULL : ((1ULL << (dg % 64 + 1)) - 1);
    return BinPoly::from_words(words);
}

inline RationalFn random_fn(std::mt19937_64& rng, int max_degree) {
    BinPoly den;
    while (den.is_zero())
        den = random_poly(rng, max_degree);
    return RationalFn(random_poly(rng, max_degree), den);
}

} // namespace tfs
