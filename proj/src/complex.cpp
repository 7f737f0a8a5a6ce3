#include "treefloer/complex.hpp"

#include "treefloer/error.hpp"

#include "parallel.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <bit>

namespace treefloer {

namespace {

Monomial bit_of_rank(int r) { return Monomial{1} << (r - 1); }

long cum_at_rank(const TreeResolution& tr, int r) { return tr.cumweight[tr.sigma[r - 1]]; }

bool in(int r, int x, int y) { return r == x || r == y; }

} // namespace

void add_term(ExtVector& v, Monomial mono, const RationalFn& coeff) {
    if (coeff.is_zero())
        return;
    auto [it, inserted] = v.try_emplace(mono, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero())
            v.erase(it);
    }
}

void add_scaled(ExtVector& v, const ExtVector& w, const RationalFn& coeff) {
    if (coeff.is_zero())
        return;
    for (const auto& [mono, c] : w)
        add_term(v, mono, coeff.is_one() ? c : c * coeff);
}

ExtVector wedge(Monomial mono, const ExtVector& v) {
    ExtVector out;
    for (const auto& [m, c] : v)
        if ((m & mono) == 0)
            out.emplace(m | mono, c);
    return out;
}

ExtVector scaled(const ExtVector& v, const RationalFn& coeff) {
    ExtVector out;
    add_scaled(out, v, coeff);
    return out;
}

ExtVector eliminate_outer(const TreeResolution& tr, const ExtVector& v) {
    const int outer = tr.sigma.back();
    const Monomial ob = Monomial{1} << outer;
    ExtVector out;
    for (const auto& [mono, c] : v) {
        if ((mono & ob) == 0) {
            add_term(out, mono, c);
            continue;
        }
        const Monomial rest = mono & ~ob;
        for (int j = 0; j < static_cast<int>(tr.sigma.size()); ++j) {
            const Monomial jb = Monomial{1} << j;
            if (j == outer || (rest & jb))
                continue;
            add_term(out, rest | jb, c * RationalFn::tpow(tr.cumweight[j]));
        }
    }
    return out;
}

ExtVector relation_element(const TreeResolution& tr) {
    ExtVector out;
    for (int p = 0; p < static_cast<int>(tr.cumweight.size()); ++p)
        add_term(out, Monomial{1} << p, RationalFn::tpow(tr.cumweight[p]));
    return out;
}

Monomial monomial_to_ranks(const TreeResolution& tr, Monomial points) {
    Monomial out = 0;
    for (; points; points &= points - 1)
        out |= bit_of_rank(tr.rank[std::countr_zero(points)]);
    return out;
}

ExtVector to_ranks(const TreeResolution& tr, const ExtVector& v) {
    ExtVector out;
    for (const auto& [mono, c] : v)
        out.emplace(monomial_to_ranks(tr, mono), c);
    return out;
}

ExtVector to_points(const TreeResolution& tr, const ExtVector& v) {
    ExtVector out;
    for (const auto& [mono, c] : v) {
        Monomial pts = 0;
        for (Monomial r = mono; r; r &= r - 1)
            pts |= Monomial{1} << tr.sigma[std::countr_zero(r)];
        out.emplace(pts, c);
    }
    return out;
}

ExtVector d_base(const SuccessorPair& sp, const TreeResolution& src, int k, int l) {
    if (sp.B + sp.C == 0 || sp.C + sp.D == 0)
        throw Error(ErrorKind::NonGenericWeights, "complex", "vanishing denominator 1 + T^0");
    const long nuC = sp.nu ? sp.C : 0;
    ExtVector out;
    if (k == 1 && l == 1)
        return out;
    if (k == 1 && l == 2) {
        add_term(out, 0, RationalFn::tpow(nuC) / RationalFn::one_plus_tpow(sp.C + sp.D));
    } else if (k == 2 && l == 1) {
        add_term(out, 0, RationalFn::tpow(sp.B + nuC) / RationalFn::one_plus_tpow(sp.B + sp.C));
    } else {
        const RationalFn lead = RationalFn::tpow(nuC - sp.A) /
                                (RationalFn::one_plus_tpow(sp.B + sp.C) * RationalFn::one_plus_tpow(sp.C + sp.D));
        const int m = static_cast<int>(src.sigma.size());
        for (int i = 1; i <= m; ++i)
            add_term(out, bit_of_rank(i), lead * RationalFn::tpow(cum_at_rank(src, i)));
    }
    return out;
}

ExtVector d_recurse(const SuccessorPair& sp, const TreeResolution& src, int k, int l, Monomial ranks,
                    PeelOrder order) {
    if (ranks == 0)
        return d_base(sp, src, k, l);
    const int idx = order == PeelOrder::Ascending ? std::countr_zero(ranks) : 63 - std::countl_zero(ranks);
    const Monomial yi = Monomial{1} << idx;
    const Monomial x = ranks & ~yi;
    const int i = idx + 1;
    ExtVector out;
    if (k == 1 && in(i, sp.a, sp.c)) {
        out = wedge(yi, d_recurse(sp, src, 1, l, x, order));
        add_scaled(out, d_recurse(sp, src, 2, l, x, order), RationalFn::one());
    } else if (l == 1 && in(i, sp.b, sp.d)) {
        out = wedge(yi, d_recurse(sp, src, k, 1, x, order));
        add_scaled(out, d_recurse(sp, src, k, 2, x, order), RationalFn::one());
    } else {
        out = wedge(yi, d_recurse(sp, src, k, l, x, order));
    }
    return out;
}

ExtVector d_component(const SuccessorPair& sp, const TreeResolution& src, int k, int l, Monomial ranks) {
    // Each special factor y_p (p in {a, c}) may be consumed by lowering k,
    // each y_q (q in {b, d}) by lowering l; everything else passes through.
    std::vector<Monomial> P;
    std::vector<Monomial> Q;
    for (int r : {sp.a, sp.c})
        if (ranks & bit_of_rank(r))
            P.push_back(bit_of_rank(r));
    for (int r : {sp.b, sp.d})
        if (ranks & bit_of_rank(r))
            Q.push_back(bit_of_rank(r));

    std::vector<Monomial> p_choices{0};
    if (k == 1)
        p_choices.insert(p_choices.end(), P.begin(), P.end());
    std::vector<Monomial> q_choices{0};
    if (l == 1)
        q_choices.insert(q_choices.end(), Q.begin(), Q.end());

    ExtVector out;
    for (Monomial p : p_choices)
        for (Monomial q : q_choices) {
            const int kk = p ? 2 : k;
            const int ll = q ? 2 : l;
            for (const auto& [mono, c] : wedge(ranks & ~p & ~q, d_base(sp, src, kk, ll)))
                add_term(out, mono, c);
        }
    return out;
}

ExtVector d_formal(const SuccessorPair& sp, const TreeResolution& src, const ExtVector& points) {
    ExtVector out;
    for (const auto& [mono, c] : points) {
        const Monomial r = monomial_to_ranks(src, mono);
        ExtVector sum;
        for (int k = 1; k <= 2; ++k)
            for (int l = 1; l <= 2; ++l)
                add_scaled(sum, d_component(sp, src, k, l, r), RationalFn::one());
        add_scaled(out, to_points(src, sum), c);
    }
    return out;
}

ExtVector d_pair_apply(const SuccessorPair& sp, const TreeResolution& src, const TreeResolution& tgt,
                       Monomial points) {
    ExtVector one;
    one.emplace(points, RationalFn::one());
    return eliminate_outer(tgt, d_formal(sp, src, one));
}

bool relation_annihilated(const SuccessorPair& sp, const TreeResolution& src, const TreeResolution& tgt,
                          int m) {
    const ExtVector rel = relation_element(src);
    for (Monomial x = 0; x < (Monomial{1} << (m - 1)); ++x)
        if (!eliminate_outer(tgt, d_formal(sp, src, wedge(x, rel))).empty())
            return false;
    return true;
}

std::size_t SparseMatrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns)
        n += c.size();
    return n;
}

RationalFn SparseMatrix::at(int row, int col) const {
    const auto& c = columns[col];
    const auto it = std::lower_bound(c.begin(), c.end(), row, [](const auto& e, int r) { return e.first < r; });
    return it != c.end() && it->first == row ? it->second : RationalFn{};
}

void SparseMatrix::normalize() {
    for (auto& c : columns) {
        std::stable_sort(c.begin(), c.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        std::vector<std::pair<int, RationalFn>> merged;
        for (auto& e : c) {
            if (!merged.empty() && merged.back().first == e.first)
                merged.back().second += e.second;
            else
                merged.push_back(std::move(e));
            if (merged.back().second.is_zero())
                merged.pop_back();
        }
        c = std::move(merged);
    }
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols != b.rows)
        throw Error(ErrorKind::CheckFailed, "complex", "matrix shapes do not compose");
    SparseMatrix out(a.rows, b.cols);
    for (int j = 0; j < b.cols; ++j) {
        std::map<int, RationalFn> acc;
        for (const auto& [t, v] : b.columns[j])
            for (const auto& [r, w] : a.columns[t]) {
                auto& slot = acc[r];
                slot += v * w;
            }
        for (auto& [r, v] : acc)
            if (!v.is_zero())
                out.columns[j].emplace_back(r, std::move(v));
    }
    return out;
}

SparseMatrix pair_tile(const SuccessorPair& sp, const TreeResolution& src, const TreeResolution& tgt, int m) {
    const int g = 1 << (m - 1);
    SparseMatrix tile(g, g);
    for (int x = 0; x < g; ++x)
        for (const auto& [mono, c] : d_pair_apply(sp, src, tgt, static_cast<Monomial>(x)))
            tile.columns[x].emplace_back(static_cast<int>(mono), c);
    return tile;
}

long ChainComplex::dimension(int g2) const {
    const auto it = groups.find(g2);
    return it == groups.end() ? 0 : static_cast<long>(it->second.size() * generators_per_tree());
}

long ChainComplex::total_dimension() const {
    return static_cast<long>(trees.size() * generators_per_tree());
}

const DifferentialBlock* ChainComplex::block_from(int g2) const {
    for (const auto& b : blocks)
        if (b.from == g2)
            return &b;
    return nullptr;
}

ChainComplex build_complex(std::vector<TreeResolution> trees, std::vector<SuccessorPair> pairs, int n_minus,
                           int m, int threads) {
    if (m < 1 || m > 31)
        throw Error(ErrorKind::MalformedInput, "complex", "number of marked points must be in 1..31");
    ChainComplex cx;
    cx.m = m;
    cx.trees = std::move(trees);
    cx.pairs = std::move(pairs);
    for (int t = 0; t < static_cast<int>(cx.trees.size()); ++t) {
        const int g2 = cx.trees[t].ones - n_minus;
        cx.grading.push_back(g2);
        auto& group = cx.groups[g2];
        cx.position.push_back(static_cast<int>(group.size()));
        group.push_back(t);
    }

    std::vector<SparseMatrix> tiles(cx.pairs.size());
    detail::parallel_for(cx.pairs.size(), threads, [&](std::size_t i) {
        const auto& sp = cx.pairs[i];
        tiles[i] = pair_tile(sp, cx.trees[sp.source], cx.trees[sp.target], m);
    });

    const int g = static_cast<int>(cx.generators_per_tree());
    for (const auto& [g2, members] : cx.groups) {
        if (!cx.groups.count(g2 + 2))
            continue;
        DifferentialBlock block;
        block.from = g2;
        block.matrix = SparseMatrix(static_cast<int>(cx.dimension(g2 + 2)), static_cast<int>(cx.dimension(g2)));
        for (std::size_t i = 0; i < cx.pairs.size(); ++i) {
            const auto& sp = cx.pairs[i];
            if (cx.grading[sp.source] != g2)
                continue;
            if (cx.grading[sp.target] != g2 + 2)
                throw Error(ErrorKind::CheckFailed, "complex", "successor pair does not raise the grading by one");
            const int col0 = cx.position[sp.source] * g;
            const int row0 = cx.position[sp.target] * g;
            for (int x = 0; x < g; ++x)
                for (const auto& [r, v] : tiles[i].columns[x])
                    block.matrix.push(row0 + r, col0 + x, v);
        }
        block.matrix.normalize();
        cx.blocks.push_back(std::move(block));
    }
    return cx;
}

bool verify_d_squared(const ChainComplex& cx) {
    for (const auto& b : cx.blocks) {
        const DifferentialBlock* next = cx.block_from(b.from + 2);
        if (next && !multiply(next->matrix, b.matrix).is_zero())
            return false;
    }
    return true;
}

std::string grading_string(int g2) {
    if (g2 % 2 == 0)
        return std::to_string(g2 / 2);
    return std::to_string(g2) + "/2";
}

std::string complex_to_json(const ChainComplex& cx) {
    nlohmann::ordered_json j;
    j["m"] = cx.m;
    j["generators_per_tree"] = cx.generators_per_tree();
    auto& groups = j["gradings"] = nlohmann::ordered_json::array();
    for (const auto& [g2, members] : cx.groups) {
        nlohmann::ordered_json e;
        e["grading"] = grading_string(g2);
        e["dimension"] = cx.dimension(g2);
        e["trees"] = members;
        groups.push_back(std::move(e));
    }
    auto& blocks = j["blocks"] = nlohmann::ordered_json::array();
    for (const auto& b : cx.blocks) {
        nlohmann::ordered_json e;
        e["from"] = grading_string(b.from);
        e["to"] = grading_string(b.from + 2);
        e["rows"] = b.matrix.rows;
        e["cols"] = b.matrix.cols;
        auto& entries = e["entries"] = nlohmann::ordered_json::array();
        for (int c = 0; c < b.matrix.cols; ++c)
            for (const auto& [r, v] : b.matrix.columns[c])
                entries.push_back({r, c, v.to_string()});
        blocks.push_back(std::move(e));
    }
    return j.dump(2);
}

} // namespace treefloer
