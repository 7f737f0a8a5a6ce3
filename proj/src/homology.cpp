#include "treefloer/homology.hpp"

#include "treefloer/error.hpp"

#include "gf64.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>

namespace treefloer {

namespace {

using PolyColumn = std::vector<std::pair<int, BinPoly>>;

void remove_content(PolyColumn& v) {
    if (v.empty())
        return;
    BinPoly g = v.front().second;
    for (std::size_t i = 1; i < v.size() && !g.is_one(); ++i)
        g = BinPoly::gcd(g, v[i].second);
    if (g.is_one())
        return;
    for (auto& [row, p] : v)
        p = BinPoly::exact_div(p, g);
}

// Powers of T are units in GF(2)(T), so a common T^k can always go.
void strip_t_power(PolyColumn& v) {
    std::size_t k = SIZE_MAX;
    for (const auto& [i, p] : v)
        k = std::min(k, p.trailing_zeros());
    if (k == 0 || k == SIZE_MAX)
        return;
    for (auto& [i, p] : v)
        p = p.shifted_down(k);
}

constexpr std::size_t kSearchColumns = 4;

// Keeps live-entry counts and the row lists of each column in step with a
// row whose support changed from `before` to `after`.
template <class Row>
void track_support(const std::vector<int>& before, const Row& after, int r, std::vector<int>& count,
                   std::vector<std::vector<int>>& holders) {
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < before.size() || j < after.size()) {
        if (j == after.size() || (i < before.size() && before[i] < after[j].first)) {
            --count[before[i++]];
        } else if (i == before.size() || after[j].first < before[i]) {
            ++count[after[j].first];
            holders[after[j].first].push_back(r);
            ++j;
        } else {
            ++i;
            ++j;
        }
    }
}

template <class Row>
std::vector<int> support(const Row& row) {
    std::vector<int> cols;
    cols.reserve(row.size());
    for (const auto& e : row)
        cols.push_back(e.first);
    return cols;
}

template <class Fn>
void for_each_exponent(const BinPoly& p, Fn&& fn) {
    const auto& w = p.words();
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::uint64_t bits = w[i]; bits; bits &= bits - 1)
            fn(64 * i + static_cast<std::size_t>(std::countr_zero(bits)));
}

// If every exponent in the matrix is a multiple of g, substitute T^g -> T.
// T -> T^g embeds GF(2)(T) into itself, so the rank does not change.
void compress_exponents(std::vector<PolyColumn>& rows) {
    std::size_t g = 0;
    for (const auto& row : rows)
        for (const auto& [c, p] : row)
            for_each_exponent(p, [&](std::size_t e) { g = std::gcd(g, e); });
    if (g <= 1)
        return;
    for (auto& row : rows)
        for (auto& [c, p] : row) {
            std::vector<std::uint64_t> w(static_cast<std::size_t>(p.degree()) / g / 64 + 1, 0);
            for_each_exponent(p, [&](std::size_t e) { w[e / g / 64] |= std::uint64_t{1} << (e / g % 64); });
            p = BinPoly::from_words(std::move(w));
        }
}

PolyColumn clear_denominators(const std::vector<std::pair<int, RationalFn>>& col) {
    BinPoly l = BinPoly::one();
    for (const auto& [row, f] : col)
        if (!f.den().is_one())
            l = l * BinPoly::exact_div(f.den(), BinPoly::gcd(l, f.den()));
    PolyColumn out;
    out.reserve(col.size());
    for (const auto& [row, f] : col)
        out.emplace_back(row, f.num() * BinPoly::exact_div(l, f.den()));
    remove_content(out);
    return out;
}

// u*x + w*y over merged row supports (characteristic 2).
PolyColumn combine(const BinPoly& u, const PolyColumn& x, const BinPoly& w, const PolyColumn& y) {
    PolyColumn out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.emplace_back(x[i].first, u * x[i].second);
            ++i;
        } else if (i == x.size() || y[j].first < x[i].first) {
            out.emplace_back(y[j].first, w * y[j].second);
            ++j;
        } else {
            BinPoly s = u * x[i].second + w * y[j].second;
            if (!s.is_zero())
                out.emplace_back(x[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    return out;
}

} // namespace

long block_rank(const SparseMatrix& m) {
    // Row-oriented sparse elimination with Markowitz-style pivoting: the
    // pivot column has the fewest live entries, the pivot row is the
    // shortest in that column.
    std::vector<PolyColumn> rows(static_cast<std::size_t>(m.rows));
    long start_degree = 0;
    for (int c = 0; c < m.cols; ++c)
        for (auto& [r, p] : clear_denominators(m.columns[c])) {
            start_degree = std::max(start_degree, p.degree());
            rows[r].emplace_back(c, std::move(p));
        }
    compress_exponents(rows);
    start_degree = 0;
    for (const auto& row : rows)
        for (const auto& [c, p] : row)
            start_degree = std::max(start_degree, p.degree());
    const long content_limit = 4 * start_degree + 512;

    std::vector<int> count(static_cast<std::size_t>(m.cols), 0);
    std::vector<std::vector<int>> holders(static_cast<std::size_t>(m.cols));
    for (int r = 0; r < m.rows; ++r)
        for (const auto& [c, p] : rows[r]) {
            ++count[c];
            holders[c].push_back(r);
        }
    auto find = [](const PolyColumn& row, int c) {
        const auto it = std::lower_bound(row.begin(), row.end(), c,
                                         [](const auto& e, int key) { return e.first < key; });
        return it != row.end() && it->first == c ? it : row.end();
    };

    long rank = 0;
    while (true) {
        // Cheapest pivot among the few sparsest columns, by Markowitz
        // cost and then by degree.
        std::vector<int> cand;
        for (int c = 0; c < m.cols; ++c) {
            if (count[c] == 0)
                continue;
            cand.push_back(c);
            std::push_heap(cand.begin(), cand.end(), [&](int x, int y) { return count[x] < count[y]; });
            if (cand.size() > kSearchColumns) {
                std::pop_heap(cand.begin(), cand.end(), [&](int x, int y) { return count[x] < count[y]; });
                cand.pop_back();
            }
        }
        if (cand.empty())
            break;
        int pc = -1;
        int pr = -1;
        long best_cost = 0;
        long best_degree = 0;
        std::vector<int> live;
        for (int c : cand) {
            std::vector<int> here;
            for (int r : holders[c])
                if (find(rows[r], c) != rows[r].end())
                    here.push_back(r);
            std::sort(here.begin(), here.end());
            here.erase(std::unique(here.begin(), here.end()), here.end());
            holders[c] = here;
            for (int r : here) {
                const long cost = static_cast<long>(rows[r].size() - 1) * static_cast<long>(here.size() - 1);
                const long deg = find(rows[r], c)->second.degree();
                if (pr < 0 || cost < best_cost || (cost == best_cost && deg < best_degree)) {
                    pc = c;
                    pr = r;
                    best_cost = cost;
                    best_degree = deg;
                }
            }
        }
        live = holders[pc];
        PolyColumn pivot = std::move(rows[pr]);
        rows[pr].clear();
        remove_content(pivot);
        for (const auto& [c, p] : pivot)
            --count[c];
        ++rank;
        const BinPoly pv = find(pivot, pc)->second;

        for (int r : live) {
            if (r == pr)
                continue;
            PolyColumn& row = rows[r];
            const std::vector<int> before = support(row);
            if (pivot.size() == 1) {
                row.erase(find(row, pc));
            } else {
                const BinPoly a = find(row, pc)->second;
                const BinPoly g = BinPoly::gcd(pv, a);
                row = combine(BinPoly::exact_div(pv, g), row, BinPoly::exact_div(a, g), pivot);
                long top = 0;
                for (const auto& [c, p] : row)
                    top = std::max(top, p.degree());
                if (top > content_limit)
                    remove_content(row);
                else
                    strip_t_power(row);
            }
            track_support(before, row, r, count, holders);
        }
        holders[pc].clear();
    }
    return rank;
}

long block_rank_dense(const SparseMatrix& m) {
    std::vector<std::vector<RationalFn>> a(static_cast<std::size_t>(m.rows),
                                           std::vector<RationalFn>(static_cast<std::size_t>(m.cols)));
    for (int c = 0; c < m.cols; ++c)
        for (const auto& [r, v] : m.columns[c])
            a[r][c] = v;
    long rank = 0;
    for (int c = 0; c < m.cols && rank < m.rows; ++c) {
        int piv = -1;
        for (int r = static_cast<int>(rank); r < m.rows; ++r)
            if (!a[r][c].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0)
            continue;
        std::swap(a[piv], a[rank]);
        const RationalFn inv = a[rank][c].inv();
        for (int r = static_cast<int>(rank) + 1; r < m.rows; ++r) {
            if (a[r][c].is_zero())
                continue;
            const RationalFn f = a[r][c] * inv;
            for (int k = c; k < m.cols; ++k)
                if (!a[rank][k].is_zero())
                    a[r][k] += f * a[rank][k];
        }
        ++rank;
    }
    return rank;
}

long block_rank_lower_bound(const SparseMatrix& m, std::uint64_t seed) {
    std::vector<std::vector<std::pair<int, std::uint64_t>>> rows(static_cast<std::size_t>(m.rows));
    for (std::uint64_t state = seed;;) {
        // splitmix64 step
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        const std::uint64_t x = z ^ (z >> 31);
        if (x == 0)
            continue;
        bool pole = false;
        for (auto& r : rows)
            r.clear();
        for (int c = 0; c < m.cols && !pole; ++c)
            for (const auto& [r, f] : m.columns[c]) {
                const auto v = detail::gf64_eval(f, x);
                if (!v) {
                    pole = true;
                    break;
                }
                if (*v)
                    rows[r].emplace_back(c, *v);
            }
        if (!pole)
            break;
    }

    std::vector<int> count(static_cast<std::size_t>(m.cols), 0);
    std::vector<std::vector<int>> holders(static_cast<std::size_t>(m.cols));
    for (int r = 0; r < m.rows; ++r)
        for (const auto& [c, v] : rows[r]) {
            ++count[c];
            holders[c].push_back(r);
        }
    auto find = [](const auto& row, int c) {
        const auto it = std::lower_bound(row.begin(), row.end(), c,
                                         [](const auto& e, int key) { return e.first < key; });
        return it != row.end() && it->first == c ? it : row.end();
    };
    long rank = 0;
    std::vector<std::pair<int, std::uint64_t>> merged;
    while (true) {
        int pc = -1;
        for (int c = 0; c < m.cols; ++c)
            if (count[c] > 0 && (pc < 0 || count[c] < count[pc]))
                pc = c;
        if (pc < 0)
            break;
        std::vector<int> live;
        for (int r : holders[pc])
            if (find(rows[r], pc) != rows[r].end())
                live.push_back(r);
        std::sort(live.begin(), live.end());
        live.erase(std::unique(live.begin(), live.end()), live.end());
        int pr = live.front();
        for (int r : live)
            if (rows[r].size() < rows[pr].size())
                pr = r;
        auto pivot = std::move(rows[pr]);
        rows[pr].clear();
        for (const auto& [c, v] : pivot)
            --count[c];
        ++rank;
        const std::uint64_t inv = detail::gf64_inv(find(pivot, pc)->second);
        for (int r : live) {
            if (r == pr)
                continue;
            auto& row = rows[r];
            const std::uint64_t f = detail::gf64_mul(find(row, pc)->second, inv);
            const std::vector<int> before = support(row);
            merged.clear();
            std::size_t i = 0;
            std::size_t j = 0;
            while (i < row.size() || j < pivot.size()) {
                if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
                    merged.push_back(row[i++]);
                } else if (i == row.size() || pivot[j].first < row[i].first) {
                    merged.emplace_back(pivot[j].first, detail::gf64_mul(f, pivot[j].second));
                    ++j;
                } else {
                    const std::uint64_t v = row[i].second ^ detail::gf64_mul(f, pivot[j].second);
                    if (v)
                        merged.emplace_back(row[i].first, v);
                    ++i;
                    ++j;
                }
            }
            row.swap(merged);
            track_support(before, row, r, count, holders);
        }
        holders[pc].clear();
    }
    return rank;
}

namespace {

GradedRanks assemble(const ChainComplex& cx, const std::vector<long>& ranks, const std::vector<RankMethod>& how) {
    GradedRanks gr;
    for (const auto& [g2, members] : cx.groups)
        gr.chain[g2] = cx.dimension(g2);
    for (std::size_t i = 0; i < cx.blocks.size(); ++i) {
        gr.rank_out[cx.blocks[i].from] = ranks[i];
        gr.method[cx.blocks[i].from] = how[i];
    }
    for (const auto& [g2, dim] : gr.chain) {
        const long out = gr.rank_out.count(g2) ? gr.rank_out.at(g2) : 0;
        const long in = gr.rank_out.count(g2 - 2) ? gr.rank_out.at(g2 - 2) : 0;
        const long h = dim - out - in;
        if (h < 0)
            throw Error(ErrorKind::CheckFailed, "homology", "negative homology dimension at grading " +
                                                                grading_string(g2));
        gr.homology[g2] = h;
    }
    return gr;
}

} // namespace

GradedRanks graded_homology_by_elimination(const ChainComplex& cx, int threads) {
    std::vector<long> ranks(cx.blocks.size());
    detail::parallel_for(cx.blocks.size(), threads,
                         [&](std::size_t i) { ranks[i] = block_rank(cx.blocks[i].matrix); });
    return assemble(cx, ranks, std::vector<RankMethod>(cx.blocks.size(), RankMethod::Elimination));
}

GradedRanks graded_homology(const ChainComplex& cx, int threads) {
    const std::size_t nb = cx.blocks.size();
    std::vector<long> low(nb);
    detail::parallel_for(nb, threads, [&](std::size_t i) { low[i] = block_rank_lower_bound(cx.blocks[i].matrix); });
    std::vector<bool> exact(nb, false);
    std::vector<RankMethod> how(nb, RankMethod::Bounds);

    auto index_from = [&](int g2) -> long {
        for (std::size_t i = 0; i < nb; ++i)
            if (cx.blocks[i].from == g2)
                return static_cast<long>(i);
        return -1;
    };
    // Since d^2 = 0, the image of the incoming block lies in the kernel of
    // the outgoing one: rank(in) + rank(out) <= dim of the middle group.
    auto upper = [&](std::size_t i) {
        const auto& b = cx.blocks[i];
        long u = std::min(b.matrix.rows, b.matrix.cols);
        if (const long p = index_from(b.from - 2); p >= 0)
            u = std::min(u, cx.dimension(b.from) - low[p]);
        if (const long q = index_from(b.from + 2); q >= 0)
            u = std::min(u, cx.dimension(b.from + 2) - low[q]);
        return u;
    };
    while (true) {
        bool progress = true;
        while (progress) {
            progress = false;
            for (std::size_t i = 0; i < nb; ++i)
                if (!exact[i] && low[i] == upper(i)) {
                    exact[i] = true;
                    progress = true;
                }
        }
        std::size_t pick = nb;
        for (std::size_t i = 0; i < nb; ++i)
            if (!exact[i] && (pick == nb || cx.blocks[i].matrix.nonzeros() < cx.blocks[pick].matrix.nonzeros()))
                pick = i;
        if (pick == nb)
            break;
        low[pick] = block_rank(cx.blocks[pick].matrix);
        exact[pick] = true;
        how[pick] = RankMethod::Elimination;
    }
    return assemble(cx, low, how);
}

InvariantReport normalize_and_report(const GradedRanks& gr, const SignData& sd, int m, int n, long trees) {
    InvariantReport rep;
    rep.m = m;
    rep.n = n;
    rep.components = sd.components;
    rep.n_plus = sd.n_plus;
    rep.n_minus = sd.n_minus;
    rep.trees = trees;
    const int shift = m - sd.components;
    if (shift < 0 || shift > 62)
        throw Error(ErrorKind::NotDivisible, "homology", "marked points fewer than components");
    const long factor = 1L << shift;
    for (const auto& [g2, h] : gr.homology) {
        if (h == 0)
            continue;
        if (h % factor != 0)
            throw Error(ErrorKind::NotDivisible, "homology",
                        "homology rank " + std::to_string(h) + " at grading " + grading_string(g2) +
                            " is not divisible by " + std::to_string(factor));
        rep.normalized[g2] = h / factor;
        rep.total += h / factor;
    }
    if (rep.normalized.empty())
        throw Error(ErrorKind::CheckFailed, "homology", "homology vanishes");
    const int lo = rep.normalized.begin()->first;
    const int hi = rep.normalized.rbegin()->first;
    if ((hi - lo) % 2 != 0)
        throw Error(ErrorKind::CheckFailed, "homology", "gradings differ by a half-integer");
    rep.width = 1 + (hi - lo) / 2;
    rep.thin = rep.width == 1;
    if (rep.thin)
        rep.supported_grading = lo;
    return rep;
}

} // namespace treefloer
