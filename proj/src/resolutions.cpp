#include "treefloer/resolutions.hpp"

#include "treefloer/error.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace treefloer {

namespace {

struct Forest {
    std::vector<int> parent;
    explicit Forest(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) const {
        while (parent[x] != x)
            x = parent[x];
        return x;
    }
};

void grow_trees(const BlackGraph& bg, int j, int used, Forest& forest, std::vector<bool>& chosen,
                std::vector<std::vector<bool>>& out) {
    const int n = static_cast<int>(bg.edges.size());
    const int need = bg.num_vertices - 1;
    if (used == need) {
        out.push_back(chosen);
        return;
    }
    if (j == n || used + (n - j) < need)
        return;
    const BlackEdge& e = bg.edges[j];
    const int ra = forest.find(e.tail);
    const int rb = forest.find(e.head);
    if (ra != rb) {
        forest.parent[rb] = ra;
        chosen[j] = true;
        grow_trees(bg, j + 1, used + 1, forest, chosen, out);
        chosen[j] = false;
        forest.parent[rb] = rb;
    }
    grow_trees(bg, j + 1, used, forest, chosen, out);
}

ResolutionBits bits_for_subgraph(const PlanarDiagram& d, const BlackGraph& bg, const std::vector<bool>& edges) {
    ResolutionBits bits = 0;
    for (int j = 0; j < d.num_crossings(); ++j) {
        const int jb = joins_black_bit(d, bg, j);
        const int bit = edges[j] ? jb : 1 - jb;
        bits |= static_cast<ResolutionBits>(bit) << j;
    }
    return bits;
}

void check_size(const PlanarDiagram& d) {
    if (d.num_crossings() > 63)
        throw Error(ErrorKind::MalformedInput, "resolutions", "at most 63 crossings are supported");
}

} // namespace

int joins_black_bit(const PlanarDiagram& d, const BlackGraph& bg, int j) {
    // The oriented smoothing joins quadrants 1,3 at a positive crossing and
    // quadrants 0,2 at a negative one.
    const bool positive = d.sign(j) > 0;
    const int oriented_bit = positive ? 1 : 0;
    const bool oriented_joins_black = positive ? bg.black_quadrant_parity[j] == 1
                                               : bg.black_quadrant_parity[j] == 0;
    return oriented_joins_black ? oriented_bit : 1 - oriented_bit;
}

bool lex_less(ResolutionBits a, ResolutionBits b, int n) {
    for (int j = 0; j < n; ++j) {
        const auto x = (a >> j) & 1;
        const auto y = (b >> j) & 1;
        if (x != y)
            return x < y;
    }
    return false;
}

std::vector<ResolutionBits> enumerate_trees(const PlanarDiagram& d, const BlackGraph& bg) {
    check_size(d);
    std::vector<std::vector<bool>> subgraphs;
    Forest forest(bg.num_vertices);
    std::vector<bool> chosen(bg.edges.size(), false);
    grow_trees(bg, 0, 0, forest, chosen, subgraphs);
    std::vector<ResolutionBits> out;
    out.reserve(subgraphs.size());
    for (const auto& s : subgraphs)
        out.push_back(bits_for_subgraph(d, bg, s));
    const int n = d.num_crossings();
    std::sort(out.begin(), out.end(), [n](auto a, auto b) { return lex_less(a, b, n); });
    return out;
}

std::vector<ResolutionBits> enumerate_trees_brute_force(const PlanarDiagram& d, const BlackGraph& bg) {
    const int n = d.num_crossings();
    if (n > 20)
        throw Error(ErrorKind::MalformedInput, "resolutions", "brute-force enumeration limited to 20 crossings");
    std::vector<ResolutionBits> out;
    for (ResolutionBits bits = 0; bits < (ResolutionBits{1} << n); ++bits) {
        std::vector<int> parent(static_cast<std::size_t>(bg.num_vertices));
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x)
                x = parent[x];
            return x;
        };
        int used = 0;
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) {
            if (static_cast<int>((bits >> j) & 1) != joins_black_bit(d, bg, j))
                continue;
            const int a = find(bg.edges[j].tail);
            const int b = find(bg.edges[j].head);
            if (a == b)
                ok = false;
            else
                parent[b] = a;
            ++used;
        }
        if (ok && used == bg.num_vertices - 1)
            out.push_back(bits);
    }
    std::sort(out.begin(), out.end(), [n](auto a, auto b) { return lex_less(a, b, n); });
    return out;
}

long long matrix_tree_count(const BlackGraph& bg) {
    const int v = bg.num_vertices;
    if (v <= 1)
        return 1;
    const int k = v - 1;
    std::vector<std::vector<__int128>> lap(static_cast<std::size_t>(k), std::vector<__int128>(static_cast<std::size_t>(k), 0));
    for (const auto& e : bg.edges) {
        if (e.is_loop())
            continue;
        for (int x : {e.tail, e.head})
            if (x < k)
                lap[x][x] += 1;
        if (e.tail < k && e.head < k) {
            lap[e.tail][e.head] -= 1;
            lap[e.head][e.tail] -= 1;
        }
    }
    // Bareiss elimination; every division is exact.
    __int128 prev = 1;
    int sign = 1;
    for (int p = 0; p < k; ++p) {
        if (lap[p][p] == 0) {
            int swap_row = -1;
            for (int r = p + 1; r < k; ++r)
                if (lap[r][p] != 0) {
                    swap_row = r;
                    break;
                }
            if (swap_row < 0)
                return 0;
            std::swap(lap[p], lap[swap_row]);
            sign = -sign;
        }
        for (int r = p + 1; r < k; ++r) {
            for (int c = p + 1; c < k; ++c)
                lap[r][c] = (lap[r][c] * lap[p][p] - lap[r][p] * lap[p][c]) / prev;
            lap[r][p] = 0;
        }
        prev = lap[p][p];
    }
    return static_cast<long long>(sign * lap[k - 1][k - 1]);
}

TreeResolution trace_resolution(const PlanarDiagram& d, const Coloring& col, const BlackGraph& bg,
                                const Marking& mk, const WeightTable& wt, ResolutionBits bits) {
    const int n = d.num_crossings();
    const int arcs = d.num_arcs();

    // Each arc is run with the black region on its left.
    std::vector<bool> forward(static_cast<std::size_t>(arcs));
    for (int a = 0; a < arcs; ++a) {
        const ArcEnd t = d.arc_tail(a);
        forward[a] = col.color[col.dart_face[4 * t.crossing + t.slot]] == Color::Black;
    }
    // Smoothing partner of each slot.
    std::vector<std::array<int, 4>> partner(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
        const int bit = static_cast<int>((bits >> c) & 1);
        const int black = bg.black_quadrant_parity[c];
        const int u = bit == joins_black_bit(d, bg, c) ? black : 1 - black;
        auto& p = partner[c];
        p[(u + 1) % 4] = (u + 2) % 4;
        p[(u + 2) % 4] = (u + 1) % 4;
        p[(u + 3) % 4] = u;
        p[u] = (u + 3) % 4;
    }

    std::vector<int> order;
    std::vector<bool> visited(static_cast<std::size_t>(arcs), false);
    int arc = mk.outer_arc;
    while (!visited[arc]) {
        visited[arc] = true;
        const auto& pts = mk.arc_points[arc];
        if (forward[arc])
            order.insert(order.end(), pts.begin(), pts.end());
        else
            order.insert(order.end(), pts.rbegin(), pts.rend());
        const ArcEnd exit = forward[arc] ? d.arc_head(arc) : d.arc_tail(arc);
        const ArcEnd enter{exit.crossing, partner[exit.crossing][exit.slot]};
        arc = d.arc_at(enter);
        const ArcEnd start = forward[arc] ? d.arc_tail(arc) : d.arc_head(arc);
        if (!(start == enter))
            throw Error(ErrorKind::InternalGeometry, "resolutions",
                        "smoothing reverses the boundary orientation at crossing " +
                            std::to_string(enter.crossing + 1));
    }
    if (arc != mk.outer_arc || static_cast<int>(order.size()) != mk.num_points())
        throw Error(ErrorKind::NotSingleCircle, "resolutions", "resolution is not a single circle");

    TreeResolution tr;
    tr.bits = bits;
    for (int j = 0; j < n; ++j)
        tr.ones += static_cast<int>((bits >> j) & 1);
    const auto outer_pos = std::find(order.begin(), order.end(), mk.outer_point()) - order.begin();
    std::rotate(order.begin(), order.begin() + outer_pos + 1, order.end());
    tr.sigma = std::move(order);
    const int m = mk.num_points();
    tr.rank.assign(static_cast<std::size_t>(m), 0);
    tr.cumweight.assign(static_cast<std::size_t>(m), 0);
    long running = 0;
    for (int r = 0; r < m; ++r) {
        const int p = tr.sigma[r];
        tr.rank[p] = r + 1;
        running += wt.r[p];
        tr.cumweight[p] = running;
    }
    if (running != 0)
        throw Error(ErrorKind::InternalGeometry, "resolutions", "weights do not sum to zero");
    return tr;
}

std::vector<SuccessorPair> double_successors(const PlanarDiagram& d, const BlackGraph& bg,
                                             const WeightTable& wt,
                                             const std::vector<TreeResolution>& trees) {
    const int n = d.num_crossings();
    std::unordered_map<ResolutionBits, int> index;
    for (int t = 0; t < static_cast<int>(trees.size()); ++t)
        index.emplace(trees[t].bits, t);

    std::vector<SuccessorPair> out;
    for (int s = 0; s < static_cast<int>(trees.size()); ++s) {
        const TreeResolution& tr = trees[s];
        for (int j = 0; j < n; ++j) {
            if ((tr.bits >> j) & 1)
                continue;
            for (int k = j + 1; k < n; ++k) {
                if ((tr.bits >> k) & 1)
                    continue;
                const ResolutionBits target = tr.bits | (ResolutionBits{1} << j) | (ResolutionBits{1} << k);
                const auto it = index.find(target);
                if (it == index.end())
                    continue;

                auto ranks = [&](int x) {
                    int p = tr.rank[wt.special[x][0]];
                    int q = tr.rank[wt.special[x][1]];
                    return p < q ? std::pair{p, q} : std::pair{q, p};
                };
                auto [pj, qj] = ranks(j);
                auto [pk, qk] = ranks(k);
                SuccessorPair sp;
                sp.source = s;
                sp.target = it->second;
                if (pj < pk) {
                    sp.j1 = j;
                    sp.j2 = k;
                    sp.a = pj, sp.c = qj, sp.b = pk, sp.d = qk;
                } else {
                    sp.j1 = k;
                    sp.j2 = j;
                    sp.a = pk, sp.c = qk, sp.b = pj, sp.d = qj;
                }
                if (!(sp.a < sp.b && sp.b < sp.c && sp.c < sp.d))
                    throw Error(ErrorKind::InterleavingViolation, "resolutions",
                                "special indices of crossings " + std::to_string(j + 1) + " and " +
                                    std::to_string(k + 1) + " do not interleave");
                auto W = [&](int rank) { return rank == 0 ? 0L : tr.cumweight[tr.sigma[rank - 1]]; };
                sp.A = W(sp.a);
                sp.B = W(sp.b) - W(sp.a);
                sp.C = W(sp.c) - W(sp.b);
                sp.D = W(sp.d) - W(sp.c);
                if (sp.B + sp.C == 0 || sp.C + sp.D == 0)
                    throw Error(ErrorKind::NonGenericWeights, "resolutions",
                                "a split component has total weight zero; Omega is not generic");
                sp.nu = joins_black(d, bg, sp.j1, 1) ? 1 : 0;
                out.push_back(sp);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const SuccessorPair& x, const SuccessorPair& y) {
        return std::tie(x.source, x.target) < std::tie(y.source, y.target);
    });
    return out;
}

} // namespace treefloer
