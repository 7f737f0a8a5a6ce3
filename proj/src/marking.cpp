#include "treefloer/marking.hpp"

#include "treefloer/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace treefloer {

namespace {

[[noreturn]] void fail(ErrorKind kind, const std::string& msg) {
    throw Error(kind, "marking", msg);
}

bool borders_unbounded(const PlanarDiagram& d, const Coloring& col, int arc) {
    const ArcEnd t = d.arc_tail(arc);
    const ArcEnd h = d.arc_head(arc);
    return col.dart_face[4 * t.crossing + t.slot] == col.unbounded_face ||
           col.dart_face[4 * h.crossing + h.slot] == col.unbounded_face;
}

} // namespace

int default_outer_arc(const PlanarDiagram& d, const Coloring& col) {
    for (int a = 0; a < d.num_arcs(); ++a)
        if (borders_unbounded(d, col, a))
            return a;
    throw Error(ErrorKind::InternalGeometry, "marking", "no arc on the unbounded face");
}

Marking make_marking(const PlanarDiagram& d, const Coloring& col, const std::vector<int>& points_per_arc,
                     int outer_arc) {
    if (static_cast<int>(points_per_arc.size()) != d.num_arcs())
        fail(ErrorKind::MalformedInput, "points_per_arc must list every arc");
    if (outer_arc < 0 || outer_arc >= d.num_arcs())
        fail(ErrorKind::MalformedInput, "outer arc out of range");
    if (!borders_unbounded(d, col, outer_arc))
        fail(ErrorKind::MalformedInput, "outer arc " + std::to_string(d.original_label(outer_arc)) +
                                            " does not border the unbounded face");
    Marking mk;
    mk.outer_arc = outer_arc;
    mk.arc_points.resize(static_cast<std::size_t>(d.num_arcs()));
    int next = 0;
    for (int a = 0; a < d.num_arcs(); ++a) {
        if (points_per_arc[a] < 1)
            fail(ErrorKind::MalformedInput, "every arc needs at least one marked point");
        const int own = a == outer_arc ? points_per_arc[a] - 1 : points_per_arc[a];
        for (int k = 0; k < own; ++k) {
            mk.arc_points[a].push_back(next++);
            mk.point_arc.push_back(a);
        }
    }
    mk.arc_points[outer_arc].push_back(next);
    mk.point_arc.push_back(outer_arc);
    return mk;
}

int nearest_point(const PlanarDiagram& d, const Marking& mk, ArcEnd end) {
    const auto& pts = mk.arc_points[d.arc_at(end)];
    return d.is_outgoing(end) ? pts.front() : pts.back();
}

Marking auto_mark(const PlanarDiagram& d, const Coloring& col, const BlackGraph& bg) {
    // Role kind per arc end: weighted (i2, i4) or special (i1, i3).
    std::vector<std::vector<bool>> weighted_ends(static_cast<std::size_t>(d.num_arcs()));
    for (int c = 0; c < d.num_crossings(); ++c)
        for (int k = 0; k < 4; ++k)
            weighted_ends[d.arc_at(c, bg.roles[c].slot[k])].push_back(k % 2 == 1);
    std::vector<int> counts(static_cast<std::size_t>(d.num_arcs()), 1);
    for (int a = 0; a < d.num_arcs(); ++a) {
        // A kink arc starts and ends at one crossing; split it so that the
        // special and weighted points of that crossing stay apart.
        const bool loop = d.arc_tail(a).crossing == d.arc_head(a).crossing;
        if (loop || weighted_ends[a][0] == weighted_ends[a][1])
            counts[a] = 2;
    }
    return make_marking(d, col, counts, default_outer_arc(d, col));
}

Marking marking_from_json(const PlanarDiagram& d, const Coloring& col, std::string_view json_text) {
    std::vector<int> counts(static_cast<std::size_t>(d.num_arcs()), 1);
    int outer = -1;
    try {
        const auto j = nlohmann::json::parse(json_text);
        if (j.contains("points_per_arc")) {
            for (const auto& [key, value] : j.at("points_per_arc").items())
                counts[d.arc_from_label(std::stol(key))] = value.get<int>();
        }
        if (j.contains("outer_arc"))
            outer = d.arc_from_label(j.at("outer_arc").get<long>());
    } catch (const nlohmann::json::exception& ex) {
        fail(ErrorKind::MalformedInput, std::string("bad marking JSON: ") + ex.what());
    } catch (const std::logic_error&) {
        fail(ErrorKind::MalformedInput, "bad arc label in marking JSON");
    }
    return make_marking(d, col, counts, outer < 0 ? default_outer_arc(d, col) : outer);
}

OmegaAssignment default_omega(int n) {
    if (n < 1 || n > 60)
        fail(ErrorKind::MalformedInput, "default Omega supports 1..60 crossings");
    OmegaAssignment om;
    for (int j = 1; j <= n; ++j)
        om.values.push_back(1L << j);
    om.mode = GenericityMode::Verified;
    return om;
}

GenericVerdict check_generic(const std::vector<long>& omega, bool exhaustive) {
    GenericVerdict v;
    if (!exhaustive) {
        v.mode = GenericityMode::Assumed;
        return v;
    }
    const std::size_t n = omega.size();
    if (n > 20)
        fail(ErrorKind::MalformedInput, "exhaustive genericity check limited to 20 crossings");
    // A vanishing {-1,0,1}-combination is the difference of two disjoint
    // subsets with equal sums, so it suffices to find a repeated subset sum.
    std::vector<std::pair<long, std::uint32_t>> sums;
    sums.reserve(std::size_t{1} << n);
    for (std::uint32_t s = 0; s < (std::uint32_t{1} << n); ++s) {
        long total = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (s >> j & 1)
                total += omega[j];
        sums.emplace_back(total, s);
    }
    std::sort(sums.begin(), sums.end());
    for (std::size_t i = 1; i < sums.size(); ++i) {
        if (sums[i].first != sums[i - 1].first)
            continue;
        std::uint32_t p = sums[i - 1].second;
        std::uint32_t q = sums[i].second;
        const std::uint32_t common = p & q;
        p &= ~common;
        q &= ~common;
        v.generic = false;
        v.witness.assign(n, 0);
        for (std::size_t j = 0; j < n; ++j)
            v.witness[j] = (p >> j & 1) ? 1 : ((q >> j & 1) ? -1 : 0);
        const auto first = std::find_if(v.witness.begin(), v.witness.end(), [](int x) { return x != 0; });
        if (first != v.witness.end() && *first < 0)
            for (auto& x : v.witness)
                x = -x;
        return v;
    }
    return v;
}

OmegaAssignment make_omega(std::vector<long> values, bool exhaustive) {
    // Exponents grow with the sum of |Omega|; past this bound a single
    // polynomial no longer fits in memory.
    constexpr long kMaxOmegaSum = 1L << 28;
    long total = 0;
    for (long w : values) {
        if (w < -kMaxOmegaSum || w > kMaxOmegaSum || (total += std::abs(w)) > kMaxOmegaSum)
            fail(ErrorKind::MalformedInput, "Omega too large: the sum of |Omega| must stay below 2^28");
    }
    const GenericVerdict v = check_generic(values, exhaustive);
    if (!v.generic) {
        std::string w;
        for (std::size_t j = 0; j < v.witness.size(); ++j)
            w += (j ? "," : "") + std::to_string(v.witness[j]);
        fail(ErrorKind::NotGeneric, "Omega is not generic; vanishing combination (" + w + ")");
    }
    OmegaAssignment om;
    om.values = std::move(values);
    om.mode = v.mode;
    return om;
}

WeightTable assign_weights(const PlanarDiagram& d, const Marking& mk, const BlackGraph& bg,
                           const OmegaAssignment& om) {
    const int n = d.num_crossings();
    if (static_cast<int>(om.values.size()) != n)
        fail(ErrorKind::MalformedInput, "Omega needs " + std::to_string(n) + " values, got " +
                                            std::to_string(om.values.size()));
    const int m = mk.num_points();
    WeightTable wt;
    wt.r.assign(static_cast<std::size_t>(m), 0);
    std::vector<int> weighted_hits(static_cast<std::size_t>(m), 0);
    std::vector<int> special_hits(static_cast<std::size_t>(m), 0);
    for (int c = 0; c < n; ++c) {
        std::array<int, 4> pt{};
        for (int k = 0; k < 4; ++k)
            pt[k] = nearest_point(d, mk, {c, bg.roles[c].slot[k]});
        wt.special.push_back({pt[0], pt[2]});
        wt.weighted.push_back({pt[1], pt[3]});
        wt.r[pt[1]] += om.values[c];
        wt.r[pt[3]] -= om.values[c];
        for (int k : {1, 3})
            if (++weighted_hits[pt[k]] > 1)
                fail(ErrorKind::WeightConflict, "marked point " + std::to_string(pt[k] + 1) +
                                                    " receives two weights; add marked points");
        for (int k : {0, 2})
            if (++special_hits[pt[k]] > 1)
                fail(ErrorKind::WeightConflict, "marked point " + std::to_string(pt[k] + 1) +
                                                    " is special for two crossing ends; add marked points");
    }
    return wt;
}

} // namespace treefloer
