#pragma once

// Marked points on arcs, the twisting function Omega, and the weights and
// special indices derived from them.

#include "treefloer/diagram.hpp"

#include <map>
#include <optional>
#include <string_view>
#include <vector>

namespace treefloer {

/// Marked points on the arcs of a diagram. Points are indexed 0..m-1; the
/// last index m-1 is the distinguished point on an arc of the unbounded face.
struct Marking {
    std::vector<std::vector<int>> arc_points; // per arc, in arc direction
    std::vector<int> point_arc;               // point -> arc
    int outer_arc = 0;

    int num_points() const noexcept { return static_cast<int>(point_arc.size()); }
    int outer_point() const noexcept { return num_points() - 1; }
};

/// Builds a marking from per-arc point counts (all >= 1). The outer point is
/// the last point on `outer_arc`, which must border the unbounded face.
Marking make_marking(const PlanarDiagram& d, const Coloring& col, const std::vector<int>& points_per_arc,
                     int outer_arc);

/// Lowest-numbered arc on the unbounded face.
int default_outer_arc(const PlanarDiagram& d, const Coloring& col);

/// One point per arc, with a second point on every arc whose single point
/// would take two weights or two special roles.
Marking auto_mark(const PlanarDiagram& d, const Coloring& col, const BlackGraph& bg);

/// Explicit marking override: {"points_per_arc": {"<label>": k, ...}, "outer_arc": label}.
/// Unlisted arcs carry one point.
Marking marking_from_json(const PlanarDiagram& d, const Coloring& col, std::string_view json_text);

enum class GenericityMode { Verified, Assumed };

struct OmegaAssignment {
    std::vector<long> values; // values[j] = Omega(j+1)
    GenericityMode mode = GenericityMode::Verified;
};

/// Omega(j) = 2^j for j = 1..n.
OmegaAssignment default_omega(int n);

struct GenericVerdict {
    bool generic = true;
    GenericityMode mode = GenericityMode::Verified;
    std::vector<int> witness; // coefficients in {-1,0,1} when not generic
};

/// Exhaustive mode checks all 3^n - 1 sign vectors (n <= 20); lazy mode only
/// marks the assignment as assumed.
GenericVerdict check_generic(const std::vector<long>& omega, bool exhaustive);

/// Verifies or marks a user-supplied Omega; throws NotGeneric with a witness.
OmegaAssignment make_omega(std::vector<long> values, bool exhaustive);

struct WeightTable {
    std::vector<long> r;                     // per point
    std::vector<std::array<int, 2>> special; // per crossing: points of i1, i3
    std::vector<std::array<int, 2>> weighted; // per crossing: points of i2, i4
};

/// Point nearest to the crossing along the arc at this end.
int nearest_point(const PlanarDiagram& d, const Marking& mk, ArcEnd end);

/// Throws WeightConflict when two weights or two special roles land on one point.
WeightTable assign_weights(const PlanarDiagram& d, const Marking& mk, const BlackGraph& bg,
                           const OmegaAssignment& om);

} // namespace treefloer
