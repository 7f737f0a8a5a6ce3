#pragma once

// Oriented planar diagrams given as PD codes, their faces, checkerboard
// coloring and black graph.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace treefloer {

/// One end of an arc: crossing index and slot 0..3, slots counterclockwise
/// with slot 0 the incoming under-strand.
struct ArcEnd {
    int crossing = 0;
    int slot = 0;
    friend bool operator==(const ArcEnd&, const ArcEnd&) = default;
};

/// Validated oriented planar diagram. Arcs are labeled densely 0..2n-1 in the
/// order of the input labels; `labels` keeps the original integers.
class PlanarDiagram {
public:
    /// Validates a list of PD records (Knot Atlas convention). Throws Error.
    static PlanarDiagram from_records(const std::vector<std::array<long, 4>>& records);

    int num_crossings() const noexcept { return static_cast<int>(crossings_.size()); }
    int num_arcs() const noexcept { return static_cast<int>(tail_.size()); }
    int num_components() const noexcept { return components_; }

    /// Dense arc id at a crossing slot.
    int arc_at(int crossing, int slot) const { return crossings_[crossing][slot]; }
    int arc_at(ArcEnd e) const { return crossings_[e.crossing][e.slot]; }
    const std::array<int, 4>& crossing(int c) const { return crossings_[c]; }
    /// End where the arc leaves a crossing.
    ArcEnd arc_tail(int arc) const { return tail_[arc]; }
    /// End where the arc enters a crossing.
    ArcEnd arc_head(int arc) const { return head_[arc]; }
    /// The other end of the arc through this end.
    ArcEnd opposite_end(ArcEnd e) const;
    bool is_outgoing(ArcEnd e) const { return tail_[arc_at(e)] == e; }
    /// Slot (1 or 3) where the over-strand enters crossing c.
    int over_in_slot(int c) const { return over_in_[c]; }
    /// +1 or -1.
    int sign(int c) const { return over_in_[c] == 3 ? +1 : -1; }
    long original_label(int arc) const { return labels_[arc]; }
    int arc_from_label(long label) const;

    /// PD records with original labels.
    std::vector<std::array<long, 4>> records() const;
    std::string to_pd_string() const;

    friend bool operator==(const PlanarDiagram& a, const PlanarDiagram& b) {
        return a.records() == b.records();
    }

private:
    friend PlanarDiagram mirror(const PlanarDiagram& d);
    static PlanarDiagram build(const std::vector<std::array<long, 4>>& records,
                               const std::vector<ArcEnd>* tail_hint);

    std::vector<std::array<int, 4>> crossings_;
    std::vector<ArcEnd> tail_;
    std::vector<ArcEnd> head_;
    std::vector<int> over_in_;
    std::vector<long> labels_;
    int components_ = 0;
};

/// Parses "X[1,4,2,5] X[3,6,4,1] ..." (optionally wrapped in PD[...]) or a
/// JSON array of 4-tuples.
PlanarDiagram parse_pd(std::string_view text);

/// Exchanges over and under at every crossing.
PlanarDiagram mirror(const PlanarDiagram& d);

enum class Color : std::uint8_t { White, Black };

/// Faces of the diagram with a checkerboard coloring. Darts are arc-sides:
/// the dart (c, s) runs along the arc leaving crossing c at slot s and has
/// its face on the left.
struct Coloring {
    std::vector<std::vector<ArcEnd>> faces;
    std::vector<Color> color;
    int unbounded_face = 0;
    /// dart_face[4c + s]
    std::vector<int> dart_face;

    int num_faces() const noexcept { return static_cast<int>(faces.size()); }
    /// Face in the quadrant between slots q and q+1 at crossing c.
    int quadrant_face(int c, int q) const { return dart_face[4 * c + (q & 3)]; }
};

/// Enumerates faces and colors them with the chosen face white and unbounded.
/// Without a hint the longest face (ties to the lowest id) is unbounded.
Coloring faces_and_coloring(const PlanarDiagram& d, std::optional<int> unbounded_face_hint = {});

enum class EdgeOrientation { SmallerTail, LargerTail };

/// Arc-end roles at a crossing, viewed with the black-graph edge pointing
/// left to right: i1 upper right, i2 upper left, i3 lower left, i4 lower
/// right. Values are slots.
struct CrossingRoles {
    int tail_quadrant = 0; // black quadrant holding the edge's tail
    std::array<int, 4> slot{}; // slot[k] is the slot of role i_{k+1}
};

struct BlackEdge {
    int tail = 0;
    int head = 0;
    bool is_loop() const noexcept { return tail == head; }
};

struct BlackGraph {
    int num_vertices = 0;
    std::vector<int> vertex_face;   // black vertex -> face id
    std::vector<int> face_vertex;   // face id -> black vertex or -1
    std::vector<BlackEdge> edges;   // one per crossing
    std::vector<CrossingRoles> roles;
    /// 0 if quadrants 0 and 2 are black at the crossing, else 1.
    std::vector<int> black_quadrant_parity;
};

BlackGraph black_graph(const PlanarDiagram& d, const Coloring& col,
                       EdgeOrientation orientation = EdgeOrientation::SmallerTail);

struct SignData {
    int n_plus = 0;
    int n_minus = 0;
    int components = 0;
};

SignData sign_data(const PlanarDiagram& d);

} // namespace treefloer
