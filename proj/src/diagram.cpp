#include "treefloer/diagram.hpp"

#include "treefloer/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

namespace treefloer {

namespace {

[[noreturn]] void fail(ErrorKind kind, const std::string& msg) {
    throw Error(kind, "diagram", msg);
}

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        parent_[b] = a;
        return true;
    }

private:
    std::vector<int> parent_;
};

// Orbits of the face permutation on darts.
std::vector<std::vector<ArcEnd>> trace_faces(const PlanarDiagram& d, std::vector<int>& dart_face) {
    const int n = d.num_crossings();
    dart_face.assign(static_cast<std::size_t>(4 * n), -1);
    std::vector<std::vector<ArcEnd>> faces;
    for (int start = 0; start < 4 * n; ++start) {
        if (dart_face[start] >= 0)
            continue;
        const int id = static_cast<int>(faces.size());
        faces.emplace_back();
        ArcEnd e{start / 4, start % 4};
        while (dart_face[4 * e.crossing + e.slot] < 0) {
            dart_face[4 * e.crossing + e.slot] = id;
            faces.back().push_back(e);
            const ArcEnd o = d.opposite_end(e);
            e = ArcEnd{o.crossing, (o.slot + 3) % 4};
        }
    }
    return faces;
}

} // namespace

ArcEnd PlanarDiagram::opposite_end(ArcEnd e) const {
    const int a = arc_at(e);
    return tail_[a] == e ? head_[a] : tail_[a];
}

int PlanarDiagram::arc_from_label(long label) const {
    const auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label)
        fail(ErrorKind::MalformedInput, "no arc labeled " + std::to_string(label));
    return static_cast<int>(it - labels_.begin());
}

PlanarDiagram PlanarDiagram::from_records(const std::vector<std::array<long, 4>>& records) {
    return build(records, nullptr);
}

PlanarDiagram PlanarDiagram::build(const std::vector<std::array<long, 4>>& records,
                                   const std::vector<ArcEnd>* tail_hint) {
    if (records.empty())
        fail(ErrorKind::EmptyDiagram, "diagram has no crossings");
    const int n = static_cast<int>(records.size());

    std::map<long, int> count;
    for (const auto& r : records)
        for (long label : r) {
            if (label <= 0)
                fail(ErrorKind::MalformedInput, "arc labels must be positive integers");
            ++count[label];
        }
    for (const auto& [label, k] : count)
        if (k != 2)
            fail(ErrorKind::ArcMultiplicity,
                 "arc " + std::to_string(label) + " appears " + std::to_string(k) + " times");

    PlanarDiagram d;
    for (const auto& [label, k] : count)
        d.labels_.push_back(label);
    if (static_cast<int>(d.labels_.size()) != 2 * n)
        fail(ErrorKind::ArcMultiplicity, "expected " + std::to_string(2 * n) + " distinct arcs");

    std::vector<std::vector<ArcEnd>> ends(static_cast<std::size_t>(2 * n));
    d.crossings_.resize(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c)
        for (int s = 0; s < 4; ++s) {
            const int a = d.arc_from_label(records[c][s]);
            d.crossings_[c][s] = a;
            ends[a].push_back({c, s});
        }

    UnionFind uf(n);
    int groups = n;
    for (const auto& e : ends)
        if (uf.unite(e[0].crossing, e[1].crossing))
            --groups;
    if (groups != 1)
        fail(ErrorKind::Disconnected, "underlying projection is not connected");

    // Orient each component: under-passages are authoritative, label
    // succession decides components that only pass over.
    d.tail_.assign(static_cast<std::size_t>(2 * n), {});
    d.head_.assign(static_cast<std::size_t>(2 * n), {});
    std::vector<bool> seen(static_cast<std::size_t>(2 * n), false);
    for (int start = 0; start < 2 * n; ++start) {
        if (seen[start])
            continue;
        ++d.components_;
        struct Step {
            int arc;
            ArcEnd from;
            ArcEnd to;
        };
        std::vector<Step> walk;
        int arc = start;
        ArcEnd from = ends[start][0];
        while (!seen[arc]) {
            seen[arc] = true;
            const ArcEnd to = ends[arc][0] == from ? ends[arc][1] : ends[arc][0];
            walk.push_back({arc, from, to});
            from = ArcEnd{to.crossing, (to.slot + 2) % 4};
            arc = d.crossings_[from.crossing][from.slot];
        }
        if (walk.front().from != from)
            fail(ErrorKind::MalformedInput, "strand does not close up consistently");

        int forward = 0;
        int backward = 0;
        for (const auto& st : walk) {
            if (st.to.slot == 0 || st.from.slot == 2)
                ++forward;
            if (st.to.slot == 2 || st.from.slot == 0)
                ++backward;
        }
        if (forward > 0 && backward > 0)
            fail(ErrorKind::MalformedInput, "inconsistent under-strand orientation");
        bool flip = backward > 0;
        if (forward == 0 && backward == 0) {
            if (tail_hint) {
                flip = (*tail_hint)[walk.front().arc] != walk.front().from;
            } else {
                int up = 0;
                int down = 0;
                for (std::size_t i = 0; i < walk.size(); ++i) {
                    const int a = walk[i].arc;
                    const int b = walk[(i + 1) % walk.size()].arc;
                    up += b == a + 1;
                    down += a == b + 1;
                }
                flip = down > up;
            }
        }
        for (const auto& st : walk) {
            d.tail_[st.arc] = flip ? st.to : st.from;
            d.head_[st.arc] = flip ? st.from : st.to;
        }
    }

    d.over_in_.resize(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
        const auto& x = d.crossings_[c];
        const bool in1 = d.head_[x[1]] == ArcEnd{c, 1};
        const bool in3 = d.head_[x[3]] == ArcEnd{c, 3};
        if (in1 == in3)
            fail(ErrorKind::MalformedInput, "over-strand orientation undefined at crossing " +
                                                std::to_string(c + 1));
        d.over_in_[c] = in1 ? 1 : 3;
    }

    std::vector<int> dart_face;
    const auto faces = trace_faces(d, dart_face);
    if (static_cast<int>(faces.size()) != n + 2)
        fail(ErrorKind::MalformedInput, "PD code is not planar (" + std::to_string(faces.size()) +
                                            " faces, expected " + std::to_string(n + 2) + ")");
    return d;
}

std::vector<std::array<long, 4>> PlanarDiagram::records() const {
    std::vector<std::array<long, 4>> out;
    out.reserve(crossings_.size());
    for (const auto& x : crossings_)
        out.push_back({labels_[x[0]], labels_[x[1]], labels_[x[2]], labels_[x[3]]});
    return out;
}

std::string PlanarDiagram::to_pd_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& r : records()) {
        if (!first)
            os << ' ';
        first = false;
        os << "X[" << r[0] << ',' << r[1] << ',' << r[2] << ',' << r[3] << ']';
    }
    return os.str();
}

PlanarDiagram parse_pd(std::string_view text) {
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
            ++i;
    };
    skip();
    if (i < text.size() && text[i] == '[') {
        std::vector<std::array<long, 4>> records;
        try {
            const auto j = nlohmann::json::parse(text.substr(i));
            for (const auto& rec : j) {
                if (!rec.is_array() || rec.size() != 4)
                    fail(ErrorKind::MalformedInput, "each crossing needs four arc labels");
                std::array<long, 4> r{};
                for (std::size_t k = 0; k < 4; ++k) {
                    if (!rec[k].is_number_integer())
                        fail(ErrorKind::MalformedInput, "arc labels must be integers");
                    r[k] = rec[k].get<long>();
                }
                records.push_back(r);
            }
        } catch (const nlohmann::json::exception& ex) {
            fail(ErrorKind::MalformedInput, std::string("bad JSON PD code: ") + ex.what());
        }
        return PlanarDiagram::from_records(records);
    }

    bool wrapped = false;
    if (text.substr(i, 3) == "PD[") {
        wrapped = true;
        i += 3;
    }
    auto expect = [&](char ch) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        if (i >= text.size() || text[i] != ch)
            fail(ErrorKind::MalformedInput,
                 std::string("expected '") + ch + "' at offset " + std::to_string(i));
        ++i;
    };
    auto number = [&]() -> long {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
            fail(ErrorKind::MalformedInput, "expected arc label at offset " + std::to_string(i));
        long v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            v = v * 10 + (text[i++] - '0');
            if (v > 1'000'000'000)
                fail(ErrorKind::MalformedInput, "arc label too large");
        }
        return v;
    };

    std::vector<std::array<long, 4>> records;
    while (true) {
        skip();
        if (i >= text.size())
            break;
        if (wrapped && text[i] == ']') {
            ++i;
            wrapped = false;
            continue;
        }
        expect('X');
        expect('[');
        std::array<long, 4> r{};
        for (int k = 0; k < 4; ++k) {
            if (k > 0)
                expect(',');
            r[k] = number();
        }
        expect(']');
        records.push_back(r);
    }
    if (wrapped)
        fail(ErrorKind::MalformedInput, "unterminated PD[...]");
    return PlanarDiagram::from_records(records);
}

PlanarDiagram mirror(const PlanarDiagram& d) {
    // Rotate each record so that the old over-strand becomes the incoming
    // under-strand; orientation is carried over unchanged.
    std::vector<std::array<long, 4>> records;
    for (int c = 0; c < d.num_crossings(); ++c) {
        const int r = d.over_in_slot(c);
        std::array<long, 4> rec{};
        for (int s = 0; s < 4; ++s)
            rec[s] = d.original_label(d.arc_at(c, (s + r) % 4));
        records.push_back(rec);
    }
    // Components passing only under become over-only; keep their orientation.
    std::vector<ArcEnd> tails;
    for (int a = 0; a < d.num_arcs(); ++a) {
        const ArcEnd t = d.arc_tail(a);
        tails.push_back({t.crossing, (t.slot - d.over_in_slot(t.crossing) + 4) % 4});
    }
    return PlanarDiagram::build(records, &tails);
}

Coloring faces_and_coloring(const PlanarDiagram& d, std::optional<int> unbounded_face_hint) {
    Coloring col;
    col.faces = trace_faces(d, col.dart_face);
    const int nf = col.num_faces();
    if (unbounded_face_hint) {
        if (*unbounded_face_hint < 0 || *unbounded_face_hint >= nf)
            fail(ErrorKind::MalformedInput, "unbounded face " + std::to_string(*unbounded_face_hint) +
                                                " out of range 0.." + std::to_string(nf - 1));
        col.unbounded_face = *unbounded_face_hint;
    } else {
        std::size_t best = 0;
        for (int f = 0; f < nf; ++f)
            if (col.faces[f].size() > best) {
                best = col.faces[f].size();
                col.unbounded_face = f;
            }
    }

    std::vector<int> side(static_cast<std::size_t>(nf), -1);
    side[col.unbounded_face] = 0;
    std::queue<int> todo;
    todo.push(col.unbounded_face);
    while (!todo.empty()) {
        const int f = todo.front();
        todo.pop();
        for (const ArcEnd& e : col.faces[f]) {
            const ArcEnd o = d.opposite_end(e);
            const int g = col.dart_face[4 * o.crossing + o.slot];
            if (side[g] < 0) {
                side[g] = 1 - side[f];
                todo.push(g);
            } else if (side[g] == side[f]) {
                throw Error(ErrorKind::InternalGeometry, "diagram", "faces admit no checkerboard coloring");
            }
        }
    }
    col.color.resize(static_cast<std::size_t>(nf));
    for (int f = 0; f < nf; ++f)
        col.color[f] = side[f] == 1 ? Color::Black : Color::White;
    return col;
}

BlackGraph black_graph(const PlanarDiagram& d, const Coloring& col, EdgeOrientation orientation) {
    BlackGraph bg;
    bg.face_vertex.assign(static_cast<std::size_t>(col.num_faces()), -1);
    for (int f = 0; f < col.num_faces(); ++f)
        if (col.color[f] == Color::Black) {
            bg.face_vertex[f] = bg.num_vertices++;
            bg.vertex_face.push_back(f);
        }

    for (int c = 0; c < d.num_crossings(); ++c) {
        const Color q0 = col.color[col.quadrant_face(c, 0)];
        const Color q1 = col.color[col.quadrant_face(c, 1)];
        const Color q2 = col.color[col.quadrant_face(c, 2)];
        const Color q3 = col.color[col.quadrant_face(c, 3)];
        if (q0 != q2 || q1 != q3 || q0 == q1)
            throw Error(ErrorKind::InternalGeometry, "diagram",
                        "quadrant colors inconsistent at crossing " + std::to_string(c + 1));
        const int u = q0 == Color::Black ? 0 : 1;
        const int vu = bg.face_vertex[col.quadrant_face(c, u)];
        const int vw = bg.face_vertex[col.quadrant_face(c, u + 2)];
        // Loops take quadrant u as tail under the default convention.
        bool tail_is_u = vu == vw ? true : vu < vw;
        if (orientation == EdgeOrientation::LargerTail)
            tail_is_u = !tail_is_u;
        const int t = tail_is_u ? u : u + 2;

        CrossingRoles roles;
        roles.tail_quadrant = t;
        roles.slot[0] = (t + 3) % 4; // i1: head black / left white
        roles.slot[1] = t % 4;       // i2: tail black / left white
        roles.slot[2] = (t + 1) % 4; // i3: tail black / right white
        roles.slot[3] = (t + 2) % 4; // i4: head black / right white
        bg.edges.push_back({tail_is_u ? vu : vw, tail_is_u ? vw : vu});
        bg.roles.push_back(roles);
        bg.black_quadrant_parity.push_back(u);
    }
    return bg;
}

SignData sign_data(const PlanarDiagram& d) {
    SignData s;
    for (int c = 0; c < d.num_crossings(); ++c)
        (d.sign(c) > 0 ? s.n_plus : s.n_minus)++;
    s.components = d.num_components();
    return s;
}

} // namespace treefloer
