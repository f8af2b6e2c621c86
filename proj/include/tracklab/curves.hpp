#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "tracklab/pattern.hpp"
#include "tracklab/triangulation.hpp"

namespace tracklab {

/// A point where the curve system meets an edge. Positions are indexed from
/// the smaller-vertex end of the edge and are re-indexed after every
/// mutation; (edge, pos) is the crossing's identity.
struct Crossing {
    EdgeId edge = -1;
    int pos = -1;

    auto operator<=>(const Crossing&) const = default;
};

/// A straight arc inside one face joining two crossings on its boundary.
struct Chord {
    FaceId face = -1;
    Crossing a, b;

    Crossing other(const Crossing& c) const { return c == a ? b : a; }
    bool returning() const { return a.edge == b.edge; }
};

namespace detail {

struct BoundaryItem {
    bool corner = false;
    VertexId vertex = -1;  // set for corners
    Crossing crossing;     // set for crossings
};

// Boundary of a face as a cyclic sequence: corner A, crossings of AB from A,
// corner B, crossings of BC from B, corner C, crossings of CA from C (i.e.
// stored positions reversed). Vertices of a face are sorted, so AB and BC
// are traversed in stored order and CA against it.
inline std::vector<BoundaryItem> face_boundary(const Triangulation& tri, FaceId f,
                                               const std::vector<int>& counts) {
    const auto& vs = tri.face_vertices(f);
    std::vector<BoundaryItem> items;
    auto run = [&](VertexId from, VertexId to) {
        items.push_back({true, from, {}});
        EdgeId e = tri.edge_id(from, to);
        int n = counts[e];
        bool forward = tri.edge(e).u == from;
        for (int k = 0; k < n; ++k) {
            int pos = forward ? k : n - 1 - k;
            items.push_back({false, -1, {e, pos}});
        }
    };
    run(vs[0], vs[1]);
    run(vs[1], vs[2]);
    run(vs[2], vs[0]);
    return items;
}

}  // namespace detail

/// An embedded curve system: crossing counts per edge plus the chords inside
/// each face. Construction validates embeddedness (every crossing carries
/// exactly two chords, one in each incident face; chords within a face are
/// pairwise non-crossing) and computes the decomposition into closed curves.
/// Instances are immutable; rewriting operations build new systems.
class CurveSystem {
  public:
    CurveSystem(const Triangulation& tri, std::vector<int> counts, std::vector<Chord> chords)
        : tri_(&tri), counts_(std::move(counts)), chords_(std::move(chords)) {
        canonicalize();
        build_index();
        check_noncrossing();
        trace_curves();
    }

    CurveSystem(Triangulation&&, std::vector<int>, std::vector<Chord>) = delete;

    static CurveSystem empty(const Triangulation& tri) {
        return CurveSystem(tri, std::vector<int>(tri.edge_count(), 0), {});
    }

    const Triangulation& tri() const { return *tri_; }
    const std::vector<int>& edge_counts() const { return counts_; }
    const std::vector<Chord>& chords() const { return chords_; }

    int crossing_count() const {
        int total = 0;
        for (int c : counts_) total += c;
        return total;
    }

    bool empty() const { return chords_.empty(); }

    /// Index of the chord meeting a crossing inside the given face.
    int chord_at(const Crossing& c, FaceId f) const {
        const auto& faces = tri_->edge_faces(c.edge);
        int side = faces[0] == f ? 0 : (faces[1] == f ? 1 : -1);
        if (side < 0) throw Error(ErrorCode::Internal, "face does not contain crossing edge");
        return chord_idx_[c.edge][c.pos][side];
    }

    int curve_count() const { return static_cast<int>(curves_.size()); }
    const std::vector<std::vector<Crossing>>& curves() const { return curves_; }

    int curve_of(const Crossing& c) const { return curve_of_[c.edge][c.pos]; }

    /// Normal means no chord returns to the edge it started from.
    bool is_normal() const {
        for (const auto& c : chords_)
            if (c.returning()) return false;
        return true;
    }

    PatternCoords weights() const { return PatternCoords(counts_); }

  private:
    void canonicalize() {
        if (static_cast<int>(counts_.size()) != tri_->edge_count())
            throw Error(ErrorCode::MismatchedTriangulation, "edge count mismatch");
        for (auto& ch : chords_)
            if (ch.b < ch.a) std::swap(ch.a, ch.b);
        std::sort(chords_.begin(), chords_.end(), [](const Chord& x, const Chord& y) {
            return std::tie(x.face, x.a, x.b) < std::tie(y.face, y.a, y.b);
        });
    }

    void build_index() {
        chord_idx_.assign(counts_.size(), {});
        for (std::size_t e = 0; e < counts_.size(); ++e) {
            if (counts_[e] < 0) throw Error(ErrorCode::BadInput, "negative crossing count");
            chord_idx_[e].assign(counts_[e], {-1, -1});
        }
        for (int i = 0; i < static_cast<int>(chords_.size()); ++i) {
            const Chord& ch = chords_[i];
            if (ch.a == ch.b) throw Error(ErrorCode::BadInput, "chord with equal endpoints");
            for (const Crossing& c : {ch.a, ch.b}) {
                if (c.edge < 0 || c.edge >= tri_->edge_count() || c.pos < 0 ||
                    c.pos >= counts_[c.edge])
                    throw Error(ErrorCode::BadInput, "chord endpoint out of range");
                const auto& faces = tri_->edge_faces(c.edge);
                int side = faces[0] == ch.face ? 0 : (faces[1] == ch.face ? 1 : -1);
                if (side < 0)
                    throw Error(ErrorCode::BadInput, "chord face does not contain endpoint edge");
                if (chord_idx_[c.edge][c.pos][side] != -1)
                    throw Error(ErrorCode::BadInput, "crossing has two chords in one face");
                chord_idx_[c.edge][c.pos][side] = i;
            }
        }
        for (std::size_t e = 0; e < counts_.size(); ++e)
            for (int p = 0; p < counts_[e]; ++p)
                for (int s = 0; s < 2; ++s)
                    if (chord_idx_[e][p][s] == -1)
                        throw Error(ErrorCode::BadInput, "crossing missing a chord");
    }

    // Chords of a face must be nested like balanced brackets along the
    // face boundary.
    void check_noncrossing() const {
        for (FaceId f = 0; f < tri_->face_count(); ++f) {
            auto items = detail::face_boundary(*tri_, f, counts_);
            std::vector<int> stack;
            for (const auto& it : items) {
                if (it.corner) continue;
                int chord = chord_at(it.crossing, f);
                if (!stack.empty() && stack.back() == chord)
                    stack.pop_back();
                else
                    stack.push_back(chord);
            }
            if (!stack.empty())
                throw Error(ErrorCode::BadInput,
                            "crossing chords in face " + std::to_string(f));
        }
    }

    void trace_curves() {
        curve_of_.assign(counts_.size(), {});
        for (std::size_t e = 0; e < counts_.size(); ++e) curve_of_[e].assign(counts_[e], -1);

        for (EdgeId e = 0; e < tri_->edge_count(); ++e) {
            for (int p = 0; p < counts_[e]; ++p) {
                if (curve_of_[e][p] != -1) continue;
                int id = static_cast<int>(curves_.size());
                std::vector<Crossing> cycle;
                Crossing start{e, p};
                FaceId start_face = tri_->edge_faces(e)[0];
                Crossing cur = start;
                FaceId face = start_face;
                do {
                    cycle.push_back(cur);
                    curve_of_[cur.edge][cur.pos] = id;
                    const Chord& ch = chords_[chord_at(cur, face)];
                    cur = ch.other(cur);
                    face = tri_->other_face(cur.edge, ch.face);
                } while (!(cur == start && face == start_face));
                curves_.push_back(std::move(cycle));
            }
        }
    }

    const Triangulation* tri_;
    std::vector<int> counts_;
    std::vector<Chord> chords_;
    std::vector<std::vector<std::array<int, 2>>> chord_idx_;
    std::vector<std::vector<Crossing>> curves_;
    std::vector<std::vector<int>> curve_of_;
};

/// One connected closed curve with its weight vector.
struct Track {
    std::vector<Crossing> cycle;
    PatternCoords weights;
    int size = 0;  // crossings with the 1-skeleton
};

/// Canonical embedded realization of a pattern: in every face the arcs at
/// each corner are nested, the i-th crossing from the corner on one incident
/// edge joined to the i-th from the corner on the other.
CurveSystem realize(Triangulation&&, const PatternCoords&) = delete;

inline CurveSystem realize(const Triangulation& tri, const PatternCoords& p) {
    auto report = validate_pattern(tri, p);
    if (!report.valid()) {
        const auto& v = report.violations.front();
        throw Error(ErrorCode::InvalidPattern,
                    "matching conditions fail on face " + std::to_string(v.face));
    }

    std::vector<Chord> chords;
    for (FaceId f = 0; f < tri.face_count(); ++f) {
        CornerTriple ct = corner_coordinates(tri, p, f);
        const auto& vs = tri.face_vertices(f);
        const auto& fe = tri.face_edges(f);
        for (int i = 0; i < 3; ++i) {
            VertexId x = vs[i];
            EdgeId e1 = fe[(i + 1) % 3];  // incident to x
            EdgeId e2 = fe[(i + 2) % 3];
            auto from_corner = [&](EdgeId e, int k) {
                int n = p[e];
                return tri.edge(e).u == x ? k : n - 1 - k;
            };
            for (int k = 0; k < ct.t[i]; ++k)
                chords.push_back({f, {e1, from_corner(e1, k)}, {e2, from_corner(e2, k)}});
        }
    }
    return CurveSystem(tri, p.weights(), std::move(chords));
}

/// Split a normal system into its connected tracks. The sum of the track
/// weight vectors equals the system's weights.
inline std::vector<Track> extract_tracks(const CurveSystem& cs) {
    if (!cs.is_normal())
        throw Error(ErrorCode::NotNormal, "returning arcs present; normalize first");
    std::vector<Track> tracks;
    for (const auto& cycle : cs.curves()) {
        Track t;
        t.cycle = cycle;
        t.weights = PatternCoords(cs.tri().edge_count());
        for (const Crossing& c : cycle) t.weights[c.edge] += 1;
        t.size = static_cast<int>(cycle.size());
        tracks.push_back(std::move(t));
    }
    return tracks;
}

/// Parallel tracks are equivalent disjoint tracks; for embedded normal
/// curves this is exactly equality of weight vectors.
inline bool are_parallel(const Track& t1, const Track& t2) {
    if (t1.weights.edge_count() != t2.weights.edge_count())
        throw Error(ErrorCode::MismatchedTriangulation, "tracks on different triangulations");
    return t1.weights == t2.weights;
}

enum class TrackKind { VertexLink3, Quad4, Octagon8, Other };

struct TrackClass {
    int size = 0;
    TrackKind kind = TrackKind::Other;
};

namespace detail {

// The three opposite edge pairs of a tetrahedron boundary.
inline std::vector<std::array<EdgeId, 2>> opposite_edge_pairs(const Triangulation& tri) {
    std::vector<std::array<EdgeId, 2>> pairs;
    for (EdgeId e = 0; e < tri.edge_count(); ++e)
        for (EdgeId g = e + 1; g < tri.edge_count(); ++g) {
            const auto& a = tri.edge(e);
            const auto& b = tri.edge(g);
            if (a.u != b.u && a.u != b.v && a.v != b.u && a.v != b.v) pairs.push_back({e, g});
        }
    return pairs;
}

}  // namespace detail

/// Crossing count plus, on a tetrahedron boundary, the shape tag of the
/// track's weight vector.
inline TrackClass classify_track(const Triangulation& tri, const Track& t) {
    TrackClass tc;
    tc.size = t.size;
    if (!tri.is_tetrahedron()) return tc;

    for (VertexId v = 0; v < tri.vertex_count(); ++v)
        if (t.weights == vertex_link(tri, v)) {
            tc.kind = TrackKind::VertexLink3;
            return tc;
        }
    for (const auto& pair : detail::opposite_edge_pairs(tri)) {
        PatternCoords quad(tri.edge_count());
        PatternCoords oct(tri.edge_count());
        for (EdgeId e = 0; e < tri.edge_count(); ++e) {
            bool in_pair = e == pair[0] || e == pair[1];
            quad[e] = in_pair ? 0 : 1;
            oct[e] = in_pair ? 2 : 1;
        }
        if (t.weights == quad) {
            tc.kind = TrackKind::Quad4;
            return tc;
        }
        if (t.weights == oct) {
            tc.kind = TrackKind::Octagon8;
            return tc;
        }
    }
    return tc;
}

enum class PatternKind { Normal, AlmostNormal, Other };

/// Classification of a pattern on a tetrahedron boundary: normal when every
/// track is a 3- or 4-track, almost-normal when exactly one 8-track breaks
/// that, other otherwise. The empty pattern is vacuously normal.
inline PatternKind pattern_kind(const Triangulation& tri, const PatternCoords& p) {
    if (!tri.is_tetrahedron())
        throw Error(ErrorCode::UnsupportedTriangulation,
                    "pattern kinds are defined on the tetrahedron boundary only");
    auto tracks = extract_tracks(realize(tri, p));
    int eights = 0;
    for (const auto& t : tracks) {
        if (t.size == 8)
            ++eights;
        else if (t.size != 3 && t.size != 4)
            return PatternKind::Other;
    }
    if (eights == 0) return PatternKind::Normal;
    if (eights == 1) return PatternKind::AlmostNormal;
    return PatternKind::Other;
}

}  // namespace tracklab
