#pragma once

#include <functional>
#include <tuple>
#include <vector>

#include "tracklab/curves.hpp"

namespace tracklab {

struct ReturningArc {
    int chord = -1;         // index into CurveSystem::chords()
    bool innermost = false;  // endpoints adjacent in the edge's crossing order
};

/// All chords whose two endpoints lie on the same edge.
inline std::vector<ReturningArc> find_returning_arcs(const CurveSystem& cs) {
    std::vector<ReturningArc> arcs;
    const auto& chords = cs.chords();
    for (int i = 0; i < static_cast<int>(chords.size()); ++i) {
        const Chord& ch = chords[i];
        if (!ch.returning()) continue;
        arcs.push_back({i, std::abs(ch.b.pos - ch.a.pos) == 1});
    }
    return arcs;
}

struct RemovalResult {
    CurveSystem system;
    bool annihilated = false;  // the arc's curve was removed entirely
};

namespace detail {

inline Crossing shifted(Crossing c, EdgeId edge, int above) {
    if (c.edge == edge && c.pos > above) c.pos -= 2;
    return c;
}

}  // namespace detail

/// Remove one innermost returning arc. The two crossings and the arc are
/// deleted; in the opposite face the two chords that ended there merge into
/// one chord joining their far endpoints. When those two chords were a
/// single chord the whole curve is annihilated.
inline RemovalResult remove_returning_arc(const CurveSystem& cs, int chord_index) {
    const auto& chords = cs.chords();
    if (chord_index < 0 || chord_index >= static_cast<int>(chords.size()))
        throw Error(ErrorCode::BadInput, "chord index out of range");
    const Chord arc = chords[chord_index];
    if (!arc.returning()) throw Error(ErrorCode::NotReturning, "chord endpoints on distinct edges");

    EdgeId gamma = arc.a.edge;
    int lo = std::min(arc.a.pos, arc.b.pos);
    int hi = std::max(arc.a.pos, arc.b.pos);
    if (hi - lo != 1)
        throw Error(ErrorCode::NotInnermost,
                    "crossings between the arc endpoints would be disconnected");

    const Triangulation& tri = cs.tri();
    FaceId sigma = arc.face;
    FaceId other = tri.other_face(gamma, sigma);

    int cp = cs.chord_at(arc.a, other);
    int cq = cs.chord_at(arc.b, other);

    std::vector<Chord> next;
    next.reserve(chords.size());
    bool annihilated = (cp == cq);
    for (int i = 0; i < static_cast<int>(chords.size()); ++i) {
        if (i == chord_index || i == cp || i == cq) continue;
        Chord ch = chords[i];
        ch.a = detail::shifted(ch.a, gamma, hi);
        ch.b = detail::shifted(ch.b, gamma, hi);
        next.push_back(ch);
    }
    if (!annihilated) {
        Crossing x = chords[cp].other(arc.a);
        Crossing y = chords[cq].other(arc.b);
        Chord merged{other, detail::shifted(x, gamma, hi), detail::shifted(y, gamma, hi)};
        next.push_back(merged);
    }

    std::vector<int> counts = cs.edge_counts();
    counts[gamma] -= 2;
    return {CurveSystem(tri, std::move(counts), std::move(next)), annihilated};
}

struct RewriteReport {
    int steps = 0;
    int crossings_removed = 0;
    int annihilated_curves = 0;
    bool final_normal = true;
};

/// Chooses one arc among the current innermost returning arcs.
using ArcPicker = std::function<std::size_t(const CurveSystem&, const std::vector<ReturningArc>&)>;

/// Default deterministic choice: lowest edge key, then lowest position.
inline std::size_t pick_first_arc(const CurveSystem& cs, const std::vector<ReturningArc>& arcs) {
    std::size_t best = arcs.size();
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        if (!arcs[i].innermost) continue;
        if (best == arcs.size()) {
            best = i;
            continue;
        }
        const Chord& a = cs.chords()[arcs[i].chord];
        const Chord& b = cs.chords()[arcs[best].chord];
        auto key = [](const Chord& c) {
            return std::tuple(c.a.edge, std::min(c.a.pos, c.b.pos), c.face);
        };
        if (key(a) < key(b)) best = i;
    }
    return best;
}

/// Repeatedly remove an innermost returning arc until none remain. Each step
/// drops the crossing count by exactly two, so this terminates.
inline std::pair<CurveSystem, RewriteReport> normalize(CurveSystem cs,
                                                       const ArcPicker& pick = {}) {
    RewriteReport report;
    for (;;) {
        auto arcs = find_returning_arcs(cs);
        if (arcs.empty()) break;
        std::size_t choice = pick ? pick(cs, arcs) : pick_first_arc(cs, arcs);
        if (choice >= arcs.size() || !arcs[choice].innermost)
            throw Error(ErrorCode::Internal, "no innermost returning arc chosen");
        RemovalResult res = remove_returning_arc(cs, arcs[choice].chord);
        report.steps += 1;
        report.crossings_removed += 2;
        report.annihilated_curves += res.annihilated ? 1 : 0;
        cs = std::move(res.system);
    }
    report.final_normal = cs.is_normal();
    return {std::move(cs), report};
}

struct SurgeryResult {
    CurveSystem system;
    bool same_track = false;  // the adjacent pair belonged to one curve
};

/// Cut the system at two adjacent crossings of an edge and rejoin the four
/// loose ends with lines parallel to the edge. A same-curve pair splits the
/// curve in two; a distinct-curve pair merges the two curves. The result may
/// have returning arcs.
inline SurgeryResult surgery(const CurveSystem& cs, EdgeId edge, int pos) {
    if (!cs.is_normal()) throw Error(ErrorCode::NotNormal, "surgery requires a normal system");
    const Triangulation& tri = cs.tri();
    if (edge < 0 || edge >= tri.edge_count())
        throw Error(ErrorCode::UnknownEdge, "edge " + std::to_string(edge));
    const auto& counts = cs.edge_counts();
    if (pos < 0 || pos + 1 >= counts[edge])
        throw Error(ErrorCode::NoAdjacentPair,
                    "no adjacent crossing pair at position " + std::to_string(pos));

    Crossing a{edge, pos}, b{edge, pos + 1};
    bool same = cs.curve_of(a) == cs.curve_of(b);

    std::vector<int> drop;
    std::vector<Chord> merged;
    for (FaceId f : tri.edge_faces(edge)) {
        int ca = cs.chord_at(a, f);
        int cb = cs.chord_at(b, f);
        Crossing x = cs.chords()[ca].other(a);
        Crossing y = cs.chords()[cb].other(b);
        // x, y are off this edge since the system is normal.
        merged.push_back({f, detail::shifted(x, edge, pos + 1), detail::shifted(y, edge, pos + 1)});
        drop.push_back(ca);
        drop.push_back(cb);
    }

    std::vector<Chord> next;
    next.reserve(cs.chords().size());
    for (int i = 0; i < static_cast<int>(cs.chords().size()); ++i) {
        if (std::find(drop.begin(), drop.end(), i) != drop.end()) continue;
        Chord ch = cs.chords()[i];
        ch.a = detail::shifted(ch.a, edge, pos + 1);
        ch.b = detail::shifted(ch.b, edge, pos + 1);
        next.push_back(ch);
    }
    next.insert(next.end(), merged.begin(), merged.end());

    std::vector<int> new_counts = counts;
    new_counts[edge] -= 2;
    return {CurveSystem(tri, std::move(new_counts), std::move(next)), same};
}

}  // namespace tracklab
