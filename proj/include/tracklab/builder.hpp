#pragma once

#include <cmath>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "tracklab/regions.hpp"
#include "tracklab/rewrite.hpp"

namespace tracklab {

struct SurgeryStep {
    EdgeId edge = -1;
    int pos = -1;
    std::vector<PatternCoords> added;  // new track weights contributed
};

/// Growing collection of pairwise non-parallel tracks on one triangulation.
/// The combined coordinates are always the sum of the registry, and the
/// canonical realization of the combined pattern decomposes into exactly the
/// registry tracks.
struct BuilderState {
    const Triangulation* tri = nullptr;
    std::vector<PatternCoords> registry;
    PatternCoords combined;
    std::vector<SurgeryStep> trace;

    int track_count() const { return static_cast<int>(registry.size()); }

    bool contains(const PatternCoords& w) const {
        for (const auto& r : registry)
            if (r == w) return true;
        return false;
    }
};

namespace detail {

inline std::vector<PatternCoords> sorted_weights(std::vector<PatternCoords> ws) {
    std::sort(ws.begin(), ws.end());
    return ws;
}

inline std::vector<PatternCoords> track_weights(const std::vector<Track>& tracks) {
    std::vector<PatternCoords> ws;
    ws.reserve(tracks.size());
    for (const auto& t : tracks) ws.push_back(t.weights);
    return ws;
}

}  // namespace detail

/// Start from the v vertex-linking tracks; they are pairwise non-parallel
/// and enclose every vertex in its own disc from the outset.
BuilderState seed_vertex_links(Triangulation&&) = delete;

inline BuilderState seed_vertex_links(const Triangulation& tri) {
    BuilderState state;
    state.tri = &tri;
    state.combined = PatternCoords(tri.edge_count());
    for (VertexId v = 0; v < tri.vertex_count(); ++v) {
        PatternCoords link = vertex_link(tri, v);
        state.combined = sum_patterns(state.combined, link);
        state.registry.push_back(std::move(link));
    }
    return state;
}

/// Whether a track can join the registry as a new non-parallel member: the
/// realization of combined + w must decompose into the registry tracks plus
/// one copy of w.
inline bool is_addable(const BuilderState& state, const PatternCoords& w) {
    if (state.contains(w)) return false;
    PatternCoords total = sum_patterns(state.combined, w);
    if (!is_valid_pattern(*state.tri, total)) return false;
    auto got = detail::sorted_weights(detail::track_weights(extract_tracks(realize(*state.tri, total))));
    std::vector<PatternCoords> want = state.registry;
    want.push_back(w);
    return got == detail::sorted_weights(std::move(want));
}

namespace detail {

inline bool profile_conforms(const RegionProfile& p) {
    if (p.degree == 1) return p.interior_vertices == 1 && p.euler_char == 1;
    if (p.degree == 3) return p.interior_vertices == 0 && p.euler_char == -1;
    return false;
}

}  // namespace detail

/// One repair pass: find a region whose profile is neither a one-vertex disc
/// nor a vertex-free pair of pants, surgery an adjacent crossing pair whose
/// segment lies in it (distinct-track pairs first), normalize, and register
/// any track the registry lacks.
inline std::pair<BuilderState, bool> extend_once(const BuilderState& state) {
    const Triangulation& tri = *state.tri;
    CurveSystem cs = realize(tri, state.combined);

    // The state invariant: the combined pattern realizes as the registry.
    {
        auto got = detail::sorted_weights(detail::track_weights(extract_tracks(cs)));
        if (got != detail::sorted_weights(state.registry))
            throw Error(ErrorCode::Internal, "combined pattern does not realize the registry");
    }

    RegionDecomposition rd(tri, cs);
    std::vector<int> failing;
    for (int r = 0; r < rd.region_count(); ++r)
        if (!detail::profile_conforms(rd.profile(r))) failing.push_back(r);
    if (failing.empty()) return {state, false};

    for (int region : failing) {
        // Adjacent crossing pairs whose open segment lies in this region.
        struct Candidate {
            EdgeId edge;
            int pos;
            bool same_track;
        };
        std::vector<Candidate> candidates;
        for (EdgeId e = 0; e < tri.edge_count(); ++e) {
            int n = cs.edge_counts()[e];
            for (int s = 1; s < n; ++s) {
                if (rd.segment_region(e, s) != region) continue;
                bool same = cs.curve_of({e, s - 1}) == cs.curve_of({e, s});
                candidates.push_back({e, s - 1, same});
            }
        }
        std::stable_sort(candidates.begin(), candidates.end(),
                         [](const Candidate& a, const Candidate& b) {
                             return a.same_track < b.same_track;
                         });

        for (const Candidate& cand : candidates) {
            auto cut = surgery(cs, cand.edge, cand.pos);
            auto [normalized, report] = normalize(std::move(cut.system));
            (void)report;

            std::vector<PatternCoords> novel;
            for (const auto& t : extract_tracks(normalized)) {
                if (state.contains(t.weights)) continue;
                if (std::find(novel.begin(), novel.end(), t.weights) != novel.end()) continue;
                novel.push_back(t.weights);
            }
            if (novel.empty()) continue;

            BuilderState next = state;
            SurgeryStep step{cand.edge, cand.pos, {}};
            bool added = false;
            for (const auto& w : novel) {
                if (!is_addable(next, w)) continue;
                next.registry.push_back(w);
                next.combined = sum_patterns(next.combined, w);
                step.added.push_back(w);
                added = true;
            }
            if (!added) continue;
            next.trace.push_back(std::move(step));
            return {std::move(next), true};
        }
    }

    throw Error(ErrorCode::InternalNoProgress,
                "a region fails the profile but no surgery pair yields a new track");
}

/// Iterate extend_once to its fixpoint. On a sphere triangulation the
/// fixpoint carries f/2 + v - 1 = 2v - 3 tracks.
BuilderState build_maximal(Triangulation&&, BuilderState) = delete;
BuilderState build_maximal(Triangulation&&) = delete;

inline BuilderState build_maximal(const Triangulation& tri, BuilderState seed) {
    BuilderState state = std::move(seed);
    int limit = 2 * tri.vertex_count() + 4;  // strictly monotone, so this is generous
    for (int i = 0; i < limit; ++i) {
        auto [next, progressed] = extend_once(state);
        state = std::move(next);
        if (!progressed) return state;
    }
    throw Error(ErrorCode::Internal, "builder failed to reach a fixpoint");
}

inline BuilderState build_maximal(const Triangulation& tri) {
    return build_maximal(tri, seed_vertex_links(tri));
}

inline unsigned long long oracle_cap() {
    if (const char* env = std::getenv("TRACKLAB_ORACLE_CAP")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw Error(ErrorCode::BadInput, "TRACKLAB_ORACLE_CAP is not a number");
        }
    }
    return 1ull << 31;  // raw weight-vector space guard
}

/// Exhaustive list of all tracks whose edge weights are at most
/// weight_bound: every valid weight vector in the box whose realization is
/// one connected curve. Face constraints prune the search as soon as a
/// face's three edges are assigned.
inline std::vector<PatternCoords> oracle_enumerate_tracks(const Triangulation& tri,
                                                          int weight_bound) {
    if (weight_bound < 1) throw Error(ErrorCode::InvalidSpec, "weight bound must be >= 1");
    double raw = std::pow(static_cast<double>(weight_bound + 1), tri.edge_count());
    if (raw > static_cast<double>(oracle_cap()))
        throw Error(ErrorCode::BoundTooLarge,
                    "weight space of size ~" + std::to_string(raw) + " exceeds the cap");

    // Faces become checkable once their highest-numbered edge is assigned.
    std::vector<std::vector<FaceId>> complete_at(tri.edge_count());
    for (FaceId f = 0; f < tri.face_count(); ++f) {
        const auto& fe = tri.face_edges(f);
        complete_at[std::max({fe[0], fe[1], fe[2]})].push_back(f);
    }

    std::vector<PatternCoords> tracks;
    PatternCoords w(tri.edge_count());
    auto face_ok = [&](FaceId f) {
        const auto& fe = tri.face_edges(f);
        int a = w[fe[0]], b = w[fe[1]], c = w[fe[2]];
        if ((a + b + c) % 2 != 0) return false;
        return a <= b + c && b <= a + c && c <= a + b;
    };

    std::function<void(EdgeId)> assign = [&](EdgeId e) {
        if (e == tri.edge_count()) {
            if (w.is_zero()) return;
            if (realize(tri, w).curve_count() == 1) tracks.push_back(w);
            return;
        }
        for (int x = 0; x <= weight_bound; ++x) {
            w[e] = x;
            bool ok = true;
            for (FaceId f : complete_at[e])
                if (!face_ok(f)) {
                    ok = false;
                    break;
                }
            if (ok) assign(e + 1);
        }
        w[e] = 0;
    };
    assign(0);
    return tracks;
}

/// Oracle maximality check: every enumerated track must either sit in the
/// registry already or fail to extend it. Returns the offending tracks.
inline std::vector<PatternCoords> oracle_addable_tracks(const BuilderState& state,
                                                        int weight_bound) {
    std::vector<PatternCoords> addable;
    for (const auto& t : oracle_enumerate_tracks(*state.tri, weight_bound))
        if (is_addable(state, t)) addable.push_back(t);
    return addable;
}

}  // namespace tracklab
