#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tracklab/builder.hpp"
#include "tracklab/curves.hpp"
#include "tracklab/regions.hpp"
#include "tracklab/rewrite.hpp"

namespace tracklab {

using nlohmann::json;

namespace detail {

inline std::pair<VertexId, VertexId> parse_edge_key(const std::string& key) {
    auto dash = key.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 >= key.size())
        throw Error(ErrorCode::BadInput, "edge key '" + key + "' is not of the form u-v");
    try {
        VertexId u = std::stoi(key.substr(0, dash));
        VertexId v = std::stoi(key.substr(dash + 1));
        return {u, v};
    } catch (const std::exception&) {
        throw Error(ErrorCode::BadInput, "edge key '" + key + "' is not of the form u-v");
    }
}

inline std::string edge_key(const Triangulation& tri, EdgeId e) {
    const auto& k = tri.edge(e);
    return std::to_string(k.u) + "-" + std::to_string(k.v);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Triangulation: {"vertices": v, "faces": [[a,b,c], ...]}
// ---------------------------------------------------------------------------

inline json to_json(const Triangulation& tri) {
    json j;
    j["vertices"] = tri.vertex_count();
    j["faces"] = json::array();
    for (const auto& f : tri.faces()) j["faces"].push_back({f[0], f[1], f[2]});
    return j;
}

inline Triangulation triangulation_from_json(const json& j) {
    if (!j.contains("faces") || !j["faces"].is_array())
        throw Error(ErrorCode::BadInput, "missing faces array");
    std::vector<std::array<VertexId, 3>> faces;
    for (const auto& f : j["faces"]) {
        if (!f.is_array() || f.size() != 3)
            throw Error(ErrorCode::BadInput, "each face must be a triple");
        faces.push_back({f[0].get<VertexId>(), f[1].get<VertexId>(), f[2].get<VertexId>()});
    }
    Triangulation tri(faces);
    if (j.contains("vertices")) {
        int declared = j["vertices"].get<int>();
        if (declared > tri.vertex_count())
            throw Error(ErrorCode::NotConnected, "declared vertices not used by any face");
        if (declared < tri.vertex_count())
            throw Error(ErrorCode::BadInput, "faces reference more vertices than declared");
    }
    return tri;
}

// ---------------------------------------------------------------------------
// Pattern: {"weights": {"u-v": w, ...}}; omitted edges carry weight 0.
// ---------------------------------------------------------------------------

inline json to_json(const Triangulation& tri, const PatternCoords& p) {
    json weights = json::object();
    for (EdgeId e = 0; e < tri.edge_count(); ++e)
        if (p[e] != 0) weights[detail::edge_key(tri, e)] = p[e];
    return json{{"weights", weights}};
}

inline PatternCoords pattern_from_json(const Triangulation& tri, const json& j) {
    if (!j.contains("weights") || !j["weights"].is_object())
        throw Error(ErrorCode::BadInput, "missing weights object");
    PatternCoords p(tri.edge_count());
    for (const auto& [key, value] : j["weights"].items()) {
        auto [u, v] = detail::parse_edge_key(key);
        int w = value.get<int>();
        if (w < 0) throw Error(ErrorCode::BadInput, "negative weight on edge " + key);
        p[tri.edge_id(u, v)] = w;
    }
    return p;
}

// ---------------------------------------------------------------------------
// Curve system: {"curves": [[{"edge": "u-v", "pos": k}, ...], ...]}
// Each curve is a cyclic crossing sequence; chords are the consecutive
// pairs. A chord's face is the unique face shared by its two edges; chords
// returning to the same edge take the face forced by alternation (the two
// chords at a crossing lie in the two faces of its edge).
// ---------------------------------------------------------------------------

inline json to_json(const CurveSystem& cs) {
    json curves = json::array();
    for (const auto& cycle : cs.curves()) {
        json curve = json::array();
        for (const Crossing& c : cycle)
            curve.push_back({{"edge", detail::edge_key(cs.tri(), c.edge)}, {"pos", c.pos}});
        curves.push_back(curve);
    }
    return json{{"curves", curves}};
}

inline CurveSystem curves_from_json(const Triangulation& tri, const json& j) {
    if (!j.contains("curves") || !j["curves"].is_array())
        throw Error(ErrorCode::BadInput, "missing curves array");

    std::vector<int> counts(tri.edge_count(), 0);
    std::vector<std::vector<Crossing>> cycles;
    for (const auto& jc : j["curves"]) {
        std::vector<Crossing> cycle;
        for (const auto& jx : jc) {
            auto [u, v] = detail::parse_edge_key(jx.at("edge").get<std::string>());
            int pos = jx.at("pos").get<int>();
            cycle.push_back({tri.edge_id(u, v), pos});
        }
        if (cycle.size() < 2)
            throw Error(ErrorCode::BadInput, "a curve needs at least two crossings");
        cycles.push_back(std::move(cycle));
    }

    // Edge counts: positions on each edge must be 0..n-1, each used once.
    std::vector<std::vector<int>> seen(tri.edge_count());
    for (const auto& cycle : cycles)
        for (const Crossing& c : cycle) {
            if (c.pos < 0) throw Error(ErrorCode::BadInput, "negative crossing position");
            seen[c.edge].push_back(c.pos);
        }
    for (EdgeId e = 0; e < tri.edge_count(); ++e) {
        auto& v = seen[e];
        std::sort(v.begin(), v.end());
        for (int i = 0; i < static_cast<int>(v.size()); ++i)
            if (v[i] != i)
                throw Error(ErrorCode::BadInput,
                            "crossing positions on edge " + detail::edge_key(tri, e) +
                                " are not contiguous from 0");
        counts[e] = static_cast<int>(v.size());
    }

    std::vector<Chord> chords;
    for (const auto& cycle : cycles) {
        int m = static_cast<int>(cycle.size());
        std::vector<FaceId> face(m, -1);
        // Anchor chords whose endpoints lie on distinct edges: their face is
        // the unique common face.
        for (int i = 0; i < m; ++i) {
            const Crossing& a = cycle[i];
            const Crossing& b = cycle[(i + 1) % m];
            if (a.edge == b.edge) continue;
            const auto& fa = tri.edge_faces(a.edge);
            const auto& fb = tri.edge_faces(b.edge);
            for (FaceId f : fa)
                if (f == fb[0] || f == fb[1]) face[i] = f;
            if (face[i] < 0)
                throw Error(ErrorCode::BadInput, "consecutive crossings share no face");
        }
        // Propagate faces around the cycle: adjacent chords meet at a
        // crossing and must take the two distinct faces of its edge.
        bool any = std::any_of(face.begin(), face.end(), [](FaceId f) { return f >= 0; });
        if (!any) {
            // Every chord returns to one edge; both assignments embed, pick
            // the lower face for the first chord.
            const auto& fs = tri.edge_faces(cycle[0].edge);
            face[0] = std::min(fs[0], fs[1]);
        }
        for (int pass = 0; pass < m + 1; ++pass) {
            bool changed = false;
            for (int i = 0; i < m; ++i) {
                int nxt = (i + 1) % m;
                const Crossing& shared = cycle[nxt];  // between chord i and chord nxt
                if (face[i] >= 0 && face[nxt] < 0) {
                    face[nxt] = tri.other_face(shared.edge, face[i]);
                    changed = true;
                } else if (face[nxt] >= 0 && face[i] < 0) {
                    face[i] = tri.other_face(shared.edge, face[nxt]);
                    changed = true;
                }
            }
            if (!changed) break;
        }
        for (int i = 0; i < m; ++i) {
            if (face[i] < 0) throw Error(ErrorCode::BadInput, "could not orient curve chords");
            int nxt = (i + 1) % m;
            const Crossing& shared = cycle[nxt];
            if (face[i] == face[nxt] || tri.other_face(shared.edge, face[i]) != face[nxt])
                throw Error(ErrorCode::BadInput,
                            "curve does not alternate faces at a crossing");
        }
        for (int i = 0; i < m; ++i) chords.push_back({face[i], cycle[i], cycle[(i + 1) % m]});
    }

    return CurveSystem(tri, std::move(counts), std::move(chords));
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline json to_json(const RewriteReport& r) {
    return json{{"steps", r.steps},
                {"crossings_removed", r.crossings_removed},
                {"annihilated_curves", r.annihilated_curves},
                {"final_normal", r.final_normal}};
}

inline json to_json(const ProfileReport& r) {
    json j;
    j["pass"] = r.pass();
    j["degrees_ok"] = r.degrees_ok;
    j["leaves_ok"] = r.leaves_ok;
    j["pants_ok"] = r.pants_ok;
    j["counts_ok"] = r.counts_ok;
    j["count_law_ok"] = r.count_law_ok;
    j["v_P"] = r.v_P;
    j["e_P"] = r.e_P;
    j["degree1_regions"] = r.degree1_count;
    j["degree3_regions"] = r.degree3_count;
    if (r.witness_region) {
        j["witness_region"] = *r.witness_region;
        j["witness"] = r.detail;
    }
    return j;
}

inline json to_json(const Triangulation& tri, const BuilderState& state) {
    json j;
    j["tracks"] = json::array();
    for (const auto& w : state.registry) j["tracks"].push_back(to_json(tri, w)["weights"]);
    j["e_P"] = state.track_count();
    j["trace"] = json::array();
    for (const auto& step : state.trace) {
        json s;
        s["edge"] = detail::edge_key(tri, step.edge);
        s["pos"] = step.pos;
        s["added"] = json::array();
        for (const auto& w : step.added) s["added"].push_back(to_json(tri, w)["weights"]);
        j["trace"].push_back(s);
    }
    return j;
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::BadInput, "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::BadInput, path + ": " + e.what());
    }
    return j;
}

inline void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::BadInput, "cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace tracklab
