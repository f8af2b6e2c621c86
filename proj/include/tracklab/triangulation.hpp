#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <vector>

#include "tracklab/errors.hpp"

namespace tracklab {

using VertexId = int;
using EdgeId = int;
using FaceId = int;

/// Unordered vertex pair identifying an edge; always stored with u < v.
struct EdgeKey {
    VertexId u = -1;
    VertexId v = -1;

    EdgeKey() = default;
    EdgeKey(VertexId a, VertexId b) : u(std::min(a, b)), v(std::max(a, b)) {}

    auto operator<=>(const EdgeKey&) const = default;
};

/// A validated simplicial triangulation of the 2-sphere.
///
/// Construction checks that the face list describes a closed, connected,
/// simplicial surface with Euler characteristic 2 and a single cycle as the
/// link of every vertex. Instances are immutable; all incidence maps are
/// precomputed.
class Triangulation {
  public:
    explicit Triangulation(const std::vector<std::array<VertexId, 3>>& faces) { build(faces); }

    int vertex_count() const { return vertex_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int face_count() const { return static_cast<int>(faces_.size()); }

    const std::vector<std::array<VertexId, 3>>& faces() const { return faces_; }
    const std::vector<EdgeKey>& edges() const { return edges_; }

    const EdgeKey& edge(EdgeId e) const { return edges_[e]; }

    EdgeId edge_id(VertexId a, VertexId b) const {
        auto it = edge_index_.find(EdgeKey(a, b));
        if (it == edge_index_.end())
            throw Error(ErrorCode::UnknownEdge,
                        "no edge " + std::to_string(a) + "-" + std::to_string(b));
        return it->second;
    }

    bool has_edge(VertexId a, VertexId b) const {
        return edge_index_.count(EdgeKey(a, b)) > 0;
    }

    /// The two faces containing an edge.
    const std::array<FaceId, 2>& edge_faces(EdgeId e) const { return edge_faces_[e]; }

    FaceId other_face(EdgeId e, FaceId f) const {
        const auto& ef = edge_faces_[e];
        return ef[0] == f ? ef[1] : ef[0];
    }

    /// Edges of a face, indexed so that face_edges(f)[i] is opposite
    /// face vertex faces()[f][i].
    const std::array<EdgeId, 3>& face_edges(FaceId f) const { return face_edges_[f]; }

    /// Face vertices sorted ascending.
    const std::array<VertexId, 3>& face_vertices(FaceId f) const { return faces_[f]; }

    /// Edges incident to a vertex, in cyclic order around it.
    const std::vector<EdgeId>& vertex_edges(VertexId v) const {
        check_vertex(v);
        return vertex_edges_[v];
    }

    /// Faces incident to a vertex, in cyclic order around it.
    const std::vector<FaceId>& vertex_faces(VertexId v) const {
        check_vertex(v);
        return vertex_faces_[v];
    }

    int vertex_degree(VertexId v) const {
        check_vertex(v);
        return static_cast<int>(vertex_edges_[v].size());
    }

    /// Position of vertex x within face f (0..2), or -1.
    int corner_index(FaceId f, VertexId x) const {
        for (int i = 0; i < 3; ++i)
            if (faces_[f][i] == x) return i;
        return -1;
    }

    /// True for the boundary complex of a tetrahedron.
    bool is_tetrahedron() const { return vertex_count_ == 4 && face_count() == 4; }

    void check_vertex(VertexId v) const {
        if (v < 0 || v >= vertex_count_)
            throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v));
    }

  private:
    void build(const std::vector<std::array<VertexId, 3>>& input) {
        if (input.empty()) throw Error(ErrorCode::NotSimplicial, "empty face list");

        std::set<std::array<VertexId, 3>> seen;
        faces_.reserve(input.size());
        VertexId max_v = -1;
        for (const auto& f : input) {
            std::array<VertexId, 3> s = f;
            std::sort(s.begin(), s.end());
            if (s[0] < 0)
                throw Error(ErrorCode::NotSimplicial, "negative vertex id in face");
            if (s[0] == s[1] || s[1] == s[2])
                throw Error(ErrorCode::NotSimplicial, "degenerate face");
            if (!seen.insert(s).second)
                throw Error(ErrorCode::NotSimplicial, "repeated face");
            faces_.push_back(s);
            max_v = std::max(max_v, s[2]);
        }
        vertex_count_ = max_v + 1;

        // Edge table, each edge with its incident faces.
        std::map<EdgeKey, std::vector<FaceId>> incident;
        for (FaceId f = 0; f < face_count(); ++f) {
            const auto& [a, b, c] = faces_[f];
            incident[EdgeKey(a, b)].push_back(f);
            incident[EdgeKey(a, c)].push_back(f);
            incident[EdgeKey(b, c)].push_back(f);
        }
        for (const auto& [key, fs] : incident) {
            if (fs.size() != 2)
                throw Error(ErrorCode::NotClosed,
                            "edge " + std::to_string(key.u) + "-" + std::to_string(key.v) +
                                " lies in " + std::to_string(fs.size()) + " faces");
            EdgeId id = static_cast<EdgeId>(edges_.size());
            edges_.push_back(key);
            edge_index_[key] = id;
            edge_faces_.push_back({fs[0], fs[1]});
        }

        face_edges_.resize(face_count());
        for (FaceId f = 0; f < face_count(); ++f) {
            const auto& [a, b, c] = faces_[f];
            face_edges_[f][0] = edge_id(b, c);  // opposite a
            face_edges_[f][1] = edge_id(a, c);  // opposite b
            face_edges_[f][2] = edge_id(a, b);  // opposite c
        }

        check_connected();
        check_sphere();
        build_vertex_cycles();
    }

    void check_connected() const {
        std::vector<bool> visited(face_count(), false);
        std::vector<FaceId> stack = {0};
        visited[0] = true;
        int reached = 1;
        while (!stack.empty()) {
            FaceId f = stack.back();
            stack.pop_back();
            for (EdgeId e : face_edges_[f]) {
                FaceId g = other_face(e, f);
                if (!visited[g]) {
                    visited[g] = true;
                    ++reached;
                    stack.push_back(g);
                }
            }
        }
        if (reached != face_count())
            throw Error(ErrorCode::NotConnected, "face graph is disconnected");
    }

    void check_sphere() const {
        long chi = static_cast<long>(vertex_count_) - edge_count() + face_count();
        if (chi != 2)
            throw Error(ErrorCode::NotASphere, "Euler characteristic " + std::to_string(chi));
        if (3 * face_count() != 2 * edge_count())
            throw Error(ErrorCode::NotASphere, "3f != 2e");
    }

    // The link of every vertex must be a single cycle; record incident
    // edges/faces in that cyclic order.
    void build_vertex_cycles() {
        std::vector<std::vector<FaceId>> at_vertex(vertex_count_);
        for (FaceId f = 0; f < face_count(); ++f)
            for (VertexId x : faces_[f]) at_vertex[x].push_back(f);

        vertex_edges_.resize(vertex_count_);
        vertex_faces_.resize(vertex_count_);
        for (VertexId x = 0; x < vertex_count_; ++x) {
            const auto& star = at_vertex[x];
            if (star.empty())
                throw Error(ErrorCode::NotConnected, "isolated vertex " + std::to_string(x));

            // Walk face-to-face around x across the edges containing x.
            FaceId start = star[0];
            FaceId f = start;
            EdgeId enter = -1;  // edge through which f was entered
            std::vector<FaceId> cyc_faces;
            std::vector<EdgeId> cyc_edges;
            do {
                cyc_faces.push_back(f);
                // Two edges of f contain x; leave through the one we did not
                // enter by.
                EdgeId leave = -1;
                for (int i = 0; i < 3; ++i) {
                    EdgeId e = face_edges_[f][i];
                    if (faces_[f][i] == x) continue;  // opposite edge, skip
                    if (e != enter) {
                        leave = e;
                        break;
                    }
                }
                if (leave < 0) throw Error(ErrorCode::NotASphere, "broken vertex link");
                cyc_edges.push_back(leave);
                f = other_face(leave, f);
                enter = leave;
            } while (f != start);

            if (cyc_faces.size() != star.size())
                throw Error(ErrorCode::NotASphere,
                            "link of vertex " + std::to_string(x) + " is not a single cycle");
            vertex_faces_[x] = std::move(cyc_faces);
            vertex_edges_[x] = std::move(cyc_edges);
        }
    }

    int vertex_count_ = 0;
    std::vector<std::array<VertexId, 3>> faces_;
    std::vector<EdgeKey> edges_;
    std::map<EdgeKey, EdgeId> edge_index_;
    std::vector<std::array<FaceId, 2>> edge_faces_;
    std::vector<std::array<EdgeId, 3>> face_edges_;
    std::vector<std::vector<EdgeId>> vertex_edges_;
    std::vector<std::vector<FaceId>> vertex_faces_;
};

/// Convenience wrapper: validate a raw face list.
inline Triangulation build_triangulation(const std::vector<std::array<VertexId, 3>>& faces) {
    return Triangulation(faces);
}

}  // namespace tracklab
