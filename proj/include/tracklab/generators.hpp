#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tracklab/triangulation.hpp"

namespace tracklab {

enum class GeneratorKind { Tetrahedron, Bipyramid, Octahedron, Icosahedron, Random };

/// Parsed generator specification, e.g. "tetrahedron", "bipyramid(5)",
/// "random(20)".
struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::Tetrahedron;
    int arg = 0;  // bipyramid n, random target vertex count
};

inline GeneratorSpec parse_generator_spec(const std::string& text) {
    auto open = text.find('(');
    std::string name = open == std::string::npos ? text : text.substr(0, open);
    std::optional<int> arg;
    if (open != std::string::npos) {
        auto close = text.find(')', open);
        if (close == std::string::npos)
            throw Error(ErrorCode::InvalidSpec, "unbalanced parentheses in '" + text + "'");
        try {
            arg = std::stoi(text.substr(open + 1, close - open - 1));
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidSpec, "bad argument in '" + text + "'");
        }
    }

    GeneratorSpec spec;
    if (name == "tetrahedron") {
        spec.kind = GeneratorKind::Tetrahedron;
    } else if (name == "octahedron") {
        spec.kind = GeneratorKind::Octahedron;
    } else if (name == "icosahedron") {
        spec.kind = GeneratorKind::Icosahedron;
    } else if (name == "bipyramid") {
        spec.kind = GeneratorKind::Bipyramid;
        if (!arg) throw Error(ErrorCode::InvalidSpec, "bipyramid requires (n)");
        spec.arg = *arg;
        if (spec.arg < 3) throw Error(ErrorCode::InvalidSpec, "bipyramid needs n >= 3");
    } else if (name == "random") {
        spec.kind = GeneratorKind::Random;
        if (!arg) throw Error(ErrorCode::InvalidSpec, "random requires (target_v)");
        spec.arg = *arg;
        if (spec.arg < 4) throw Error(ErrorCode::InvalidSpec, "random needs target_v >= 4");
    } else {
        throw Error(ErrorCode::InvalidSpec, "unknown generator kind '" + name + "'");
    }
    return spec;
}

inline std::vector<std::array<VertexId, 3>> tetrahedron_faces() {
    return {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
}

/// Equatorial cycle 0..n-1 with apexes n (top) and n+1 (bottom).
inline std::vector<std::array<VertexId, 3>> bipyramid_faces(int n) {
    if (n < 3) throw Error(ErrorCode::InvalidSpec, "bipyramid needs n >= 3");
    std::vector<std::array<VertexId, 3>> faces;
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        faces.push_back({i, j, n});
        faces.push_back({i, j, n + 1});
    }
    return faces;
}

/// Apex 0, upper ring 1..5, lower ring 6..10, apex 11.
inline std::vector<std::array<VertexId, 3>> icosahedron_faces() {
    std::vector<std::array<VertexId, 3>> faces;
    for (int k = 0; k < 5; ++k) {
        int u = 1 + k, un = 1 + (k + 1) % 5;
        int l = 6 + k, ln = 6 + (k + 1) % 5;
        faces.push_back({0, u, un});
        faces.push_back({u, un, l});
        faces.push_back({un, l, ln});
        faces.push_back({11, l, ln});
    }
    return faces;
}

namespace detail {

// Mutable face list supporting 1->3 subdivision and edge flips; validity is
// restored by rebuilding a Triangulation at the end.
class SphereMesh {
  public:
    explicit SphereMesh(std::vector<std::array<VertexId, 3>> faces, int vertices)
        : faces_(std::move(faces)), vertex_count_(vertices) {}

    int vertex_count() const { return vertex_count_; }
    const std::vector<std::array<VertexId, 3>>& faces() const { return faces_; }

    void subdivide(FaceId f) {
        auto [a, b, c] = faces_[f];
        VertexId w = vertex_count_++;
        faces_[f] = {a, b, w};
        faces_.push_back({a, c, w});
        faces_.push_back({b, c, w});
    }

    // Flip the common edge of two faces; returns false (no change) when the
    // replacement edge already exists.
    bool flip(FaceId f1, FaceId f2) {
        auto [s, shared_ok] = shared_edge(f1, f2);
        if (!shared_ok) return false;
        VertexId a = opposite(f1, s);
        VertexId b = opposite(f2, s);
        if (edge_exists(a, b)) return false;
        faces_[f1] = sorted(a, b, s.u);
        faces_[f2] = sorted(a, b, s.v);
        return true;
    }

    std::pair<EdgeKey, bool> shared_edge(FaceId f1, FaceId f2) const {
        std::vector<VertexId> common;
        for (VertexId x : faces_[f1])
            for (VertexId y : faces_[f2])
                if (x == y) common.push_back(x);
        if (common.size() != 2) return {EdgeKey(), false};
        return {EdgeKey(common[0], common[1]), true};
    }

  private:
    VertexId opposite(FaceId f, EdgeKey e) const {
        for (VertexId x : faces_[f])
            if (x != e.u && x != e.v) return x;
        return -1;
    }

    bool edge_exists(VertexId a, VertexId b) const {
        for (const auto& f : faces_) {
            int hits = 0;
            for (VertexId x : f) hits += (x == a || x == b);
            if (hits == 2) return true;
        }
        return false;
    }

    static std::array<VertexId, 3> sorted(VertexId a, VertexId b, VertexId c) {
        std::array<VertexId, 3> s = {a, b, c};
        std::sort(s.begin(), s.end());
        return s;
    }

    std::vector<std::array<VertexId, 3>> faces_;
    int vertex_count_;
};

}  // namespace detail

/// Random sphere triangulation with exactly target_v vertices: repeated 1->3
/// face subdivisions interleaved with legal edge flips, driven by the seed.
inline std::vector<std::array<VertexId, 3>> random_sphere_faces(int target_v, std::uint64_t seed) {
    if (target_v < 4) throw Error(ErrorCode::InvalidSpec, "random needs target_v >= 4");
    std::mt19937_64 rng(seed);
    detail::SphereMesh mesh(tetrahedron_faces(), 4);
    while (mesh.vertex_count() < target_v) {
        std::uniform_int_distribution<std::size_t> pick_face(0, mesh.faces().size() - 1);
        mesh.subdivide(static_cast<FaceId>(pick_face(rng)));
        // A few flip attempts to move away from the stacked shape; flips that
        // would duplicate an edge are skipped.
        int attempts = 4;
        for (int k = 0; k < attempts; ++k) {
            std::uniform_int_distribution<std::size_t> pick(0, mesh.faces().size() - 1);
            FaceId f1 = static_cast<FaceId>(pick(rng));
            FaceId f2 = static_cast<FaceId>(pick(rng));
            if (f1 != f2) mesh.flip(f1, f2);
        }
    }
    return mesh.faces();
}

/// Build a validated triangulation from a generator spec, deterministically
/// in (spec, seed).
inline Triangulation generate(const GeneratorSpec& spec, std::uint64_t seed = 0) {
    switch (spec.kind) {
        case GeneratorKind::Tetrahedron: return Triangulation(tetrahedron_faces());
        case GeneratorKind::Bipyramid: return Triangulation(bipyramid_faces(spec.arg));
        case GeneratorKind::Octahedron: return Triangulation(bipyramid_faces(4));
        case GeneratorKind::Icosahedron: return Triangulation(icosahedron_faces());
        case GeneratorKind::Random: return Triangulation(random_sphere_faces(spec.arg, seed));
    }
    throw Error(ErrorCode::InvalidSpec, "unhandled generator kind");
}

inline Triangulation generate(const std::string& kind, std::uint64_t seed = 0) {
    return generate(parse_generator_spec(kind), seed);
}

}  // namespace tracklab
