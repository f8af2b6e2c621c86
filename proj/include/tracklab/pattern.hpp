#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "tracklab/triangulation.hpp"

namespace tracklab {

/// Edge-weight vector of a pattern: one non-negative intersection count per
/// edge of the triangulation. The weights determine the embedded curve
/// system up to isotopy, so this is the canonical form of a pattern.
class PatternCoords {
  public:
    PatternCoords() = default;
    explicit PatternCoords(int edge_count) : w_(edge_count, 0) {}
    explicit PatternCoords(std::vector<int> weights) : w_(std::move(weights)) {}

    static PatternCoords zero(const Triangulation& tri) {
        return PatternCoords(tri.edge_count());
    }

    int edge_count() const { return static_cast<int>(w_.size()); }
    int operator[](EdgeId e) const { return w_[e]; }
    int& operator[](EdgeId e) { return w_[e]; }
    const std::vector<int>& weights() const { return w_; }

    /// Total number of edge intersections.
    long total() const { return std::accumulate(w_.begin(), w_.end(), 0L); }

    bool is_zero() const {
        for (int x : w_)
            if (x != 0) return false;
        return true;
    }

    friend bool operator==(const PatternCoords&, const PatternCoords&) = default;
    friend auto operator<=>(const PatternCoords& a, const PatternCoords& b) {
        return a.w_ <=> b.w_;
    }

  private:
    std::vector<int> w_;
};

/// Per-face arc counts: t[i] arcs cut off the corner at face vertex i.
struct CornerTriple {
    FaceId face = -1;
    std::array<int, 3> t = {0, 0, 0};
};

struct FaceViolation {
    FaceId face;
    enum Kind { Parity, TriangleInequality, Negative } kind;
    std::array<int, 3> edge_weights;  // in face_edges order
};

/// Validation report; empty violations means the weights form a pattern.
struct PatternReport {
    std::vector<FaceViolation> violations;
    bool valid() const { return violations.empty(); }
};

namespace detail {

inline void check_sized(const Triangulation& tri, const PatternCoords& p) {
    if (p.edge_count() != tri.edge_count())
        throw Error(ErrorCode::MismatchedTriangulation,
                    "pattern has " + std::to_string(p.edge_count()) + " weights, triangulation " +
                        std::to_string(tri.edge_count()) + " edges");
}

}  // namespace detail

/// Arc counts at the three corners of a face. For corner i with incident
/// edges e_j, e_k and opposite edge e_i: t_i = (w_j + w_k - w_i) / 2.
inline CornerTriple corner_coordinates(const Triangulation& tri, const PatternCoords& p,
                                       FaceId face) {
    detail::check_sized(tri, p);
    const auto& fe = tri.face_edges(face);
    int w0 = p[fe[0]], w1 = p[fe[1]], w2 = p[fe[2]];
    if ((w0 + w1 + w2) % 2 != 0)
        throw Error(ErrorCode::InvalidPattern, "odd weight sum on face " + std::to_string(face));
    CornerTriple ct;
    ct.face = face;
    ct.t[0] = (w1 + w2 - w0) / 2;
    ct.t[1] = (w0 + w2 - w1) / 2;
    ct.t[2] = (w0 + w1 - w2) / 2;
    for (int x : ct.t)
        if (x < 0)
            throw Error(ErrorCode::InvalidPattern,
                        "triangle inequality fails on face " + std::to_string(face));
    return ct;
}

/// Check the matching conditions on every face; violations are report
/// content, not errors.
inline PatternReport validate_pattern(const Triangulation& tri, const PatternCoords& p) {
    detail::check_sized(tri, p);
    PatternReport report;
    for (FaceId f = 0; f < tri.face_count(); ++f) {
        const auto& fe = tri.face_edges(f);
        std::array<int, 3> w = {p[fe[0]], p[fe[1]], p[fe[2]]};
        bool negative = w[0] < 0 || w[1] < 0 || w[2] < 0;
        if (negative) {
            report.violations.push_back({f, FaceViolation::Negative, w});
            continue;
        }
        if ((w[0] + w[1] + w[2]) % 2 != 0)
            report.violations.push_back({f, FaceViolation::Parity, w});
        else if (w[0] > w[1] + w[2] || w[1] > w[0] + w[2] || w[2] > w[0] + w[1])
            report.violations.push_back({f, FaceViolation::TriangleInequality, w});
    }
    return report;
}

inline bool is_valid_pattern(const Triangulation& tri, const PatternCoords& p) {
    return validate_pattern(tri, p).valid();
}

/// Weight 1 on every edge incident to v: one track surrounding the vertex.
inline PatternCoords vertex_link(const Triangulation& tri, VertexId v) {
    tri.check_vertex(v);
    PatternCoords p(tri.edge_count());
    for (EdgeId e : tri.vertex_edges(v)) p[e] = 1;
    return p;
}

/// Edgewise sum; the matching conditions are closed under addition, and the
/// realization of a sum is the disjoint union of the realizations.
inline PatternCoords sum_patterns(const PatternCoords& p, const PatternCoords& q) {
    if (p.edge_count() != q.edge_count())
        throw Error(ErrorCode::MismatchedTriangulation, "pattern sizes differ");
    PatternCoords r(p.edge_count());
    for (EdgeId e = 0; e < p.edge_count(); ++e) r[e] = p[e] + q[e];
    return r;
}

}  // namespace tracklab
