#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tracklab/curves.hpp"

namespace tracklab {

struct RegionProfile {
    int degree = 0;             // bordering tracks
    int interior_vertices = 0;  // triangulation vertices inside
    int euler_char = 0;         // of the closed region
};

namespace detail {

class UnionFind {
  public:
    explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(int a, int b) { parent_[find(a)] = find(b); }

  private:
    std::vector<int> parent_;
};

}  // namespace detail

/// Decomposition of the sphere minus a normal curve system into regions.
///
/// Each face is cut by its chords into cells; cells glue across the edge
/// segments between consecutive crossings. Regions are the glued
/// components; every triangulation vertex lies in exactly one region and
/// every track borders exactly two.
class RegionDecomposition {
  public:
    RegionDecomposition(const Triangulation& tri, CurveSystem cs)
        : tri_(&tri), cs_(std::move(cs)) {
        if (!cs_.is_normal())
            throw Error(ErrorCode::NotNormal, "decomposition requires a normal system");
        build();
    }
    RegionDecomposition(Triangulation&&, CurveSystem) = delete;

    const Triangulation& tri() const { return *tri_; }
    const CurveSystem& system() const { return cs_; }

    int region_count() const { return region_count_; }
    int track_count() const { return cs_.curve_count(); }

    int vertex_region(VertexId v) const {
        tri_->check_vertex(v);
        return vertex_region_[v];
    }

    /// Region containing segment s of an edge (s = 0 starts at the smaller
    /// endpoint; an edge with n crossings has n+1 segments).
    int segment_region(EdgeId e, int seg) const {
        return segment_region_[e].at(seg);
    }

    const std::vector<VertexId>& region_vertices(int region) const {
        check_region(region);
        return region_vertices_[region];
    }

    /// Regions on the two sides of a track (as a sorted set; size 2 on a
    /// sphere).
    const std::vector<int>& track_regions(int track) const { return track_regions_[track]; }

    RegionProfile profile(int region) const {
        check_region(region);
        return profiles_[region];
    }

    std::vector<RegionProfile> profiles() const { return profiles_; }

  private:
    void check_region(int r) const {
        if (r < 0 || r >= region_count_)
            throw Error(ErrorCode::UnknownRegion, "region " + std::to_string(r));
    }

    void build() {
        const Triangulation& tri = *tri_;
        const CurveSystem& cs = cs_;
        const auto& counts = cs.edge_counts();
        int F = tri.face_count();
        int n_chords = static_cast<int>(cs.chords().size());

        // Cell ids: face root cells are 0..F-1, the cell immediately inside
        // chord i is F+i.
        int n_cells = F + n_chords;
        detail::UnionFind uf(n_cells);
        chord_parent_cell_.assign(n_chords, -1);
        segment_cells_.assign(tri.edge_count(), {});
        for (EdgeId e = 0; e < tri.edge_count(); ++e)
            segment_cells_[e].assign(counts[e] + 1, {-1, -1});
        std::vector<int> corner_cell(F * 3, -1);

        for (FaceId f = 0; f < F; ++f) {
            auto items = detail::face_boundary(tri, f, counts);
            std::vector<int> stack;
            auto cell_here = [&]() { return stack.empty() ? f : F + stack.back(); };

            // Arcs between consecutive boundary items; each arc along an
            // edge is one segment of that edge.
            for (std::size_t i = 0; i < items.size(); ++i) {
                const auto& it = items[i];
                if (it.corner) {
                    corner_cell[f * 3 + tri.corner_index(f, it.vertex)] = cell_here();
                } else {
                    int chord = cs.chord_at(it.crossing, f);
                    if (!stack.empty() && stack.back() == chord) {
                        stack.pop_back();
                    } else {
                        chord_parent_cell_[chord] = cell_here();
                        stack.push_back(chord);
                    }
                }
                // Record the arc from items[i] to items[i+1].
                const auto& nxt = items[(i + 1) % items.size()];
                auto seg_of = [&](const detail::BoundaryItem& a,
                                  const detail::BoundaryItem& b) -> std::pair<EdgeId, int> {
                    if (!a.corner && !b.corner && a.crossing.edge == b.crossing.edge)
                        return {a.crossing.edge, std::max(a.crossing.pos, b.crossing.pos)};
                    if (a.corner && !b.corner) {
                        EdgeId e = b.crossing.edge;
                        bool from_low = tri.edge(e).u == a.vertex;
                        return {e, from_low ? 0 : counts[e]};
                    }
                    if (!a.corner && b.corner) {
                        EdgeId e = a.crossing.edge;
                        bool to_high = tri.edge(e).v == b.vertex;
                        return {e, to_high ? counts[e] : 0};
                    }
                    // corner to corner: the whole edge is one segment
                    return {tri.edge_id(a.vertex, b.vertex), 0};
                };
                auto [e, seg] = seg_of(it, nxt);
                int side = tri.edge_faces(e)[0] == f ? 0 : 1;
                segment_cells_[e][seg][side] = cell_here();
            }
            if (!stack.empty()) throw Error(ErrorCode::Internal, "unbalanced chords in face");
        }

        // Glue cells across edge segments.
        for (EdgeId e = 0; e < tri.edge_count(); ++e)
            for (int s = 0; s <= counts[e]; ++s) {
                auto [c0, c1] = segment_cells_[e][s];
                if (c0 < 0 || c1 < 0) throw Error(ErrorCode::Internal, "segment missing a side");
                uf.unite(c0, c1);
            }

        // Compress to region ids ordered by lowest contained cell id.
        std::vector<int> root_to_region(n_cells, -1);
        cell_region_.assign(n_cells, -1);
        region_count_ = 0;
        for (int c = 0; c < n_cells; ++c) {
            int r = uf.find(c);
            if (root_to_region[r] == -1) root_to_region[r] = region_count_++;
            cell_region_[c] = root_to_region[r];
        }

        // Vertices: take the cell at each corner; all corners of a vertex
        // must agree.
        vertex_region_.assign(tri.vertex_count(), -1);
        for (FaceId f = 0; f < F; ++f)
            for (int i = 0; i < 3; ++i) {
                VertexId v = tri.face_vertices(f)[i];
                int r = cell_region_[corner_cell[f * 3 + i]];
                if (vertex_region_[v] == -1)
                    vertex_region_[v] = r;
                else if (vertex_region_[v] != r)
                    throw Error(ErrorCode::Internal, "vertex region is ambiguous");
            }
        region_vertices_.assign(region_count_, {});
        for (VertexId v = 0; v < tri.vertex_count(); ++v)
            region_vertices_[vertex_region_[v]].push_back(v);

        segment_region_.assign(tri.edge_count(), {});
        for (EdgeId e = 0; e < tri.edge_count(); ++e) {
            segment_region_[e].assign(counts[e] + 1, -1);
            for (int s = 0; s <= counts[e]; ++s)
                segment_region_[e][s] = cell_region_[segment_cells_[e][s][0]];
        }

        // Tracks border the regions on the two sides of their chords.
        track_regions_.assign(cs.curve_count(), {});
        std::vector<std::set<int>> sides(cs.curve_count());
        for (int i = 0; i < n_chords; ++i) {
            const Chord& ch = cs.chords()[i];
            int track = cs.curve_of(ch.a);
            sides[track].insert(cell_region_[F + i]);
            sides[track].insert(cell_region_[chord_parent_cell_[i]]);
        }
        for (int t = 0; t < cs.curve_count(); ++t)
            track_regions_[t].assign(sides[t].begin(), sides[t].end());

        compute_profiles();
    }

    void compute_profiles() {
        const Triangulation& tri = *tri_;
        const CurveSystem& cs = cs_;
        profiles_.assign(region_count_, {});

        for (int r = 0; r < region_count_; ++r)
            profiles_[r].interior_vertices = static_cast<int>(region_vertices_[r].size());

        std::vector<int> cells(region_count_, 0);
        for (int c = 0; c < static_cast<int>(cell_region_.size()); ++c)
            cells[cell_region_[c]] += 1;

        std::vector<int> segments(region_count_, 0);
        for (EdgeId e = 0; e < tri.edge_count(); ++e)
            for (int s = 0; s < static_cast<int>(segment_region_[e].size()); ++s)
                segments[segment_region_[e][s]] += 1;

        std::vector<int> degree(region_count_, 0);
        for (int t = 0; t < cs.curve_count(); ++t)
            for (int r : track_regions_[t]) degree[r] += 1;

        // Boundary crossings and boundary chords of the closed region cancel
        // in the Euler characteristic (a track has as many chords as
        // crossings), leaving interior vertices - segments + cells.
        for (int r = 0; r < region_count_; ++r) {
            profiles_[r].degree = degree[r];
            profiles_[r].euler_char = profiles_[r].interior_vertices - segments[r] + cells[r];
        }
    }

    const Triangulation* tri_;
    CurveSystem cs_;
    int region_count_ = 0;
    std::vector<int> cell_region_;
    std::vector<int> chord_parent_cell_;
    std::vector<std::vector<std::array<int, 2>>> segment_cells_;
    std::vector<std::vector<int>> segment_region_;
    std::vector<int> vertex_region_;
    std::vector<std::vector<VertexId>> region_vertices_;
    std::vector<std::vector<int>> track_regions_;
    std::vector<RegionProfile> profiles_;
};

inline RegionDecomposition decompose(const Triangulation& tri, CurveSystem cs) {
    return RegionDecomposition(tri, std::move(cs));
}
RegionDecomposition decompose(Triangulation&&, CurveSystem) = delete;

/// The tree D_P: one vertex per region, one edge per track.
struct DualTree {
    int vertex_count = 0;
    std::vector<std::array<int, 2>> edges;  // edges[t] = the two regions of track t
    std::vector<RegionProfile> profiles;
    std::vector<int> track_sizes;
    std::vector<int> degrees;
    std::vector<std::optional<VertexId>> leaf_vertex;

    std::vector<int> degree_multiset() const {
        std::vector<int> d = degrees;
        std::sort(d.begin(), d.end());
        return d;
    }
};

inline DualTree dual_tree(const RegionDecomposition& rd) {
    DualTree dt;
    dt.vertex_count = rd.region_count();
    dt.profiles = rd.profiles();

    for (int t = 0; t < rd.track_count(); ++t) {
        const auto& regions = rd.track_regions(t);
        if (regions.size() != 2)
            throw Error(ErrorCode::NotATree,
                        "track " + std::to_string(t) + " borders " +
                            std::to_string(regions.size()) + " regions");
        dt.edges.push_back({regions[0], regions[1]});
        dt.track_sizes.push_back(static_cast<int>(rd.system().curves()[t].size()));
    }

    if (dt.vertex_count != static_cast<int>(dt.edges.size()) + 1)
        throw Error(ErrorCode::NotATree, "v_P != e_P + 1");
    // Connectivity; with v = e + 1 this settles acyclicity too.
    detail::UnionFind uf(dt.vertex_count);
    for (const auto& e : dt.edges) uf.unite(e[0], e[1]);
    for (int r = 1; r < dt.vertex_count; ++r)
        if (uf.find(r) != uf.find(0)) throw Error(ErrorCode::NotATree, "D_P is disconnected");

    dt.degrees.assign(dt.vertex_count, 0);
    for (const auto& e : dt.edges) {
        dt.degrees[e[0]] += 1;
        dt.degrees[e[1]] += 1;
    }
    dt.leaf_vertex.assign(dt.vertex_count, std::nullopt);
    for (int r = 0; r < dt.vertex_count; ++r) {
        const auto& vs = rd.region_vertices(r);
        if (vs.size() == 1) dt.leaf_vertex[r] = vs[0];
    }
    return dt;
}

/// Report on the region structure of a pattern with pairwise non-parallel
/// tracks: degrees, leaf and pants profiles, and the track-count law.
struct ProfileReport {
    bool degrees_ok = false;    // (a) every degree is 1 or 3
    bool leaves_ok = false;     // (b) degree-1 regions: 1 vertex, disc
    bool pants_ok = false;      // (c) degree-3 regions: 0 vertices, chi = -1
    bool counts_ok = false;     // (d) #degree-1 = v and #degree-3 = f/2
    bool count_law_ok = false;  // (e) e_P = f/2 + v - 1
    int v_P = 0;
    int e_P = 0;
    int degree1_count = 0;
    int degree3_count = 0;
    std::optional<int> witness_region;
    std::string detail;

    bool pass() const { return degrees_ok && leaves_ok && pants_ok && counts_ok && count_law_ok; }
};

/// Verify the degree/region profile of a pattern whose tracks are pairwise
/// non-parallel. All checks are reported; the first failing region is the
/// witness.
ProfileReport verify_region_profiles(Triangulation&&, const PatternCoords&) = delete;

inline ProfileReport verify_region_profiles(const Triangulation& tri, const PatternCoords& p) {
    CurveSystem cs = realize(tri, p);
    auto tracks = extract_tracks(cs);
    for (std::size_t i = 0; i < tracks.size(); ++i)
        for (std::size_t j = i + 1; j < tracks.size(); ++j)
            if (tracks[i].weights == tracks[j].weights)
                throw Error(ErrorCode::ParallelTracksPresent,
                            "tracks " + std::to_string(i) + " and " + std::to_string(j));

    RegionDecomposition rd(tri, cs);
    DualTree dt = dual_tree(rd);

    ProfileReport rep;
    rep.v_P = dt.vertex_count;
    rep.e_P = static_cast<int>(dt.edges.size());
    rep.degrees_ok = rep.leaves_ok = rep.pants_ok = true;

    std::ostringstream detail;
    auto witness = [&](int region, const std::string& why) {
        if (!rep.witness_region) {
            rep.witness_region = region;
            detail << "region " << region << ": " << why;
        }
    };

    for (int r = 0; r < dt.vertex_count; ++r) {
        const RegionProfile& pr = dt.profiles[r];
        int deg = dt.degrees[r];
        if (deg == 1) {
            rep.degree1_count += 1;
            if (pr.interior_vertices != 1 || pr.euler_char != 1) {
                rep.leaves_ok = false;
                witness(r, "degree-1 region with " + std::to_string(pr.interior_vertices) +
                               " vertices, chi " + std::to_string(pr.euler_char));
            }
        } else if (deg == 3) {
            rep.degree3_count += 1;
            if (pr.interior_vertices != 0 || pr.euler_char != -1) {
                rep.pants_ok = false;
                witness(r, "degree-3 region with " + std::to_string(pr.interior_vertices) +
                               " vertices, chi " + std::to_string(pr.euler_char));
            }
        } else {
            rep.degrees_ok = false;
            witness(r, "degree " + std::to_string(deg));
        }
    }
    rep.counts_ok = rep.degree1_count == tri.vertex_count() &&
                    2 * rep.degree3_count == tri.face_count();
    rep.count_law_ok = rep.e_P == tri.face_count() / 2 + tri.vertex_count() - 1;
    rep.detail = detail.str();
    return rep;
}

/// The walk of an edge through D_P: the regions of its segments from the
/// smaller endpoint to the larger, and the track of each crossing passed.
struct EdgePath {
    std::vector<int> regions;  // counts[edge] + 1 entries
    std::vector<int> tracks;   // counts[edge] entries
};

inline EdgePath edge_path(const RegionDecomposition& rd, EdgeId e) {
    const CurveSystem& cs = rd.system();
    if (e < 0 || e >= rd.tri().edge_count())
        throw Error(ErrorCode::UnknownEdge, "edge " + std::to_string(e));
    EdgePath path;
    int n = cs.edge_counts()[e];
    for (int s = 0; s <= n; ++s) path.regions.push_back(rd.segment_region(e, s));
    for (int p = 0; p < n; ++p) path.tracks.push_back(cs.curve_of({e, p}));
    return path;
}

EdgePath edge_path(Triangulation&&, const PatternCoords&, EdgeId) = delete;

inline EdgePath edge_path(const Triangulation& tri, const PatternCoords& p, EdgeId e) {
    CurveSystem cs = realize(tri, p);
    RegionDecomposition rd(tri, cs);
    return edge_path(rd, e);
}

/// DOT rendering of D_P: leaves carry their interior vertex, pair-of-pants
/// regions the label P2, edges the track size.
inline std::string to_dot(const DualTree& dt) {
    std::ostringstream out;
    out << "graph D_P {\n";
    for (int r = 0; r < dt.vertex_count; ++r) {
        std::string label;
        if (dt.degrees[r] == 1 && dt.leaf_vertex[r])
            label = "v" + std::to_string(*dt.leaf_vertex[r]);
        else if (dt.degrees[r] == 3 && dt.profiles[r].interior_vertices == 0)
            label = "P2";
        else
            label = "R" + std::to_string(r);
        out << "  r" << r << " [label=\"" << label << "\"];\n";
    }
    for (std::size_t t = 0; t < dt.edges.size(); ++t)
        out << "  r" << dt.edges[t][0] << " -- r" << dt.edges[t][1] << " [label=\""
            << dt.track_sizes[t] << "\"];\n";
    out << "}\n";
    return out.str();
}

}  // namespace tracklab
