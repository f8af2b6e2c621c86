#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "tracklab/builder.hpp"
#include "tracklab/generators.hpp"
#include "testers.hpp"

using namespace tracklab;

namespace {

Triangulation tetra() { return Triangulation(tetrahedron_faces()); }

std::vector<PatternCoords> sorted_registry(const BuilderState& s) {
    auto r = s.registry;
    std::sort(r.begin(), r.end());
    return r;
}

}  // namespace

TEST_CASE("seeding with vertex links") {
    SECTION("tetrahedron: 4 tracks, combined weight 2 per edge") {
        Triangulation tri = tetra();
        BuilderState state = seed_vertex_links(tri);
        REQUIRE(state.track_count() == 4);
        for (EdgeId e = 0; e < tri.edge_count(); ++e) REQUIRE(state.combined[e] == 2);
    }
    SECTION("octahedron: 6 tracks") {
        Triangulation octa = generate("octahedron");
        REQUIRE(seed_vertex_links(octa).track_count() == 6);
    }
    SECTION("icosahedron: 12 tracks") {
        Triangulation icosa = generate("icosahedron");
        REQUIRE(seed_vertex_links(icosa).track_count() == 12);
    }
}

TEST_CASE("extend_once") {
    Triangulation tri = tetra();

    SECTION("one extension completes the tetrahedron") {
        auto [state, progressed] = extend_once(seed_vertex_links(tri));
        REQUIRE(progressed);
        REQUIRE(state.track_count() == 5);
        REQUIRE(state.trace.size() == 1);
    }
    SECTION("a completed state is a fixpoint") {
        BuilderState done = build_maximal(tri);
        auto [state, progressed] = extend_once(done);
        REQUIRE_FALSE(progressed);
        REQUIRE(sorted_registry(state) == sorted_registry(done));
    }
}

TEST_CASE("build_maximal reaches 2v-3 tracks") {
    SECTION("tetrahedron: 5 tracks, all profiles pass") {
        Triangulation tri = tetra();
        BuilderState state = build_maximal(tri);
        REQUIRE(state.track_count() == 5);
        ProfileReport rep = verify_region_profiles(tri, state.combined);
        REQUIRE(rep.pass());
        REQUIRE(rep.e_P == 5);
        // four links plus the track around the first edge's endpoints
        std::multiset<long> sizes;
        for (const auto& w : state.registry) sizes.insert(w.total());
        REQUIRE(sizes == std::multiset<long>{3, 3, 3, 3, 4});
    }
    SECTION("bipyramid(3): 7 tracks") {
        Triangulation tri = generate("bipyramid(3)");
        REQUIRE(build_maximal(tri).track_count() == 7);
    }
    SECTION("octahedron: 9 tracks, verified") {
        Triangulation tri = generate("octahedron");
        BuilderState state = build_maximal(tri);
        REQUIRE(state.track_count() == 9);
        REQUIRE(verify_region_profiles(tri, state.combined).pass());
    }
    SECTION("random(12, seed 3): 21 tracks") {
        Triangulation tri = generate("random(12)", 3);
        REQUIRE(build_maximal(tri).track_count() == 21);
    }
}

TEST_CASE("builder determinism and monotone progress") {
    Triangulation tri = generate("random(9)", 5);
    BuilderState a = build_maximal(tri);
    BuilderState b = build_maximal(tri);
    REQUIRE(a.registry == b.registry);  // identical order, not just multiset
    REQUIRE(a.trace.size() == b.trace.size());

    // registry grows strictly along the trace and stays within the bound;
    // the fixpoint arrives in at most v - 3 extensions
    BuilderState state = seed_vertex_links(tri);
    int bound = 2 * tri.vertex_count() - 3;
    int extensions = 0;
    for (;;) {
        int before = state.track_count();
        auto [next, progressed] = extend_once(state);
        state = std::move(next);
        if (!progressed) break;
        ++extensions;
        REQUIRE(state.track_count() > before);
        REQUIRE(state.track_count() <= bound);
    }
    REQUIRE(state.track_count() == bound);
    REQUIRE(extensions <= tri.vertex_count() - 3);
}

TEST_CASE("surgery on a maximal pattern never annihilates the merged curve") {
    // the normalized remainder is parallel to existing tracks, never nothing
    std::mt19937_64 rng(17);
    for (int seed = 0; seed < 8; ++seed) {
        Triangulation tri = generate(GeneratorSpec{GeneratorKind::Random, 6 + seed % 5}, 70 + seed);
        BuilderState built = build_maximal(tri);
        CurveSystem cs = realize(tri, built.combined);
        std::vector<std::pair<EdgeId, int>> pairs;
        for (EdgeId e = 0; e < tri.edge_count(); ++e)
            for (int s = 0; s + 1 < cs.edge_counts()[e]; ++s) pairs.push_back({e, s});
        for (int k = 0; k < 5 && !pairs.empty(); ++k) {
            auto [e, s] = pairs[rng() % pairs.size()];
            auto res = surgery(cs, e, s);
            auto [norm, rep] = normalize(res.system);
            REQUIRE(rep.annihilated_curves == 0);
            REQUIRE(rep.final_normal);
        }
    }
}

TEST_CASE("oracle cap is configurable through the environment") {
    Triangulation tri = tetra();
    setenv("TRACKLAB_ORACLE_CAP", "100", 1);
    try {
        oracle_enumerate_tracks(tri, 2);  // 3^6 = 729 raw vectors > 100
        unsetenv("TRACKLAB_ORACLE_CAP");
        FAIL("expected BoundTooLarge");
    } catch (const Error& e) {
        unsetenv("TRACKLAB_ORACLE_CAP");
        REQUIRE(e.code() == ErrorCode::BoundTooLarge);
    }
    REQUIRE(oracle_enumerate_tracks(tri, 2).size() == 10);
}

TEST_CASE("registry members stay pairwise non-parallel") {
    for (int seed = 0; seed < 6; ++seed) {
        Triangulation tri = generate(GeneratorSpec{GeneratorKind::Random, 6 + seed}, seed);
        BuilderState state = build_maximal(tri);
        for (std::size_t i = 0; i < state.registry.size(); ++i)
            for (std::size_t j = i + 1; j < state.registry.size(); ++j)
                REQUIRE_FALSE(state.registry[i] == state.registry[j]);
        // combined really is the sum of the registry
        PatternCoords sum(tri.edge_count());
        for (const auto& w : state.registry) sum = sum_patterns(sum, w);
        REQUIRE(sum == state.combined);
    }
}

TEST_CASE("oracle enumeration on the tetrahedron") {
    Triangulation tri = tetra();

    SECTION("bound 1: exactly four 3-tracks and three quads") {
        auto tracks = oracle_enumerate_tracks(tri, 1);
        REQUIRE(tracks.size() == 7);
        int links = 0, quads = 0;
        for (const auto& w : tracks) {
            if (w.total() == 3) ++links;
            if (w.total() == 4) ++quads;
        }
        REQUIRE(links == 4);
        REQUIRE(quads == 3);
    }
    SECTION("bound 2 contains the three octagons") {
        auto tracks = oracle_enumerate_tracks(tri, 2);
        int octagons = 0;
        for (const auto& w : tracks) {
            Track t{{}, w, static_cast<int>(w.total())};
            if (classify_track(tri, t).kind == TrackKind::Octagon8) ++octagons;
        }
        REQUIRE(octagons == 3);
        // the zero vector is never a track
        for (const auto& w : tracks) REQUIRE_FALSE(w.is_zero());
    }
    SECTION("the raw-space cap guards the enumeration") {
        Triangulation icosa = generate("icosahedron");
        try {
            oracle_enumerate_tracks(icosa, 4);  // 5^30 raw vectors
            FAIL("expected BoundTooLarge");
        } catch (const Error& e) {
            REQUIRE(e.code() == ErrorCode::BoundTooLarge);
        }
    }
}

TEST_CASE("oracle certifies maximality on small triangulations") {
    // nothing with entries <= 2 extends the built registries (bound 3 runs
    // in the acceptance suite)
    for (const char* kind : {"tetrahedron", "bipyramid(3)"}) {
        Triangulation tri = generate(kind);
        BuilderState state = build_maximal(tri);
        REQUIRE(oracle_addable_tracks(state, 2).empty());
    }
}

TEST_CASE("is_addable distinguishes genuinely new tracks") {
    Triangulation tri = tetra();
    BuilderState state = seed_vertex_links(tri);

    PatternCoords quad(tri.edge_count());
    quad[tri.edge_id(0, 2)] = quad[tri.edge_id(0, 3)] = 1;
    quad[tri.edge_id(1, 2)] = quad[tri.edge_id(1, 3)] = 1;
    REQUIRE(is_addable(state, quad));

    // a registered track is not a new addition
    REQUIRE_FALSE(is_addable(state, vertex_link(tri, 0)));

    // after the quad joins, the other quads collide with it
    state.registry.push_back(quad);
    state.combined = sum_patterns(state.combined, quad);
    PatternCoords other_quad(tri.edge_count());
    other_quad[tri.edge_id(0, 1)] = other_quad[tri.edge_id(2, 3)] = 1;
    other_quad[tri.edge_id(0, 3)] = other_quad[tri.edge_id(1, 2)] = 1;
    REQUIRE_FALSE(is_addable(state, other_quad));
}
