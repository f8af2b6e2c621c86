#include <catch2/catch_amalgamated.hpp>

#include "tracklab/generators.hpp"
#include "tracklab/triangulation.hpp"

using namespace tracklab;

TEST_CASE("tetrahedron counts and incidences") {
    Triangulation tri(tetrahedron_faces());
    REQUIRE(tri.vertex_count() == 4);
    REQUIRE(tri.edge_count() == 6);
    REQUIRE(tri.face_count() == 4);
    REQUIRE(tri.is_tetrahedron());

    for (EdgeId e = 0; e < tri.edge_count(); ++e) {
        const auto& fs = tri.edge_faces(e);
        REQUIRE(fs[0] != fs[1]);
    }
    for (VertexId v = 0; v < 4; ++v) {
        REQUIRE(tri.vertex_degree(v) == 3);
        REQUIRE(tri.vertex_faces(v).size() == 3);
    }
    // face_edges(f)[i] is opposite face vertex i
    for (FaceId f = 0; f < 4; ++f)
        for (int i = 0; i < 3; ++i) {
            VertexId x = tri.face_vertices(f)[i];
            const EdgeKey& k = tri.edge(tri.face_edges(f)[i]);
            REQUIRE(k.u != x);
            REQUIRE(k.v != x);
        }
}

TEST_CASE("invalid face lists are rejected") {
    SECTION("repeated face") {
        REQUIRE_THROWS_MATCHES(build_triangulation({{0, 1, 2}, {0, 1, 2}}), Error,
                               Catch::Matchers::Predicate<Error>([](const Error& e) {
                                   return e.code() == ErrorCode::NotSimplicial;
                               }));
    }
    SECTION("degenerate face") {
        REQUIRE_THROWS_MATCHES(build_triangulation({{0, 1, 1}}), Error,
                               Catch::Matchers::Predicate<Error>([](const Error& e) {
                                   return e.code() == ErrorCode::NotSimplicial;
                               }));
    }
    SECTION("open disc: edge in one face") {
        try {
            build_triangulation({{0, 1, 2}});
            FAIL("expected NotClosed");
        } catch (const Error& e) {
            REQUIRE(e.code() == ErrorCode::NotClosed);
        }
    }
    SECTION("torus fails the sphere check") {
        // 7-vertex triangulated torus (Moebius-Kantor style): chi = 0
        std::vector<std::array<VertexId, 3>> faces;
        for (int i = 0; i < 7; ++i) {
            faces.push_back({i, (i + 1) % 7, (i + 3) % 7});
            faces.push_back({i, (i + 2) % 7, (i + 3) % 7});
        }
        try {
            build_triangulation(faces);
            FAIL("expected NotASphere");
        } catch (const Error& e) {
            REQUIRE(e.code() == ErrorCode::NotASphere);
        }
    }
    SECTION("disjoint union is not connected") {
        std::vector<std::array<VertexId, 3>> faces = tetrahedron_faces();
        for (const auto& f : tetrahedron_faces()) faces.push_back({f[0] + 4, f[1] + 4, f[2] + 4});
        try {
            build_triangulation(faces);
            FAIL("expected NotConnected");
        } catch (const Error& e) {
            REQUIRE(e.code() == ErrorCode::NotConnected);
        }
    }
}

TEST_CASE("standard generators") {
    Triangulation octa = generate("octahedron");
    REQUIRE(octa.vertex_count() == 6);
    REQUIRE(octa.edge_count() == 12);
    REQUIRE(octa.face_count() == 8);

    Triangulation icosa = generate("icosahedron");
    REQUIRE(icosa.vertex_count() == 12);
    REQUIRE(icosa.edge_count() == 30);
    REQUIRE(icosa.face_count() == 20);

    Triangulation bp = generate("bipyramid(3)");
    REQUIRE(bp.vertex_count() == 5);
    REQUIRE(bp.edge_count() == 9);
    REQUIRE(bp.face_count() == 6);

    REQUIRE_THROWS_AS(generate("bipyramid(2)"), Error);
    REQUIRE_THROWS_AS(generate("random(3)"), Error);
    REQUIRE_THROWS_AS(generate("dodecahedron"), Error);
}

TEST_CASE("random generator hits the target and is deterministic") {
    Triangulation t1 = generate("random(20)", 7);
    REQUIRE(t1.vertex_count() == 20);
    REQUIRE(t1.face_count() == 36);
    REQUIRE(t1.edge_count() == 54);

    Triangulation t2 = generate("random(20)", 7);
    REQUIRE(t1.faces() == t2.faces());

    Triangulation t3 = generate("random(20)", 8);
    // different seed, almost surely different shape
    CHECK(t1.faces() != t3.faces());
}

TEST_CASE("random generator output is always a valid sphere") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        int target = 4 + static_cast<int>(seed % 17);
        Triangulation tri = generate(GeneratorSpec{GeneratorKind::Random, target}, seed);
        REQUIRE(tri.vertex_count() == target);
        REQUIRE(tri.vertex_count() - tri.edge_count() + tri.face_count() == 2);
        REQUIRE(3 * tri.face_count() == 2 * tri.edge_count());
    }
}
