#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "tracklab/cli.hpp"
#include "tracklab/json_io.hpp"
#include "testers.hpp"

using namespace tracklab;
namespace fs = std::filesystem;

namespace {

Triangulation tetra() { return Triangulation(tetrahedron_faces()); }

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("tracklab_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("triangulation JSON round trip and validation") {
    Triangulation tri = tetra();
    json j = to_json(tri);
    Triangulation back = triangulation_from_json(j);
    REQUIRE(back.faces() == tri.faces());

    SECTION("declared vertex count must match") {
        json bad = j;
        bad["vertices"] = 5;
        try {
            triangulation_from_json(bad);
            FAIL("expected NotConnected");
        } catch (const Error& e) {
            REQUIRE(e.code() == ErrorCode::NotConnected);
        }
    }
    SECTION("missing faces") {
        REQUIRE_THROWS_AS(triangulation_from_json(json::object()), Error);
    }
}

TEST_CASE("pattern JSON uses sparse u-v keys") {
    Triangulation tri = tetra();
    PatternCoords p = vertex_link(tri, 0);
    json j = to_json(tri, p);
    REQUIRE(j["weights"].size() == 3);  // zero edges omitted
    REQUIRE(pattern_from_json(tri, j) == p);

    SECTION("unknown edges and negative weights rejected") {
        REQUIRE_THROWS_AS(pattern_from_json(tri, json{{"weights", {{"0-9", 1}}}}), Error);
        REQUIRE_THROWS_AS(pattern_from_json(tri, json{{"weights", {{"0-1", -2}}}}), Error);
        REQUIRE_THROWS_AS(pattern_from_json(tri, json{{"weights", {{"zero-one", 1}}}}), Error);
    }
}

TEST_CASE("curve system JSON round trips") {
    Triangulation tri = tetra();
    std::mt19937_64 rng(5);

    SECTION("normal systems") {
        for (int trial = 0; trial < 10; ++trial) {
            CurveSystem cs = testing::random_system(tri, rng, 2, trial % 2);
            CurveSystem back = curves_from_json(tri, to_json(cs));
            REQUIRE(back.edge_counts() == cs.edge_counts());
            REQUIRE(testing::curve_weights(back) == testing::curve_weights(cs));
        }
    }
    SECTION("non-normal systems keep their returning arcs") {
        for (int trial = 0; trial < 10; ++trial) {
            CurveSystem cs = testing::random_nonnormal(tri, rng, 1 + trial % 4);
            CurveSystem back = curves_from_json(tri, to_json(cs));
            REQUIRE(back.edge_counts() == cs.edge_counts());
            REQUIRE(find_returning_arcs(back).size() == find_returning_arcs(cs).size());
            REQUIRE(testing::curve_weights(back) == testing::curve_weights(cs));
        }
    }
    SECTION("the standalone loop survives the trip") {
        CurveSystem loop = testing::insert_loop(CurveSystem::empty(tri), 2, 0);
        CurveSystem back = curves_from_json(tri, to_json(loop));
        REQUIRE(back.curve_count() == 1);
        REQUIRE(back.crossing_count() == 2);
    }
    SECTION("gapped positions are rejected") {
        json j = {{"curves", {{{{"edge", "0-1"}, {"pos", 0}}, {{"edge", "0-1"}, {"pos", 2}}}}}};
        REQUIRE_THROWS_AS(curves_from_json(tri, j), Error);
    }
}

TEST_CASE("cli pipeline: gen, validate, maximal, verify") {
    TempDir tmp;
    std::string tri_path = tmp.file("tri.json");

    REQUIRE(run_cli({"gen", "--kind", "tetrahedron", "-o", tri_path}) == 0);
    REQUIRE(run_cli({"validate", tri_path}) == 0);

    std::string max_path = tmp.file("max.json");
    std::string dot_path = tmp.file("dp.dot");
    REQUIRE(run_cli({"maximal", tri_path, "-o", max_path, "--dot", dot_path}) == 0);

    json max = load_json_file(max_path);
    REQUIRE(max["e_P"] == 5);
    REQUIRE(max["tracks"].size() == 5);

    std::ifstream dot(dot_path);
    std::string dot_text((std::istreambuf_iterator<char>(dot)), {});
    REQUIRE(dot_text.find("P2") != std::string::npos);

    // feed the built pattern back through verify
    Triangulation tri = triangulation_from_json(load_json_file(tri_path));
    PatternCoords combined(tri.edge_count());
    for (const auto& w : max["tracks"])
        combined = sum_patterns(combined, pattern_from_json(tri, json{{"weights", w}}));
    std::string pat_path = tmp.file("pattern.json");
    save_json_file(pat_path, to_json(tri, combined));
    REQUIRE(run_cli({"verify", tri_path, pat_path, "-o", tmp.file("report.json")}) == 0);

    // the empty pattern fails verification with exit 1
    std::string empty_path = tmp.file("empty.json");
    save_json_file(empty_path, json{{"weights", json::object()}});
    REQUIRE(run_cli({"verify", tri_path, empty_path, "-o", tmp.file("report2.json")}) == 1);
    json rep = load_json_file(tmp.file("report2.json"));
    REQUIRE(rep["pass"] == false);
    REQUIRE(rep["witness"].get<std::string>().find("degree 0") != std::string::npos);
}

TEST_CASE("cli tracks, dptree, normalize and surgery") {
    TempDir tmp;
    std::string tri_path = tmp.file("tri.json");
    REQUIRE(run_cli({"gen", "--kind", "tetrahedron", "-o", tri_path}) == 0);
    Triangulation tri = tetra();

    // pattern: links + octagon
    PatternCoords p(tri.edge_count());
    p[tri.edge_id(0, 1)] = 2;
    p[tri.edge_id(2, 3)] = 2;
    p[tri.edge_id(0, 2)] = p[tri.edge_id(0, 3)] = 1;
    p[tri.edge_id(1, 2)] = p[tri.edge_id(1, 3)] = 1;
    for (VertexId v = 0; v < 4; ++v) p = sum_patterns(p, vertex_link(tri, v));
    std::string pat_path = tmp.file("pattern.json");
    save_json_file(pat_path, to_json(tri, p));

    std::string tracks_path = tmp.file("tracks.json");
    REQUIRE(run_cli({"tracks", tri_path, pat_path, "-o", tracks_path}) == 0);
    json tracks = load_json_file(tracks_path);
    REQUIRE(tracks["tracks"].size() == 5);
    REQUIRE(tracks["pattern_kind"] == "almost-normal");
    int octagons = 0;
    for (const auto& t : tracks["tracks"])
        if (t["kind"] == "octagon-8-track") ++octagons;
    REQUIRE(octagons == 1);

    REQUIRE(run_cli({"dptree", tri_path, pat_path, "--dot", tmp.file("dp.dot")}) == 0);

    // emit the realized system, then surgery at the octagon's doubled edge
    std::string curves_path = tmp.file("curves.json");
    {
        json doc = to_json(realize(tri, p));
        doc["triangulation"] = to_json(tri);
        save_json_file(curves_path, doc);
    }
    std::string cut_path = tmp.file("cut.json");
    REQUIRE(run_cli({"surgery", curves_path, "--edge", "0-1", "--pos", "1", "-o", cut_path}) == 0);
    json cut = load_json_file(cut_path);
    REQUIRE(cut["same_track"] == true);  // positions 1,2 are the octagon pair
    REQUIRE(cut["curves"].size() == 6);

    std::string norm_path = tmp.file("norm.json");
    REQUIRE(run_cli({"normalize", cut_path, "-o", norm_path}) == 0);
    json norm = load_json_file(norm_path);
    REQUIRE(norm["report"]["final_normal"] == true);
    REQUIRE(norm["report"]["crossings_removed"] == 2 * norm["report"]["steps"].get<int>());

    // without an embedded triangulation a --tri override is required
    json bare = load_json_file(curves_path);
    bare.erase("triangulation");
    std::string bare_path = tmp.file("bare.json");
    save_json_file(bare_path, bare);
    REQUIRE(run_cli({"normalize", bare_path}) == 1);
    REQUIRE(run_cli({"normalize", bare_path, "--tri", tri_path, "-o", tmp.file("n2.json")}) == 0);
}

TEST_CASE("cli corpus runs are reproducible") {
    TempDir tmp;
    std::string r1 = tmp.file("r1.json"), r2 = tmp.file("r2.json");
    REQUIRE(run_cli({"corpus", "--trials", "6", "--min-v", "5", "--max-v", "9", "--seed", "42",
                     "-o", r1}) == 0);
    REQUIRE(run_cli({"corpus", "--trials", "6", "--min-v", "5", "--max-v", "9", "--seed", "42",
                     "--jobs", "2", "-o", r2}) == 0);

    json a = load_json_file(r1), b = load_json_file(r2);
    REQUIRE(a["passed"] == 6);
    auto strip = [](json& j) {
        for (auto& rec : j["records"]) rec.erase("wall_ms");
    };
    strip(a);
    strip(b);
    REQUIRE(a == b);  // identical reports modulo timing
    for (const auto& rec : a["records"]) {
        int v = rec["v"].get<int>();
        REQUIRE(rec["e"] == 3 * v - 6);
        REQUIRE(rec["f"] == 2 * v - 4);
        REQUIRE(rec["e_P"] == 2 * v - 3);
    }
}

TEST_CASE("cli usage errors exit with 2") {
    REQUIRE(run_cli({"frobnicate"}) == 2);
    REQUIRE(run_cli({}) == 2);
    REQUIRE(run_cli({"gen"}) == 2);                           // missing --kind
    REQUIRE(run_cli({"surgery", "nofile.json"}) == 2);        // missing --edge/--pos
    REQUIRE(run_cli({"gen", "--kind", "heptahedron"}) == 1);  // library-level error
}
