#pragma once

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tracklab/corpus.hpp"
#include "tracklab/generators.hpp"
#include "tracklab/json_io.hpp"

namespace tracklab {

namespace detail {

inline void emit(const json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        save_json_file(out_path, j);
}

inline const char* kind_name(TrackKind k) {
    switch (k) {
        case TrackKind::VertexLink3: return "vertex-link-3-track";
        case TrackKind::Quad4: return "quad-4-track";
        case TrackKind::Octagon8: return "octagon-8-track";
        case TrackKind::Other: return "other";
    }
    return "other";
}

inline const char* kind_name(PatternKind k) {
    switch (k) {
        case PatternKind::Normal: return "normal";
        case PatternKind::AlmostNormal: return "almost-normal";
        case PatternKind::Other: return "other";
    }
    return "other";
}

// Curve files may embed their triangulation; an explicit --tri wins.
inline Triangulation load_curves_tri(const json& curves_doc, const std::string& tri_path) {
    if (!tri_path.empty()) return triangulation_from_json(load_json_file(tri_path));
    if (curves_doc.contains("triangulation"))
        return triangulation_from_json(curves_doc["triangulation"]);
    throw Error(ErrorCode::BadInput,
                "curve file has no embedded triangulation; pass --tri tri.json");
}

}  // namespace detail

/// Entry point behind the tracklab binary; every subcommand is a thin call
/// into one library operation. Exit codes: 0 success / all checks passed,
/// 1 validation or theorem failure, 2 usage error.
inline int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"pattern/track calculus on triangulated 2-spheres"};
    app.require_subcommand(1);

    // gen
    auto* gen_cmd = app.add_subcommand("gen", "generate a triangulation");
    std::string gen_kind;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen_cmd->add_option("--kind", gen_kind,
                        "tetrahedron | octahedron | icosahedron | bipyramid(n) | random(v)")
        ->required();
    gen_cmd->add_option("--seed", gen_seed, "generator seed");
    gen_cmd->add_option("-o,--out", gen_out, "output file (default stdout)");

    // validate
    auto* val_cmd = app.add_subcommand("validate", "validate a triangulation file");
    std::string val_tri;
    val_cmd->add_option("tri", val_tri, "triangulation JSON")->required();

    // tracks
    auto* tracks_cmd = app.add_subcommand("tracks", "realize a pattern and list its tracks");
    std::string tracks_tri, tracks_pattern, tracks_out;
    tracks_cmd->add_option("tri", tracks_tri)->required();
    tracks_cmd->add_option("pattern", tracks_pattern)->required();
    tracks_cmd->add_option("-o,--out", tracks_out);

    // normalize
    auto* norm_cmd = app.add_subcommand("normalize", "remove all returning arcs");
    std::string norm_curves, norm_tri, norm_out;
    norm_cmd->add_option("curves", norm_curves, "curve-system JSON")->required();
    norm_cmd->add_option("--tri", norm_tri, "triangulation JSON");
    norm_cmd->add_option("-o,--out", norm_out);

    // surgery
    auto* surg_cmd = app.add_subcommand("surgery", "cut and rejoin at an adjacent crossing pair");
    std::string surg_curves, surg_tri, surg_edge, surg_out;
    int surg_pos = 0;
    surg_cmd->add_option("curves", surg_curves, "curve-system JSON")->required();
    surg_cmd->add_option("--edge", surg_edge, "edge key u-v")->required();
    surg_cmd->add_option("--pos", surg_pos, "lower position of the adjacent pair")->required();
    surg_cmd->add_option("--tri", surg_tri, "triangulation JSON");
    surg_cmd->add_option("-o,--out", surg_out);

    // maximal
    auto* max_cmd = app.add_subcommand("maximal", "build a maximal non-parallel track set");
    std::string max_tri, max_out, max_dot;
    max_cmd->add_option("tri", max_tri)->required();
    max_cmd->add_option("-o,--out", max_out);
    max_cmd->add_option("--dot", max_dot, "write the dual tree as DOT");

    // verify
    auto* ver_cmd = app.add_subcommand("verify", "check the region profile of a pattern");
    std::string ver_tri, ver_pattern, ver_out;
    ver_cmd->add_option("tri", ver_tri)->required();
    ver_cmd->add_option("pattern", ver_pattern)->required();
    ver_cmd->add_option("-o,--out", ver_out);

    // dptree
    auto* dp_cmd = app.add_subcommand("dptree", "export the dual tree of a pattern");
    std::string dp_tri, dp_pattern, dp_dot;
    dp_cmd->add_option("tri", dp_tri)->required();
    dp_cmd->add_option("pattern", dp_pattern)->required();
    dp_cmd->add_option("--dot", dp_dot, "output DOT file (default stdout)");

    // corpus
    auto* corpus_cmd = app.add_subcommand("corpus", "randomized build-and-verify trials");
    CorpusOptions copts;
    std::string corpus_out;
    corpus_cmd->add_option("--trials", copts.trials);
    corpus_cmd->add_option("--min-v", copts.min_v);
    corpus_cmd->add_option("--max-v", copts.max_v);
    corpus_cmd->add_option("--seed", copts.seed);
    corpus_cmd->add_option("--jobs", copts.jobs);
    corpus_cmd->add_option("-o,--out", corpus_out);

    std::vector<const char*> argv;
    argv.push_back("tracklab");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (*gen_cmd) {
            Triangulation tri = generate(gen_kind, gen_seed);
            detail::emit(to_json(tri), gen_out);
            return 0;
        }
        if (*val_cmd) {
            try {
                Triangulation tri = triangulation_from_json(load_json_file(val_tri));
                json j{{"valid", true},
                       {"v", tri.vertex_count()},
                       {"e", tri.edge_count()},
                       {"f", tri.face_count()}};
                std::cout << j.dump(2) << "\n";
                return 0;
            } catch (const Error& err) {
                std::cout << json{{"valid", false}, {"error", err.what()}}.dump(2) << "\n";
                return 1;
            }
        }
        if (*tracks_cmd) {
            Triangulation tri = triangulation_from_json(load_json_file(tracks_tri));
            PatternCoords p = pattern_from_json(tri, load_json_file(tracks_pattern));
            auto tracks = extract_tracks(realize(tri, p));
            json out;
            out["tracks"] = json::array();
            for (const auto& t : tracks) {
                TrackClass tc = classify_track(tri, t);
                out["tracks"].push_back({{"weights", to_json(tri, t.weights)["weights"]},
                                         {"n", tc.size},
                                         {"kind", detail::kind_name(tc.kind)}});
            }
            if (tri.is_tetrahedron()) out["pattern_kind"] = detail::kind_name(pattern_kind(tri, p));
            detail::emit(out, tracks_out);
            return 0;
        }
        if (*norm_cmd) {
            json doc = load_json_file(norm_curves);
            Triangulation tri = detail::load_curves_tri(doc, norm_tri);
            CurveSystem cs = curves_from_json(tri, doc);
            auto [result, report] = normalize(std::move(cs));
            json out = to_json(result);
            out["triangulation"] = to_json(tri);
            out["report"] = to_json(report);
            detail::emit(out, norm_out);
            return 0;
        }
        if (*surg_cmd) {
            json doc = load_json_file(surg_curves);
            Triangulation tri = detail::load_curves_tri(doc, surg_tri);
            CurveSystem cs = curves_from_json(tri, doc);
            auto [u, v] = detail::parse_edge_key(surg_edge);
            SurgeryResult res = surgery(cs, tri.edge_id(u, v), surg_pos);
            json out = to_json(res.system);
            out["triangulation"] = to_json(tri);
            out["same_track"] = res.same_track;
            detail::emit(out, surg_out);
            return 0;
        }
        if (*max_cmd) {
            Triangulation tri = triangulation_from_json(load_json_file(max_tri));
            BuilderState state = build_maximal(tri);
            detail::emit(to_json(tri, state), max_out);
            if (!max_dot.empty()) {
                RegionDecomposition rd(tri, realize(tri, state.combined));
                std::ofstream dot(max_dot);
                if (!dot) throw Error(ErrorCode::BadInput, "cannot write " + max_dot);
                dot << to_dot(dual_tree(rd));
            }
            return 0;
        }
        if (*ver_cmd) {
            Triangulation tri = triangulation_from_json(load_json_file(ver_tri));
            PatternCoords p = pattern_from_json(tri, load_json_file(ver_pattern));
            ProfileReport report = verify_region_profiles(tri, p);
            detail::emit(to_json(report), ver_out);
            return report.pass() ? 0 : 1;
        }
        if (*dp_cmd) {
            Triangulation tri = triangulation_from_json(load_json_file(dp_tri));
            PatternCoords p = pattern_from_json(tri, load_json_file(dp_pattern));
            RegionDecomposition rd(tri, realize(tri, p));
            std::string dot = to_dot(dual_tree(rd));
            if (dp_dot.empty()) {
                std::cout << dot;
            } else {
                std::ofstream out(dp_dot);
                if (!out) throw Error(ErrorCode::BadInput, "cannot write " + dp_dot);
                out << dot;
            }
            return 0;
        }
        if (*corpus_cmd) {
            CorpusReport report = run_corpus(copts);
            detail::emit(to_json(report), corpus_out);
            return report.all_passed() ? 0 : 1;
        }
    } catch (const Error& err) {
        std::cerr << err.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace tracklab
