#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include "tracklab/builder.hpp"
#include "tracklab/generators.hpp"
#include "tracklab/json_io.hpp"

namespace tracklab {

struct CorpusOptions {
    int trials = 100;
    int min_v = 5;
    int max_v = 30;
    std::uint64_t seed = 1;
    int jobs = 1;
};

struct TrialRecord {
    int trial = 0;
    std::uint64_t seed = 0;
    int v = 0, e = 0, f = 0;
    int e_P = 0;
    int builder_steps = 0;
    bool theorem_pass = false;
    double wall_ms = 0.0;
    std::string error;
};

struct CorpusReport {
    CorpusOptions options;
    std::vector<TrialRecord> records;
    int passed = 0;
    int failed = 0;

    bool all_passed() const { return failed == 0 && passed == static_cast<int>(records.size()); }
};

/// One trial: generate a random sphere triangulation, build the maximal
/// pattern from the vertex-link seed, and verify the region profiles.
inline TrialRecord run_trial(int index, std::uint64_t seed, int target_v) {
    TrialRecord rec;
    rec.trial = index;
    rec.seed = seed;
    auto start = std::chrono::steady_clock::now();
    try {
        Triangulation tri = generate(GeneratorSpec{GeneratorKind::Random, target_v}, seed);
        rec.v = tri.vertex_count();
        rec.e = tri.edge_count();
        rec.f = tri.face_count();
        BuilderState state = build_maximal(tri);
        rec.e_P = state.track_count();
        rec.builder_steps = static_cast<int>(state.trace.size());
        ProfileReport report = verify_region_profiles(tri, state.combined);
        rec.theorem_pass = report.pass() && rec.e_P == 2 * rec.v - 3;
    } catch (const Error& err) {
        rec.error = err.what();
        rec.theorem_pass = false;
    }
    rec.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return rec;
}

/// Deterministic given the master seed: per-trial seeds and vertex targets
/// are drawn up front, trials then run independently (optionally across
/// threads) and aggregate in trial order.
inline CorpusReport run_corpus(const CorpusOptions& opts) {
    if (opts.trials < 1 || opts.min_v < 4 || opts.max_v < opts.min_v)
        throw Error(ErrorCode::InvalidSpec, "bad corpus options");

    std::mt19937_64 rng(opts.seed);
    std::vector<std::uint64_t> seeds(opts.trials);
    std::vector<int> targets(opts.trials);
    std::uniform_int_distribution<int> pick_v(opts.min_v, opts.max_v);
    for (int i = 0; i < opts.trials; ++i) {
        seeds[i] = rng();
        targets[i] = pick_v(rng);
    }

    CorpusReport report;
    report.options = opts;
    report.records.resize(opts.trials);

    int jobs = std::max(1, opts.jobs);
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= opts.trials) return;
            report.records[i] = run_trial(i, seeds[i], targets[i]);
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (const auto& rec : report.records) (rec.theorem_pass ? report.passed : report.failed) += 1;
    return report;
}

inline json to_json(const CorpusReport& report, bool include_timing = true) {
    json j;
    j["master_seed"] = report.options.seed;
    j["trials"] = report.options.trials;
    j["min_v"] = report.options.min_v;
    j["max_v"] = report.options.max_v;
    j["passed"] = report.passed;
    j["failed"] = report.failed;
    j["records"] = json::array();
    for (const auto& r : report.records) {
        json rec{{"trial", r.trial}, {"seed", r.seed},   {"v", r.v},
                 {"e", r.e},         {"f", r.f},         {"e_P", r.e_P},
                 {"builder_steps", r.builder_steps},     {"theorem_pass", r.theorem_pass}};
        if (include_timing) rec["wall_ms"] = r.wall_ms;
        if (!r.error.empty()) rec["error"] = r.error;
        j["records"].push_back(rec);
    }
    return j;
}

}  // namespace tracklab
