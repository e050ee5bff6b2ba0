#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ea/engine.hpp"

namespace ea {

/// Plain decimal text with up to 9 significant digits, '.' radix, no locale.
std::string format_number(double value);

/// Multi-run aggregates. Fitness-call statistics cover successful runs only
/// (unset when there are none) and are rendered as "NA" in that case.
struct StatsRecord {
    std::string algorithm;
    int problem_id = 0;
    std::size_t n_runs = 0;
    std::size_t success_count = 0;
    double success_rate = 0.0;
    std::optional<double> success_calls_mean;
    std::optional<double> success_calls_std;
    std::optional<std::uint64_t> success_calls_min;
    std::optional<std::uint64_t> success_calls_max;
    double best_fitness_mean = 0.0;
    double best_fitness_std = 0.0;

    struct PerRun {
        int run_index = 0;
        std::uint64_t seed = 0;
        std::uint64_t generations = 0;
        std::uint64_t total_fitness_calls = 0;
        double best_fitness = 0.0;
        StopReason stop_reason{};
        bool success = false;
    };
    std::vector<PerRun> per_run;
};

StatsRecord compute_stats(std::span<const RunRecord> runs);

/// `<ALG>_<problemId>_<runIndex>.txt`: '#'-prefixed header lines, one
/// whitespace-separated row per generation, '#'-prefixed footer lines.
/// Written atomically (temp file + rename). Returns the path.
std::filesystem::path write_run_file(const RunRecord& record, const std::filesystem::path& dir);

/// `<ALG>-STATS_<problemId>_<nRuns>.txt`: per-run summary lines followed by
/// the aggregate block.
std::filesystem::path write_stats_file(const StatsRecord& stats,
                                       const std::filesystem::path& dir);

/// The aggregate block as printed at the end of the stats file.
std::string aggregate_block(const StatsRecord& stats);

/// One CSV for any number of runs, RFC-4180-style quoting, header row
/// `algorithm,problem,run,generation,fitness_calls,best,avg,best_so_far`.
std::filesystem::path export_csv(std::span<const RunRecord> records,
                                 const std::filesystem::path& path);

} // namespace ea
