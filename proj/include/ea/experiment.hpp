#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "ea/config.hpp"
#include "ea/engine.hpp"
#include "ea/problems.hpp"
#include "ea/reporting.hpp"

namespace ea {

struct ExperimentOptions {
    std::filesystem::path out_dir = ".";
    std::optional<std::filesystem::path> csv_path;
    unsigned threads = 1;
    bool write_files = true;
};

struct ExperimentResult {
    std::vector<RunRecord> runs;
    StatsRecord stats;
    std::vector<std::filesystem::path> run_files;
    std::filesystem::path stats_file;
};

/// Executes nRuns runs of the configured experiment. Run r draws from the
/// substream derived from (masterSeed, r), so results do not depend on the
/// thread count; all file emission happens serially afterwards.
ExperimentResult run_experiment(const Config& cfg, const ProblemRegistry& registry,
                                const ExperimentOptions& options = {});

} // namespace ea
