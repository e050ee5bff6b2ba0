#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ea/experiment.hpp"

using namespace ea;
namespace fs = std::filesystem;

namespace {

const ProblemRegistry& registry() {
    static const ProblemRegistry reg = ProblemRegistry::builtins();
    return reg;
}

Config small_experiment(AlgorithmKind kind, std::size_t n_runs) {
    Config cfg;
    cfg.algorithm = kind;
    cfg.problem.problem_id = 10;
    cfg.problem.string_size = 16;
    cfg.population_size = 40;
    cfg.n_runs = n_runs;
    cfg.master_seed = 2024;
    cfg.stop.max_generations = 25;
    return cfg;
}

std::string fingerprint(const std::vector<RunRecord>& runs) {
    std::ostringstream out;
    for (const auto& r : runs) {
        out << r.run_index << '/' << r.run_seed << '/' << to_string(r.stop_reason) << '/'
            << r.total_fitness_calls << '/' << r.best_genome << ';';
        for (const auto& row : r.rows)
            out << row.fitness_calls << ',' << row.best_so_far << '|';
    }
    return out.str();
}

} // namespace

TEST_CASE("results are independent of the worker thread count") {
    Config cfg = small_experiment(AlgorithmKind::Umda, 6);
    ExperimentOptions options;
    options.write_files = false;

    ExperimentResult serial = run_experiment(cfg, registry(), options);
    options.threads = 3;
    ExperimentResult parallel = run_experiment(cfg, registry(), options);
    CHECK(fingerprint(serial.runs) == fingerprint(parallel.runs));
    CHECK(serial.stats.success_count == parallel.stats.success_count);
}

TEST_CASE("each run draws from its own master-seed substream") {
    Config cfg = small_experiment(AlgorithmKind::Sga, 4);
    ExperimentOptions options;
    options.write_files = false;
    ExperimentResult result = run_experiment(cfg, registry(), options);

    REQUIRE(result.runs.size() == 4);
    for (std::size_t r = 0; r < 4; ++r) {
        CHECK(result.runs[r].run_index == static_cast<int>(r));
        CHECK(result.runs[r].run_seed == RandomStream::substream_seed(cfg.master_seed, r));
    }
}

TEST_CASE("file emission covers every run plus stats and csv") {
    fs::path dir = fs::temp_directory_path() / "ea_experiment_files";
    fs::remove_all(dir);

    Config cfg = small_experiment(AlgorithmKind::Umda, 3);
    ExperimentOptions options;
    options.out_dir = dir;
    options.csv_path = dir / "all.csv";
    ExperimentResult result = run_experiment(cfg, registry(), options);

    REQUIRE(result.run_files.size() == 3);
    for (const auto& path : result.run_files)
        CHECK(fs::exists(path));
    CHECK(fs::exists(result.stats_file));
    CHECK(fs::exists(dir / "all.csv"));

    // Atomic writes leave no temp files behind.
    for (const auto& entry : fs::directory_iterator(dir))
        CHECK(entry.path().extension() != ".tmp");

    // The CSV holds one row per generation across all runs, plus the header.
    std::ifstream csv(dir / "all.csv");
    std::size_t lines = 0;
    std::string line;
    while (std::getline(csv, line))
        lines += !line.empty();
    std::size_t rows = 0;
    for (const auto& r : result.runs)
        rows += r.rows.size();
    CHECK(lines == rows + 1);
}
