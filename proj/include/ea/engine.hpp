#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ea/population.hpp"
#include "ea/problems.hpp"
#include "ea/random.hpp"
#include "ea/stopper.hpp"

namespace ea {

/// One evolutionary algorithm bound to its parameters for a single run.
/// next_generation advances the population in place; the engine checks that
/// the population size never changes.
class Algorithm {
  public:
    virtual ~Algorithm() = default;

    virtual std::string_view name() const = 0;

    virtual void next_generation(Population& pop, FitnessFunction& fitness,
                                 RandomStream& rng) = 0;

    /// Optional one-line description of the last learned model (e.g. the
    /// final ECGA partition), for the run file.
    virtual std::optional<std::string> model_summary() const { return std::nullopt; }
};

struct GenerationRow {
    std::uint64_t generation = 0;
    std::uint64_t fitness_calls = 0;
    double best_of_generation = 0.0;
    double average_fitness = 0.0;
    double best_so_far = 0.0;
};

/// Full trace of one run: header identity, one row per generation, footer.
struct RunRecord {
    std::string algorithm;
    int problem_id = 0;
    std::size_t string_size = 0;
    std::size_t population_size = 0;
    std::uint64_t run_seed = 0;
    int run_index = 0;
    std::vector<std::pair<std::string, std::string>> parameter_echo;

    std::vector<GenerationRow> rows;

    StopReason stop_reason = StopReason::MaxGenerations;
    std::uint64_t total_fitness_calls = 0;
    double best_fitness = 0.0;
    std::string best_genome;
    double wall_time_seconds = 0.0;
    std::optional<std::string> final_model;

    std::uint64_t generations() const { return rows.empty() ? 0 : rows.back().generation; }
};

struct RunSettings {
    std::size_t population_size = 0;
    StopConfig stop;
    std::uint64_t run_seed = 0;
    int run_index = 0;
};

/// Called after the initial evaluation and after every generation.
using GenerationObserver = std::function<void(std::uint64_t generation, const Population&)>;

/// initialize -> evaluate -> loop { advance, record, stop-check }.
/// Deterministic for a fixed (algorithm params, problem, settings) tuple.
RunRecord run(Algorithm& algorithm, FitnessFunction& fitness, const RunSettings& settings,
              const GenerationObserver& observer = {});

} // namespace ea
