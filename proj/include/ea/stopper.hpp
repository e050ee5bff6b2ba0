#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "ea/population.hpp"

namespace ea {

enum class StopReason {
    OptimumFound,
    MaxGenerations,
    MaxFitnessCalls,
    Converged,
    NoImprovement,
};

std::string_view to_string(StopReason r);

/// All run-termination criteria. Disabled criteria are left unset; at least
/// one of maxGenerations / maxFitnessCalls must be enabled.
struct StopConfig {
    std::optional<std::uint64_t> max_generations = 1000;
    std::optional<std::uint64_t> max_fitness_calls = 10'000'000;
    bool stop_on_optimum = true;
    std::optional<double> convergence_threshold; // epsilon in [0.5, 1.0]
    std::optional<std::uint64_t> no_improvement_window;
};

/// Snapshot the stopper decides on. `optimum` is set only when it is known,
/// noise is off, and the optimum criterion is armed.
struct StopState {
    std::uint64_t generation = 0;
    std::uint64_t fitness_calls = 0;
    const Population* population = nullptr;
    double best_so_far = 0.0;
    std::optional<double> optimum;
    std::uint64_t generations_since_improvement = 0;
};

/// First matching criterion in fixed priority order: OptimumFound,
/// MaxFitnessCalls, MaxGenerations, Converged, NoImprovement. Pure function.
std::optional<StopReason> should_stop(const StopState& state, const StopConfig& cfg);

} // namespace ea
