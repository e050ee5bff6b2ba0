#include "ea/stopper.hpp"

namespace ea {

std::string_view to_string(StopReason r) {
    switch (r) {
    case StopReason::OptimumFound:
        return "OptimumFound";
    case StopReason::MaxGenerations:
        return "MaxGenerations";
    case StopReason::MaxFitnessCalls:
        return "MaxFitnessCalls";
    case StopReason::Converged:
        return "Converged";
    case StopReason::NoImprovement:
        return "NoImprovement";
    }
    return "Unknown";
}

namespace {

bool converged(const Population& p, double epsilon) {
    for (std::size_t pos = 0; pos < p.genome_length(); ++pos) {
        double f1 = p.allele1_frequency(pos);
        double majority = f1 >= 0.5 ? f1 : 1.0 - f1;
        if (majority < epsilon)
            return false;
    }
    return true;
}

} // namespace

std::optional<StopReason> should_stop(const StopState& state, const StopConfig& cfg) {
    if (cfg.stop_on_optimum && state.optimum &&
        state.best_so_far >= *state.optimum - 1e-9)
        return StopReason::OptimumFound;
    if (cfg.max_fitness_calls && state.fitness_calls >= *cfg.max_fitness_calls)
        return StopReason::MaxFitnessCalls;
    if (cfg.max_generations && state.generation >= *cfg.max_generations)
        return StopReason::MaxGenerations;
    if (cfg.convergence_threshold && state.population &&
        converged(*state.population, *cfg.convergence_threshold))
        return StopReason::Converged;
    if (cfg.no_improvement_window &&
        state.generations_since_improvement >= *cfg.no_improvement_window)
        return StopReason::NoImprovement;
    return std::nullopt;
}

} // namespace ea
