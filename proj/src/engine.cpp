#include "ea/engine.hpp"

#include <chrono>
#include <stdexcept>

namespace ea {

RunRecord run(Algorithm& algorithm, FitnessFunction& fitness, const RunSettings& settings,
              const GenerationObserver& observer) {
    const auto started = std::chrono::steady_clock::now();

    RunRecord rec;
    rec.algorithm = std::string(algorithm.name());
    rec.problem_id = fitness.spec().problem_id;
    rec.string_size = fitness.spec().string_size;
    rec.population_size = settings.population_size;
    rec.run_seed = settings.run_seed;
    rec.run_index = settings.run_index;

    RandomStream rng(settings.run_seed);
    Population pop =
        Population::random(settings.population_size, fitness.spec().string_size, rng);
    for (auto& g : pop.members())
        fitness.evaluate(g, rng);

    PopulationStats stats = pop.stats();
    double best_so_far = stats.best_fitness;
    Genome best_genome = pop[stats.best_index];
    std::uint64_t since_improvement = 0;

    // Optimum stop applies only with the noise-free fitness.
    std::optional<double> optimum;
    if (fitness.spec().sigma_k == 0.0)
        optimum = fitness.optimum();

    std::uint64_t generation = 0;
    auto record_row = [&] {
        rec.rows.push_back({generation, fitness.fitness_calls(), stats.best_fitness,
                            stats.average_fitness, best_so_far});
    };
    record_row();
    if (observer)
        observer(generation, pop);

    std::optional<StopReason> reason;
    for (;;) {
        reason = should_stop(
            {generation, fitness.fitness_calls(), &pop, best_so_far, optimum, since_improvement},
            settings.stop);
        if (reason)
            break;

        algorithm.next_generation(pop, fitness, rng);
        if (pop.size() != settings.population_size)
            throw std::logic_error("engine: population size changed during a generation");
        ++generation;

        stats = pop.stats();
        if (stats.best_fitness > best_so_far) {
            best_so_far = stats.best_fitness;
            best_genome = pop[stats.best_index];
            since_improvement = 0;
        } else {
            ++since_improvement;
        }
        record_row();
        if (observer)
            observer(generation, pop);
    }

    rec.stop_reason = *reason;
    rec.total_fitness_calls = fitness.fitness_calls();
    rec.best_fitness = best_so_far;
    rec.best_genome = best_genome.to_string();
    rec.final_model = algorithm.model_summary();
    rec.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return rec;
}

} // namespace ea
