#include "ea/experiment.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace ea {

ExperimentResult run_experiment(const Config& cfg, const ProblemRegistry& registry,
                                const ExperimentOptions& options) {
    const auto echo = cfg.echo();
    ExperimentResult result;
    result.runs.resize(cfg.n_runs);

    auto execute_run = [&](std::size_t r) {
        auto algorithm = make_algorithm(cfg);
        FitnessFunction fitness = make_fitness(cfg.problem, registry);
        RunSettings settings;
        settings.population_size = cfg.population_size;
        settings.stop = cfg.stop;
        settings.run_seed = RandomStream::substream_seed(cfg.master_seed, r);
        settings.run_index = static_cast<int>(r);
        RunRecord rec = run(*algorithm, fitness, settings);
        rec.parameter_echo = echo;
        result.runs[r] = std::move(rec);
    };

    const unsigned workers =
        std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(cfg.n_runs)));
    if (workers == 1) {
        for (std::size_t r = 0; r < cfg.n_runs; ++r)
            execute_run(r);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t r = next.fetch_add(1);
                    if (r >= cfg.n_runs)
                        return;
                    try {
                        execute_run(r);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure)
                            failure = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (auto& t : pool)
            t.join();
        if (failure)
            std::rethrow_exception(failure);
    }

    result.stats = compute_stats(result.runs);
    if (options.write_files) {
        std::filesystem::create_directories(options.out_dir);
        for (const auto& rec : result.runs)
            result.run_files.push_back(write_run_file(rec, options.out_dir));
        result.stats_file = write_stats_file(result.stats, options.out_dir);
        if (options.csv_path)
            export_csv(result.runs, *options.csv_path);
    }
    return result;
}

} // namespace ea
