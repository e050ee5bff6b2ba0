// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance and seed is pinned in code.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ea/config.hpp"
#include "ea/experiment.hpp"
#include "ea/problems.hpp"
#include "ea/reporting.hpp"

using namespace ea;
namespace fs = std::filesystem;

namespace {

const ProblemRegistry& registry() {
    static const ProblemRegistry reg = ProblemRegistry::builtins();
    return reg;
}

ProblemSpec spec_of(int id, std::size_t n) {
    ProblemSpec s;
    s.problem_id = id;
    s.string_size = n;
    return s;
}

struct Check {
    bool ok = true;
    std::string detail;

    void fail(const std::string& message) {
        ok = false;
        if (!detail.empty())
            detail += "; ";
        detail += message;
    }

    void expect(bool condition, const std::string& message) {
        if (!condition)
            fail(message);
    }
};

RunRecord run_once(AlgorithmKind kind, const ProblemSpec& spec, std::size_t population,
                   const StopConfig& stop, std::uint64_t seed, Algorithm** algorithm_out,
                   std::unique_ptr<Algorithm>& holder) {
    Config cfg;
    cfg.algorithm = kind;
    cfg.problem = spec;
    cfg.population_size = population;
    holder = make_algorithm(cfg);
    if (algorithm_out)
        *algorithm_out = holder.get();
    FitnessFunction fitness = make_fitness(spec, registry());
    RunSettings settings;
    settings.population_size = population;
    settings.stop = stop;
    settings.run_seed = seed;
    return run(*holder, fitness, settings);
}

RunRecord run_once(AlgorithmKind kind, const ProblemSpec& spec, std::size_t population,
                   const StopConfig& stop, std::uint64_t seed) {
    std::unique_ptr<Algorithm> holder;
    return run_once(kind, spec, population, stop, seed, nullptr, holder);
}

// ---------------------------------------------------------------- criterion 1

void criterion_oracle_equivalence(Check& check) {
    // Every valid string size up to 15 per problem family.
    struct Case {
        int zero_id;
        std::vector<std::size_t> sizes;
    };
    const std::vector<Case> cases = {
        {0, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15}},
        {1, {2, 4, 6, 8, 10, 12, 14}},
        {2, {3, 6, 9, 12, 15}},
        {3, {6, 12}},
        {4, {3, 5, 7, 9, 11, 13, 15}},
        {5, {5, 10, 15}},
        {6, {6, 12}},
    };
    std::size_t checks = 0;
    auto verify = [&](int id, std::size_t n) {
        ProblemSpec spec = spec_of(id, n);
        BruteForceResult bf = brute_force_optimum(spec, registry());
        double known = *optimum_value(spec, registry());
        if (std::abs(bf.best_value - known) > 1e-9)
            check.fail("problem " + std::to_string(id) + " n=" + std::to_string(n) +
                       ": brute-force value != optimum_value");
        const bool zero_family = id < 10;
        std::string canonical(n, zero_family ? '0' : '1');
        // The bipolar pair has two global optima; enumeration returns the
        // lexicographically smaller one, and the canonical string must still
        // attain the same value.
        std::string expected = (id == 13) ? std::string(n, '0') : canonical;
        if (bf.best_genome.to_string() != expected)
            check.fail("problem " + std::to_string(id) + " n=" + std::to_string(n) +
                       ": argmax " + bf.best_genome.to_string());
        auto evaluator = registry().make_evaluator(spec);
        Genome canon = Genome::from_string(canonical);
        if (std::abs(evaluator->base_fitness(AlleleView(canon)) - bf.best_value) > 1e-9)
            check.fail("problem " + std::to_string(id) + " n=" + std::to_string(n) +
                       ": canonical string misses the optimum");
        ++checks;
    };
    for (const auto& c : cases) {
        for (std::size_t n : c.sizes) {
            verify(c.zero_id, n);
            verify(c.zero_id + 10, n);
        }
    }
    for (int id : {21, 22})
        for (std::size_t n : {std::size_t{3}, std::size_t{9}})
            verify(id, n);
    check.detail = std::to_string(checks) + " problem/size combinations";
}

// ---------------------------------------------------------------- criterion 2

void criterion_zero_one_mirror(Check& check) {
    const std::pair<int, std::size_t> pairs[] = {{0, 1}, {1, 2}, {2, 3}, {3, 6},
                                                 {4, 3}, {5, 5}, {6, 6}};
    std::size_t checks = 0;
    for (auto [zero_id, n] : pairs) {
        auto zero_eval = registry().make_evaluator(spec_of(zero_id, n));
        auto one_eval = registry().make_evaluator(spec_of(zero_id + 10, n));
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            Genome g(n), complement(n);
            for (std::size_t p = 0; p < n; ++p) {
                int bit = static_cast<int>((x >> p) & 1u);
                g.set_allele(p, bit);
                complement.set_allele(p, 1 - bit);
            }
            if (zero_eval->base_fitness(AlleleView(complement)) !=
                one_eval->base_fitness(AlleleView(g))) {
                check.fail("mirror broken at problem " + std::to_string(zero_id) +
                           " x=" + std::to_string(x));
                return;
            }
            ++checks;
        }
    }
    check.detail = std::to_string(checks) + " exact string comparisons";
}

// ---------------------------------------------------------------- criterion 3

void criterion_ecga_complexity(Check& check) {
    std::vector<Genome> members;
    for (const char* s : {"00", "11"}) {
        Genome g = Genome::from_string(s);
        g.set_fitness(0.0);
        members.push_back(g);
    }
    SelectedSet sel(std::move(members));

    double singletons =
        combined_complexity(MarginalProductModel::from_partition(sel, {{0}, {1}}), 2);
    double merged = combined_complexity(MarginalProductModel::from_partition(sel, {{0, 1}}), 2);
    check.expect(std::abs(singletons - 7.1699) < 1e-4,
                 "singleton complexity " + format_number(singletons));
    check.expect(std::abs(merged - 6.7549) < 1e-4, "merged complexity " + format_number(merged));

    MarginalProductModel found = greedy_mpm_search(sel, 12);
    check.expect(found.groups().size() == 1 &&
                     found.groups()[0].indices == std::vector<std::uint32_t>{0, 1},
                 "greedy search did not stop after exactly one merge");
    check.detail = "singletons " + format_number(singletons) + ", merged " +
                   format_number(merged) + ", one merge";
}

// ---------------------------------------------------------------- criterion 4

void criterion_hboa_leaf_score(Check& check) {
    double s22 = leaf_score(2, 2);
    double s30 = leaf_score(3, 0);
    check.expect(std::abs(s22 - std::log(1.0 / 30.0)) < 1e-9,
                 "leaf_score(2,2) = " + format_number(s22));
    check.expect(std::abs(s30 - std::log(1.0 / 4.0)) < 1e-9,
                 "leaf_score(3,0) = " + format_number(s30));
    check.detail = "ln(1/30) and ln(1/4) within 1e-9";
}

// ---------------------------------------------------------------- criterion 5

void criterion_umda_onemax(Check& check) {
    StopConfig stop;
    stop.max_generations = 100;
    int successes = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        RunRecord rec = run_once(AlgorithmKind::Umda, spec_of(10, 50), 200, stop, 500 + seed);
        successes += rec.stop_reason == StopReason::OptimumFound;
    }
    check.expect(successes >= 28, "only " + std::to_string(successes) + "/30 runs succeeded");
    check.detail = std::to_string(successes) + "/30 runs reached the optimum";
}

// ---------------------------------------------------------------- criterion 6

void criterion_sga_onemax(Check& check) {
    StopConfig stop;
    stop.max_generations = 200;
    int successes = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        RunRecord rec = run_once(AlgorithmKind::Sga, spec_of(10, 30), 100, stop, 600 + seed);
        successes += rec.stop_reason == StopReason::OptimumFound;
    }
    check.expect(successes >= 27, "only " + std::to_string(successes) + "/30 runs succeeded");
    check.detail = std::to_string(successes) + "/30 runs reached the optimum";
}

// ---------------------------------------------------------------- criterion 7

void criterion_deception_contrast(Check& check) {
    const ProblemSpec spec = spec_of(12, 30);
    StopConfig stop;
    stop.max_generations = 100;

    int umda_successes = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        RunRecord rec = run_once(AlgorithmKind::Umda, spec, 500, stop, 700 + seed);
        umda_successes += rec.stop_reason == StopReason::OptimumFound;
    }

    int ecga_successes = 0;
    std::vector<int> recovered_blocks;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        std::unique_ptr<Algorithm> holder;
        Algorithm* algorithm = nullptr;
        RunRecord rec =
            run_once(AlgorithmKind::Ecga, spec, 500, stop, 800 + seed, &algorithm, holder);
        if (rec.stop_reason != StopReason::OptimumFound)
            continue;
        ++ecga_successes;
        const auto& model = static_cast<EcgaAlgorithm*>(algorithm)->last_model();
        int blocks = 0;
        if (model) {
            for (std::uint32_t j = 0; j < 10; ++j) {
                std::vector<std::uint32_t> want{3 * j, 3 * j + 1, 3 * j + 2};
                for (const auto& group : model->groups())
                    if (group.indices == want) {
                        ++blocks;
                        break;
                    }
            }
        }
        recovered_blocks.push_back(blocks);
    }

    check.expect(umda_successes <= 2,
                 "UMDA solved " + std::to_string(umda_successes) + "/20 deceptive runs");
    check.expect(ecga_successes >= 16,
                 "ECGA solved only " + std::to_string(ecga_successes) + "/20 runs");

    double median_blocks = 0.0;
    if (!recovered_blocks.empty()) {
        std::sort(recovered_blocks.begin(), recovered_blocks.end());
        std::size_t m = recovered_blocks.size();
        median_blocks = (m % 2) ? recovered_blocks[m / 2]
                                : (recovered_blocks[m / 2 - 1] + recovered_blocks[m / 2]) / 2.0;
    }
    check.expect(median_blocks >= 7.0,
                 "median recovered blocks " + format_number(median_blocks));
    check.detail = "UMDA " + std::to_string(umda_successes) + "/20, ECGA " +
                   std::to_string(ecga_successes) + "/20, median blocks " +
                   format_number(median_blocks) + "/10";
}

// ---------------------------------------------------------------- criterion 8

void criterion_hboa_hierarchical(Check& check) {
    const ProblemSpec spec = spec_of(21, 27);
    const std::size_t sizes[] = {500, 1000, 2000, 4000};
    const std::size_t restarts = 10;

    std::atomic<int> successes{0};
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const unsigned workers = std::min(2u, std::max(1u, std::thread::hardware_concurrency()));
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t restart = next.fetch_add(1);
                if (restart >= restarts)
                    return;
                std::uint64_t restart_seed = RandomStream::substream_seed(9000, restart);
                for (std::size_t attempt = 0; attempt < 4; ++attempt) {
                    StopConfig stop;
                    stop.max_generations.reset();
                    stop.max_fitness_calls = 1'000'000;
                    RunRecord rec =
                        run_once(AlgorithmKind::Hboa, spec, sizes[attempt], stop,
                                 RandomStream::substream_seed(restart_seed, attempt));
                    if (rec.stop_reason == StopReason::OptimumFound) {
                        successes.fetch_add(1);
                        break;
                    }
                }
            }
        });
    }
    for (auto& t : pool)
        t.join();

    check.expect(successes >= 7,
                 "only " + std::to_string(successes.load()) + "/10 restarts found the optimum");
    check.detail = std::to_string(successes.load()) + "/10 restarts succeeded";
}

// ---------------------------------------------------------------- criterion 9

std::string file_body_without_timestamp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("# timestamp", 0) != 0)
            out << line << '\n';
    return out.str();
}

void criterion_determinism(Check& check) {
    struct Setup {
        AlgorithmKind kind;
        int problem;
        std::size_t n, members;
    };
    const Setup setups[] = {
        {AlgorithmKind::Sga, 10, 20, 50},
        {AlgorithmKind::Umda, 10, 20, 50},
        {AlgorithmKind::Ecga, 12, 9, 100},
        {AlgorithmKind::Hboa, 10, 10, 40},
    };
    fs::path base = fs::temp_directory_path() / "ea_acceptance_determinism";
    fs::remove_all(base);

    for (const auto& s : setups) {
        Config cfg;
        cfg.algorithm = s.kind;
        cfg.problem = spec_of(s.problem, s.n);
        cfg.population_size = s.members;
        cfg.n_runs = 1;
        cfg.master_seed = 31337;
        cfg.stop.max_generations = 40;

        std::vector<std::string> bodies;
        for (int round = 0; round < 2; ++round) {
            ExperimentOptions options;
            options.out_dir = base / (std::string(to_string(s.kind)) + std::to_string(round));
            ExperimentResult result = run_experiment(cfg, registry(), options);
            bodies.push_back(file_body_without_timestamp(result.run_files.at(0)));
        }
        if (bodies[0] != bodies[1] || bodies[0].empty())
            check.fail(std::string(to_string(s.kind)) +
                       " run files differ beyond the timestamp line");
    }
    check.detail = "four algorithms, byte-identical run files";
}

// --------------------------------------------------------------- criterion 10

void criterion_property_fuzz(Check& check) {
    RandomStream master(0xF00D);
    std::size_t cases = 0;

    // Random selected set with block-correlated columns; exercises both model
    // builders on non-trivial dependencies.
    auto random_selected = [&](RandomStream& rng, std::size_t s_count, std::size_t n) {
        std::vector<Genome> members;
        std::size_t block = 1 + rng.uniform_int(3);
        for (std::size_t i = 0; i < s_count; ++i) {
            Genome g(n);
            int value = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j % block == 0)
                    value = rng.coin();
                g.set_allele(j, rng.uniform01() < 0.85 ? value : 1 - value);
            }
            g.set_fitness(0.0);
            members.push_back(std::move(g));
        }
        return SelectedSet(std::move(members));
    };

    // MPM partition validity after greedy search: 2500 cases.
    for (int c = 0; c < 2500; ++c) {
        RandomStream rng = master.substream(10000 + c);
        std::size_t n = 1 + rng.uniform_int(12);
        std::size_t s_count = 2 + rng.uniform_int(39);
        std::size_t cap = 1 + rng.uniform_int(12);
        SelectedSet sel = random_selected(rng, s_count, n);
        MarginalProductModel m = greedy_mpm_search(sel, cap);
        bool ok = m.is_partition_of(n);
        for (const auto& g : m.groups()) {
            ok = ok && g.indices.size() <= cap;
            std::uint64_t sum = 0;
            for (auto count : g.counts)
                sum += count;
            ok = ok && sum == s_count;
        }
        if (!ok) {
            check.fail("MPM partition invalid at case " + std::to_string(c));
            return;
        }
        ++cases;
    }

    // Decision forest acyclicity, leaf-count conservation, path rule, and
    // parent caps: 2000 cases.
    std::function<bool(const DecisionTree&, std::size_t, std::vector<bool>&)> path_ok =
        [&](const DecisionTree& tree, std::size_t node, std::vector<bool>& on_path) -> bool {
        const TreeNode& tn = tree.nodes[node];
        if (tn.test_gene < 0)
            return true;
        std::size_t gene = static_cast<std::size_t>(tn.test_gene);
        if (on_path[gene])
            return false;
        on_path[gene] = true;
        bool ok = path_ok(tree, static_cast<std::size_t>(tn.child0), on_path) &&
                  path_ok(tree, static_cast<std::size_t>(tn.child1), on_path);
        on_path[gene] = false;
        return ok;
    };
    for (int c = 0; c < 2000; ++c) {
        RandomStream rng = master.substream(20000 + c);
        std::size_t n = 2 + rng.uniform_int(9);
        std::size_t s_count = 10 + rng.uniform_int(71);
        SelectedSet sel = random_selected(rng, s_count, n);
        ForestBuildOptions options;
        if (rng.coin())
            options.max_incoming = 1 + rng.uniform_int(n);
        DecisionForest forest = build_forest(sel, options);
        bool ok = forest.acyclic();
        for (std::size_t i = 0; ok && i < n; ++i) {
            auto [s0, s1] = forest.tree(i).leaf_count_sums();
            ok = s0 + s1 == s_count;
            std::vector<bool> on_path(n, false);
            ok = ok && path_ok(forest.tree(i), 0, on_path);
            if (options.max_incoming)
                ok = ok && forest.parents_of(i).size() <= *options.max_incoming;
        }
        if (!ok) {
            check.fail("forest invariant broken at case " + std::to_string(c));
            return;
        }
        ++cases;
    }

    // RTR size preservation and best-fitness monotonicity: 3000 cases.
    for (int c = 0; c < 3000; ++c) {
        RandomStream rng = master.substream(30000 + c);
        std::size_t n = 1 + rng.uniform_int(16);
        std::size_t members = 1 + rng.uniform_int(30);
        std::vector<Genome> pop_members;
        for (std::size_t i = 0; i < members; ++i) {
            Genome g = Genome::random(n, rng);
            g.set_fitness(static_cast<double>(rng.uniform_int(100)));
            pop_members.push_back(std::move(g));
        }
        Population pop(std::move(pop_members));
        double best_before = pop.stats().best_fitness;
        Genome offspring = Genome::random(n, rng);
        offspring.set_fitness(static_cast<double>(rng.uniform_int(100)));
        rtr_replace(pop, offspring, 1 + rng.uniform_int(pop.size()), rng);
        if (pop.size() != members || pop.stats().best_fitness < best_before) {
            check.fail("RTR broke size or best fitness at case " + std::to_string(c));
            return;
        }
        ++cases;
    }

    // Fitness-call counter exactness: 1500 cases.
    for (int c = 0; c < 1500; ++c) {
        RandomStream rng = master.substream(40000 + c);
        ProblemSpec spec = spec_of(rng.coin() ? 10 : 0, 1 + rng.uniform_int(20));
        if (rng.coin())
            spec.sigma_k = rng.uniform01();
        FitnessFunction fit = make_fitness(spec, registry());
        std::uint64_t batch = 1 + rng.uniform_int(50);
        Genome g = Genome::random(spec.string_size, rng);
        for (std::uint64_t i = 0; i < batch; ++i)
            fit.evaluate(g, rng);
        if (fit.fitness_calls() != batch) {
            check.fail("fitness counter drifted at case " + std::to_string(c));
            return;
        }
        ++cases;
    }

    // Population size constancy across whole runs: 125 runs x 8 generations.
    const AlgorithmKind kinds[] = {AlgorithmKind::Sga, AlgorithmKind::Umda, AlgorithmKind::Ecga,
                                   AlgorithmKind::Hboa};
    for (int c = 0; c < 125; ++c) {
        RandomStream rng = master.substream(50000 + c);
        Config cfg;
        cfg.algorithm = kinds[rng.uniform_int(4)];
        cfg.population_size = 2 + rng.uniform_int(19);
        cfg.problem = spec_of(10, 1 + rng.uniform_int(16));
        cfg.sga.tournament_size = 2;
        cfg.ecga.tournament_size = std::min<std::size_t>(4, cfg.population_size);
        cfg.stop.max_generations = 8;
        cfg.stop.stop_on_optimum = false;

        auto algorithm = make_algorithm(cfg);
        FitnessFunction fit = make_fitness(cfg.problem, registry());
        RunSettings settings;
        settings.population_size = cfg.population_size;
        settings.stop = cfg.stop;
        settings.run_seed = rng.next_u64();
        bool ok = true;
        run(*algorithm, fit, settings, [&](std::uint64_t, const Population& p) {
            ok = ok && p.size() == cfg.population_size;
            ++cases;
        });
        if (!ok) {
            check.fail("population size changed at case " + std::to_string(c));
            return;
        }
    }

    check.expect(cases >= 10000, "only " + std::to_string(cases) + " cases executed");
    check.detail = std::to_string(cases) + " generated cases";
}

} // namespace

int main(int argc, char** argv) {
    struct Criterion {
        int id;
        std::string name;
        std::function<void(Check&)> fn;
        double time_budget_seconds; // 0 = no budget
    };
    const std::vector<Criterion> criteria = {
        {1, "oracle equivalence over all built-in problems (n <= 15)",
         criterion_oracle_equivalence, 30.0},
        {2, "zero/one mirror, exhaustive at the smallest valid sizes",
         criterion_zero_one_mirror, 0.0},
        {3, "ECGA combined-complexity hand check and single merge",
         criterion_ecga_complexity, 0.0},
        {4, "HBOA leaf-score hand check", criterion_hboa_leaf_score, 0.0},
        {5, "UMDA on OneMax n=50: >= 28/30 within 100 generations",
         criterion_umda_onemax, 10.0},
        {6, "SGA on OneMax n=30: >= 27/30 within 200 generations",
         criterion_sga_onemax, 0.0},
        {7, "deception contrast: UMDA <= 10%, ECGA >= 80% with block recovery",
         criterion_deception_contrast, 0.0},
        {8, "HBOA on Hierarchical Trap One n=27: >= 7/10 restarts",
         criterion_hboa_hierarchical, 300.0},
        {9, "byte-identical run files for identical config and seed",
         criterion_determinism, 0.0},
        {10, "structural invariants under 10,000-case property fuzzing",
         criterion_property_fuzz, 0.0},
    };

    int only = 0;
    if (argc > 1)
        only = std::atoi(argv[1]);

    int failures = 0;
    for (const auto& criterion : criteria) {
        if (only != 0 && criterion.id != only)
            continue;
        Check check;
        auto start = std::chrono::steady_clock::now();
        try {
            criterion.fn(check);
        } catch (const std::exception& e) {
            check.fail(std::string("exception: ") + e.what());
        }
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (criterion.time_budget_seconds > 0 && seconds > criterion.time_budget_seconds)
            check.fail("exceeded the " + format_number(criterion.time_budget_seconds) +
                       "s budget");
        std::printf("[%s] criterion %d: %s (%s%s%.2fs)\n", check.ok ? "PASS" : "FAIL",
                    criterion.id, criterion.name.c_str(), check.detail.c_str(),
                    check.detail.empty() ? "" : ", ", seconds);
        failures += !check.ok;
    }
    if (failures)
        std::printf("%d criterion(s) FAILED\n", failures);
    else
        std::printf("all criteria passed\n");
    return failures == 0 ? 0 : 1;
}
