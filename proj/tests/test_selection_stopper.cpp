#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>

#include "ea/errors.hpp"
#include "ea/selection.hpp"
#include "ea/stopper.hpp"

using namespace ea;

namespace {

Population with_fitnesses(std::initializer_list<double> fs) {
    std::vector<Genome> members;
    std::size_t i = 0;
    for (double f : fs) {
        Genome g(8);
        g.set_allele(i % 8, 1); // give members distinct alleles
        g.set_fitness(f);
        members.push_back(g);
        ++i;
    }
    return Population(std::move(members));
}

bool is_member_of(const Genome& g, const Population& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] == g)
            return true;
    return false;
}

} // namespace

TEST_CASE("full without-replacement tournament picks the maximum") {
    Population p = with_fitnesses({1, 9, 3});
    RandomStream rng(5);
    SelectedSet sel = tournament_select(p, 3, 1, false, rng);
    CHECK(sel.size() == 1);
    CHECK(sel[0].fitness() == 9.0);
}

TEST_CASE("tournament ties go to the lowest population index") {
    Population p = with_fitnesses({5, 5});
    RandomStream rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        SelectedSet sel = tournament_select(p, 2, 1, false, rng);
        CHECK(sel[0] == p[0]);
    }
}

TEST_CASE("size-1 tournament is uniform selection") {
    Population p = with_fitnesses({1, 2, 3});
    RandomStream rng(23);
    std::array<int, 3> hist{};
    const int draws = 10000;
    SelectedSet sel = tournament_select(p, 1, draws, true, rng);
    for (std::size_t i = 0; i < sel.size(); ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (sel[i] == p[j])
                ++hist[j];
    for (int h : hist)
        CHECK(std::abs(h / static_cast<double>(draws) - 1.0 / 3) < 0.02);
}

TEST_CASE("without-replacement tournament requires s <= N") {
    Population p = with_fitnesses({1, 2});
    RandomStream rng(1);
    CHECK_THROWS_AS(tournament_select(p, 3, 2, false, rng), ConfigError);
    CHECK_NOTHROW(tournament_select(p, 3, 2, true, rng));
}

TEST_CASE("selection never fabricates genomes") {
    RandomStream rng(41);
    Population p = Population::random(20, 10, rng);
    for (std::size_t i = 0; i < p.size(); ++i)
        p[i].set_fitness(static_cast<double>(rng.uniform_int(100)));

    SelectedSet tw = tournament_select(p, 4, 30, true, rng);
    SelectedSet two = tournament_select(p, 4, 20, false, rng);
    SelectedSet tr = truncation_select(p, 0.4);
    for (const auto& set : {tw, two, tr})
        for (std::size_t i = 0; i < set.size(); ++i)
            CHECK(is_member_of(set[i], p));
}

TEST_CASE("degenerate selections preserve the fitness multiset") {
    RandomStream rng(77);
    Population p = Population::random(25, 6, rng);
    for (std::size_t i = 0; i < p.size(); ++i)
        p[i].set_fitness(static_cast<double>(rng.uniform_int(10)));

    std::vector<double> source;
    for (std::size_t i = 0; i < p.size(); ++i)
        source.push_back(p[i].fitness());
    std::sort(source.begin(), source.end());

    auto sorted_fitnesses = [](const SelectedSet& s) {
        std::vector<double> fs;
        for (std::size_t i = 0; i < s.size(); ++i)
            fs.push_back(s[i].fitness());
        std::sort(fs.begin(), fs.end());
        return fs;
    };

    // s = 1 without replacement is a shuffled pass; tau = 1 is the identity.
    CHECK(sorted_fitnesses(tournament_select(p, 1, p.size(), false, rng)) == source);
    CHECK(sorted_fitnesses(truncation_select(p, 1.0)) == source);
}

TEST_CASE("truncation keeps the top fraction with index tie-break") {
    Population p = with_fitnesses({4, 1, 3, 2});
    SelectedSet sel = truncation_select(p, 0.5);
    REQUIRE(sel.size() == 2);
    CHECK(sel[0].fitness() == 4.0);
    CHECK(sel[1].fitness() == 3.0);

    SelectedSet all = truncation_select(p, 1.0);
    CHECK(all.size() == 4);

    Population ties = with_fitnesses({2, 2, 2});
    SelectedSet cut = truncation_select(ties, 0.34);
    REQUIRE(cut.size() == 2); // ceil(1.02) = 2
    CHECK(cut[0] == ties[0]);
    CHECK(cut[1] == ties[1]);

    CHECK_THROWS_AS(truncation_select(p, 0.0), ConfigError);
    CHECK_THROWS_AS(truncation_select(p, 1.5), ConfigError);
}

TEST_CASE("selection pressure raises the mean for distinct fitnesses") {
    RandomStream rng(6);
    Population p = Population::random(40, 6, rng);
    for (std::size_t i = 0; i < p.size(); ++i)
        p[i].set_fitness(static_cast<double>(i)); // distinct
    double source_mean = p.stats().average_fitness;

    for (int trial = 0; trial < 20; ++trial) {
        CHECK(tournament_select(p, 2, 40, true, rng).stats().average_fitness >= source_mean);
        CHECK(tournament_select(p, 2, 40, false, rng).stats().average_fitness >= source_mean);
    }
    CHECK(truncation_select(p, 0.5).stats().average_fitness >= source_mean);
}

TEST_CASE("stop criteria fire in fixed priority order") {
    Population p = with_fitnesses({1, 2, 3});

    StopConfig cfg;
    cfg.max_generations = 100;
    cfg.max_fitness_calls = 1000;

    StopState state;
    state.population = &p;
    state.best_so_far = 3.0;

    SUBCASE("optimum found") {
        state.optimum = 3.0;
        CHECK(should_stop(state, cfg) == StopReason::OptimumFound);
        state.optimum = 3.0 + 1e-10; // inside the 1e-9 tolerance band
        CHECK(should_stop(state, cfg) == StopReason::OptimumFound);
        state.optimum = 4.0;
        CHECK_FALSE(should_stop(state, cfg).has_value());
    }

    SUBCASE("optimum beats the budget criteria") {
        state.optimum = 3.0;
        state.fitness_calls = 5000;
        state.generation = 500;
        CHECK(should_stop(state, cfg) == StopReason::OptimumFound);
    }

    SUBCASE("fitness calls beat generations") {
        state.fitness_calls = 1000;
        state.generation = 100;
        CHECK(should_stop(state, cfg) == StopReason::MaxFitnessCalls);
    }

    SUBCASE("generation limit") {
        state.generation = 100;
        CHECK(should_stop(state, cfg) == StopReason::MaxGenerations);
    }

    SUBCASE("stopOnOptimum off ignores the optimum") {
        cfg.stop_on_optimum = false;
        state.optimum = 3.0;
        CHECK_FALSE(should_stop(state, cfg).has_value());
    }
}

TEST_CASE("convergence measures per-position majority frequencies") {
    std::vector<Genome> identical(5, Genome::from_string("1010"));
    for (auto& g : identical)
        g.set_fitness(1.0);
    Population p(std::move(identical));

    StopConfig cfg;
    cfg.max_generations = 1000;
    cfg.convergence_threshold = 0.99;
    StopState state;
    state.population = &p;
    CHECK(should_stop(state, cfg) == StopReason::Converged);

    // One divergent member drops the majority to 0.8 < 0.99.
    Population q = p;
    q[0] = Genome::from_string("0101");
    q[0].set_fitness(1.0);
    state.population = &q;
    CHECK_FALSE(should_stop(state, cfg).has_value());
}

TEST_CASE("no-improvement window and purity") {
    Population p = with_fitnesses({1});
    StopConfig cfg;
    cfg.max_generations = 1000;
    cfg.no_improvement_window = 30;
    StopState state;
    state.population = &p;
    state.generations_since_improvement = 29;
    CHECK_FALSE(should_stop(state, cfg).has_value());
    state.generations_since_improvement = 30;
    CHECK(should_stop(state, cfg) == StopReason::NoImprovement);
    // Pure: evaluating twice gives the same answer.
    CHECK(should_stop(state, cfg) == should_stop(state, cfg));
}
