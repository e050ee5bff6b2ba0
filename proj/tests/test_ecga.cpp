#include <doctest.h>

#include <cmath>
#include <set>

#include "ea/ecga.hpp"
#include "ea/problems.hpp"

using namespace ea;

namespace {

SelectedSet from_strings(std::vector<std::string> strings) {
    std::vector<Genome> members;
    for (const auto& s : strings) {
        Genome g = Genome::from_string(s);
        g.set_fitness(0.0);
        members.push_back(g);
    }
    return SelectedSet(std::move(members));
}

} // namespace

TEST_CASE("combined complexity of the two-member hand example") {
    SelectedSet sel = from_strings({"00", "11"});

    MarginalProductModel singletons = MarginalProductModel::from_partition(sel, {{0}, {1}});
    // CPC = 2 * (1 + 1) = 4, MC = log2(3) * 2.
    double expected_singletons = 4.0 + std::log2(3.0) * 2.0;
    CHECK(combined_complexity(singletons, 2) ==
          doctest::Approx(expected_singletons).epsilon(1e-12));
    CHECK(combined_complexity(singletons, 2) == doctest::Approx(7.1699).epsilon(1e-4));

    MarginalProductModel merged = MarginalProductModel::from_partition(sel, {{0, 1}});
    double expected_merged = 2.0 + std::log2(3.0) * 3.0;
    CHECK(combined_complexity(merged, 2) == doctest::Approx(expected_merged).epsilon(1e-12));
    CHECK(combined_complexity(merged, 2) == doctest::Approx(6.7549).epsilon(1e-4));
}

TEST_CASE("a fixed column contributes zero population complexity") {
    SelectedSet sel = from_strings({"0", "0", "0"});
    MarginalProductModel m = MarginalProductModel::from_partition(sel, {{0}});
    CHECK(m.groups()[0].counts[0] == 3);
    CHECK(m.groups()[0].counts[1] == 0);
    CHECK(combined_complexity(m, 3) == doctest::Approx(std::log2(4.0)).epsilon(1e-12));
}

TEST_CASE("greedy search merges the fully correlated pair exactly once") {
    SelectedSet sel = from_strings({"00", "11"});
    MarginalProductModel m = greedy_mpm_search(sel, 12);
    REQUIRE(m.groups().size() == 1);
    CHECK(m.groups()[0].indices == std::vector<std::uint32_t>{0, 1});
    CHECK(m.partition_string() == "[0,1]");
    CHECK(m.is_partition_of(2));
}

TEST_CASE("independent uniform bits keep all singletons") {
    RandomStream rng(42);
    std::vector<Genome> members;
    for (int i = 0; i < 2000; ++i) {
        Genome g = Genome::random(8, rng);
        g.set_fitness(0.0);
        members.push_back(g);
    }
    MarginalProductModel m = greedy_mpm_search(SelectedSet(std::move(members)), 12);
    CHECK(m.groups().size() == 8);
    CHECK(m.partition_string() == "[0][1][2][3][4][5][6][7]");
}

TEST_CASE("single-gene model needs no search") {
    SelectedSet sel = from_strings({"0", "1", "1"});
    MarginalProductModel m = greedy_mpm_search(sel, 12);
    REQUIRE(m.groups().size() == 1);
    CHECK(m.groups()[0].indices == std::vector<std::uint32_t>{0});
}

TEST_CASE("greedy search stops at a pairwise-merge local minimum") {
    RandomStream rng(7);
    // Two correlated triples over 6 genes, 40 noisy samples.
    std::vector<Genome> members;
    for (int i = 0; i < 40; ++i) {
        Genome g(6);
        int left = rng.coin(), right = rng.coin();
        for (int j = 0; j < 3; ++j) {
            g.set_allele(j, rng.uniform01() < 0.9 ? left : 1 - left);
            g.set_allele(3 + j, rng.uniform01() < 0.9 ? right : 1 - right);
        }
        g.set_fitness(0.0);
        members.push_back(g);
    }
    SelectedSet sel(std::move(members));
    MarginalProductModel m = greedy_mpm_search(sel, 12);
    CHECK(m.is_partition_of(6));

    // No further pairwise merge may lower the combined complexity.
    double final_complexity = combined_complexity(m, sel.size());
    const auto& gs = m.groups();
    for (std::size_t a = 0; a < gs.size(); ++a) {
        for (std::size_t b = a + 1; b < gs.size(); ++b) {
            if (gs[a].indices.size() + gs[b].indices.size() > 12)
                continue;
            std::vector<std::vector<std::uint32_t>> partition;
            std::vector<std::uint32_t> merged = gs[a].indices;
            merged.insert(merged.end(), gs[b].indices.begin(), gs[b].indices.end());
            partition.push_back(merged);
            for (std::size_t c = 0; c < gs.size(); ++c)
                if (c != a && c != b)
                    partition.push_back(gs[c].indices);
            MarginalProductModel trial =
                MarginalProductModel::from_partition(sel, std::move(partition));
            CHECK(combined_complexity(trial, sel.size()) >= final_complexity - 1e-9);
        }
    }
}

TEST_CASE("max group size caps merges") {
    // Four identical columns force merging, but a cap of 2 stops growth.
    std::vector<std::string> strings;
    RandomStream rng(3);
    for (int i = 0; i < 100; ++i) {
        char c = rng.coin() ? '1' : '0';
        strings.push_back(std::string(4, c));
    }
    MarginalProductModel m = greedy_mpm_search(from_strings(strings), 2);
    for (const auto& g : m.groups())
        CHECK(g.indices.size() <= 2);
    CHECK(m.is_partition_of(4));
}

TEST_CASE("sampling copies group configurations from the selected set") {
    SelectedSet sel = from_strings({"001", "110", "001", "110"});
    MarginalProductModel m = MarginalProductModel::from_partition(sel, {{0, 1}, {2}});
    RandomStream rng(15);
    Population out = sample_mpm(m, sel, 500, std::nullopt, rng);
    for (std::size_t i = 0; i < out.size(); ++i) {
        // Group {0,1} only ever held patterns 00 and 11.
        CHECK(out[i].allele(0) == out[i].allele(1));
    }
}

TEST_CASE("all-identical selected sets sample identically") {
    SelectedSet sel = from_strings({"0110", "0110", "0110"});
    MarginalProductModel m = greedy_mpm_search(sel, 12);
    RandomStream rng(9);
    Population out = sample_mpm(m, sel, 20, std::nullopt, rng);
    for (std::size_t i = 0; i < out.size(); ++i)
        CHECK(out[i].to_string() == "0110");
}

TEST_CASE("singleton partitions match marginal sampling frequencies") {
    RandomStream rng(33);
    std::vector<Genome> members;
    for (int i = 0; i < 400; ++i) {
        Genome g = Genome::random(5, rng);
        g.set_fitness(0.0);
        members.push_back(g);
    }
    SelectedSet sel(std::move(members));
    MarginalProductModel m =
        MarginalProductModel::from_partition(sel, {{0}, {1}, {2}, {3}, {4}});
    Population out = sample_mpm(m, sel, 20000, std::nullopt, rng);
    for (std::size_t pos = 0; pos < 5; ++pos) {
        double source = sel.allele1_frequency(pos);
        double sampled = out.allele1_frequency(pos);
        double tol = 4 * std::sqrt(0.25 / 20000.0) + 1e-9;
        CHECK(std::abs(sampled - source) < tol);
    }
}

TEST_CASE("elite slot is preserved by MPM sampling") {
    SelectedSet sel = from_strings({"000", "000"});
    MarginalProductModel m = greedy_mpm_search(sel, 12);
    Genome elite = Genome::from_string("111");
    elite.set_fitness(3.0);
    RandomStream rng(2);
    Population out = sample_mpm(m, sel, 6, elite, rng);
    CHECK(out.size() == 6);
    CHECK(out[0] == elite);
    for (std::size_t i = 1; i < out.size(); ++i)
        CHECK(out[i].to_string() == "000");
}

TEST_CASE("ecga generation exposes the learned partition") {
    ProblemSpec spec;
    spec.problem_id = 12; // 3-deceptive blocks
    spec.string_size = 9;
    const ProblemRegistry reg = ProblemRegistry::builtins();
    FitnessFunction fit = make_fitness(spec, reg);
    RandomStream rng(5);
    Population pop = Population::random(100, 9, rng);
    for (std::size_t i = 0; i < pop.size(); ++i)
        fit.evaluate(pop[i], rng);

    EcgaAlgorithm alg({});
    CHECK_FALSE(alg.model_summary().has_value());
    alg.next_generation(pop, fit, rng);
    CHECK(pop.size() == 100);
    REQUIRE(alg.last_model().has_value());
    CHECK(alg.last_model()->is_partition_of(9));
    CHECK(alg.model_summary().has_value());
}
