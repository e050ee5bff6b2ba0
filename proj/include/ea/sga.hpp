#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "ea/engine.hpp"
#include "ea/genome.hpp"
#include "ea/population.hpp"
#include "ea/random.hpp"

namespace ea {

enum class CrossoverType { OnePoint, TwoPoint, Uniform };

struct SgaParams {
    std::size_t tournament_size = 2;
    CrossoverType crossover_type = CrossoverType::Uniform;
    double crossover_probability = 0.9;
    std::optional<double> mutation_probability; // unset -> 1/n
    std::size_t elitism = 1;                    // must stay < N
};

/// With probability 1 - pc returns copies of the parents; otherwise swaps
/// suffix / middle segment / independent positions according to type. At
/// every position the two offspring hold the parents' multiset of alleles.
std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b, CrossoverType type,
                                    double pc, RandomStream& rng);

/// Each allele flipped independently with probability pm.
Genome mutate(const Genome& g, double pm, RandomStream& rng);

/// One generational step: elites copied unchanged, remaining slots filled by
/// tournament selection + crossover + mutation, offspring evaluated.
Population sga_generation(const Population& p, const SgaParams& params, FitnessFunction& fitness,
                          RandomStream& rng);

class SgaAlgorithm final : public Algorithm {
  public:
    explicit SgaAlgorithm(SgaParams params) : params_(params) {}

    std::string_view name() const override { return "SGA"; }

    void next_generation(Population& pop, FitnessFunction& fitness, RandomStream& rng) override {
        pop = sga_generation(pop, params_, fitness, rng);
    }

    const SgaParams& params() const { return params_; }

  private:
    SgaParams params_;
};

} // namespace ea
