#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ea/engine.hpp"
#include "ea/genome.hpp"
#include "ea/population.hpp"
#include "ea/random.hpp"

namespace ea {

/// Per-position frequency of allele 1 in the selected set.
using MarginalVector = std::vector<double>;

enum class UmdaSelection { Truncation, Tournament };

struct UmdaParams {
    double tau = 0.5;
    UmdaSelection selection = UmdaSelection::Truncation;
    bool clamp_margins = false; // clamp frequencies to [1/n, 1 - 1/n]
    std::size_t elitism = 1;    // 0 or 1
};

/// p[i] = (count of 1s at position i) / S, clamped to [1/n, 1 - 1/n] when
/// requested. Throws std::logic_error on an empty selected set.
MarginalVector build_marginals(const SelectedSet& selected, bool clamp_margins = false);

/// N genomes sampled allele-wise from the marginals; when an elite is given
/// it occupies slot 0 (with its cached fitness) and N - 1 genomes are
/// sampled. Sampled genomes are left unevaluated for the caller.
Population sample_population(const MarginalVector& marginals, std::size_t size,
                             const std::optional<Genome>& elite, RandomStream& rng);

class UmdaAlgorithm final : public Algorithm {
  public:
    explicit UmdaAlgorithm(UmdaParams params) : params_(params) {}

    std::string_view name() const override { return "UMDA"; }

    void next_generation(Population& pop, FitnessFunction& fitness, RandomStream& rng) override;

    const UmdaParams& params() const { return params_; }

  private:
    UmdaParams params_;
    std::optional<Genome> best_so_far_;
};

} // namespace ea
