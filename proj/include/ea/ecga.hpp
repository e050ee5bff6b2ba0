#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ea/engine.hpp"
#include "ea/genome.hpp"
#include "ea/population.hpp"
#include "ea/random.hpp"

namespace ea {

/// One linkage group: sorted gene indices plus the joint frequency table over
/// the selected set. Cell index bit t corresponds to indices[t] (LSB first);
/// the 2^|g| cell counts sum to the selected-set size.
struct MpmGroup {
    std::vector<std::uint32_t> indices;
    std::vector<std::uint32_t> counts;
};

/// Partition of all gene indices into disjoint nonempty groups.
class MarginalProductModel {
  public:
    MarginalProductModel() = default;
    explicit MarginalProductModel(std::vector<MpmGroup> groups);

    /// Builds the frequency tables of an explicit partition over a selected
    /// set (hand-constructed models in tests, complexity checks).
    static MarginalProductModel from_partition(const SelectedSet& selected,
                                               std::vector<std::vector<std::uint32_t>> partition);

    const std::vector<MpmGroup>& groups() const { return groups_; }

    std::size_t gene_count() const;

    /// True iff the groups are pairwise disjoint, nonempty, and cover 0..n-1.
    bool is_partition_of(std::size_t n) const;

    /// "[0,1,2][3,4,5]" in ascending min-index order.
    std::string partition_string() const;

  private:
    std::vector<MpmGroup> groups_;
};

/// Two-part MDL score in bits: model complexity log2(S+1) * sum(2^|g| - 1)
/// plus compressed population complexity S * sum of group entropies.
double combined_complexity(const MarginalProductModel& mpm, std::size_t selected_size);

/// Greedy merge search from all singletons: apply the pairwise merge with the
/// largest strict decrease in combined complexity until none remains. Ties go
/// to the smallest (min index of first group, min index of second group).
MarginalProductModel greedy_mpm_search(const SelectedSet& selected, std::size_t max_group_size);

/// Blockwise sampling: each group of each new genome is copied from one
/// uniformly drawn member of the selected set. Elite handling as in UMDA.
Population sample_mpm(const MarginalProductModel& mpm, const SelectedSet& selected,
                      std::size_t size, const std::optional<Genome>& elite, RandomStream& rng);

struct EcgaParams {
    std::size_t tournament_size = 8; // without replacement
    std::size_t max_group_size = 12;
    std::size_t elitism = 1; // 0 or 1
};

class EcgaAlgorithm final : public Algorithm {
  public:
    explicit EcgaAlgorithm(EcgaParams params) : params_(params) {}

    std::string_view name() const override { return "ECGA"; }

    void next_generation(Population& pop, FitnessFunction& fitness, RandomStream& rng) override;

    std::optional<std::string> model_summary() const override;

    /// Model built in the most recent generation, if any.
    const std::optional<MarginalProductModel>& last_model() const { return last_model_; }

    const EcgaParams& params() const { return params_; }

  private:
    EcgaParams params_;
    std::optional<MarginalProductModel> last_model_;
    std::optional<Genome> best_so_far_;
};

} // namespace ea
