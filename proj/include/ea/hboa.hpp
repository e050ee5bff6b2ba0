#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ea/engine.hpp"
#include "ea/genome.hpp"
#include "ea/population.hpp"
#include "ea/random.hpp"

namespace ea {

/// Log Bayesian-Dirichlet contribution of one leaf with unit hyperparameters:
/// lnG(2) - lnG(2 + m0 + m1) + lnG(1 + m0) + lnG(1 + m1).
double leaf_score(std::uint64_t m0, std::uint64_t m1);

/// Node of a per-gene decision tree. Internal nodes test another gene;
/// leaves count the target's allele values over the selected-set members
/// that reach them.
struct TreeNode {
    int test_gene = -1; // -1 marks a leaf
    std::int32_t child0 = -1;
    std::int32_t child1 = -1;
    std::uint32_t m0 = 0;
    std::uint32_t m1 = 0;
};

struct DecisionTree {
    int target = 0;
    std::vector<TreeNode> nodes; // nodes[0] is the root

    std::size_t leaf_count() const;
    /// Sum of (m0, m1) over all leaves; equals the target's global counts.
    std::pair<std::uint64_t, std::uint64_t> leaf_count_sums() const;
};

/// One decision tree per gene plus the induced dependency DAG with an edge
/// j -> i iff gene j is tested somewhere in gene i's tree.
class DecisionForest {
  public:
    DecisionForest() = default;
    explicit DecisionForest(std::vector<DecisionTree> trees);

    std::size_t gene_count() const { return trees_.size(); }
    const DecisionTree& tree(std::size_t i) const { return trees_[i]; }
    const std::vector<DecisionTree>& trees() const { return trees_; }

    /// Distinct genes tested in tree i.
    std::vector<int> parents_of(std::size_t i) const;

    std::size_t edge_count() const;

    bool acyclic() const;

    /// Ancestral generation order (parents first; smallest gene index among
    /// the ready genes next). Throws std::logic_error on a cyclic forest.
    std::vector<std::size_t> topological_order() const;

  private:
    std::vector<DecisionTree> trees_;
};

struct ForestBuildOptions {
    std::optional<std::size_t> max_incoming; // cap on distinct parents per gene
};

/// Greedy structure learning: all trees start as single leaves; repeatedly
/// apply the legal split with the best strictly positive gain, where gain =
/// children's leaf scores - parent leaf score - 0.5 * log2(S). Legal splits
/// keep the dependency DAG acyclic and never retest a gene on a path. Ties
/// break by (target gene, test gene, leaf creation order).
DecisionForest build_forest(const SelectedSet& selected, const ForestBuildOptions& options = {});

/// Genomes generated gene-by-gene in topological order; each gene is drawn
/// from its leaf's Laplace-smoothed distribution, (m1 + 1) / (m0 + m1 + 2)
/// for allele 1, conditioning on the already-generated genes.
std::vector<Genome> sample_forest(const DecisionForest& forest, std::size_t count,
                                  RandomStream& rng);

/// Restricted tournament replacement: among w distinct members drawn
/// uniformly, the one closest to the offspring in Hamming distance (lowest
/// index on ties) is replaced iff the offspring's fitness is strictly
/// greater. Returns the replaced index, if any.
std::optional<std::size_t> rtr_replace(Population& p, const Genome& offspring, std::size_t w,
                                       RandomStream& rng);

struct HboaParams {
    double offspring_fraction = 0.5;
    std::optional<std::size_t> rtr_window; // unset -> min(n, max(1, N / 20))
    std::optional<std::size_t> max_incoming;
};

std::size_t default_rtr_window(std::size_t genome_length, std::size_t population_size);

class HboaAlgorithm final : public Algorithm {
  public:
    explicit HboaAlgorithm(HboaParams params) : params_(params) {}

    std::string_view name() const override { return "HBOA"; }

    void next_generation(Population& pop, FitnessFunction& fitness, RandomStream& rng) override;

    const std::optional<DecisionForest>& last_forest() const { return last_forest_; }

    const HboaParams& params() const { return params_; }

  private:
    HboaParams params_;
    std::optional<DecisionForest> last_forest_;
};

} // namespace ea
