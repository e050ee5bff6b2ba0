#include "ea/hboa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "ea/selection.hpp"

namespace ea {

double leaf_score(std::uint64_t m0, std::uint64_t m1) {
    // lnGamma(2) == 0.
    return std::lgamma(1.0 + static_cast<double>(m0)) +
           std::lgamma(1.0 + static_cast<double>(m1)) -
           std::lgamma(2.0 + static_cast<double>(m0 + m1));
}

std::size_t DecisionTree::leaf_count() const {
    std::size_t leaves = 0;
    for (const auto& node : nodes)
        if (node.test_gene < 0)
            ++leaves;
    return leaves;
}

std::pair<std::uint64_t, std::uint64_t> DecisionTree::leaf_count_sums() const {
    std::uint64_t s0 = 0, s1 = 0;
    for (const auto& node : nodes) {
        if (node.test_gene < 0) {
            s0 += node.m0;
            s1 += node.m1;
        }
    }
    return {s0, s1};
}

DecisionForest::DecisionForest(std::vector<DecisionTree> trees) : trees_(std::move(trees)) {}

std::vector<int> DecisionForest::parents_of(std::size_t i) const {
    std::vector<bool> seen(trees_.size(), false);
    for (const auto& node : trees_[i].nodes)
        if (node.test_gene >= 0)
            seen[static_cast<std::size_t>(node.test_gene)] = true;
    std::vector<int> parents;
    for (std::size_t j = 0; j < seen.size(); ++j)
        if (seen[j])
            parents.push_back(static_cast<int>(j));
    return parents;
}

std::size_t DecisionForest::edge_count() const {
    std::size_t edges = 0;
    for (std::size_t i = 0; i < trees_.size(); ++i)
        edges += parents_of(i).size();
    return edges;
}

std::vector<std::size_t> DecisionForest::topological_order() const {
    const std::size_t n = trees_.size();
    std::vector<std::vector<std::size_t>> children(n);
    std::vector<std::size_t> in_degree(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (int j : parents_of(i)) {
            children[static_cast<std::size_t>(j)].push_back(i);
            ++in_degree[i];
        }
    }
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t i = 0; i < n; ++i)
        if (in_degree[i] == 0)
            ready.push(i);
    std::vector<std::size_t> order;
    order.reserve(n);
    while (!ready.empty()) {
        std::size_t u = ready.top();
        ready.pop();
        order.push_back(u);
        for (std::size_t v : children[u])
            if (--in_degree[v] == 0)
                ready.push(v);
    }
    if (order.size() != n)
        throw std::logic_error("DecisionForest: dependency graph is cyclic");
    return order;
}

bool DecisionForest::acyclic() const {
    try {
        topological_order();
        return true;
    } catch (const std::logic_error&) {
        return false;
    }
}

namespace {

constexpr double kBlocked = -std::numeric_limits<double>::infinity();

struct BuildLeaf {
    std::uint32_t node_id = 0;
    std::uint32_t creation_id = 0;
    std::vector<std::uint32_t> members;
    std::vector<double> gain; // per test gene; -inf where blocked
    bool alive = true;
};

struct BuildTree {
    std::vector<TreeNode> nodes;
    std::vector<std::int32_t> parent; // node id -> parent node id (-1 at root)
    std::vector<BuildLeaf> leaves;
    std::uint32_t next_creation_id = 0;
};

/// Gene-major reachability rows for the incremental acyclicity test:
/// desc[i] holds every gene whose tree transitively depends on gene i.
class ReachMatrix {
  public:
    ReachMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), rows_(n * words_, 0) {}

    bool test(std::size_t i, std::size_t j) const {
        return (rows_[i * words_ + j / 64] >> (j % 64)) & 1u;
    }

    /// Record edge j -> i: every gene reaching j now also reaches i and
    /// everything i reaches.
    void add_edge(std::size_t j, std::size_t i) {
        std::vector<std::uint64_t> gained(words_);
        for (std::size_t w = 0; w < words_; ++w)
            gained[w] = rows_[i * words_ + w];
        gained[i / 64] |= std::uint64_t{1} << (i % 64);
        for (std::size_t u = 0; u < n_; ++u) {
            if (u != j && !test(u, j))
                continue;
            for (std::size_t w = 0; w < words_; ++w)
                rows_[u * words_ + w] |= gained[w];
        }
    }

  private:
    std::size_t n_;
    std::size_t words_;
    std::vector<std::uint64_t> rows_;
};

} // namespace

DecisionForest build_forest(const SelectedSet& selected, const ForestBuildOptions& options) {
    if (selected.size() == 0)
        throw std::logic_error("build_forest: empty selected set");
    const std::size_t n = selected.genome_length();
    const std::size_t s_count = selected.size();
    const double penalty = 0.5 * std::log2(static_cast<double>(s_count));

    // Row-major allele matrix keeps the counting passes cache-friendly.
    std::vector<std::uint8_t> alleles(s_count * n);
    for (std::size_t m = 0; m < s_count; ++m)
        for (std::size_t j = 0; j < n; ++j)
            alleles[m * n + j] = static_cast<std::uint8_t>(selected[m].allele(j));

    std::vector<BuildTree> trees(n);
    ReachMatrix reach(n);
    std::vector<std::vector<bool>> has_edge(n, std::vector<bool>(n, false));
    std::vector<std::size_t> parent_count(n, 0);

    // Split gains for one leaf against every legal test gene. counts[j]
    // accumulates (test allele, target allele) pairs in one pass.
    std::vector<std::uint32_t> counts(4 * n);
    auto compute_gains = [&](std::size_t target, BuildLeaf& leaf) {
        leaf.gain.assign(n, kBlocked);
        std::fill(counts.begin(), counts.end(), 0);
        for (std::uint32_t m : leaf.members) {
            const std::uint8_t* row = &alleles[static_cast<std::size_t>(m) * n];
            const std::uint8_t target_allele = row[target];
            for (std::size_t j = 0; j < n; ++j)
                ++counts[4 * j + ((row[j] << 1) | target_allele)];
        }
        const auto& tree = trees[target];
        const TreeNode& node = tree.nodes[leaf.node_id];
        const double parent_score = leaf_score(node.m0, node.m1);
        // Genes already tested on the path to this leaf stay blocked.
        std::vector<bool> on_path(n, false);
        for (std::int32_t id = tree.parent[leaf.node_id]; id >= 0; id = tree.parent[id])
            on_path[static_cast<std::size_t>(tree.nodes[id].test_gene)] = true;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == target || on_path[j])
                continue;
            const std::uint32_t c00 = counts[4 * j + 0];
            const std::uint32_t c01 = counts[4 * j + 1];
            const std::uint32_t c10 = counts[4 * j + 2];
            const std::uint32_t c11 = counts[4 * j + 3];
            leaf.gain[j] =
                leaf_score(c00, c01) + leaf_score(c10, c11) - parent_score - penalty;
        }
    };

    for (std::size_t i = 0; i < n; ++i) {
        auto& tree = trees[i];
        std::uint32_t ones = 0;
        for (std::size_t m = 0; m < s_count; ++m)
            ones += alleles[m * n + i];
        tree.nodes.push_back(TreeNode{-1, -1, -1, static_cast<std::uint32_t>(s_count) - ones, ones});
        tree.parent.push_back(-1);
        BuildLeaf root;
        root.node_id = 0;
        root.creation_id = tree.next_creation_id++;
        root.members.resize(s_count);
        std::iota(root.members.begin(), root.members.end(), 0);
        compute_gains(i, root);
        tree.leaves.push_back(std::move(root));
    }

    for (;;) {
        double best_gain = 0.0;
        std::size_t best_tree = n, best_leaf = 0, best_gene = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t l = 0; l < trees[i].leaves.size(); ++l) {
                const BuildLeaf& leaf = trees[i].leaves[l];
                if (!leaf.alive)
                    continue;
                for (std::size_t j = 0; j < n; ++j) {
                    double g = leaf.gain[j];
                    if (!(g > 0.0))
                        continue;
                    if (best_tree < n) {
                        // Tie-break order: (target gene, test gene, leaf creation).
                        const BuildLeaf& cur = trees[best_tree].leaves[best_leaf];
                        if (g < best_gain)
                            continue;
                        if (g == best_gain) {
                            auto cand = std::make_tuple(i, j, leaf.creation_id);
                            auto have = std::make_tuple(best_tree, best_gene, cur.creation_id);
                            if (cand >= have)
                                continue;
                        }
                    }
                    // A new dependency must keep the DAG acyclic and respect
                    // the incoming cap; existing edges are always legal.
                    if (!has_edge[j][i]) {
                        if (reach.test(i, j))
                            continue;
                        if (options.max_incoming && parent_count[i] >= *options.max_incoming)
                            continue;
                    }
                    best_gain = g;
                    best_tree = i;
                    best_leaf = l;
                    best_gene = j;
                }
            }
        }
        if (best_tree >= n)
            break;

        BuildTree& tree = trees[best_tree];
        BuildLeaf leaf = std::move(tree.leaves[best_leaf]); // keep members
        tree.leaves[best_leaf].alive = false;
        tree.leaves[best_leaf].gain.clear();
        tree.leaves[best_leaf].members.clear();

        BuildLeaf child0, child1;
        child0.members.reserve(leaf.members.size());
        child1.members.reserve(leaf.members.size());
        std::uint32_t ones0 = 0, ones1 = 0;
        for (std::uint32_t m : leaf.members) {
            const std::uint8_t* row = &alleles[static_cast<std::size_t>(m) * n];
            if (row[best_gene]) {
                ones1 += row[best_tree];
                child1.members.push_back(m);
            } else {
                ones0 += row[best_tree];
                child0.members.push_back(m);
            }
        }

        TreeNode& parent_node = tree.nodes[leaf.node_id];
        parent_node.test_gene = static_cast<int>(best_gene);
        parent_node.child0 = static_cast<std::int32_t>(tree.nodes.size());
        parent_node.child1 = static_cast<std::int32_t>(tree.nodes.size() + 1);
        parent_node.m0 = parent_node.m1 = 0;

        child0.node_id = static_cast<std::uint32_t>(tree.nodes.size());
        child1.node_id = static_cast<std::uint32_t>(tree.nodes.size() + 1);
        child0.creation_id = tree.next_creation_id++;
        child1.creation_id = tree.next_creation_id++;
        tree.nodes.push_back(TreeNode{-1, -1, -1,
                                      static_cast<std::uint32_t>(child0.members.size()) - ones0,
                                      ones0});
        tree.nodes.push_back(TreeNode{-1, -1, -1,
                                      static_cast<std::uint32_t>(child1.members.size()) - ones1,
                                      ones1});
        tree.parent.push_back(static_cast<std::int32_t>(leaf.node_id));
        tree.parent.push_back(static_cast<std::int32_t>(leaf.node_id));

        compute_gains(best_tree, child0);
        compute_gains(best_tree, child1);
        tree.leaves.push_back(std::move(child0));
        tree.leaves.push_back(std::move(child1));

        if (!has_edge[best_gene][best_tree]) {
            has_edge[best_gene][best_tree] = true;
            ++parent_count[best_tree];
            reach.add_edge(best_gene, best_tree);
        }
    }

    std::vector<DecisionTree> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i].target = static_cast<int>(i);
        out[i].nodes = std::move(trees[i].nodes);
    }
    return DecisionForest(std::move(out));
}

std::vector<Genome> sample_forest(const DecisionForest& forest, std::size_t count,
                                  RandomStream& rng) {
    if (count == 0)
        throw std::invalid_argument("sample_forest: count must be >= 1");
    const std::size_t n = forest.gene_count();
    const std::vector<std::size_t> order = forest.topological_order();

    std::vector<Genome> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        Genome g(n);
        for (std::size_t gene : order) {
            const DecisionTree& tree = forest.tree(gene);
            const TreeNode* node = &tree.nodes[0];
            while (node->test_gene >= 0) {
                std::int32_t next = g.allele(static_cast<std::size_t>(node->test_gene))
                                        ? node->child1
                                        : node->child0;
                node = &tree.nodes[static_cast<std::size_t>(next)];
            }
            double p1 = (static_cast<double>(node->m1) + 1.0) /
                        (static_cast<double>(node->m0) + static_cast<double>(node->m1) + 2.0);
            if (rng.bernoulli(p1))
                g.set_allele(gene, 1);
        }
        out.push_back(std::move(g));
    }
    return out;
}

std::optional<std::size_t> rtr_replace(Population& p, const Genome& offspring, std::size_t w,
                                       RandomStream& rng) {
    if (w < 1 || w > p.size())
        throw std::invalid_argument("rtr_replace: window must satisfy 1 <= w <= N");
    const double offspring_fitness = offspring.fitness();

    // Partial Fisher-Yates draw of w distinct member indices.
    std::vector<std::size_t> pool(p.size());
    std::iota(pool.begin(), pool.end(), 0);
    std::size_t closest = p.size();
    std::size_t closest_distance = 0;
    for (std::size_t k = 0; k < w; ++k) {
        std::size_t pick = k + rng.uniform_int(pool.size() - k);
        std::swap(pool[k], pool[pick]);
        std::size_t idx = pool[k];
        std::size_t d = hamming_distance(p[idx], offspring);
        if (closest == p.size() || d < closest_distance ||
            (d == closest_distance && idx < closest)) {
            closest = idx;
            closest_distance = d;
        }
    }

    if (offspring_fitness > p[closest].fitness()) {
        p[closest] = offspring;
        return closest;
    }
    return std::nullopt;
}

std::size_t default_rtr_window(std::size_t genome_length, std::size_t population_size) {
    return std::min(genome_length, std::max<std::size_t>(1, population_size / 20));
}

void HboaAlgorithm::next_generation(Population& pop, FitnessFunction& fitness,
                                    RandomStream& rng) {
    const std::size_t n_offspring = static_cast<std::size_t>(
        std::ceil(params_.offspring_fraction * static_cast<double>(pop.size())));
    SelectedSet selected = tournament_select(pop, 2, pop.size(), true, rng);
    last_forest_ = build_forest(selected, ForestBuildOptions{params_.max_incoming});
    if (n_offspring == 0)
        return; // degenerate configuration: model built, population unchanged

    std::vector<Genome> offspring = sample_forest(*last_forest_, n_offspring, rng);
    for (auto& child : offspring)
        fitness.evaluate(child, rng);

    const std::size_t w =
        params_.rtr_window.value_or(default_rtr_window(pop.genome_length(), pop.size()));
    for (const auto& child : offspring)
        rtr_replace(pop, child, std::min(w, pop.size()), rng);
}

} // namespace ea
