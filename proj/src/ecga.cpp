#include "ea/ecga.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ea/selection.hpp"

namespace ea {

namespace {

double entropy_bits(const std::vector<std::uint32_t>& counts, std::size_t total) {
    double sum_clogc = 0.0;
    for (std::uint32_t c : counts)
        if (c > 0)
            sum_clogc += static_cast<double>(c) * std::log2(static_cast<double>(c));
    return std::log2(static_cast<double>(total)) - sum_clogc / static_cast<double>(total);
}

std::vector<std::uint32_t> gather_counts(const SelectedSet& selected,
                                         const std::vector<std::uint32_t>& indices) {
    std::vector<std::uint32_t> counts(std::size_t{1} << indices.size(), 0);
    for (const auto& g : selected.members()) {
        std::size_t cell = 0;
        for (std::size_t t = 0; t < indices.size(); ++t)
            cell |= static_cast<std::size_t>(g.allele(indices[t])) << t;
        ++counts[cell];
    }
    return counts;
}

} // namespace

MarginalProductModel::MarginalProductModel(std::vector<MpmGroup> groups)
    : groups_(std::move(groups)) {
    for (const auto& g : groups_)
        if (g.indices.empty())
            throw std::invalid_argument("MarginalProductModel: empty group");
    std::sort(groups_.begin(), groups_.end(), [](const MpmGroup& a, const MpmGroup& b) {
        return a.indices.front() < b.indices.front();
    });
}

MarginalProductModel MarginalProductModel::from_partition(
    const SelectedSet& selected, std::vector<std::vector<std::uint32_t>> partition) {
    std::vector<MpmGroup> groups;
    groups.reserve(partition.size());
    for (auto& indices : partition) {
        std::sort(indices.begin(), indices.end());
        MpmGroup g;
        g.counts = gather_counts(selected, indices);
        g.indices = std::move(indices);
        groups.push_back(std::move(g));
    }
    return MarginalProductModel(std::move(groups));
}

std::size_t MarginalProductModel::gene_count() const {
    std::size_t n = 0;
    for (const auto& g : groups_)
        n += g.indices.size();
    return n;
}

bool MarginalProductModel::is_partition_of(std::size_t n) const {
    std::vector<bool> seen(n, false);
    for (const auto& g : groups_) {
        if (g.indices.empty())
            return false;
        for (auto i : g.indices) {
            if (i >= n || seen[i])
                return false;
            seen[i] = true;
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

std::string MarginalProductModel::partition_string() const {
    std::string out;
    for (const auto& g : groups_) {
        out += '[';
        for (std::size_t t = 0; t < g.indices.size(); ++t) {
            if (t)
                out += ',';
            out += std::to_string(g.indices[t]);
        }
        out += ']';
    }
    return out;
}

double combined_complexity(const MarginalProductModel& mpm, std::size_t selected_size) {
    const double s = static_cast<double>(selected_size);
    double model_complexity = 0.0;
    double population_complexity = 0.0;
    for (const auto& g : mpm.groups()) {
        model_complexity += static_cast<double>((std::size_t{1} << g.indices.size()) - 1);
        population_complexity += entropy_bits(g.counts, selected_size);
    }
    return std::log2(s + 1.0) * model_complexity + s * population_complexity;
}

namespace {

/// Search-time group: member patterns are kept in merge order (not sorted
/// index order) because entropy is invariant to cell relabeling; the final
/// model's tables are rebuilt canonically afterwards.
struct SearchGroup {
    std::vector<std::uint32_t> indices; // sorted
    std::vector<std::uint16_t> patterns;
    std::size_t bits = 0;
    double entropy = 0.0;
    bool alive = false;
};

double entropy_of_patterns(const std::vector<std::uint16_t>& patterns, std::size_t bits,
                           std::vector<std::uint32_t>& scratch) {
    scratch.assign(std::size_t{1} << bits, 0);
    for (auto p : patterns)
        ++scratch[p];
    return entropy_bits(scratch, patterns.size());
}

} // namespace

MarginalProductModel greedy_mpm_search(const SelectedSet& selected, std::size_t max_group_size) {
    if (selected.size() == 0)
        throw std::logic_error("greedy_mpm_search: empty selected set");
    const std::size_t n = selected.genome_length();
    const std::size_t s_count = selected.size();
    const double log2_s1 = std::log2(static_cast<double>(s_count) + 1.0);
    constexpr double kNoMerge = std::numeric_limits<double>::infinity();

    std::vector<SearchGroup> groups(n);
    std::vector<std::uint32_t> scratch;
    for (std::size_t i = 0; i < n; ++i) {
        auto& g = groups[i];
        g.indices = {static_cast<std::uint32_t>(i)};
        g.bits = 1;
        g.alive = true;
        g.patterns.resize(s_count);
        for (std::size_t m = 0; m < s_count; ++m)
            g.patterns[m] = static_cast<std::uint16_t>(selected[m].allele(i));
        g.entropy = entropy_of_patterns(g.patterns, 1, scratch);
    }

    // Change in combined complexity if groups a and b were merged; +inf when
    // the merged group would exceed the size cap.
    std::vector<std::uint16_t> merged_patterns(s_count);
    auto merge_delta = [&](const SearchGroup& a, const SearchGroup& b) {
        if (a.bits + b.bits > max_group_size)
            return kNoMerge;
        for (std::size_t m = 0; m < s_count; ++m)
            merged_patterns[m] =
                static_cast<std::uint16_t>(a.patterns[m] | (b.patterns[m] << a.bits));
        double merged_entropy = entropy_of_patterns(merged_patterns, a.bits + b.bits, scratch);
        double delta_model =
            static_cast<double>((std::size_t{1} << (a.bits + b.bits)) - 1) -
            static_cast<double>((std::size_t{1} << a.bits) - 1) -
            static_cast<double>((std::size_t{1} << b.bits) - 1);
        double delta_cpc = merged_entropy - a.entropy - b.entropy;
        return log2_s1 * delta_model + static_cast<double>(s_count) * delta_cpc;
    };

    // Pairwise gain cache, lower-triangle over group slots; a merge reuses
    // the first slot and only its row/column is recomputed.
    std::vector<std::vector<double>> delta(n);
    for (std::size_t j = 1; j < n; ++j) {
        delta[j].resize(j);
        for (std::size_t i = 0; i < j; ++i)
            delta[j][i] = merge_delta(groups[i], groups[j]);
    }

    for (;;) {
        double best = 0.0; // only strict decreases qualify
        std::size_t best_i = n, best_j = n;
        std::uint32_t best_lo = 0, best_hi = 0;
        for (std::size_t j = 1; j < n; ++j) {
            if (!groups[j].alive)
                continue;
            for (std::size_t i = 0; i < j; ++i) {
                if (!groups[i].alive)
                    continue;
                double d = delta[j][i];
                if (d >= best && !(d == best && best_i < n))
                    continue;
                std::uint32_t lo = std::min(groups[i].indices.front(), groups[j].indices.front());
                std::uint32_t hi = std::max(groups[i].indices.front(), groups[j].indices.front());
                if (d < best || best_i == n || lo < best_lo || (lo == best_lo && hi < best_hi)) {
                    best = d;
                    best_i = i;
                    best_j = j;
                    best_lo = lo;
                    best_hi = hi;
                }
            }
        }
        if (best_i == n)
            break;

        SearchGroup& a = groups[best_i];
        SearchGroup& b = groups[best_j];
        for (std::size_t m = 0; m < s_count; ++m)
            a.patterns[m] = static_cast<std::uint16_t>(a.patterns[m] | (b.patterns[m] << a.bits));
        std::vector<std::uint32_t> merged_indices;
        std::merge(a.indices.begin(), a.indices.end(), b.indices.begin(), b.indices.end(),
                   std::back_inserter(merged_indices));
        a.indices = std::move(merged_indices);
        a.bits += b.bits;
        a.entropy = entropy_of_patterns(a.patterns, a.bits, scratch);
        b.alive = false;
        b.patterns.clear();

        for (std::size_t k = 0; k < n; ++k) {
            if (k == best_i || !groups[k].alive)
                continue;
            double d = merge_delta(groups[std::min(k, best_i)], groups[std::max(k, best_i)]);
            delta[std::max(k, best_i)][std::min(k, best_i)] = d;
        }
    }

    std::vector<MpmGroup> final_groups;
    for (const auto& g : groups) {
        if (!g.alive)
            continue;
        MpmGroup out;
        out.counts = gather_counts(selected, g.indices);
        out.indices = g.indices;
        final_groups.push_back(std::move(out));
    }
    return MarginalProductModel(std::move(final_groups));
}

Population sample_mpm(const MarginalProductModel& mpm, const SelectedSet& selected,
                      std::size_t size, const std::optional<Genome>& elite, RandomStream& rng) {
    if (size == 0)
        throw std::invalid_argument("sample_mpm: size must be >= 1");
    const std::size_t n = selected.genome_length();

    std::vector<Genome> members;
    members.reserve(size);
    if (elite)
        members.push_back(*elite);
    while (members.size() < size) {
        Genome g(n);
        for (const auto& group : mpm.groups()) {
            const Genome& donor = selected[rng.uniform_int(selected.size())];
            for (auto idx : group.indices)
                g.set_allele(idx, donor.allele(idx));
        }
        members.push_back(std::move(g));
    }
    return Population(std::move(members));
}

void EcgaAlgorithm::next_generation(Population& pop, FitnessFunction& fitness,
                                    RandomStream& rng) {
    PopulationStats stats = pop.stats();
    if (!best_so_far_ || stats.best_fitness > best_so_far_->fitness())
        best_so_far_ = pop[stats.best_index];

    SelectedSet selected =
        tournament_select(pop, params_.tournament_size, pop.size(), false, rng);
    last_model_ = greedy_mpm_search(selected, params_.max_group_size);

    std::optional<Genome> elite;
    if (params_.elitism > 0)
        elite = best_so_far_;
    Population next = sample_mpm(*last_model_, selected, pop.size(), elite, rng);
    for (std::size_t i = 0; i < next.size(); ++i)
        if (!next[i].evaluated())
            fitness.evaluate(next[i], rng);
    pop = std::move(next);
}

std::optional<std::string> EcgaAlgorithm::model_summary() const {
    if (!last_model_)
        return std::nullopt;
    return last_model_->partition_string();
}

} // namespace ea
