#include "ea/umda.hpp"

#include <algorithm>
#include <stdexcept>

#include "ea/selection.hpp"

namespace ea {

MarginalVector build_marginals(const SelectedSet& selected, bool clamp_margins) {
    if (selected.size() == 0)
        throw std::logic_error("build_marginals: empty selected set");
    const std::size_t n = selected.genome_length();
    const double s = static_cast<double>(selected.size());

    MarginalVector p(n, 0.0);
    for (const auto& g : selected.members())
        for (std::size_t i = 0; i < n; ++i)
            p[i] += static_cast<double>(g.allele(i));
    for (auto& v : p)
        v /= s;

    if (clamp_margins) {
        const double lo = 1.0 / static_cast<double>(n);
        const double hi = 1.0 - lo;
        for (auto& v : p)
            v = std::clamp(v, lo, hi);
    }
    return p;
}

Population sample_population(const MarginalVector& marginals, std::size_t size,
                             const std::optional<Genome>& elite, RandomStream& rng) {
    if (size == 0)
        throw std::invalid_argument("sample_population: size must be >= 1");
    const std::size_t n = marginals.size();

    std::vector<Genome> members;
    members.reserve(size);
    if (elite)
        members.push_back(*elite);
    while (members.size() < size) {
        Genome g(n);
        for (std::size_t i = 0; i < n; ++i)
            if (rng.bernoulli(marginals[i]))
                g.set_allele(i, 1);
        members.push_back(std::move(g));
    }
    return Population(std::move(members));
}

void UmdaAlgorithm::next_generation(Population& pop, FitnessFunction& fitness,
                                    RandomStream& rng) {
    PopulationStats stats = pop.stats();
    if (!best_so_far_ || stats.best_fitness > best_so_far_->fitness())
        best_so_far_ = pop[stats.best_index];

    SelectedSet selected = params_.selection == UmdaSelection::Truncation
                               ? truncation_select(pop, params_.tau)
                               : tournament_select(pop, 2, pop.size(), true, rng);
    MarginalVector marginals = build_marginals(selected, params_.clamp_margins);

    std::optional<Genome> elite;
    if (params_.elitism > 0)
        elite = best_so_far_;
    Population next = sample_population(marginals, pop.size(), elite, rng);
    for (std::size_t i = 0; i < next.size(); ++i)
        if (!next[i].evaluated())
            fitness.evaluate(next[i], rng);
    pop = std::move(next);
}

} // namespace ea
