#include "ea/sga.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "ea/selection.hpp"

namespace ea {

std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b, CrossoverType type,
                                    double pc, RandomStream& rng) {
    if (a.length() != b.length())
        throw std::invalid_argument("crossover: parent lengths differ");
    const std::size_t n = a.length();

    std::pair<Genome, Genome> out{a, b};
    out.first.clear_fitness();
    out.second.clear_fitness();
    if (!rng.bernoulli(pc) || n < 2)
        return out;

    auto swap_position = [&](std::size_t i) {
        int ai = out.first.allele(i);
        int bi = out.second.allele(i);
        out.first.set_allele(i, bi);
        out.second.set_allele(i, ai);
    };

    switch (type) {
    case CrossoverType::OnePoint: {
        std::size_t cut = 1 + rng.uniform_int(n - 1);
        for (std::size_t i = cut; i < n; ++i)
            swap_position(i);
        break;
    }
    case CrossoverType::TwoPoint: {
        std::size_t c1 = 1 + rng.uniform_int(n - 1);
        std::size_t c2 = c1;
        while (c2 == c1)
            c2 = 1 + rng.uniform_int(n - 1);
        if (c1 > c2)
            std::swap(c1, c2);
        for (std::size_t i = c1; i < c2; ++i)
            swap_position(i);
        break;
    }
    case CrossoverType::Uniform:
        for (std::size_t i = 0; i < n; ++i)
            if (rng.bernoulli(0.5))
                swap_position(i);
        break;
    }
    return out;
}

Genome mutate(const Genome& g, double pm, RandomStream& rng) {
    Genome out = g;
    for (std::size_t i = 0; i < out.length(); ++i)
        if (rng.bernoulli(pm))
            out.flip_allele(i);
    return out;
}

namespace {

/// Lazy stream of tournament winners from shuffled passes: each pass splits a
/// fresh permutation into consecutive groups of s and yields one winner per
/// group, so every member enters exactly one tournament per pass.
class TournamentStream {
  public:
    TournamentStream(const Population& p, std::size_t s, RandomStream& rng)
        : p_(p), s_(std::clamp<std::size_t>(s, 1, p.size())), rng_(rng), order_(p.size()),
          pos_(p.size()) {
        std::iota(order_.begin(), order_.end(), 0);
    }

    std::size_t next() {
        if (pos_ + s_ > order_.size()) {
            shuffle(order_, rng_);
            pos_ = 0;
        }
        std::size_t best = order_[pos_];
        for (std::size_t k = 1; k < s_; ++k) {
            std::size_t c = order_[pos_ + k];
            if (p_[c].fitness() > p_[best].fitness() ||
                (p_[c].fitness() == p_[best].fitness() && c < best))
                best = c;
        }
        pos_ += s_;
        return best;
    }

  private:
    const Population& p_;
    std::size_t s_;
    RandomStream& rng_;
    std::vector<std::size_t> order_;
    std::size_t pos_;
};

} // namespace

Population sga_generation(const Population& p, const SgaParams& params, FitnessFunction& fitness,
                          RandomStream& rng) {
    const std::size_t n_members = p.size();
    const double pm = params.mutation_probability.value_or(
        1.0 / static_cast<double>(p.genome_length()));

    std::vector<Genome> next;
    next.reserve(n_members);

    // Elites: highest fitness first, lowest index on ties, copied unchanged
    // with their cached fitness (no re-evaluation).
    const std::size_t elites = std::min(params.elitism, n_members);
    if (elites > 0) {
        std::vector<std::size_t> order(n_members);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (p[a].fitness() != p[b].fitness())
                return p[a].fitness() > p[b].fitness();
            return a < b;
        });
        for (std::size_t i = 0; i < elites; ++i)
            next.push_back(p[order[i]]);
    }

    // Draw order per offspring pair: selection, crossover, mutation.
    TournamentStream parents(p, params.tournament_size, rng);
    while (next.size() < n_members) {
        const Genome& parent_a = p[parents.next()];
        const Genome& parent_b = p[parents.next()];
        auto [child_a, child_b] =
            crossover(parent_a, parent_b, params.crossover_type, params.crossover_probability, rng);
        child_a = mutate(child_a, pm, rng);
        child_b = mutate(child_b, pm, rng);
        fitness.evaluate(child_a, rng);
        next.push_back(std::move(child_a));
        if (next.size() < n_members) {
            fitness.evaluate(child_b, rng);
            next.push_back(std::move(child_b));
        }
        // An odd slot count drops the final pair's second child unevaluated,
        // so the call counter sees exactly N - e evaluations per generation.
    }
    return Population(std::move(next));
}

} // namespace ea
