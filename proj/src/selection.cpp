#include "ea/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ea/errors.hpp"

namespace ea {

std::size_t tournament_winner(const Population& p, std::size_t s, RandomStream& rng) {
    if (s == 0)
        throw std::invalid_argument("tournament_winner: tournament size must be >= 1");
    std::size_t best = rng.uniform_int(p.size());
    for (std::size_t k = 1; k < s; ++k) {
        std::size_t c = rng.uniform_int(p.size());
        if (p[c].fitness() > p[best].fitness() || (p[c].fitness() == p[best].fitness() && c < best))
            best = c;
    }
    return best;
}

SelectedSet tournament_select(const Population& p, std::size_t s, std::size_t output_size,
                              bool with_replacement, RandomStream& rng) {
    if (s == 0 || output_size == 0)
        throw std::invalid_argument("tournament_select: sizes must be >= 1");
    std::vector<Genome> winners;
    winners.reserve(output_size);

    if (with_replacement) {
        for (std::size_t i = 0; i < output_size; ++i)
            winners.push_back(p[tournament_winner(p, s, rng)]);
        return SelectedSet(std::move(winners));
    }

    if (s > p.size())
        throw ConfigError("tournament size " + std::to_string(s) +
                          " exceeds populationSize for without-replacement selection");
    std::vector<std::size_t> order(p.size());
    std::iota(order.begin(), order.end(), 0);
    while (winners.size() < output_size) {
        shuffle(order, rng);
        for (std::size_t g = 0; g + s <= order.size() && winners.size() < output_size; g += s) {
            std::size_t best = order[g];
            for (std::size_t k = 1; k < s; ++k) {
                std::size_t c = order[g + k];
                if (p[c].fitness() > p[best].fitness() ||
                    (p[c].fitness() == p[best].fitness() && c < best))
                    best = c;
            }
            winners.push_back(p[best]);
        }
    }
    return SelectedSet(std::move(winners));
}

SelectedSet truncation_select(const Population& p, double tau) {
    if (!(tau > 0.0) || tau > 1.0)
        throw ConfigError("truncation fraction tau must be in (0, 1]");
    std::size_t keep = static_cast<std::size_t>(
        std::ceil(tau * static_cast<double>(p.size())));
    keep = std::min(std::max<std::size_t>(keep, 1), p.size());

    std::vector<std::size_t> order(p.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (p[a].fitness() != p[b].fitness())
            return p[a].fitness() > p[b].fitness();
        return a < b;
    });

    std::vector<Genome> kept;
    kept.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i)
        kept.push_back(p[order[i]]);
    return SelectedSet(std::move(kept));
}

} // namespace ea
