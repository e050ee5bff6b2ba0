#pragma once

#include <cstddef>

#include "ea/population.hpp"
#include "ea/random.hpp"

namespace ea {

/// Index of the winner of one tournament drawn with replacement: the
/// max-fitness contestant among s uniform draws, ties to the lowest index.
std::size_t tournament_winner(const Population& p, std::size_t s, RandomStream& rng);

/// S tournament winners. With replacement, every tournament draws its s
/// contestants independently. Without replacement, contestants come from
/// repeated shuffled passes over the population split into consecutive
/// groups of s, one winner per group (requires s <= N).
SelectedSet tournament_select(const Population& p, std::size_t s, std::size_t output_size,
                              bool with_replacement, RandomStream& rng);

/// The ceil(tau * N) highest-fitness members, 0 < tau <= 1; ties at the
/// cutoff broken by lowest index.
SelectedSet truncation_select(const Population& p, double tau);

} // namespace ea
