#pragma once

#include <cstddef>
#include <vector>

#include "ea/genome.hpp"
#include "ea/random.hpp"

namespace ea {

struct PopulationStats {
    double average_fitness = 0.0;
    double best_fitness = 0.0;
    std::size_t best_index = 0; // smallest index attaining best_fitness
};

/// Constant-size collection of genomes of identical length. The size is fixed
/// at construction and stays the same across the generations of a run.
class Population {
  public:
    explicit Population(std::vector<Genome> members);

    /// N genomes of length n, alleles i.i.d. uniform, none evaluated.
    /// N = 0 or n = 0 is a configuration error.
    static Population random(std::size_t size, std::size_t genome_length, RandomStream& rng);

    std::size_t size() const { return members_.size(); }
    std::size_t genome_length() const { return genome_length_; }

    Genome& operator[](std::size_t i) { return members_[i]; }
    const Genome& operator[](std::size_t i) const { return members_[i]; }

    std::vector<Genome>& members() { return members_; }
    const std::vector<Genome>& members() const { return members_; }

    bool all_evaluated() const;

    /// Average, maximum, and argmax (first-wins tie break) of member
    /// fitnesses. Throws std::logic_error if any member is unevaluated.
    PopulationStats stats() const;

    /// Fraction of members with allele 1 at the given position.
    double allele1_frequency(std::size_t position) const;

  private:
    std::vector<Genome> members_;
    std::size_t genome_length_;
};

/// Output of a selection operator. Members are copies of evaluated members of
/// the parent population; the size may differ from the population size.
using SelectedSet = Population;

} // namespace ea
