#include "ea/population.hpp"

#include <stdexcept>

#include "ea/errors.hpp"

namespace ea {

Population::Population(std::vector<Genome> members) : members_(std::move(members)) {
    if (members_.empty())
        throw std::invalid_argument("Population: must not be empty");
    genome_length_ = members_.front().length();
    for (const auto& g : members_)
        if (g.length() != genome_length_)
            throw std::invalid_argument("Population: members must have identical genome length");
}

Population Population::random(std::size_t size, std::size_t genome_length, RandomStream& rng) {
    if (size == 0)
        throw ConfigError("populationSize must be >= 1");
    if (genome_length == 0)
        throw ConfigError("stringSize must be >= 1");
    std::vector<Genome> members;
    members.reserve(size);
    for (std::size_t i = 0; i < size; ++i)
        members.push_back(Genome::random(genome_length, rng));
    return Population(std::move(members));
}

bool Population::all_evaluated() const {
    for (const auto& g : members_)
        if (!g.evaluated())
            return false;
    return true;
}

PopulationStats Population::stats() const {
    PopulationStats s;
    double sum = 0.0;
    for (std::size_t i = 0; i < members_.size(); ++i) {
        double f = members_[i].fitness(); // throws if unevaluated
        sum += f;
        if (i == 0 || f > s.best_fitness) {
            s.best_fitness = f;
            s.best_index = i;
        }
    }
    s.average_fitness = sum / static_cast<double>(members_.size());
    return s;
}

double Population::allele1_frequency(std::size_t position) const {
    std::size_t ones = 0;
    for (const auto& g : members_)
        ones += static_cast<std::size_t>(g.allele(position));
    return static_cast<double>(ones) / static_cast<double>(members_.size());
}

} // namespace ea
