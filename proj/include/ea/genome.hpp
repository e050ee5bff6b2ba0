#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ea/random.hpp"

namespace ea {

/// Fixed-length string of binary alleles with a cached fitness value.
/// Alleles are stored packed, 64 per word; the public contract is index-based
/// access only. The cache is invalidated by any allele mutation, so
/// `evaluated()` is true iff `fitness()` was produced by a problem evaluation
/// of the current alleles.
class Genome {
  public:
    /// All-zero genome of the given length. length must be >= 1.
    explicit Genome(std::size_t length);

    /// Each allele drawn independently uniform over {0,1}; unevaluated.
    static Genome random(std::size_t length, RandomStream& rng);

    /// Build from a string of '0'/'1' characters (tests, CLI output).
    static Genome from_string(std::string_view bits);

    std::string to_string() const;

    std::size_t length() const { return length_; }

    /// Allele at position i. Throws std::out_of_range on bad index.
    int allele(std::size_t i) const;

    /// Set allele i to v (0 or 1). Invalidates the fitness cache.
    void set_allele(std::size_t i, int v);

    /// Flip allele i. Invalidates the fitness cache.
    void flip_allele(std::size_t i);

    bool evaluated() const { return evaluated_; }

    /// Cached fitness. Throws std::logic_error if the genome is unevaluated.
    double fitness() const;

    void set_fitness(double f) {
        fitness_ = f;
        evaluated_ = true;
    }

    void clear_fitness() { evaluated_ = false; }

    std::size_t count_ones() const;

    std::span<const std::uint64_t> words() const { return words_; }

    /// Allele equality only; the fitness cache is not compared.
    friend bool operator==(const Genome& a, const Genome& b) {
        return a.length_ == b.length_ && a.words_ == b.words_;
    }

  private:
    friend class AlleleView;

    int allele_unchecked(std::size_t i) const {
        return static_cast<int>((words_[i >> 6] >> (i & 63)) & 1u);
    }

    std::vector<std::uint64_t> words_;
    std::size_t length_;
    double fitness_ = 0.0;
    bool evaluated_ = false;
};

/// Count of positions where the alleles differ. Lengths must match.
std::size_t hamming_distance(const Genome& a, const Genome& b);

/// Read-only, optionally complemented window onto a genome's alleles.
/// Problem evaluators work through this view; the Zero problem variants
/// complement it before applying the One formula, which makes the Zero/One
/// mirror hold by construction.
class AlleleView {
  public:
    explicit AlleleView(const Genome& g, bool complement = false)
        : genome_(&g), complement_(complement ? 1 : 0) {}

    std::size_t size() const { return genome_->length(); }

    int operator[](std::size_t i) const { return genome_->allele_unchecked(i) ^ complement_; }

    std::size_t count_ones() const {
        std::size_t ones = genome_->count_ones();
        return complement_ ? genome_->length() - ones : ones;
    }

    AlleleView complemented() const {
        AlleleView v = *this;
        v.complement_ ^= 1;
        return v;
    }

  private:
    const Genome* genome_;
    int complement_;
};

} // namespace ea
