#include "ea/genome.hpp"

#include <bit>
#include <stdexcept>

namespace ea {

namespace {

std::size_t word_count(std::size_t length) { return (length + 63) / 64; }

} // namespace

Genome::Genome(std::size_t length) : words_(word_count(length), 0), length_(length) {
    if (length == 0)
        throw std::invalid_argument("Genome: length must be >= 1");
}

Genome Genome::random(std::size_t length, RandomStream& rng) {
    Genome g(length);
    for (auto& w : g.words_)
        w = rng.next_u64();
    // Mask tail bits beyond the genome length.
    if (length & 63)
        g.words_.back() &= (std::uint64_t{1} << (length & 63)) - 1;
    return g;
}

Genome Genome::from_string(std::string_view bits) {
    Genome g(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            g.words_[i >> 6] |= std::uint64_t{1} << (i & 63);
        else if (bits[i] != '0')
            throw std::invalid_argument("Genome::from_string: alleles must be '0' or '1'");
    }
    return g;
}

std::string Genome::to_string() const {
    std::string s(length_, '0');
    for (std::size_t i = 0; i < length_; ++i)
        if (allele_unchecked(i))
            s[i] = '1';
    return s;
}

int Genome::allele(std::size_t i) const {
    if (i >= length_)
        throw std::out_of_range("Genome::allele: index out of range");
    return allele_unchecked(i);
}

void Genome::set_allele(std::size_t i, int v) {
    if (i >= length_)
        throw std::out_of_range("Genome::set_allele: index out of range");
    if (v)
        words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    else
        words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    evaluated_ = false;
}

void Genome::flip_allele(std::size_t i) {
    if (i >= length_)
        throw std::out_of_range("Genome::flip_allele: index out of range");
    words_[i >> 6] ^= std::uint64_t{1} << (i & 63);
    evaluated_ = false;
}

double Genome::fitness() const {
    if (!evaluated_)
        throw std::logic_error("Genome::fitness: genome has not been evaluated");
    return fitness_;
}

std::size_t Genome::count_ones() const {
    std::size_t n = 0;
    for (auto w : words_)
        n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

std::size_t hamming_distance(const Genome& a, const Genome& b) {
    if (a.length() != b.length())
        throw std::invalid_argument("hamming_distance: genome lengths differ");
    auto wa = a.words();
    auto wb = b.words();
    std::size_t d = 0;
    for (std::size_t i = 0; i < wa.size(); ++i)
        d += static_cast<std::size_t>(std::popcount(wa[i] ^ wb[i]));
    return d;
}

} // namespace ea
