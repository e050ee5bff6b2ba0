#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ea/genome.hpp"
#include "ea/population.hpp"
#include "ea/random.hpp"

namespace ea {

/// Problem selection plus the options that shape evaluation.
/// Built-in menu codes: 0-6 the Zero problems, 10-16 their One twins,
/// 21-22 the hierarchical traps. Further codes become valid through
/// ProblemRegistry::register_problem.
struct ProblemSpec {
    int problem_id = 10;
    std::size_t string_size = 1;
    double sigma_k = 0.0;   // stddev of the Gaussian noise term; 0 disables noise
    std::size_t trap_k = 5; // block size for Concatenated Trap-k

    // Hierarchical trap constants; unset fields take the selected problem's
    // defaults (Trap Two's lower-level fLow depends on the number of levels).
    std::optional<double> hier_f_high_low;
    std::optional<double> hier_f_low_low;
    std::optional<double> hier_f_high_top;
    std::optional<double> hier_f_low_top;
};

/// Strategy object evaluating one problem. Evaluation is a pure function of
/// the allele sequence; noise is applied outside, by FitnessFunction.
class ProblemEvaluator {
  public:
    virtual ~ProblemEvaluator() = default;

    virtual std::string name() const = 0;

    /// Throws ConfigError naming the violated rule if n is incompatible.
    virtual void validate_length(std::size_t n) const = 0;

    /// Noise-free fitness.
    virtual double base_fitness(AlleleView v) const = 0;

    /// Base fitness of the known best string for length n, or nullopt when
    /// the optimum is unknown (disables the optimum stop criterion).
    virtual std::optional<double> optimum_value(std::size_t n) const = 0;

    /// The known best string itself, when there is one.
    virtual std::optional<Genome> optimum_genome(std::size_t n) const = 0;
};

using EvaluatorFactory =
    std::function<std::unique_ptr<ProblemEvaluator>(const ProblemSpec&)>;

/// Maps problem menu codes to evaluator factories. Mirrors the plug-in
/// procedure: new problems are added under a fresh code and become selectable
/// via the problemType option.
class ProblemRegistry {
  public:
    /// Registry preloaded with the whole built-in menu.
    static ProblemRegistry builtins();

    /// Throws ConfigError if the id is already taken (built-in or custom).
    void register_problem(int id, std::string name, EvaluatorFactory factory);

    /// Convenience registration from a plain fitness function and an
    /// optionally known optimum (valid for any string size).
    void register_problem(int id, std::string name,
                          std::function<double(AlleleView)> fitness,
                          std::optional<double> optimum_known);

    bool contains(int id) const { return entries_.count(id) != 0; }

    /// Throws ConfigError for unknown codes.
    std::unique_ptr<ProblemEvaluator> make_evaluator(const ProblemSpec& spec) const;

    const std::string& name_of(int id) const;

    /// (code, name) pairs in ascending code order.
    std::vector<std::pair<int, std::string>> menu() const;

  private:
    struct Entry {
        std::string name;
        EvaluatorFactory factory;
    };
    std::map<int, Entry> entries_;
};

/// Bound problem: spec + evaluator + the run's fitness-call counter.
/// Each evaluate() adds the noise draw (when sigmaK > 0), stores the result
/// in the genome's cache, and increments the counter by exactly one.
class FitnessFunction {
  public:
    FitnessFunction(ProblemSpec spec, std::shared_ptr<const ProblemEvaluator> evaluator);

    double evaluate(Genome& g, RandomStream& rng);

    /// Noise-free fitness; does not touch the counter or the cache.
    double base(const Genome& g) const;

    std::uint64_t fitness_calls() const { return calls_; }

    const ProblemSpec& spec() const { return spec_; }
    const ProblemEvaluator& evaluator() const { return *evaluator_; }

    std::optional<double> optimum() const { return optimum_; }

  private:
    ProblemSpec spec_;
    std::shared_ptr<const ProblemEvaluator> evaluator_;
    std::optional<double> optimum_;
    std::uint64_t calls_ = 0;
};

/// Validates the spec against the registry and builds the bound problem.
FitnessFunction make_fitness(const ProblemSpec& spec, const ProblemRegistry& registry);

struct BruteForceResult {
    double best_value = 0.0;
    Genome best_genome;
};

/// Exhaustive enumeration of all 2^n strings, n <= 24, noise-free. Returns the
/// maximum base fitness and the lexicographically smallest argmax.
BruteForceResult brute_force_optimum(const ProblemSpec& spec, const ProblemRegistry& registry);

/// optimum_value convenience over the registry. Throws ConfigError if the
/// spec is invalid; nullopt when the problem's optimum is unknown.
std::optional<double> optimum_value(const ProblemSpec& spec, const ProblemRegistry& registry);

} // namespace ea
