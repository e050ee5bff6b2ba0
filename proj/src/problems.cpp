#include "ea/problems.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "ea/errors.hpp"

namespace ea {

namespace {

std::size_t block_unitation(AlleleView v, std::size_t begin, std::size_t count) {
    std::size_t u = 0;
    for (std::size_t i = 0; i < count; ++i)
        u += static_cast<std::size_t>(v[begin + i]);
    return u;
}

Genome all_ones(std::size_t n) {
    Genome g(n);
    for (std::size_t i = 0; i < n; ++i)
        g.set_allele(i, 1);
    return g;
}

/// One problem over all-ones-optimal fitness; optimum is the all-ones string.
class OneProblem : public ProblemEvaluator {
  public:
    explicit OneProblem(std::string name) : name_(std::move(name)) {}

    std::string name() const override { return name_; }

    std::optional<double> optimum_value(std::size_t n) const override {
        Genome best = all_ones(n);
        return base_fitness(AlleleView(best));
    }

    std::optional<Genome> optimum_genome(std::size_t n) const override { return all_ones(n); }

  protected:
    std::string name_;
};

class OneMaxProblem final : public OneProblem {
  public:
    using OneProblem::OneProblem;

    void validate_length(std::size_t n) const override {
        if (n < 1)
            throw ConfigError(name_ + " requires stringSize >= 1");
    }

    double base_fitness(AlleleView v) const override {
        return static_cast<double>(v.count_ones());
    }
};

/// Separable problem built from fixed-size blocks scored by a unitation table.
class BlockTableProblem final : public OneProblem {
  public:
    BlockTableProblem(std::string name, std::size_t block, std::array<double, 7> table)
        : OneProblem(std::move(name)), block_(block), table_(table) {}

    void validate_length(std::size_t n) const override {
        if (n < 1 || n % block_ != 0)
            throw ConfigError(name_ + " requires stringSize divisible by " +
                              std::to_string(block_));
    }

    double base_fitness(AlleleView v) const override {
        double total = 0.0;
        for (std::size_t b = 0; b < v.size(); b += block_)
            total += table_[block_unitation(v, b, block_)];
        return total;
    }

  private:
    std::size_t block_;
    std::array<double, 7> table_;
};

class TrapKProblem final : public OneProblem {
  public:
    TrapKProblem(std::string name, std::size_t k) : OneProblem(std::move(name)), k_(k) {}

    void validate_length(std::size_t n) const override {
        if (k_ < 1)
            throw ConfigError(name_ + " requires trapK >= 1");
        if (n < 1 || n % k_ != 0)
            throw ConfigError(name_ + " requires stringSize divisible by trapK (= " +
                              std::to_string(k_) + ")");
    }

    double base_fitness(AlleleView v) const override {
        double total = 0.0;
        for (std::size_t b = 0; b < v.size(); b += k_) {
            std::size_t u = block_unitation(v, b, k_);
            total += (u == k_) ? static_cast<double>(k_)
                               : static_cast<double>(k_ - 1 - u);
        }
        return total;
    }

  private:
    std::size_t k_;
};

/// 3-bit deceptive windows with stride 2; adjacent windows share one bit.
class OverlappingDeceptiveProblem final : public OneProblem {
  public:
    using OneProblem::OneProblem;

    void validate_length(std::size_t n) const override {
        if (n < 3 || n % 2 == 0)
            throw ConfigError(name_ + " requires an odd stringSize >= 3");
    }

    double base_fitness(AlleleView v) const override {
        static constexpr std::array<double, 4> table{0.9, 0.8, 0.0, 1.0};
        double total = 0.0;
        for (std::size_t b = 0; b + 3 <= v.size(); b += 2)
            total += table[block_unitation(v, b, 3)];
        return total;
    }
};

/// n = 3^l string interpreted as l levels of 3-symbol groups. Bits map to
/// symbols 0/1; a group maps to 0 (000), 1 (111), or null otherwise, and the
/// mapping recurses. A non-null group with unitation u contributes
/// 3^level * trap3(u) with level-specific (fHigh, fLow); null groups
/// contribute 0 and poison the groups above them.
class HierarchicalTrapProblem final : public OneProblem {
  public:
    HierarchicalTrapProblem(std::string name, bool trap_two, const ProblemSpec& spec)
        : OneProblem(std::move(name)), trap_two_(trap_two),
          f_high_low_(spec.hier_f_high_low), f_low_low_(spec.hier_f_low_low),
          f_high_top_(spec.hier_f_high_top), f_low_top_(spec.hier_f_low_top) {}

    void validate_length(std::size_t n) const override {
        if (levels_of(n) == 0)
            throw ConfigError(name_ + " requires stringSize = 3^l for integer l >= 1");
    }

    double base_fitness(AlleleView v) const override {
        const std::size_t n = v.size();
        const std::size_t levels = levels_of(n);
        const double f_high_low = f_high_low_.value_or(1.0);
        const double f_low_low =
            f_low_low_.value_or(trap_two_ ? 1.0 + 0.1 / static_cast<double>(levels) : 1.0);
        const double f_high_top = f_high_top_.value_or(1.0);
        const double f_low_top = f_low_top_.value_or(0.9);

        constexpr std::uint8_t kNull = 2;
        std::vector<std::uint8_t> symbols(n);
        for (std::size_t i = 0; i < n; ++i)
            symbols[i] = static_cast<std::uint8_t>(v[i]);

        double total = 0.0;
        double weight = 3.0;
        for (std::size_t level = 1; level <= levels; ++level) {
            const bool top = (level == levels);
            const double fh = top ? f_high_top : f_high_low;
            const double fl = top ? f_low_top : f_low_low;
            std::vector<std::uint8_t> next(symbols.size() / 3);
            for (std::size_t g = 0; g < next.size(); ++g) {
                std::uint8_t a = symbols[3 * g];
                std::uint8_t b = symbols[3 * g + 1];
                std::uint8_t c = symbols[3 * g + 2];
                if (a == kNull || b == kNull || c == kNull) {
                    next[g] = kNull;
                    continue;
                }
                std::size_t u = static_cast<std::size_t>(a) + b + c;
                total += weight * trap3(u, fh, fl);
                next[g] = (u == 3) ? 1 : (u == 0) ? 0 : kNull;
            }
            symbols = std::move(next);
            weight *= 3.0;
        }
        return total;
    }

  private:
    static double trap3(std::size_t u, double f_high, double f_low) {
        return (u == 3) ? f_high : f_low * static_cast<double>(2 - u) / 2.0;
    }

    /// l with n = 3^l, or 0 if n is not a power of three (or n == 1).
    static std::size_t levels_of(std::size_t n) {
        if (n < 3)
            return 0;
        std::size_t levels = 0;
        while (n % 3 == 0) {
            n /= 3;
            ++levels;
        }
        return (n == 1) ? levels : 0;
    }

    bool trap_two_;
    std::optional<double> f_high_low_, f_low_low_, f_high_top_, f_low_top_;
};

/// Zero twin of a One problem: evaluates the complemented allele view, which
/// makes base_fitness(zero, x) == base_fitness(one, complement(x)) exact.
class ComplementProblem final : public ProblemEvaluator {
  public:
    ComplementProblem(std::string name, std::unique_ptr<ProblemEvaluator> inner)
        : name_(std::move(name)), inner_(std::move(inner)) {}

    std::string name() const override { return name_; }

    void validate_length(std::size_t n) const override {
        // The inner evaluator carries this problem's name, so its rule
        // message already reads correctly for the Zero twin.
        inner_->validate_length(n);
    }

    double base_fitness(AlleleView v) const override {
        return inner_->base_fitness(v.complemented());
    }

    std::optional<double> optimum_value(std::size_t n) const override {
        return inner_->optimum_value(n);
    }

    std::optional<Genome> optimum_genome(std::size_t n) const override { return Genome(n); }

  private:
    std::string name_;
    std::unique_ptr<ProblemEvaluator> inner_;
};

class CustomProblem final : public ProblemEvaluator {
  public:
    CustomProblem(std::string name, std::function<double(AlleleView)> fn,
                  std::optional<double> optimum)
        : name_(std::move(name)), fn_(std::move(fn)), optimum_(optimum) {}

    std::string name() const override { return name_; }
    void validate_length(std::size_t) const override {}
    double base_fitness(AlleleView v) const override { return fn_(v); }
    std::optional<double> optimum_value(std::size_t) const override { return optimum_; }
    std::optional<Genome> optimum_genome(std::size_t) const override { return std::nullopt; }

  private:
    std::string name_;
    std::function<double(AlleleView)> fn_;
    std::optional<double> optimum_;
};

std::unique_ptr<ProblemEvaluator> make_one_problem(int one_id, const std::string& name,
                                                   const ProblemSpec& spec) {
    // Unitation tables for the block problems; one slot per possible u.
    static constexpr std::array<double, 7> kQuadratic{0.9, 0.0, 1.0, 0, 0, 0, 0};
    static constexpr std::array<double, 7> kDeceptive3{0.9, 0.8, 0.0, 1.0, 0, 0, 0};
    // Bipolar: 6-bit blocks scored by the 3-deceptive table of d = |3 - u|.
    static constexpr std::array<double, 7> kBipolar{1.0, 0.0, 0.8, 0.9, 0.8, 0.0, 1.0};
    static constexpr std::array<double, 7> kUniform6{0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0};

    switch (one_id) {
    case 10:
        return std::make_unique<OneMaxProblem>(name);
    case 11:
        return std::make_unique<BlockTableProblem>(name, 2, kQuadratic);
    case 12:
        return std::make_unique<BlockTableProblem>(name, 3, kDeceptive3);
    case 13:
        return std::make_unique<BlockTableProblem>(name, 6, kBipolar);
    case 14:
        return std::make_unique<OverlappingDeceptiveProblem>(name);
    case 15:
        return std::make_unique<TrapKProblem>(name, spec.trap_k);
    case 16:
        return std::make_unique<BlockTableProblem>(name, 6, kUniform6);
    default:
        throw ConfigError("internal: no One problem with code " + std::to_string(one_id));
    }
}

} // namespace

ProblemRegistry ProblemRegistry::builtins() {
    static const std::pair<int, const char*> kOneMenu[] = {
        {10, "OneMax"},
        {11, "Quadratic"},
        {12, "3-Deceptive"},
        {13, "3-Deceptive Bipolar"},
        {14, "3-Deceptive Overlapping"},
        {15, "Concatenated Trap-k"},
        {16, "Uniform 6-Blocks"},
    };

    ProblemRegistry reg;
    for (const auto& [id, name] : kOneMenu) {
        std::string one_name = name;
        reg.register_problem(id, one_name, [id, one_name](const ProblemSpec& spec) {
            return make_one_problem(id, one_name, spec);
        });
        std::string zero_name = std::string(id == 10 ? "Zero" : "Zero ") +
                                (id == 10 ? "Max" : name);
        reg.register_problem(id - 10, zero_name, [id, zero_name](const ProblemSpec& spec) {
            return std::make_unique<ComplementProblem>(
                zero_name, make_one_problem(id, zero_name, spec));
        });
    }
    reg.register_problem(21, "Hierarchical Trap One", [](const ProblemSpec& spec) {
        return std::make_unique<HierarchicalTrapProblem>("Hierarchical Trap One", false, spec);
    });
    reg.register_problem(22, "Hierarchical Trap Two", [](const ProblemSpec& spec) {
        return std::make_unique<HierarchicalTrapProblem>("Hierarchical Trap Two", true, spec);
    });
    return reg;
}

void ProblemRegistry::register_problem(int id, std::string name, EvaluatorFactory factory) {
    if (entries_.count(id))
        throw ConfigError("problem code " + std::to_string(id) + " is already registered (" +
                          entries_.at(id).name + ")");
    entries_[id] = Entry{std::move(name), std::move(factory)};
}

void ProblemRegistry::register_problem(int id, std::string name,
                                       std::function<double(AlleleView)> fitness,
                                       std::optional<double> optimum_known) {
    std::string problem_name = name;
    register_problem(id, std::move(name),
                     [problem_name, fitness = std::move(fitness),
                      optimum_known](const ProblemSpec&) -> std::unique_ptr<ProblemEvaluator> {
                         return std::make_unique<CustomProblem>(problem_name, fitness,
                                                                optimum_known);
                     });
}

std::unique_ptr<ProblemEvaluator> ProblemRegistry::make_evaluator(const ProblemSpec& spec) const {
    auto it = entries_.find(spec.problem_id);
    if (it == entries_.end())
        throw ConfigError("unknown problem code " + std::to_string(spec.problem_id));
    return it->second.factory(spec);
}

const std::string& ProblemRegistry::name_of(int id) const {
    auto it = entries_.find(id);
    if (it == entries_.end())
        throw ConfigError("unknown problem code " + std::to_string(id));
    return it->second.name;
}

std::vector<std::pair<int, std::string>> ProblemRegistry::menu() const {
    std::vector<std::pair<int, std::string>> out;
    out.reserve(entries_.size());
    for (const auto& [id, entry] : entries_)
        out.emplace_back(id, entry.name);
    return out;
}

FitnessFunction::FitnessFunction(ProblemSpec spec,
                                 std::shared_ptr<const ProblemEvaluator> evaluator)
    : spec_(std::move(spec)), evaluator_(std::move(evaluator)) {
    optimum_ = evaluator_->optimum_value(spec_.string_size);
}

double FitnessFunction::evaluate(Genome& g, RandomStream& rng) {
    if (g.length() != spec_.string_size)
        throw std::invalid_argument("FitnessFunction::evaluate: genome length " +
                                    std::to_string(g.length()) + " does not match stringSize " +
                                    std::to_string(spec_.string_size));
    double f = evaluator_->base_fitness(AlleleView(g));
    if (spec_.sigma_k > 0.0)
        f += rng.gaussian(0.0, spec_.sigma_k);
    g.set_fitness(f);
    ++calls_;
    return f;
}

double FitnessFunction::base(const Genome& g) const {
    return evaluator_->base_fitness(AlleleView(g));
}

FitnessFunction make_fitness(const ProblemSpec& spec, const ProblemRegistry& registry) {
    std::shared_ptr<const ProblemEvaluator> evaluator = registry.make_evaluator(spec);
    evaluator->validate_length(spec.string_size);
    return FitnessFunction(spec, std::move(evaluator));
}

BruteForceResult brute_force_optimum(const ProblemSpec& spec, const ProblemRegistry& registry) {
    const std::size_t n = spec.string_size;
    if (n > 24)
        throw ConfigError("brute_force_optimum: stringSize " + std::to_string(n) +
                          " > 24 would enumerate more than 2^24 strings; refusing");
    if (spec.sigma_k != 0.0)
        throw ConfigError("brute_force_optimum requires sigmaK = 0");
    auto evaluator = registry.make_evaluator(spec);
    evaluator->validate_length(n);

    Genome g(n);
    BruteForceResult best{-std::numeric_limits<double>::infinity(), Genome(n)};
    const std::uint64_t limit = std::uint64_t{1} << n;
    for (std::uint64_t x = 0; x < limit; ++x) {
        // MSB-first mapping: ascending x enumerates strings in lexicographic
        // order, so keeping the first maximum yields the smallest argmax.
        for (std::size_t p = 0; p < n; ++p)
            g.set_allele(p, static_cast<int>((x >> (n - 1 - p)) & 1u));
        double f = evaluator->base_fitness(AlleleView(g));
        if (f > best.best_value) {
            best.best_value = f;
            best.best_genome = g;
        }
    }
    return best;
}

std::optional<double> optimum_value(const ProblemSpec& spec, const ProblemRegistry& registry) {
    auto evaluator = registry.make_evaluator(spec);
    evaluator->validate_length(spec.string_size);
    return evaluator->optimum_value(spec.string_size);
}

} // namespace ea
