#include "ea/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>

#include "ea/errors.hpp"
#include "ea/reporting.hpp"

namespace ea {

std::string_view to_string(AlgorithmKind kind) {
    switch (kind) {
    case AlgorithmKind::Sga:
        return "SGA";
    case AlgorithmKind::Umda:
        return "UMDA";
    case AlgorithmKind::Ecga:
        return "ECGA";
    case AlgorithmKind::Hboa:
        return "HBOA";
    }
    return "?";
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

template <typename T>
bool parse_integer(std::string_view text, T& out) {
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

bool parse_real(std::string_view text, double& out) {
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size() && std::isfinite(out);
}

bool parse_bool(std::string_view text, bool& out) {
    if (text == "true" || text == "1") {
        out = true;
        return true;
    }
    if (text == "false" || text == "0") {
        out = false;
        return true;
    }
    return false;
}

std::optional<AlgorithmKind> parse_algorithm(std::string_view text) {
    if (text == "SGA")
        return AlgorithmKind::Sga;
    if (text == "UMDA")
        return AlgorithmKind::Umda;
    if (text == "ECGA")
        return AlgorithmKind::Ecga;
    if (text == "HBOA")
        return AlgorithmKind::Hboa;
    return std::nullopt;
}

/// Parse-time state: which options appeared, on which line, and the partly
/// assembled configuration.
struct ParseState {
    Config cfg;
    bool has_algorithm = false;
    bool has_problem_type = false;
    bool has_string_size = false;
    bool has_population_size = false;
    std::map<std::string, int, std::less<>> seen_lines;
    std::vector<Diagnostic>* errors = nullptr;
    std::vector<Diagnostic>* warnings = nullptr;
};

using KeyHandler = std::function<bool(ParseState&, std::string_view value, std::string& why)>;

/// One entry per accepted option name; the handler returns false with a
/// reason when the value does not parse or is locally out of range.
const std::map<std::string, KeyHandler, std::less<>>& key_table() {
    static const std::map<std::string, KeyHandler, std::less<>> table = [] {
        std::map<std::string, KeyHandler, std::less<>> t;

        auto uint_key = [](auto setter, std::uint64_t min_value, const char* requirement) {
            return [=](ParseState& st, std::string_view v, std::string& why) {
                std::uint64_t value = 0;
                if (!parse_integer(v, value) || value < min_value) {
                    why = requirement;
                    return false;
                }
                setter(st, value);
                return true;
            };
        };
        auto real_key = [](auto setter, double lo, double hi, const char* requirement) {
            return [=](ParseState& st, std::string_view v, std::string& why) {
                double value = 0.0;
                if (!parse_real(v, value) || value < lo || value > hi) {
                    why = requirement;
                    return false;
                }
                setter(st, value);
                return true;
            };
        };
        auto bool_key = [](auto setter) {
            return [=](ParseState& st, std::string_view v, std::string& why) {
                bool value = false;
                if (!parse_bool(v, value)) {
                    why = "expected true or false";
                    return false;
                }
                setter(st, value);
                return true;
            };
        };
        auto hier_key = [](std::optional<double> ProblemSpec::* field) {
            return [field](ParseState& st, std::string_view v, std::string& why) {
                double value = 0.0;
                if (!parse_real(v, value)) {
                    why = "expected a real number";
                    return false;
                }
                st.cfg.problem.*field = value;
                return true;
            };
        };

        t["algorithm"] = [](ParseState& st, std::string_view v, std::string& why) {
            auto kind = parse_algorithm(v);
            if (!kind) {
                why = "expected one of SGA, UMDA, ECGA, HBOA";
                return false;
            }
            st.cfg.algorithm = *kind;
            st.has_algorithm = true;
            return true;
        };
        t["problemType"] = [](ParseState& st, std::string_view v, std::string& why) {
            int value = 0;
            if (!parse_integer(v, value)) {
                why = "expected an integer problem code";
                return false;
            }
            st.cfg.problem.problem_id = value;
            st.has_problem_type = true;
            return true;
        };
        t["stringSize"] = [](ParseState& st, std::string_view v, std::string& why) {
            std::uint64_t value = 0;
            if (!parse_integer(v, value) || value < 1) {
                why = "expected an integer >= 1";
                return false;
            }
            st.cfg.problem.string_size = value;
            st.has_string_size = true;
            return true;
        };
        t["sigmaK"] = real_key([](ParseState& st, double v) { st.cfg.problem.sigma_k = v; }, 0.0,
                               1e300, "expected a real number >= 0");
        t["trapK"] =
            uint_key([](ParseState& st, std::uint64_t v) { st.cfg.problem.trap_k = v; }, 1,
                     "expected an integer >= 1");
        t["hierFHighLow"] = hier_key(&ProblemSpec::hier_f_high_low);
        t["hierFLowLow"] = hier_key(&ProblemSpec::hier_f_low_low);
        t["hierFHighTop"] = hier_key(&ProblemSpec::hier_f_high_top);
        t["hierFLowTop"] = hier_key(&ProblemSpec::hier_f_low_top);
        t["populationSize"] = [](ParseState& st, std::string_view v, std::string& why) {
            std::uint64_t value = 0;
            if (!parse_integer(v, value) || value < 1) {
                why = "expected an integer >= 1";
                return false;
            }
            st.cfg.population_size = value;
            st.has_population_size = true;
            return true;
        };
        t["nRuns"] = uint_key([](ParseState& st, std::uint64_t v) { st.cfg.n_runs = v; }, 1,
                              "expected an integer >= 1");
        t["masterSeed"] =
            uint_key([](ParseState& st, std::uint64_t v) { st.cfg.master_seed = v; }, 0,
                     "expected an unsigned 64-bit integer");
        t["maxGenerations"] = [](ParseState& st, std::string_view v, std::string& why) {
            if (v == "unlimited") {
                st.cfg.stop.max_generations.reset();
                return true;
            }
            std::uint64_t value = 0;
            if (!parse_integer(v, value) || value < 1) {
                why = "expected an integer >= 1 or 'unlimited'";
                return false;
            }
            st.cfg.stop.max_generations = value;
            return true;
        };
        t["maxFitnessCalls"] = [](ParseState& st, std::string_view v, std::string& why) {
            if (v == "unlimited") {
                st.cfg.stop.max_fitness_calls.reset();
                return true;
            }
            std::uint64_t value = 0;
            if (!parse_integer(v, value) || value < 1) {
                why = "expected an integer >= 1 or 'unlimited'";
                return false;
            }
            st.cfg.stop.max_fitness_calls = value;
            return true;
        };
        t["stopOnOptimum"] = bool_key([](ParseState& st, bool v) { st.cfg.stop.stop_on_optimum = v; });
        t["convergenceThreshold"] = [](ParseState& st, std::string_view v, std::string& why) {
            if (v == "off") {
                st.cfg.stop.convergence_threshold.reset();
                return true;
            }
            double value = 0.0;
            if (!parse_real(v, value) || value < 0.5 || value > 1.0) {
                why = "expected a real in [0.5, 1.0] or 'off'";
                return false;
            }
            st.cfg.stop.convergence_threshold = value;
            return true;
        };
        t["noImprovementWindow"] = [](ParseState& st, std::string_view v, std::string& why) {
            if (v == "off") {
                st.cfg.stop.no_improvement_window.reset();
                return true;
            }
            std::uint64_t value = 0;
            if (!parse_integer(v, value) || value < 1) {
                why = "expected an integer >= 1 or 'off'";
                return false;
            }
            st.cfg.stop.no_improvement_window = value;
            return true;
        };
        t["outputDir"] = [](ParseState& st, std::string_view v, std::string&) {
            st.cfg.output_dir = std::string(v);
            return true;
        };

        t["sgaTournamentSize"] =
            uint_key([](ParseState& st, std::uint64_t v) { st.cfg.sga.tournament_size = v; }, 1,
                     "expected an integer >= 1");
        t["sgaCrossoverType"] = [](ParseState& st, std::string_view v, std::string& why) {
            if (v == "onePoint")
                st.cfg.sga.crossover_type = CrossoverType::OnePoint;
            else if (v == "twoPoint")
                st.cfg.sga.crossover_type = CrossoverType::TwoPoint;
            else if (v == "uniform")
                st.cfg.sga.crossover_type = CrossoverType::Uniform;
            else {
                why = "expected one of onePoint, twoPoint, uniform";
                return false;
            }
            return true;
        };
        t["sgaPc"] = real_key(
            [](ParseState& st, double v) { st.cfg.sga.crossover_probability = v; }, 0.0, 1.0,
            "expected a real in [0, 1]");
        t["sgaPm"] = real_key(
            [](ParseState& st, double v) { st.cfg.sga.mutation_probability = v; }, 0.0, 1.0,
            "expected a real in [0, 1]");
        t["sgaElitism"] =
            uint_key([](ParseState& st, std::uint64_t v) { st.cfg.sga.elitism = v; }, 0,
                     "expected an integer >= 0");

        t["umdaTau"] = [](ParseState& st, std::string_view v, std::string& why) {
            double value = 0.0;
            if (!parse_real(v, value) || !(value > 0.0) || value > 1.0) {
                why = "expected a real in (0, 1]";
                return false;
            }
            st.cfg.umda.tau = value;
            return true;
        };
        t["umdaSelection"] = [](ParseState& st, std::string_view v, std::string& why) {
            if (v == "truncation")
                st.cfg.umda.selection = UmdaSelection::Truncation;
            else if (v == "tournament")
                st.cfg.umda.selection = UmdaSelection::Tournament;
            else {
                why = "expected truncation or tournament";
                return false;
            }
            return true;
        };
        t["umdaClampMargins"] =
            bool_key([](ParseState& st, bool v) { st.cfg.umda.clamp_margins = v; });
        t["umdaElitism"] = [](ParseState& st, std::string_view v, std::string& why) {
            std::uint64_t value = 0;
            if (!parse_integer(v, value) || value > 1) {
                why = "expected 0 or 1";
                return false;
            }
            st.cfg.umda.elitism = value;
            return true;
        };

        t["ecgaTournamentSize"] =
            uint_key([](ParseState& st, std::uint64_t v) { st.cfg.ecga.tournament_size = v; }, 1,
                     "expected an integer >= 1");
        t["ecgaMaxGroupSize"] = [](ParseState& st, std::string_view v, std::string& why) {
            std::uint64_t value = 0;
            if (!parse_integer(v, value) || value < 1 || value > 20) {
                why = "expected an integer in [1, 20] (frequency tables grow as 2^size)";
                return false;
            }
            st.cfg.ecga.max_group_size = value;
            return true;
        };
        t["ecgaElitism"] = [](ParseState& st, std::string_view v, std::string& why) {
            std::uint64_t value = 0;
            if (!parse_integer(v, value) || value > 1) {
                why = "expected 0 or 1";
                return false;
            }
            st.cfg.ecga.elitism = value;
            return true;
        };

        t["hboaOffspringFraction"] = real_key(
            [](ParseState& st, double v) { st.cfg.hboa.offspring_fraction = v; }, 0.0, 1.0,
            "expected a real in [0, 1]");
        t["hboaRtrWindow"] = [](ParseState& st, std::string_view v, std::string& why) {
            if (v == "auto") {
                st.cfg.hboa.rtr_window.reset();
                return true;
            }
            std::uint64_t value = 0;
            if (!parse_integer(v, value) || value < 1) {
                why = "expected an integer >= 1 or 'auto'";
                return false;
            }
            st.cfg.hboa.rtr_window = value;
            return true;
        };
        t["hboaMaxIncoming"] = [](ParseState& st, std::string_view v, std::string& why) {
            if (v == "unlimited") {
                st.cfg.hboa.max_incoming.reset();
                return true;
            }
            std::uint64_t value = 0;
            if (!parse_integer(v, value) || value < 1) {
                why = "expected an integer >= 1 or 'unlimited'";
                return false;
            }
            st.cfg.hboa.max_incoming = value;
            return true;
        };
        return t;
    }();
    return table;
}

int line_of(const ParseState& st, std::string_view key) {
    auto it = st.seen_lines.find(key);
    return it == st.seen_lines.end() ? 0 : it->second;
}

void validate(ParseState& st, const ProblemRegistry& registry) {
    auto& errors = *st.errors;
    auto& warnings = *st.warnings;
    Config& cfg = st.cfg;

    if (!st.has_algorithm)
        errors.push_back({0, "missing required option 'algorithm'"});
    if (!st.has_problem_type)
        errors.push_back({0, "missing required option 'problemType'"});
    if (!st.has_string_size)
        errors.push_back({0, "missing required option 'stringSize'"});
    if (!st.has_population_size)
        errors.push_back({0, "missing required option 'populationSize'"});

    if (st.has_problem_type) {
        if (!registry.contains(cfg.problem.problem_id)) {
            errors.push_back({line_of(st, "problemType"),
                              "unknown problem code " + std::to_string(cfg.problem.problem_id)});
        } else if (st.has_string_size) {
            try {
                registry.make_evaluator(cfg.problem)->validate_length(cfg.problem.string_size);
            } catch (const ConfigError& e) {
                errors.push_back({line_of(st, "stringSize"), e.what()});
            }
        }
    }

    if (!cfg.stop.max_generations && !cfg.stop.max_fitness_calls)
        errors.push_back(
            {0, "at least one of maxGenerations / maxFitnessCalls must be enabled"});

    if (st.has_population_size) {
        const std::size_t n_members = cfg.population_size;
        switch (cfg.algorithm) {
        case AlgorithmKind::Sga:
            if (cfg.sga.elitism >= n_members)
                errors.push_back({line_of(st, "sgaElitism"),
                                  "sgaElitism must be smaller than populationSize"});
            if (cfg.sga.tournament_size > n_members)
                errors.push_back({line_of(st, "sgaTournamentSize"),
                                  "sgaTournamentSize must not exceed populationSize (selection "
                                  "uses shuffled passes)"});
            break;
        case AlgorithmKind::Umda:
            break;
        case AlgorithmKind::Ecga:
            if (cfg.ecga.tournament_size > n_members)
                errors.push_back(
                    {line_of(st, "ecgaTournamentSize"),
                     "ecgaTournamentSize must not exceed populationSize (selection is "
                     "without replacement)"});
            break;
        case AlgorithmKind::Hboa:
            if (cfg.hboa.rtr_window && *cfg.hboa.rtr_window > n_members)
                errors.push_back({line_of(st, "hboaRtrWindow"),
                                  "hboaRtrWindow must not exceed populationSize"});
            if (cfg.hboa.offspring_fraction == 0.0)
                warnings.push_back({line_of(st, "hboaOffspringFraction"),
                                    "hboaOffspringFraction = 0 leaves the population "
                                    "unchanged every generation"});
            break;
        }
    }
}

} // namespace

ParseResult parse_config(std::string_view text, const ProblemRegistry& registry,
                         const ConfigOverrides& overrides) {
    ParseResult result;
    ParseState st;
    st.errors = &result.errors;
    st.warnings = &result.warnings;

    int line_number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_number;

        if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            result.errors.push_back({line_number, "malformed line (expected 'name = value')"});
            continue;
        }
        std::string_view key = trim(line.substr(0, eq));
        std::string_view value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            result.errors.push_back({line_number, "malformed line (expected 'name = value')"});
            continue;
        }

        auto handler = key_table().find(key);
        if (handler == key_table().end()) {
            result.errors.push_back({line_number, "unknown option '" + std::string(key) + "'"});
            continue;
        }
        if (auto it = st.seen_lines.find(key); it != st.seen_lines.end())
            result.warnings.push_back(
                {line_number, "duplicate option '" + std::string(key) + "' overrides line " +
                                  std::to_string(it->second)});
        std::string why;
        if (!handler->second(st, value, why)) {
            result.errors.push_back({line_number, std::string(key) + " = '" +
                                                      std::string(value) + "': " + why});
            continue;
        }
        st.seen_lines[std::string(key)] = line_number;
    }

    if (overrides.master_seed)
        st.cfg.master_seed = *overrides.master_seed;
    if (overrides.output_dir)
        st.cfg.output_dir = *overrides.output_dir;
    if (overrides.algorithm) {
        auto kind = parse_algorithm(*overrides.algorithm);
        if (!kind)
            result.errors.push_back({0, "--algorithm '" + *overrides.algorithm +
                                            "': expected one of SGA, UMDA, ECGA, HBOA"});
        else {
            st.cfg.algorithm = *kind;
            st.has_algorithm = true;
        }
    }

    validate(st, registry);
    if (result.errors.empty())
        result.config = std::move(st.cfg);
    return result;
}

std::vector<std::pair<std::string, std::string>> Config::echo() const {
    std::vector<std::pair<std::string, std::string>> out;
    auto add = [&](std::string key, std::string value) {
        out.emplace_back(std::move(key), std::move(value));
    };
    auto opt_u64 = [](const std::optional<std::uint64_t>& v, const char* unset) {
        return v ? std::to_string(*v) : std::string(unset);
    };

    add("sigmaK", format_number(problem.sigma_k));
    add("trapK", std::to_string(problem.trap_k));
    if (problem.hier_f_high_low)
        add("hierFHighLow", format_number(*problem.hier_f_high_low));
    if (problem.hier_f_low_low)
        add("hierFLowLow", format_number(*problem.hier_f_low_low));
    if (problem.hier_f_high_top)
        add("hierFHighTop", format_number(*problem.hier_f_high_top));
    if (problem.hier_f_low_top)
        add("hierFLowTop", format_number(*problem.hier_f_low_top));
    add("nRuns", std::to_string(n_runs));
    add("masterSeed", std::to_string(master_seed));
    add("maxGenerations", opt_u64(stop.max_generations, "unlimited"));
    add("maxFitnessCalls", opt_u64(stop.max_fitness_calls, "unlimited"));
    add("stopOnOptimum", stop.stop_on_optimum ? "true" : "false");
    add("convergenceThreshold",
        stop.convergence_threshold ? format_number(*stop.convergence_threshold) : "off");
    add("noImprovementWindow", opt_u64(stop.no_improvement_window, "off"));
    if (!output_dir.empty())
        add("outputDir", output_dir);

    switch (algorithm) {
    case AlgorithmKind::Sga: {
        add("sgaTournamentSize", std::to_string(sga.tournament_size));
        const char* type = sga.crossover_type == CrossoverType::OnePoint   ? "onePoint"
                           : sga.crossover_type == CrossoverType::TwoPoint ? "twoPoint"
                                                                           : "uniform";
        add("sgaCrossoverType", type);
        add("sgaPc", format_number(sga.crossover_probability));
        double pm = sga.mutation_probability.value_or(
            1.0 / static_cast<double>(problem.string_size));
        add("sgaPm", format_number(pm));
        add("sgaElitism", std::to_string(sga.elitism));
        break;
    }
    case AlgorithmKind::Umda:
        add("umdaTau", format_number(umda.tau));
        add("umdaSelection",
            umda.selection == UmdaSelection::Truncation ? "truncation" : "tournament");
        add("umdaClampMargins", umda.clamp_margins ? "true" : "false");
        add("umdaElitism", std::to_string(umda.elitism));
        break;
    case AlgorithmKind::Ecga:
        add("ecgaTournamentSize", std::to_string(ecga.tournament_size));
        add("ecgaMaxGroupSize", std::to_string(ecga.max_group_size));
        add("ecgaElitism", std::to_string(ecga.elitism));
        break;
    case AlgorithmKind::Hboa:
        add("hboaOffspringFraction", format_number(hboa.offspring_fraction));
        add("hboaRtrWindow",
            std::to_string(hboa.rtr_window.value_or(
                default_rtr_window(problem.string_size, population_size))));
        add("hboaMaxIncoming", hboa.max_incoming ? std::to_string(*hboa.max_incoming)
                                                 : std::string("unlimited"));
        break;
    }
    return out;
}

std::unique_ptr<Algorithm> make_algorithm(const Config& cfg) {
    switch (cfg.algorithm) {
    case AlgorithmKind::Sga:
        return std::make_unique<SgaAlgorithm>(cfg.sga);
    case AlgorithmKind::Umda:
        return std::make_unique<UmdaAlgorithm>(cfg.umda);
    case AlgorithmKind::Ecga:
        return std::make_unique<EcgaAlgorithm>(cfg.ecga);
    case AlgorithmKind::Hboa:
        return std::make_unique<HboaAlgorithm>(cfg.hboa);
    }
    throw std::logic_error("make_algorithm: unhandled algorithm kind");
}

} // namespace ea
