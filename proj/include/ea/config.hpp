#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ea/ecga.hpp"
#include "ea/engine.hpp"
#include "ea/hboa.hpp"
#include "ea/problems.hpp"
#include "ea/sga.hpp"
#include "ea/stopper.hpp"
#include "ea/umda.hpp"

namespace ea {

enum class AlgorithmKind { Sga, Umda, Ecga, Hboa };

std::string_view to_string(AlgorithmKind kind);

/// Fully validated experiment description: one unified schema with an
/// `algorithm` key selecting which per-algorithm block applies.
struct Config {
    AlgorithmKind algorithm = AlgorithmKind::Sga;
    ProblemSpec problem;
    std::size_t population_size = 0;
    std::size_t n_runs = 1;
    std::uint64_t master_seed = 1;
    StopConfig stop;
    SgaParams sga;
    UmdaParams umda;
    EcgaParams ecga;
    HboaParams hboa;
    std::string output_dir; // empty means the working directory

    /// Canonical (key, value) echo of the effective settings, resolved
    /// defaults included, for the run-file header.
    std::vector<std::pair<std::string, std::string>> echo() const;
};

struct Diagnostic {
    int line = 0; // 0 when the message is not tied to a line
    std::string message;
};

struct ParseResult {
    std::optional<Config> config;
    std::vector<Diagnostic> errors;
    std::vector<Diagnostic> warnings;

    bool ok() const { return errors.empty() && config.has_value(); }
};

/// Values applied on top of the file before validation (CLI flags).
struct ConfigOverrides {
    std::optional<std::uint64_t> master_seed;
    std::optional<std::string> output_dir;
    std::optional<std::string> algorithm;
};

/// Line-oriented `name = value` format; '#' starts a comment, blank lines are
/// ignored, names are case-sensitive, later duplicates override earlier ones
/// with a warning. Unknown keys, malformed lines, out-of-range values, and
/// incompatible problem/stringSize combinations are all reported together,
/// each with its line number. Never throws on bad input.
ParseResult parse_config(std::string_view text, const ProblemRegistry& registry,
                         const ConfigOverrides& overrides = {});

/// Per-run algorithm instance for the configured parameters.
std::unique_ptr<Algorithm> make_algorithm(const Config& cfg);

} // namespace ea
