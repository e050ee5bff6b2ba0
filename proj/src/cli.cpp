#include "ea/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "ea/errors.hpp"
#include "ea/experiment.hpp"

namespace ea {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;

bool read_file(const std::string& path, std::string& text, std::ostream& err) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        err << "error: cannot read parameter file '" << path << "'\n";
        return false;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
    return true;
}

void print_diagnostics(const ParseResult& parsed, std::ostream& err) {
    for (const auto& w : parsed.warnings) {
        err << "warning: ";
        if (w.line > 0)
            err << "line " << w.line << ": ";
        err << w.message << "\n";
    }
    for (const auto& e : parsed.errors) {
        err << "error: ";
        if (e.line > 0)
            err << "line " << e.line << ": ";
        err << e.message << "\n";
    }
}

} // namespace

int cli_main(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Evolutionary algorithm experiment runner (SGA, UMDA, ECGA, HBOA)"};
    app.require_subcommand(1);

    std::string param_file;
    std::optional<std::uint64_t> seed_override;
    std::string out_dir_flag;
    std::string algorithm_override;
    std::string csv_path;
    unsigned threads = 1;

    auto* run_cmd = app.add_subcommand("run", "Execute the runs described by a parameter file");
    run_cmd->add_option("paramfile", param_file, "parameter file (name = value lines)")
        ->required();
    run_cmd->add_option("--seed", seed_override, "override masterSeed");
    run_cmd->add_option("--out-dir", out_dir_flag, "directory for run/stats files")
        ->envname("EA_OUT_DIR");
    run_cmd->add_option("--csv", csv_path, "also export all generation rows as CSV");
    run_cmd->add_option("--algorithm", algorithm_override,
                        "override the algorithm (SGA, UMDA, ECGA, HBOA)");
    run_cmd->add_option("--threads", threads, "worker threads across runs (0 = all cores)");

    auto* validate_cmd =
        app.add_subcommand("validate", "Parse and validate a parameter file without running");
    validate_cmd->add_option("paramfile", param_file, "parameter file")->required();

    auto* problems_cmd = app.add_subcommand("problems", "Print the problem menu");

    int oracle_problem = 10;
    std::size_t oracle_n = 0;
    std::size_t oracle_trap_k = 5;
    auto* oracle_cmd =
        app.add_subcommand("oracle", "Brute-force optimum of a problem at desk scale (n <= 24)");
    oracle_cmd->add_option("--problem", oracle_problem, "problem code")->required();
    oracle_cmd->add_option("--string-size", oracle_n, "string size")->required();
    oracle_cmd->add_option("--trap-k", oracle_trap_k, "trap block size (problems 5 and 15)");

    try {
        std::reverse(args.begin(), args.end()); // CLI11 consumes reversed argument vectors
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    const ProblemRegistry registry = ProblemRegistry::builtins();

    if (problems_cmd->parsed()) {
        for (const auto& [id, name] : registry.menu())
            out << std::setw(3) << id << "  " << name << "\n";
        return kExitOk;
    }

    if (oracle_cmd->parsed()) {
        try {
            ProblemSpec spec;
            spec.problem_id = oracle_problem;
            spec.string_size = oracle_n;
            spec.trap_k = oracle_trap_k;
            BruteForceResult result = brute_force_optimum(spec, registry);
            out << format_number(result.best_value) << " " << result.best_genome.to_string()
                << "\n";
            return kExitOk;
        } catch (const ConfigError& e) {
            err << "error: " << e.what() << "\n";
            return kExitConfig;
        }
    }

    // Both remaining subcommands start from a parsed parameter file.
    std::string text;
    if (!read_file(param_file, text, err))
        return kExitIo;

    ConfigOverrides overrides;
    if (run_cmd->parsed()) {
        overrides.master_seed = seed_override;
        if (!out_dir_flag.empty())
            overrides.output_dir = out_dir_flag;
        if (!algorithm_override.empty())
            overrides.algorithm = algorithm_override;
    }

    ParseResult parsed = parse_config(text, registry, overrides);
    print_diagnostics(parsed, err);
    if (!parsed.ok())
        return kExitConfig;
    Config cfg = *parsed.config;

    if (validate_cmd->parsed()) {
        out << "configuration valid: algorithm=" << to_string(cfg.algorithm)
            << " problem=" << cfg.problem.problem_id << " (" << registry.name_of(cfg.problem.problem_id)
            << ") stringSize=" << cfg.problem.string_size << " populationSize="
            << cfg.population_size << " nRuns=" << cfg.n_runs << "\n";
        return kExitOk;
    }

    ExperimentOptions options;
    options.out_dir = cfg.output_dir.empty() ? "." : cfg.output_dir;
    if (!csv_path.empty())
        options.csv_path = csv_path;
    options.threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;

    try {
        ExperimentResult result = run_experiment(cfg, registry, options);
        out << aggregate_block(result.stats);
        out << "statsFile " << result.stats_file.string() << "\n";
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    }
}

} // namespace ea
