#include "ea/reporting.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "ea/errors.hpp"

namespace ea {

std::string format_number(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 9);
    if (ec != std::errc{})
        return "NA";
    return std::string(buf, end);
}

namespace {

std::string timestamp_utc() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void atomic_write(const std::filesystem::path& path, const std::string& body) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot open " + tmp.string() + " for writing");
        out << body;
        if (!out.good())
            throw IoError("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " +
                      ec.message());
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos)
        return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"')
            quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

} // namespace

StatsRecord compute_stats(std::span<const RunRecord> runs) {
    StatsRecord s;
    if (runs.empty())
        return s;
    s.algorithm = runs.front().algorithm;
    s.problem_id = runs.front().problem_id;
    s.n_runs = runs.size();

    std::vector<double> success_calls;
    double best_sum = 0.0;
    for (const auto& r : runs) {
        bool success = r.stop_reason == StopReason::OptimumFound;
        s.per_run.push_back({r.run_index, r.run_seed, r.generations(), r.total_fitness_calls,
                             r.best_fitness, r.stop_reason, success});
        best_sum += r.best_fitness;
        if (success) {
            ++s.success_count;
            success_calls.push_back(static_cast<double>(r.total_fitness_calls));
            std::uint64_t calls = r.total_fitness_calls;
            s.success_calls_min = s.success_calls_min ? std::min(*s.success_calls_min, calls)
                                                      : calls;
            s.success_calls_max = s.success_calls_max ? std::max(*s.success_calls_max, calls)
                                                      : calls;
        }
    }
    s.success_rate = static_cast<double>(s.success_count) / static_cast<double>(s.n_runs);

    auto mean_std = [](const std::vector<double>& xs) {
        double mean = 0.0;
        for (double x : xs)
            mean += x;
        mean /= static_cast<double>(xs.size());
        double var = 0.0;
        for (double x : xs)
            var += (x - mean) * (x - mean);
        return std::pair{mean, std::sqrt(var / static_cast<double>(xs.size()))};
    };
    if (!success_calls.empty()) {
        auto [mean, sd] = mean_std(success_calls);
        s.success_calls_mean = mean;
        s.success_calls_std = sd;
    }
    std::vector<double> bests;
    bests.reserve(runs.size());
    for (const auto& r : runs)
        bests.push_back(r.best_fitness);
    auto [bmean, bstd] = mean_std(bests);
    s.best_fitness_mean = bmean;
    s.best_fitness_std = bstd;
    return s;
}

std::filesystem::path write_run_file(const RunRecord& record, const std::filesystem::path& dir) {
    std::ostringstream out;
    out << "# algorithm = " << record.algorithm << "\n";
    out << "# problemType = " << record.problem_id << "\n";
    out << "# stringSize = " << record.string_size << "\n";
    out << "# populationSize = " << record.population_size << "\n";
    out << "# runIndex = " << record.run_index << "\n";
    out << "# runSeed = " << record.run_seed << "\n";
    out << "# randomStream = " << RandomStream::algorithm_name() << "\n";
    for (const auto& [key, value] : record.parameter_echo)
        out << "# " << key << " = " << value << "\n";
    // The only wall-clock-dependent bytes live on this single header line.
    out << "# timestamp = " << timestamp_utc()
        << " wallTimeSeconds = " << format_number(record.wall_time_seconds) << "\n";
    out << "# columns: generation fitnessCalls bestFitness averageFitness bestSoFar\n";
    for (const auto& row : record.rows) {
        out << row.generation << ' ' << row.fitness_calls << ' '
            << format_number(row.best_of_generation) << ' '
            << format_number(row.average_fitness) << ' ' << format_number(row.best_so_far)
            << "\n";
    }
    out << "# stopReason = " << to_string(record.stop_reason) << "\n";
    out << "# totalFitnessCalls = " << record.total_fitness_calls << "\n";
    out << "# bestFitness = " << format_number(record.best_fitness) << "\n";
    out << "# bestGenome = " << record.best_genome << "\n";
    if (record.final_model)
        out << "# finalModel = " << *record.final_model << "\n";

    std::filesystem::path path =
        dir / (record.algorithm + "_" + std::to_string(record.problem_id) + "_" +
               std::to_string(record.run_index) + ".txt");
    atomic_write(path, out.str());
    return path;
}

std::string aggregate_block(const StatsRecord& stats) {
    char rate[32];
    std::snprintf(rate, sizeof(rate), "%.6f", stats.success_rate);
    std::ostringstream out;
    out << "nRuns " << stats.n_runs << "\n";
    out << "successCount " << stats.success_count << "\n";
    out << "successRate " << rate << "\n";
    auto opt_num = [](const std::optional<double>& v) {
        return v ? format_number(*v) : std::string("NA");
    };
    auto opt_int = [](const std::optional<std::uint64_t>& v) {
        return v ? std::to_string(*v) : std::string("NA");
    };
    out << "successFitnessCallsMean " << opt_num(stats.success_calls_mean) << "\n";
    out << "successFitnessCallsStd " << opt_num(stats.success_calls_std) << "\n";
    out << "successFitnessCallsMin " << opt_int(stats.success_calls_min) << "\n";
    out << "successFitnessCallsMax " << opt_int(stats.success_calls_max) << "\n";
    out << "bestFitnessMean " << format_number(stats.best_fitness_mean) << "\n";
    out << "bestFitnessStd " << format_number(stats.best_fitness_std) << "\n";
    return out.str();
}

std::filesystem::path write_stats_file(const StatsRecord& stats,
                                       const std::filesystem::path& dir) {
    std::ostringstream out;
    out << "# algorithm = " << stats.algorithm << "\n";
    out << "# problemType = " << stats.problem_id << "\n";
    out << "# columns: run seed generations totalFitnessCalls bestFitness stopReason success\n";
    for (const auto& r : stats.per_run) {
        out << r.run_index << ' ' << r.seed << ' ' << r.generations << ' '
            << r.total_fitness_calls << ' ' << format_number(r.best_fitness) << ' '
            << to_string(r.stop_reason) << ' ' << (r.success ? 1 : 0) << "\n";
    }
    out << "# aggregates\n";
    out << aggregate_block(stats);

    std::filesystem::path path =
        dir / (stats.algorithm + "-STATS_" + std::to_string(stats.problem_id) + "_" +
               std::to_string(stats.n_runs) + ".txt");
    atomic_write(path, out.str());
    return path;
}

std::filesystem::path export_csv(std::span<const RunRecord> records,
                                 const std::filesystem::path& path) {
    std::ostringstream out;
    out << "algorithm,problem,run,generation,fitness_calls,best,avg,best_so_far\r\n";
    for (const auto& rec : records) {
        for (const auto& row : rec.rows) {
            out << csv_quote(rec.algorithm) << ',' << rec.problem_id << ',' << rec.run_index
                << ',' << row.generation << ',' << row.fitness_calls << ','
                << format_number(row.best_of_generation) << ','
                << format_number(row.average_fitness) << ','
                << format_number(row.best_so_far) << "\r\n";
        }
    }
    atomic_write(path, out.str());
    return path;
}

} // namespace ea
