#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mine/series.hpp"

namespace mine::cli {

inline constexpr int schema_version = 1;

enum class Format { Json, Csv };

struct JobConfig {
    std::string input;
    std::optional<std::size_t> column;  // 0-based CSV column; plain list when unset
    std::size_t lmin = 0;
    std::size_t lmax = 0;
    std::size_t length = 0;  // `mp` only
    std::size_t p = 50;
    std::size_t top_k = 40;
    double radius = 4.0;
    std::size_t k = 1;
    std::size_t m = 1;
    std::size_t min_frequency = 0;
    std::string output;  // stdout when empty
    Format format = Format::Json;
    bool trace = false;
    bool per_length = false;
    unsigned threads = 1;
    // bench
    std::size_t baseline_lengths = 0;  // lengths timed for the baseline; 0 = all
    std::size_t synthetic = 0;         // generate a planted-motif series of this size
    std::uint64_t seed = 1;
};

/// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_io = 2;
inline constexpr int exit_validation = 3;

/// One value per line, or one column of a comma-separated file (a leading
/// header line is skipped). Blank lines are ignored. Throws Error{Io} when
/// the file cannot be read and Error{InvalidParameters} for unparseable
/// content, naming the 1-based line.
std::vector<double> read_values(const std::string& path, std::optional<std::size_t> column);

/// Series named by the config: the input file, or the planted-motif
/// generator when `synthetic` is set.
DataSeries load_series(const JobConfig& config);

/// A job result. `run` holds what may differ between identical jobs
/// (threads, wall time); everything else is deterministic.
struct ResultDocument {
    nlohmann::ordered_json body;
    nlohmann::ordered_json run;
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;
};

ResultDocument run_motifs(const JobConfig& config, const DataSeries& series);
ResultDocument run_motif_sets(const JobConfig& config, const DataSeries& series);
ResultDocument run_discords(const JobConfig& config, const DataSeries& series);
ResultDocument run_matrix_profile(const JobConfig& config, const DataSeries& series);
ResultDocument run_oracle_motifs(const JobConfig& config, const DataSeries& series);
ResultDocument run_oracle_discords(const JobConfig& config, const DataSeries& series);
ResultDocument run_bench(const JobConfig& config, const DataSeries& series);

/// Serialized document. JSON numbers round-trip exactly; CSV numbers use 17
/// significant digits. Non-finite values become null / empty fields.
std::string render(const ResultDocument& doc, Format format, bool include_run = true);

/// Checks shared by every job; throws Error{InvalidParameters}.
void validate(const JobConfig& config, const std::string& command);

/// Full command line entry point; returns the exit code.
int main_entry(int argc, char** argv);

}  // namespace mine::cli
