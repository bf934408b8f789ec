#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

/// Deterministic generators for tests and benchmarks.
namespace mine::synthetic {

/// Cumulative sum of standard normal steps.
std::vector<double> random_walk(std::size_t n, std::uint64_t seed);

/// Independent standard normal values.
std::vector<double> white_noise(std::size_t n, std::uint64_t seed);

/// A random-walk background with one shape copied to every offset in
/// `offsets`. Each copy rides on the background level at its start and gets
/// independent N(0, noise^2) perturbations.
std::vector<double> planted_motifs(std::size_t n, std::size_t pattern_length,
                                   const std::vector<std::size_t>& offsets, double noise,
                                   std::uint64_t seed);

/// Half-hourly counts with a daily and weekly cycle over `days` days. The two
/// slots after 01:00 on day `event_day` carry twice their usual value, as a
/// clock change that repeats an hour but keeps one bin per slot would.
/// Returns the series; the first doubled slot is at event_day * 48 + 2.
std::vector<double> double_count_series(std::size_t days, std::size_t event_day,
                                        std::uint64_t seed);

inline constexpr std::size_t slots_per_day = 48;

}  // namespace mine::synthetic
