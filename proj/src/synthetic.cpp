#include "mine/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace mine::synthetic {

std::vector<double> random_walk(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> step(0.0, 1.0);
    std::vector<double> out(n);
    double level = 0.0;
    for (auto& v : out) {
        level += step(rng);
        v = level;
    }
    return out;
}

std::vector<double> white_noise(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> draw(0.0, 1.0);
    std::vector<double> out(n);
    for (auto& v : out) v = draw(rng);
    return out;
}

std::vector<double> planted_motifs(std::size_t n, std::size_t pattern_length,
                                   const std::vector<std::size_t>& offsets, double noise,
                                   std::uint64_t seed) {
    std::vector<double> out = random_walk(n, seed);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> draw(0.0, 1.0);
    // A smooth shape: a few sinusoids with random phases, scaled well above
    // the walk's local variation.
    std::vector<double> shape(pattern_length);
    const double phase1 = draw(rng);
    const double phase2 = draw(rng);
    for (std::size_t p = 0; p < pattern_length; ++p) {
        const double x = static_cast<double>(p) / static_cast<double>(pattern_length);
        shape[p] = 6.0 * std::sin(2.0 * std::numbers::pi * x + phase1) +
                   3.0 * std::sin(6.0 * std::numbers::pi * x + phase2) + 4.0 * x;
    }
    for (const std::size_t o : offsets) {
        if (o + pattern_length > n) continue;
        const double base = out[o];
        for (std::size_t p = 0; p < pattern_length; ++p)
            out[o + p] = base + shape[p] + noise * draw(rng);
    }
    return out;
}

std::vector<double> double_count_series(std::size_t days, std::size_t event_day,
                                        std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> draw(0.0, 1.0);
    std::vector<double> out(days * slots_per_day);
    for (std::size_t d = 0; d < days; ++d) {
        const double weekly = (d % 7 == 5 || d % 7 == 6) ? 0.85 : 1.0;
        for (std::size_t s = 0; s < slots_per_day; ++s) {
            const double hour = static_cast<double>(s) / 2.0;
            // Night trough near 05:00, evening peak near 19:00.
            const double daily = 15000.0 + 9000.0 * std::sin(2.0 * std::numbers::pi * (hour - 11.0) / 24.0) +
                                 3000.0 * std::sin(4.0 * std::numbers::pi * (hour - 8.0) / 24.0);
            out[d * slots_per_day + s] = weekly * daily + 150.0 * draw(rng);
        }
    }
    if (event_day < days) {
        out[event_day * slots_per_day + 2] *= 2.0;
        out[event_day * slots_per_day + 3] *= 2.0;
    }
    return out;
}

}  // namespace mine::synthetic
