#pragma once

#include <cstdint>
#include <vector>

#include "mine/series.hpp"
#include "mine/synthetic.hpp"

namespace testing {

inline mine::DataSeries walk(std::size_t n, std::uint64_t seed) {
    return mine::DataSeries::ingest(mine::synthetic::random_walk(n, seed));
}

inline mine::DataSeries noise(std::size_t n, std::uint64_t seed) {
    return mine::DataSeries::ingest(mine::synthetic::white_noise(n, seed));
}

inline std::vector<double> slice(const mine::DataSeries& s, std::size_t offset, std::size_t length) {
    const auto v = s.values();
    return {v.begin() + static_cast<std::ptrdiff_t>(offset),
            v.begin() + static_cast<std::ptrdiff_t>(offset + length)};
}

}  // namespace testing
