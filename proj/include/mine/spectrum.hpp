#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace mine {

/// Cached forward transform of a series, reused for many sliding dot
/// products against the same data. Safe for concurrent `correlate` calls.
class SeriesSpectrum {
public:
    explicit SeriesSpectrum(std::span<const double> series);

    /// out[j] = sum_p query[p] * series[j + p] for j in [0, n - |query|].
    /// `out` must hold n - |query| + 1 values.
    void correlate(std::span<const double> query, std::span<double> out) const;

    std::size_t series_size() const noexcept { return n_; }
    std::size_t transform_size() const noexcept { return size_; }

private:
    std::size_t n_ = 0;
    std::size_t size_ = 0;
    std::vector<std::complex<double>> spectrum_;
};

/// Smallest 2^a 3^b 5^c 7^d that is >= n.
std::size_t fast_transform_size(std::size_t n);

}  // namespace mine
