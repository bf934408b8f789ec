#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mine/error.hpp"

namespace mine {

/// Mean and standard deviation of the window T[offset, offset + length).
/// Offsets are 0-based throughout the library.
struct SubseqStats {
    std::size_t offset = 0;
    std::size_t length = 0;
    double sum = 0.0;
    double sq_sum = 0.0;
    double mu = 0.0;
    double sigma = 0.0;
    bool constant = false;  // sigma below the series' zero-variance threshold
};

/// Immutable univariate series with prefix sums for O(1) window statistics.
///
/// The prefix arrays are kept in extended precision; the plain-double running
/// sums of a long series lose too many digits when two large prefixes are
/// subtracted.
class DataSeries {
public:
    DataSeries() = default;

    /// Throws Error{Empty} for no points and Error{NonFinite} for NaN/Inf; the
    /// reported position is 1-based (the line number of a one-value-per-line file).
    static DataSeries ingest(std::span<const double> raw);

    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }

    /// Sum of the first `count` values (count <= size()).
    long double running_sum(std::size_t count) const noexcept { return sum_[count]; }
    long double running_sq_sum(std::size_t count) const noexcept { return sq_sum_[count]; }

    /// Throws Error{OutOfRange} when the window does not fit.
    SubseqStats stats(std::size_t offset, std::size_t length) const;

    double mean(std::size_t offset, std::size_t length) const noexcept;
    double sigma(std::size_t offset, std::size_t length) const noexcept;
    bool is_constant(std::size_t offset, std::size_t length) const noexcept {
        return sigma(offset, length) < constant_threshold_;
    }

    /// Windows whose sigma falls below this are treated as constant.
    double constant_threshold() const noexcept { return constant_threshold_; }

    /// Number of windows of the given length.
    std::size_t window_count(std::size_t length) const noexcept {
        return length == 0 || length > size() ? 0 : size() - length + 1;
    }

private:
    std::vector<double> values_;
    std::vector<long double> sum_;
    std::vector<long double> sq_sum_;
    // Prefix sums of values minus the series mean, so window variances do
    // not cancel on data far from zero.
    std::vector<long double> centered_sum_;
    std::vector<long double> centered_sq_sum_;
    // flat_run_[i]: count of consecutive values equal to values_[i] from i on.
    // Exactly flat windows get sigma 0 instead of prefix-sum rounding noise.
    std::vector<std::uint32_t> flat_run_;
    double constant_threshold_ = 0.0;
};

/// Per-length window statistics laid out for the distance kernels.
/// inv_sigma is 0 for constant windows.
struct WindowTable {
    WindowTable() = default;
    WindowTable(const DataSeries& series, std::size_t length);

    std::size_t length = 0;
    std::vector<double> mu;
    std::vector<double> sigma;
    std::vector<double> inv_sigma;
    std::vector<unsigned char> constant;

    std::size_t size() const noexcept { return mu.size(); }
    bool all_constant() const noexcept;
};

/// QT[j] = <query, T[j, j + |query|)> for every window j, computed in the
/// frequency domain. Throws Error{LengthExceedsSeries} if |query| > |T|.
std::vector<double> sliding_dot_product(std::span<const double> query, const DataSeries& series);

/// Moves `qt` from query offset (offset - 1) to `offset` in O(n): entries
/// are updated from the back using the previous overlapping window, and
/// qt[0] is recomputed directly. offset == 0 leaves qt unchanged.
void advance_dot_products(std::span<double> qt, const DataSeries& series, std::size_t offset,
                          std::size_t length);

/// Dot product of T[i, i+length] and T[j, j+length] given the one for `length`.
/// Throws Error{OutOfRange} if either extended window runs past the series.
double extend_dot_product(double qt, const DataSeries& series, std::size_t i, std::size_t j,
                          std::size_t length);

/// Z-normalized Euclidean distance from a dot product and the two windows'
/// statistics. Throws Error{ZeroVariance} for constant windows.
double znorm_distance(double qt, const SubseqStats& a, const SubseqStats& b);

/// Distance from a Pearson correlation; the radicand is clamped at 0.
inline double distance_from_correlation(double correlation, std::size_t length) noexcept {
    const double r = 2.0 * static_cast<double>(length) * (1.0 - correlation);
    return r > 0.0 ? std::sqrt(r) : 0.0;
}

/// Exclusion radius: windows i and j are trivial matches when |i - j| < radius.
constexpr std::size_t exclusion_radius(std::size_t length) noexcept {
    return (length + 1) / 2;
}

constexpr bool is_trivial_match(std::size_t i, std::size_t j, std::size_t length) noexcept {
    const std::size_t d = i > j ? i - j : j - i;
    return d < exclusion_radius(length);
}

}  // namespace mine
