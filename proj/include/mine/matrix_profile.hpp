#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "mine/bounds.hpp"
#include "mine/series.hpp"
#include "mine/spectrum.hpp"

namespace mine {

inline constexpr std::size_t no_index = static_cast<std::size_t>(-1);

/// Nearest-neighbour distance and index per offset for one length. Offsets
/// without any admissible neighbour (constant window, or everything inside
/// the exclusion zone) hold +inf and no_index.
struct MatrixProfile {
    std::size_t length = 0;
    std::vector<double> distances;
    std::vector<std::size_t> indices;

    std::size_t size() const noexcept { return distances.size(); }
};

/// The p neighbours of one owner with the smallest lower bounds, kept across
/// lengths.
///
/// `entries` hold dist and qt at `length`. `bound_numerator` is the largest
/// bound numerator among the harvested entries at `base_length`; every pair
/// of the owner's row that is not stored has a distance of at least
/// bound_numerator / sigma_owner(L) at any length L >= base_length. It is
/// +inf when the whole row was stored and 0 when the owner was constant at
/// the base length.
struct PartialDistanceProfile {
    std::uint32_t owner = 0;
    std::size_t length = 0;
    std::size_t base_length = 0;
    double bound_numerator = 0.0;
    std::vector<ProfileEntry> entries;

    /// Lower bound for every unstored neighbour at length L (>= base_length).
    double threshold(const DataSeries& series, std::size_t length) const noexcept;
    /// Largest per-entry lb, or 0 when empty.
    double max_lb() const noexcept;
};

struct ProfileOptions {
    std::size_t p = 50;
    std::size_t nearest = 0;  // also record the m smallest true distances per row
    unsigned threads = 1;
    bool keep_partial = true;
};

struct ProfileRun {
    MatrixProfile profile;
    std::vector<PartialDistanceProfile> partial;
    /// Row-major windows x options.nearest, ascending, +inf padded.
    std::vector<double> nearest;
};

/// Exact matrix profile for one length with the per-row partial-profile
/// harvest. Rows are processed in fixed chunks, each seeded by a fresh
/// sliding dot product, so results do not depend on the thread count.
/// Throws InvalidParameters (length < 4 or p < 1), SeriesTooShort (no
/// non-trivial pair exists) or AllConstant.
ProfileRun compute_matrix_profile(const DataSeries& series, std::size_t length,
                                  const ProfileOptions& options);

inline ProfileRun compute_matrix_profile(const DataSeries& series, std::size_t length,
                                         std::size_t p) {
    ProfileOptions options;
    options.p = p;
    return compute_matrix_profile(series, length, options);
}

/// Minimum of `row` outside the exclusion zone of owner i; ties go to the
/// smaller offset. Throws NoValidNeighbor when nothing admissible (finite)
/// remains.
std::pair<double, std::size_t> min_with_exclusion(std::span<const double> row, std::size_t i,
                                                  std::size_t length);

/// Exact work on single rows, for owners whose partial profile cannot
/// certify an answer. Safe for concurrent use.
class RowEngine {
public:
    explicit RowEngine(const DataSeries& series);

    struct Row {
        double min_dist = std::numeric_limits<double>::infinity();
        std::size_t argmin = no_index;
        PartialDistanceProfile profile;
        std::vector<double> nearest;  // ascending, only admissible neighbours
    };

    /// Full row of `owner` at `table.length`: the nearest neighbour, a fresh
    /// harvest with base table.length, and the `nearest` smallest distances.
    Row recompute(std::size_t owner, const WindowTable& table, std::size_t p,
                  std::size_t nearest) const;

    /// recompute() for each of `owners` (ascending). Nearby owners share one
    /// seeded dot-product vector advanced through the gaps. Results are in
    /// the order of `owners` and do not depend on `threads`.
    std::vector<Row> recompute_rows(std::span<const std::size_t> owners, const WindowTable& table,
                                    std::size_t p, std::size_t nearest, unsigned threads) const;

    /// Every distance of the owner's row; +inf for trivial matches and
    /// constant windows.
    std::vector<double> distance_row(std::size_t owner, const WindowTable& table) const;

    const DataSeries& series() const noexcept { return *series_; }

private:
    const DataSeries* series_;
    SeriesSpectrum spectrum_;
};

}  // namespace mine
