#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <set>
#include <span>
#include <vector>

#include "mine/matrix_profile.hpp"
#include "mine/motifs.hpp"
#include "mine/series.hpp"

namespace mine {

/// Relative width of a distance tie. Mutual nearest neighbours share one
/// distance, which the row engine reproduces only to rounding, so discord
/// insertion and merging treat values this close as equal.
inline constexpr double discord_tie_tolerance = 1e-9;

/// a beats b by more than a tie. -inf (an empty cell) is beaten by any finite a.
inline bool clearly_greater(double a, double b) noexcept {
    if (b == -std::numeric_limits<double>::infinity()) return a > b;
    return a > b + discord_tie_tolerance * std::abs(b);
}

struct DiscordCell {
    double distance = -std::numeric_limits<double>::infinity();
    std::size_t offset = no_index;

    bool empty() const noexcept { return offset == no_index; }
    friend bool operator==(const DiscordCell&, const DiscordCell&) = default;
};

/// Top-k m-th discords of one length. Cell (r, c) holds the (r+1)-th largest
/// (c+1)-th best-match distance; columns are non-increasing from the top and
/// no two stored offsets are trivial matches.
class DiscordMatrix {
public:
    DiscordMatrix() = default;
    DiscordMatrix(std::size_t k, std::size_t m, std::size_t length);

    std::size_t k() const noexcept { return k_; }
    std::size_t m() const noexcept { return m_; }
    std::size_t length() const noexcept { return length_; }

    const DiscordCell& at(std::size_t rank, std::size_t column) const {
        return cells_[rank * m_ + column];
    }
    const std::vector<DiscordCell>& cells() const noexcept { return cells_; }

    /// Builds a matrix from row-major cells, e.g. one produced elsewhere.
    static DiscordMatrix from_cells(std::size_t k, std::size_t m, std::size_t length,
                                    std::vector<DiscordCell> cells);

    /// Whether `offset` is a trivial match of any stored offset.
    bool conflicts(std::size_t offset) const;

    /// Inserts at the first cell of `column` whose distance `distance`
    /// exceeds, shifting the cells below down; the last one drops out.
    /// Returns false when no cell is exceeded.
    bool insert(std::size_t column, double distance, std::size_t offset);

    friend bool operator==(const DiscordMatrix& a, const DiscordMatrix& b) {
        return a.k_ == b.k_ && a.m_ == b.m_ && a.length_ == b.length_ && a.cells_ == b.cells_;
    }

private:
    DiscordCell& cell(std::size_t rank, std::size_t column) { return cells_[rank * m_ + column]; }

    std::size_t k_ = 0;
    std::size_t m_ = 0;
    std::size_t length_ = 0;
    std::vector<DiscordCell> cells_;
    std::set<std::size_t> occupied_;
};

struct VariableDiscordCell {
    double norm_distance = -std::numeric_limits<double>::infinity();  // distance * sqrt(1 / length)
    double distance = -std::numeric_limits<double>::infinity();
    std::size_t offset = no_index;
    std::size_t length = 0;

    bool empty() const noexcept { return offset == no_index; }
    friend bool operator==(const VariableDiscordCell&, const VariableDiscordCell&) = default;
};

/// k x m cells, each the best length-normalized entry of that cell over the
/// lengths merged so far.
struct VariableLengthDiscordMatrix {
    VariableLengthDiscordMatrix() = default;
    VariableLengthDiscordMatrix(std::size_t k, std::size_t m);

    std::size_t k = 0;
    std::size_t m = 0;
    std::vector<VariableDiscordCell> cells;

    const VariableDiscordCell& at(std::size_t rank, std::size_t column) const {
        return cells[rank * m + column];
    }
    friend bool operator==(const VariableLengthDiscordMatrix&,
                           const VariableLengthDiscordMatrix&) = default;
};

/// Offers one owner: for column c from m - 1 down to 0, inserts nearest[c]
/// if it exceeds a cell of column c, stopping at the first insertion.
/// `nearest` holds the owner's m smallest true distances in ascending order.
/// The caller guarantees the owner is not a trivial match of a stored offset.
bool update_fixed_length_discords(DiscordMatrix& dkm, std::span<const double> nearest,
                                  std::size_t offset);

/// Merges one length into the range matrix: a cell is replaced when the
/// normalized distance is >= the stored one, so later lengths win ties.
/// Empty source cells are ignored.
void update_variable_length_discords(const DiscordMatrix& dkm, VariableLengthDiscordMatrix& range);

struct DiscordOptions {
    std::size_t p = 50;
    unsigned threads = 1;
    bool keep_per_length = true;
};

struct DiscordResult {
    VariableLengthDiscordMatrix merged;
    std::vector<DiscordMatrix> per_length;
    std::vector<LengthTrace> trace;  // lengths after the first
};

/// One length step: advances the partial profiles to new_length and builds
/// that length's matrix. Owners are offered in ascending offset order; an
/// owner whose m nearest stored distances are certified is offered as is,
/// any other is recomputed only when one of its stored distances could still
/// enter the matrix.
DiscordMatrix topkm_next_length(const DataSeries& series, const RowEngine& engine,
                                std::vector<PartialDistanceProfile>& list_dp,
                                std::size_t new_length, std::size_t k, std::size_t m,
                                const DiscordOptions& options, LengthTrace* trace = nullptr);

/// Variable-length Top-k m-th discords over [min_length, max_length].
/// Throws InvalidParameters when k or m is 0 or p < m, plus the range checks
/// of the motif driver.
DiscordResult topkm_discord_discovery(const DataSeries& series, std::size_t min_length,
                                      std::size_t max_length, std::size_t k, std::size_t m,
                                      const DiscordOptions& options);

}  // namespace mine
