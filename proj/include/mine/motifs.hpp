#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mine/matrix_profile.hpp"
#include "mine/series.hpp"

namespace mine {

/// Variable-length matrix profile: per offset, the best length-normalized
/// nearest-neighbour match over every length processed so far.
struct Valmp {
    Valmp() = default;
    explicit Valmp(std::size_t size);

    std::vector<double> distances;       // raw distance at the winning length
    std::vector<double> norm_distances;  // distance * sqrt(1 / length)
    std::vector<std::size_t> lengths;
    std::vector<std::size_t> indices;
    std::vector<unsigned char> populated;

    std::size_t size() const noexcept { return distances.size(); }
};

/// Two non-trivially matching windows of one length. first < second.
struct MotifPair {
    std::size_t first = 0;
    std::size_t second = 0;
    std::size_t length = 0;
    double distance = 0.0;
    double norm_distance = 0.0;
};

/// Replaces entry i iff it is unpopulated or its normalized distance is
/// strictly larger than mp.distances[i] * sqrt(1 / length). Offsets with an
/// infinite (or undefined) distance are skipped, as are offsets beyond the
/// VALMP. Returns the replaced offsets in ascending order.
std::vector<std::size_t> update_valmp(Valmp& valmp, const MatrixProfile& mp);

/// Argmin of the normalized distances; ties go to the smaller offset, then
/// the shorter length. Throws Unpopulated when nothing is populated.
MotifPair top_variable_length_motif(const Valmp& valmp);

/// Closest pair of one matrix profile; ties go to the smaller offset.
/// Returns false when every entry is infinite.
bool best_pair(const MatrixProfile& mp, MotifPair& out);

/// What one length step of the driver did.
struct LengthTrace {
    std::size_t length = 0;
    std::size_t profiles = 0;
    std::size_t valid = 0;
    std::size_t non_valid = 0;
    std::size_t recomputed = 0;   // rows recomputed one by one
    bool full_recompute = false;  // whole matrix profile recomputed instead
    bool certified = false;       // best pair certified before any recomputation
    double tlb_sum = 0.0;         // sum of lb / dist over advanced entries
    std::size_t tlb_count = 0;
    double seconds = 0.0;
};

struct SubMp {
    MatrixProfile profile;             // +inf where undefined
    std::vector<unsigned char> defined;
    bool best_motif_certified = false;
    bool needs_full = false;           // too many rows to refine; caller recomputes
    double min_dist_abs = 0.0;
    double min_lb_abs = 0.0;
    LengthTrace trace;
};

struct SubMpOptions {
    std::size_t p = 50;
    unsigned threads = 1;
    /// When set, rows whose bound cannot rule out an improvement of this
    /// VALMP are refined as well, which makes the VALMP exact.
    const Valmp* valmp = nullptr;
};

/// One length step on the partial profiles: advances every entry to
/// new_length, drops entries that leave the series or become trivial
/// matches, classifies each profile and refines what cannot be certified.
/// Profiles are valid when their smallest stored distance is below the bound
/// of every unstored neighbour. Refined rows get a fresh harvest at
/// new_length. When the rows to refine reach n log p / log n the step stops
/// early with needs_full set and the profiles advanced but unrefined.
SubMp compute_sub_mp(const DataSeries& series, const RowEngine& engine,
                     std::vector<PartialDistanceProfile>& list_dp, std::size_t new_length,
                     const SubMpOptions& options);

/// Called after each length with the step's matrix profile (+inf where a
/// value was not needed), the offsets whose VALMP entry improved and the
/// partial profiles at that length.
using LengthObserver =
    std::function<void(const MatrixProfile& mp, std::span<const std::size_t> improved,
                       const std::vector<PartialDistanceProfile>& list_dp)>;

struct MotifOptions {
    std::size_t p = 50;
    unsigned threads = 1;
    bool exact_valmp = true;
    LengthObserver observer;
};

struct MotifResult {
    Valmp valmp;
    std::vector<MotifPair> per_length;  // best pair at each length, ascending length
    std::vector<LengthTrace> trace;
};

/// Variable-length motif discovery over [min_length, max_length].
/// Throws InvalidParameters for an empty range, length < 4 or p < 1, and
/// SeriesTooShort when the longest length has no non-trivial pair.
MotifResult find_variable_length_motifs(const DataSeries& series, std::size_t min_length,
                                        std::size_t max_length, const MotifOptions& options);

/// Shared argument checks of the variable-length drivers.
void check_length_range(const DataSeries& series, std::size_t min_length, std::size_t max_length,
                        std::size_t p);

}  // namespace mine
