#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "mine/matrix_profile.hpp"
#include "mine/motifs.hpp"
#include "mine/series.hpp"

namespace mine {

/// A partial profile frozen at the length of the pair it belongs to, with
/// the bound below which its entries are the complete neighbourhood.
struct ProfileSnapshot {
    PartialDistanceProfile profile;
    double threshold = 0.0;
};

struct RankedPair {
    MotifPair pair;
    std::shared_ptr<const ProfileSnapshot> first_profile;
    std::shared_ptr<const ProfileSnapshot> second_profile;
};

/// The K best pairs by normalized distance (ties: smaller first offset,
/// then second offset, then length). The same pair at the same length is
/// held once.
class PairRanking {
public:
    explicit PairRanking(std::size_t capacity);

    /// Offers a pair found at pair.length; when kept, the partial profiles of
    /// both offsets are attached from `list_dp` (which must be at that
    /// length). Returns whether the pair was kept.
    bool offer(const MotifPair& pair, const std::vector<PartialDistanceProfile>& list_dp,
               const DataSeries& series);

    /// Kept pairs, best first.
    std::vector<RankedPair> ranked() const;

    std::size_t size() const noexcept { return heap_.size(); }
    std::size_t capacity() const noexcept { return capacity_; }

private:
    using Key = std::tuple<std::size_t, std::size_t, std::size_t>;

    std::size_t capacity_;
    std::vector<RankedPair> heap_;  // max-heap: worst pair on top
    std::set<Key> keys_;
};

/// update_valmp, then every improved offset's pair is offered to `ranking`.
std::vector<std::size_t> update_valmp_for_motif_sets(
    Valmp& valmp, const MatrixProfile& mp, const std::vector<PartialDistanceProfile>& list_dp,
    const DataSeries& series, PairRanking& ranking);

struct MotifSet {
    MotifPair anchors;
    double radius = 0.0;
    std::vector<std::size_t> members;  // ascending, anchors included
    std::vector<double> distances;     // per member, to the closer anchor
    std::size_t recomputed_rows = 0;   // anchors whose neighbourhood needed a full row

    std::size_t frequency() const noexcept { return members.size(); }
};

struct MotifSetOptions {
    std::size_t min_frequency = 0;  // post-filter; 0 keeps every set
};

/// Expands each ranked pair, best first, into the windows closer than
/// radius_factor * distance to either anchor. Members are taken greedily by
/// distance (ties: smaller offset), skipping trivial matches of anything
/// already taken and offsets used by an earlier set. A pair is skipped when
/// an anchor is a trivial match of an offset used by an earlier set.
std::vector<MotifSet> compute_var_length_motif_sets(const DataSeries& series,
                                                    std::span<const RankedPair> ranking,
                                                    double radius_factor,
                                                    const MotifSetOptions& options = {});

struct MotifSetSearch {
    std::size_t p = 50;
    std::size_t top_k = 40;
    double radius_factor = 4.0;
    unsigned threads = 1;
    std::size_t min_frequency = 0;
};

struct MotifSetResult {
    MotifResult motifs;
    std::vector<RankedPair> ranking;
    std::vector<MotifSet> sets;
};

/// Variable-length motif discovery with pair ranking, then set expansion.
MotifSetResult find_variable_length_motif_sets(const DataSeries& series, std::size_t min_length,
                                               std::size_t max_length,
                                               const MotifSetSearch& search);

/// Problems with a list of sets: members that are trivial matches of each
/// other within a set, or offsets shared between sets. Empty when clean.
std::vector<std::string> lint_motif_sets(std::span<const MotifSet> sets);

}  // namespace mine
