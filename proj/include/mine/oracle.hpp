#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <vector>

#include "mine/discords.hpp"
#include "mine/matrix_profile.hpp"
#include "mine/motifs.hpp"
#include "mine/series.hpp"

/// Brute-force references. They normalize every window explicitly and sum
/// squared differences; nothing here uses dot products, running sums or
/// transforms. Only the exclusion zone, the tie rules and the zero-variance
/// threshold are shared with the engine.
namespace mine::oracle {

/// Windows of one length, each z-normalized with a two-pass mean and
/// population stddev. Constant windows are flagged and left zero.
struct NormalizedWindows {
    NormalizedWindows(const DataSeries& series, std::size_t length);

    std::size_t length;
    std::size_t count;
    std::vector<double> z;  // count x length, row-major
    std::vector<unsigned char> constant;

    std::span<const double> window(std::size_t i) const { return {z.data() + i * length, length}; }
    /// +inf when either window is constant.
    double distance(std::size_t i, std::size_t j) const;
};

/// Textbook z-normalized Euclidean distance of two windows.
double naive_distance(const DataSeries& series, std::size_t i, std::size_t j, std::size_t length);

/// Matrix profile by exhaustive pairwise comparison.
MatrixProfile brute_force_matrix_profile(const DataSeries& series, std::size_t length);

struct MotifReference {
    std::vector<MatrixProfile> profiles;  // one per length, ascending
    std::vector<MotifPair> per_length;
    Valmp valmp;
};

MotifReference brute_force_motifs(const DataSeries& series, std::size_t min_length,
                                  std::size_t max_length, unsigned threads = 1);

struct DiscordReference {
    std::vector<DiscordMatrix> per_length;
    VariableLengthDiscordMatrix merged;
};

/// Replays the ascending-offset insertion policy on exhaustively computed
/// rows. Owners with fewer than m admissible neighbours are skipped.
DiscordReference brute_force_discords(const DataSeries& series, std::size_t min_length,
                                      std::size_t max_length, std::size_t k, std::size_t m,
                                      unsigned threads = 1);

/// Motif-set membership for one anchor pair: every window closer than
/// `radius` to either anchor, minus trivial matches of the anchors and
/// offsets in `used`, taken greedily by distance. Anchors included.
std::vector<std::size_t> range_query(const DataSeries& series, const MotifPair& anchors,
                                     double radius, const std::set<std::size_t>& used = {});

}  // namespace mine::oracle
