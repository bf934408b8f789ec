#include "mine/motif_sets.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace mine {

namespace {

bool better(const MotifPair& a, const MotifPair& b) noexcept {
    return std::tie(a.norm_distance, a.first, a.second, a.length) <
           std::tie(b.norm_distance, b.first, b.second, b.length);
}

struct WorseOnTop {
    bool operator()(const RankedPair& a, const RankedPair& b) const noexcept {
        return better(a.pair, b.pair);
    }
};

std::shared_ptr<const ProfileSnapshot> snapshot(const std::vector<PartialDistanceProfile>& list_dp,
                                                std::size_t offset, std::size_t length,
                                                const DataSeries& series) {
    if (offset >= list_dp.size() || list_dp[offset].length != length) return nullptr;
    auto snap = std::make_shared<ProfileSnapshot>();
    snap->profile = list_dp[offset];
    snap->threshold = snap->profile.threshold(series, length);
    return snap;
}

// Offsets of `used` within the exclusion radius of `offset`.
bool near_used(const std::set<std::size_t>& used, std::size_t offset, std::size_t length) {
    const std::size_t r = exclusion_radius(length);
    const auto it = used.lower_bound(offset + 1 >= r ? offset + 1 - r : 0);
    return it != used.end() && *it < offset + r;
}

}  // namespace

PairRanking::PairRanking(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw Error(ErrorKind::InvalidParameters, "ranking capacity must be at least 1");
}

bool PairRanking::offer(const MotifPair& pair, const std::vector<PartialDistanceProfile>& list_dp,
                        const DataSeries& series) {
    const Key key{pair.first, pair.second, pair.length};
    if (keys_.count(key) != 0) return false;
    if (heap_.size() >= capacity_) {
        if (!better(pair, heap_.front().pair)) return false;
        const MotifPair& worst = heap_.front().pair;
        keys_.erase(Key{worst.first, worst.second, worst.length});
        std::pop_heap(heap_.begin(), heap_.end(), WorseOnTop{});
        heap_.pop_back();
    }
    RankedPair ranked;
    ranked.pair = pair;
    ranked.first_profile = snapshot(list_dp, pair.first, pair.length, series);
    ranked.second_profile = snapshot(list_dp, pair.second, pair.length, series);
    heap_.push_back(std::move(ranked));
    std::push_heap(heap_.begin(), heap_.end(), WorseOnTop{});
    keys_.insert(key);
    return true;
}

std::vector<RankedPair> PairRanking::ranked() const {
    std::vector<RankedPair> out = heap_;
    std::sort(out.begin(), out.end(), WorseOnTop{});
    return out;
}

std::vector<std::size_t> update_valmp_for_motif_sets(
    Valmp& valmp, const MatrixProfile& mp, const std::vector<PartialDistanceProfile>& list_dp,
    const DataSeries& series, PairRanking& ranking) {
    auto improved = update_valmp(valmp, mp);
    for (const std::size_t i : improved) {
        MotifPair pair;
        pair.first = std::min(i, valmp.indices[i]);
        pair.second = std::max(i, valmp.indices[i]);
        pair.length = valmp.lengths[i];
        pair.distance = valmp.distances[i];
        pair.norm_distance = valmp.norm_distances[i];
        ranking.offer(pair, list_dp, series);
    }
    return improved;
}

std::vector<MotifSet> compute_var_length_motif_sets(const DataSeries& series,
                                                    std::span<const RankedPair> ranking,
                                                    double radius_factor,
                                                    const MotifSetOptions& options) {
    if (!(radius_factor >= 0.0) || !std::isfinite(radius_factor))
        throw Error(ErrorKind::InvalidParameters, "radius factor must be finite and non-negative");
    const RowEngine engine(series);
    std::map<std::size_t, WindowTable> tables;
    std::set<std::size_t> used;
    std::vector<MotifSet> sets;

    for (const RankedPair& ranked : ranking) {
        const MotifPair& pair = ranked.pair;
        const std::size_t L = pair.length;
        if (near_used(used, pair.first, L) || near_used(used, pair.second, L)) continue;

        MotifSet set;
        set.anchors = pair;
        set.radius = pair.distance * radius_factor;
        const double r = set.radius;

        // Closest-anchor distance of every in-range window.
        std::map<std::size_t, double> in_range;
        auto take = [&](std::size_t j, double d) {
            auto [it, fresh] = in_range.emplace(j, d);
            if (!fresh) it->second = std::min(it->second, d);
        };
        const std::shared_ptr<const ProfileSnapshot> snaps[2] = {ranked.first_profile,
                                                                  ranked.second_profile};
        const std::size_t anchors[2] = {pair.first, pair.second};
        for (int a = 0; a < 2; ++a) {
            const auto& snap = snaps[a];
            if (snap && snap->threshold > r) {
                for (const auto& e : snap->profile.entries)
                    if (e.dist < r) take(e.neighbor, e.dist);
                continue;
            }
            auto it = tables.find(L);
            if (it == tables.end()) it = tables.emplace(L, WindowTable(series, L)).first;
            const auto row = engine.distance_row(anchors[a], it->second);
            for (std::size_t j = 0; j < row.size(); ++j)
                if (row[j] < r) take(j, row[j]);
            ++set.recomputed_rows;
        }

        std::vector<std::pair<double, std::size_t>> candidates;
        for (const auto& [j, d] : in_range) {
            if (is_trivial_match(j, pair.first, L) || is_trivial_match(j, pair.second, L)) continue;
            if (used.count(j) != 0) continue;
            candidates.emplace_back(d, j);
        }
        std::sort(candidates.begin(), candidates.end());

        std::set<std::size_t> taken{pair.first, pair.second};
        std::vector<std::pair<std::size_t, double>> members{{pair.first, 0.0}, {pair.second, 0.0}};
        for (const auto& [d, j] : candidates) {
            if (near_used(taken, j, L)) continue;
            taken.insert(j);
            members.emplace_back(j, d);
        }
        std::sort(members.begin(), members.end());
        for (const auto& [j, d] : members) {
            set.members.push_back(j);
            set.distances.push_back(d);
            used.insert(j);
        }
        sets.push_back(std::move(set));
    }

    if (options.min_frequency > 0)
        std::erase_if(sets, [&](const MotifSet& s) { return s.frequency() < options.min_frequency; });
    return sets;
}

MotifSetResult find_variable_length_motif_sets(const DataSeries& series, std::size_t min_length,
                                               std::size_t max_length,
                                               const MotifSetSearch& search) {
    if (search.top_k < 1) throw Error(ErrorKind::InvalidParameters, "top-K must be at least 1");
    PairRanking ranking(search.top_k);
    MotifOptions options;
    options.p = search.p;
    options.threads = search.threads;
    options.observer = [&](const MatrixProfile& mp, std::span<const std::size_t> improved,
                           const std::vector<PartialDistanceProfile>& list_dp) {
        const double scale = std::sqrt(1.0 / static_cast<double>(mp.length));
        for (const std::size_t i : improved) {
            MotifPair pair;
            pair.first = std::min(i, mp.indices[i]);
            pair.second = std::max(i, mp.indices[i]);
            pair.length = mp.length;
            pair.distance = mp.distances[i];
            pair.norm_distance = pair.distance * scale;
            ranking.offer(pair, list_dp, series);
        }
    };
    MotifSetResult result;
    result.motifs = find_variable_length_motifs(series, min_length, max_length, options);
    result.ranking = ranking.ranked();
    MotifSetOptions so;
    so.min_frequency = search.min_frequency;
    result.sets = compute_var_length_motif_sets(series, result.ranking, search.radius_factor, so);
    return result;
}

std::vector<std::string> lint_motif_sets(std::span<const MotifSet> sets) {
    std::vector<std::string> problems;
    std::map<std::size_t, std::size_t> owner;
    for (std::size_t s = 0; s < sets.size(); ++s) {
        const MotifSet& set = sets[s];
        const std::size_t L = set.anchors.length;
        for (std::size_t a = 0; a < set.members.size(); ++a)
            for (std::size_t b = a + 1; b < set.members.size(); ++b)
                if (is_trivial_match(set.members[a], set.members[b], L))
                    problems.push_back("set " + std::to_string(s) + ": members " +
                                       std::to_string(set.members[a]) + " and " +
                                       std::to_string(set.members[b]) + " are trivial matches");
        for (const std::size_t j : set.members) {
            auto [it, fresh] = owner.emplace(j, s);
            if (!fresh)
                problems.push_back("offset " + std::to_string(j) + " is in sets " +
                                   std::to_string(it->second) + " and " + std::to_string(s));
        }
    }
    return problems;
}

}  // namespace mine
