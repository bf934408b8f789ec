#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "mine/motif_sets.hpp"
#include "mine/oracle.hpp"
#include "support.hpp"

using namespace mine;
using Catch::Matchers::WithinAbs;

namespace {

DataSeries cluster_series() {
    return DataSeries::ingest(
        mine::synthetic::planted_motifs(3000, 100, {200, 800, 1400, 2000, 2600}, 0.05, 12));
}

MotifPair make_pair(std::size_t a, std::size_t b, std::size_t len, double d) {
    MotifPair p;
    p.first = a;
    p.second = b;
    p.length = len;
    p.distance = d;
    p.norm_distance = d * std::sqrt(1.0 / static_cast<double>(len));
    return p;
}

}  // namespace

TEST_CASE("pair ranking keeps the best K and drops duplicates") {
    const auto s = testing::walk(200, 1);
    const std::vector<PartialDistanceProfile> none;
    PairRanking ranking(3);
    CHECK(ranking.offer(make_pair(1, 50, 16, 4.0), none, s));
    CHECK_FALSE(ranking.offer(make_pair(1, 50, 16, 4.0), none, s));
    CHECK(ranking.offer(make_pair(1, 50, 25, 4.0), none, s));  // same pair, other length
    CHECK(ranking.offer(make_pair(7, 90, 16, 2.0), none, s));
    CHECK(ranking.size() == 3);
    CHECK(ranking.offer(make_pair(3, 60, 16, 1.0), none, s));
    CHECK_FALSE(ranking.offer(make_pair(9, 99, 16, 100.0), none, s));
    const auto r = ranking.ranked();
    REQUIRE(r.size() == 3);
    CHECK(r[0].pair.first == 3);
    CHECK(r[1].pair.first == 7);
    CHECK(r[2].pair.length == 25);  // 4/5 beats 4/4
    CHECK_THROWS_AS(PairRanking(0), Error);
}

TEST_CASE("ranking ties: smaller first offset, then second, then length") {
    const auto s = testing::walk(200, 1);
    const std::vector<PartialDistanceProfile> none;
    PairRanking ranking(4);
    ranking.offer(make_pair(5, 80, 16, 2.0), none, s);
    ranking.offer(make_pair(5, 70, 16, 2.0), none, s);
    ranking.offer(make_pair(4, 90, 16, 2.0), none, s);
    const auto r = ranking.ranked();
    CHECK(r[0].pair.first == 4);
    CHECK(r[1].pair.second == 70);
    CHECK(r[2].pair.second == 80);
}

TEST_CASE("snapshots are attached at the pair's length") {
    const auto s = testing::walk(400, 3);
    auto run = compute_matrix_profile(s, 20, 5);
    PairRanking ranking(2);
    MotifPair best;
    REQUIRE(best_pair(run.profile, best));
    ranking.offer(best, run.partial, s);
    const auto r = ranking.ranked();
    REQUIRE(r[0].first_profile);
    REQUIRE(r[0].second_profile);
    CHECK(r[0].first_profile->profile.owner == best.first);
    CHECK(r[0].first_profile->threshold == run.partial[best.first].threshold(s, 20));
    // A profile at another length is not attached.
    PairRanking other(1);
    other.offer(make_pair(best.first, best.second, 21, best.distance), run.partial, s);
    CHECK_FALSE(other.ranked()[0].first_profile);
}

TEST_CASE("K = 1 holds the top variable-length motif") {
    const auto s = testing::walk(800, 5);
    MotifSetSearch search;
    search.top_k = 1;
    const auto res = find_variable_length_motif_sets(s, 10, 30, search);
    REQUIRE(res.ranking.size() == 1);
    const auto top = top_variable_length_motif(res.motifs.valmp);
    CHECK(res.ranking[0].pair.first == top.first);
    CHECK(res.ranking[0].pair.second == top.second);
    CHECK(res.ranking[0].pair.length == top.length);
}

TEST_CASE("ranking equals the top K of every offered pair") {
    const auto s = testing::walk(700, 14);
    const std::size_t K = 40;
    MotifSetSearch search;
    search.top_k = K;
    search.p = 5;
    const auto res = find_variable_length_motif_sets(s, 20, 21, search);

    const auto ref = oracle::brute_force_motifs(s, 20, 21);
    Valmp v(ref.profiles[0].size());
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, MotifPair> offered;
    for (const auto& mp : ref.profiles) {
        for (std::size_t i : update_valmp(v, mp)) {
            const auto p = make_pair(std::min(i, mp.indices[i]), std::max(i, mp.indices[i]), mp.length,
                                     mp.distances[i]);
            offered.emplace(std::make_tuple(p.first, p.second, p.length), p);
        }
    }
    std::vector<MotifPair> all;
    for (const auto& [k, p] : offered) all.push_back(p);
    std::sort(all.begin(), all.end(), [](const MotifPair& a, const MotifPair& b) {
        return std::tie(a.norm_distance, a.first, a.second, a.length) <
               std::tie(b.norm_distance, b.first, b.second, b.length);
    });
    all.resize(std::min(all.size(), K));
    REQUIRE(res.ranking.size() == all.size());
    for (std::size_t k = 0; k < all.size(); ++k) {
        CHECK(res.ranking[k].pair.first == all[k].first);
        CHECK(res.ranking[k].pair.second == all[k].second);
        CHECK(res.ranking[k].pair.length == all[k].length);
        CHECK_THAT(res.ranking[k].pair.norm_distance, WithinAbs(all[k].norm_distance, 1e-9));
    }
}

TEST_CASE("a tiny radius leaves only the anchors") {
    const auto s = testing::walk(900, 6);
    MotifSetSearch search;
    search.top_k = 10;
    search.radius_factor = 1e-9;
    const auto res = find_variable_length_motif_sets(s, 16, 24, search);
    REQUIRE_FALSE(res.sets.empty());
    for (const auto& set : res.sets) {
        CHECK(set.frequency() == 2);
        CHECK(set.members == std::vector<std::size_t>{set.anchors.first, set.anchors.second});
    }
}

TEST_CASE("planted cluster of five is the top set") {
    const auto s = cluster_series();
    MotifSetSearch search;
    search.top_k = 10;
    const auto res = find_variable_length_motif_sets(s, 80, 100, search);
    REQUIRE_FALSE(res.sets.empty());
    const MotifSet& top = res.sets.front();
    CHECK(top.frequency() == 5);
    CHECK(top.members == oracle::range_query(s, top.anchors, top.radius));
    // Each member sits inside a different planted copy.
    std::set<std::size_t> copies;
    for (std::size_t m : top.members) {
        const std::size_t k = (m - 200 + 300) / 600;
        const std::size_t start = 200 + 600 * k;
        CHECK(m >= start);
        CHECK(m + top.anchors.length <= start + 100);
        copies.insert(k);
    }
    CHECK(copies.size() == 5);
    CHECK(lint_motif_sets(res.sets).empty());
}

TEST_CASE("every set matches the oracle range query given earlier sets") {
    const auto s = testing::walk(1500, 23);
    MotifSetSearch search;
    search.top_k = 15;
    search.radius_factor = 3.0;
    const auto res = find_variable_length_motif_sets(s, 20, 32, search);
    std::set<std::size_t> used;
    std::size_t next = 0;
    for (const auto& ranked : res.ranking) {
        const MotifPair& pair = ranked.pair;
        auto near = [&](std::size_t o) {
            return std::any_of(used.begin(), used.end(), [&](std::size_t u) { return is_trivial_match(o, u, pair.length); });
        };
        if (near(pair.first) || near(pair.second)) continue;
        REQUIRE(next < res.sets.size());
        const MotifSet& set = res.sets[next++];
        CHECK(set.anchors.first == pair.first);
        CHECK(set.anchors.length == pair.length);
        CHECK(set.members == oracle::range_query(s, pair, pair.distance * 3.0, used));
        used.insert(set.members.begin(), set.members.end());
    }
    CHECK(next == res.sets.size());
    CHECK(lint_motif_sets(res.sets).empty());
}

TEST_CASE("minimum frequency filters after expansion") {
    const auto s = cluster_series();
    MotifSetSearch search;
    search.top_k = 10;
    const auto all = find_variable_length_motif_sets(s, 80, 90, search);
    search.min_frequency = 3;
    const auto some = find_variable_length_motif_sets(s, 80, 90, search);
    std::size_t expected = 0;
    for (const auto& set : all.sets) expected += set.frequency() >= 3 ? 1 : 0;
    CHECK(some.sets.size() == expected);
    for (const auto& set : some.sets) CHECK(set.frequency() >= 3);
}

TEST_CASE("lint reports overlaps") {
    MotifSet a;
    a.anchors = make_pair(10, 100, 20, 1.0);
    a.members = {10, 15, 100};
    MotifSet b;
    b.anchors = make_pair(100, 300, 20, 1.0);
    b.members = {100, 300};
    const std::vector<MotifSet> sets{a, b};
    const auto problems = lint_motif_sets(sets);
    CHECK(problems.size() == 2);
}

TEST_CASE("radius factor must be finite and non-negative") {
    const auto s = testing::walk(300, 2);
    const std::vector<RankedPair> none;
    CHECK_THROWS_AS(compute_var_length_motif_sets(s, none, -1.0), Error);
    CHECK_THROWS_AS(compute_var_length_motif_sets(s, none, std::nan("")), Error);
    CHECK(compute_var_length_motif_sets(s, none, 2.0).empty());
}
