#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "mine/discords.hpp"
#include "mine/oracle.hpp"
#include "support.hpp"

using namespace mine;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double ninf = -std::numeric_limits<double>::infinity();

void check_cells(const DiscordMatrix& got, const DiscordMatrix& ref) {
    REQUIRE(got.k() == ref.k());
    REQUIRE(got.m() == ref.m());
    CHECK(got.length() == ref.length());
    for (std::size_t r = 0; r < ref.k(); ++r)
        for (std::size_t c = 0; c < ref.m(); ++c) {
            CHECK(got.at(r, c).offset == ref.at(r, c).offset);
            if (!ref.at(r, c).empty()) CHECK_THAT(got.at(r, c).distance, WithinAbs(ref.at(r, c).distance, 1e-7));
        }
}

}  // namespace

TEST_CASE("an empty matrix takes the first owner in its last column") {
    DiscordMatrix d(2, 3, 10);
    const std::vector<double> nearest{1.0, 2.0, 3.0};
    CHECK(update_fixed_length_discords(d, nearest, 40));
    CHECK(d.at(0, 2) == DiscordCell{3.0, 40});
    CHECK(d.at(0, 0).empty());
    CHECK(d.at(0, 1).empty());
    CHECK(d.conflicts(44));
    CHECK_FALSE(d.conflicts(45));
    CHECK(d.conflicts(36));
    CHECK_FALSE(d.conflicts(35));
}

TEST_CASE("insertion shifts a column down and stops at the first column that takes it") {
    DiscordMatrix d(2, 2, 4);
    update_fixed_length_discords(d, std::vector<double>{1.0, 2.0}, 0);
    update_fixed_length_discords(d, std::vector<double>{1.5, 1.8}, 10);  // column 1, rank 1
    CHECK(d.at(0, 1).offset == 0);
    CHECK(d.at(1, 1).offset == 10);
    update_fixed_length_discords(d, std::vector<double>{0.5, 5.0}, 20);  // column 1, rank 0
    CHECK(d.at(0, 1).offset == 20);
    CHECK(d.at(1, 1).offset == 0);
    CHECK_FALSE(d.conflicts(10));  // pushed out
    // Below every cell of column 1, so it lands in column 0.
    CHECK(update_fixed_length_discords(d, std::vector<double>{0.7, 0.9}, 30));
    CHECK(d.at(0, 0).offset == 30);
}

TEST_CASE("a candidate below every cell changes nothing") {
    DiscordMatrix d(1, 2, 4);
    update_fixed_length_discords(d, std::vector<double>{3.0, 4.0}, 0);
    update_fixed_length_discords(d, std::vector<double>{2.0, 3.0}, 10);  // fills column 0
    const DiscordMatrix before = d;
    CHECK_FALSE(update_fixed_length_discords(d, std::vector<double>{1.0, 2.0}, 20));
    CHECK(d == before);
    // Equal within rounding is not an improvement.
    CHECK_FALSE(update_fixed_length_discords(d, std::vector<double>{2.0, 4.0 * (1 + 1e-12)}, 30));
    CHECK(d == before);
    CHECK_THROWS_AS(update_fixed_length_discords(d, std::vector<double>{1.0}, 40), Error);
}

TEST_CASE("merging keeps the larger normalized distance and lets later lengths win ties") {
    VariableLengthDiscordMatrix range(1, 1);
    const auto a = DiscordMatrix::from_cells(1, 1, 16, {DiscordCell{4.0, 7}});   // 1.0
    const auto b = DiscordMatrix::from_cells(1, 1, 25, {DiscordCell{5.0, 9}});   // 1.0
    const auto c = DiscordMatrix::from_cells(1, 1, 36, {DiscordCell{5.4, 11}});  // 0.9
    update_variable_length_discords(a, range);
    CHECK(range.at(0, 0).length == 16);
    update_variable_length_discords(b, range);
    CHECK(range.at(0, 0).length == 25);
    CHECK(range.at(0, 0).offset == 9);
    update_variable_length_discords(c, range);
    CHECK(range.at(0, 0).length == 25);
    CHECK(range.at(0, 0).distance == 5.0);
    CHECK_THAT(range.at(0, 0).norm_distance, WithinAbs(1.0, 1e-15));

    const auto empty = DiscordMatrix(1, 1, 49);
    update_variable_length_discords(empty, range);
    CHECK(range.at(0, 0).length == 25);
    CHECK_THROWS_AS(update_variable_length_discords(DiscordMatrix(2, 1, 16), range), Error);
}

TEST_CASE("merged cells are the per-cell maximum over lengths") {
    const auto s = testing::walk(500, 31);
    DiscordOptions opt;
    opt.p = 5;
    const auto res = topkm_discord_discovery(s, 20, 22, 2, 3, opt);
    REQUIRE(res.per_length.size() == 3);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 3; ++c) {
            double best = ninf;
            for (const auto& d : res.per_length)
                if (!d.at(r, c).empty())
                    best = std::max(best, d.at(r, c).distance * std::sqrt(1.0 / static_cast<double>(d.length())));
            CHECK_THAT(res.merged.at(r, c).norm_distance, WithinAbs(best, 1e-8));
        }
}

TEST_CASE("discords equal the exhaustive search") {
    for (std::uint64_t seed : {3u, 4u}) {
        const auto s = testing::walk(600, seed);
        DiscordOptions opt;
        opt.p = 5;
        const auto got = topkm_discord_discovery(s, 16, 28, 3, 3, opt);
        const auto ref = oracle::brute_force_discords(s, 16, 28, 3, 3);
        REQUIRE(got.per_length.size() == ref.per_length.size());
        for (std::size_t k = 0; k < ref.per_length.size(); ++k) check_cells(got.per_length[k], ref.per_length[k]);
        for (std::size_t i = 0; i < ref.merged.cells.size(); ++i) {
            CHECK(got.merged.cells[i].offset == ref.merged.cells[i].offset);
            CHECK(got.merged.cells[i].length == ref.merged.cells[i].length);
        }
    }
    const auto s = testing::noise(500, 8);
    DiscordOptions opt;
    opt.p = 3;
    const auto got = topkm_discord_discovery(s, 12, 20, 2, 1, opt);
    const auto ref = oracle::brute_force_discords(s, 12, 20, 2, 1);
    for (std::size_t k = 0; k < ref.per_length.size(); ++k) check_cells(got.per_length[k], ref.per_length[k]);
}

TEST_CASE("a lone spike is the top discord at every length") {
    auto raw = mine::synthetic::white_noise(1500, 12);
    for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = std::sin(static_cast<double>(i) * 0.2) + 0.05 * raw[i];
    raw[700] += 4.0;
    const auto s = DataSeries::ingest(raw);
    const auto res = topkm_discord_discovery(s, 20, 40, 1, 1, DiscordOptions{});
    for (const auto& d : res.per_length) {
        const std::size_t off = d.at(0, 0).offset;
        CHECK(off <= 700);
        CHECK(off + d.length() > 700);
    }
}

TEST_CASE("k = m = 1 at one length replays the greedy policy on the matrix profile") {
    // Owners go in ascending order and a trivial match of the stored
    // discord is never offered, so the result can sit below the profile's
    // maximum when a stronger owner overlaps an earlier, weaker one.
    const auto s = testing::walk(800, 19);
    const std::size_t L = 30;
    const auto res = topkm_discord_discovery(s, L, L, 1, 1, DiscordOptions{});
    const auto mp = oracle::brute_force_matrix_profile(s, L);
    double stored = ninf;
    std::size_t at = no_index;
    double peak = ninf;
    for (std::size_t i = 0; i < mp.size(); ++i) {
        if (!std::isfinite(mp.distances[i])) continue;
        peak = std::max(peak, mp.distances[i]);
        if (at != no_index && is_trivial_match(i, at, L)) continue;
        if (clearly_greater(mp.distances[i], stored)) {
            stored = mp.distances[i];
            at = i;
        }
    }
    CHECK(res.per_length[0].at(0, 0).offset == at);
    CHECK_THAT(res.merged.at(0, 0).distance, WithinAbs(stored, 1e-7));
    CHECK(stored <= peak);
    CHECK(res.trace.empty());
}

TEST_CASE("parameters are checked") {
    const auto s = testing::walk(300, 1);
    DiscordOptions opt;
    opt.p = 2;
    CHECK_THROWS_AS(topkm_discord_discovery(s, 16, 20, 1, 3, opt), Error);
    CHECK_THROWS_AS(topkm_discord_discovery(s, 16, 20, 0, 1, DiscordOptions{}), Error);
    CHECK_THROWS_AS(topkm_discord_discovery(s, 16, 20, 1, 0, DiscordOptions{}), Error);
    CHECK_THROWS_AS(topkm_discord_discovery(s, 20, 16, 1, 1, DiscordOptions{}), Error);
    CHECK_THROWS_AS(DiscordMatrix::from_cells(2, 2, 8, std::vector<DiscordCell>(3)), Error);
}

TEST_CASE("thread count does not change discords") {
    const auto s = testing::walk(3000, 5);
    DiscordOptions one;
    one.p = 6;
    DiscordOptions four = one;
    four.threads = 4;
    const auto a = topkm_discord_discovery(s, 24, 40, 3, 2, one);
    const auto b = topkm_discord_discovery(s, 24, 40, 3, 2, four);
    CHECK(a.merged == b.merged);
    CHECK(a.per_length == b.per_length);
}
