#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

#include "mine/oracle.hpp"
#include "mine/series.hpp"
#include "mine/spectrum.hpp"
#include "support.hpp"

using namespace mine;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double naive_dot(std::span<const double> t, std::size_t i, std::size_t j, std::size_t len) {
    double s = 0.0;
    for (std::size_t p = 0; p < len; ++p) s += t[i + p] * t[j + p];
    return s;
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::Io;
}

}  // namespace

TEST_CASE("ingest keeps values and prefix sums") {
    const std::vector<double> raw{1, 2, 3};
    const auto s = DataSeries::ingest(raw);
    CHECK(s.size() == 3);
    CHECK(s.running_sum(0) == 0);
    CHECK(s.running_sum(1) == 1);
    CHECK(s.running_sum(2) == 3);
    CHECK(s.running_sum(3) == 6);
    CHECK(s.running_sq_sum(3) == 14);
}

TEST_CASE("ingest rejects empty and non-finite input") {
    CHECK(kind_of([] { DataSeries::ingest(std::vector<double>{}); }) == ErrorKind::Empty);
    try {
        DataSeries::ingest(std::vector<double>{1, std::nan("")});
        FAIL("NaN accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonFinite);
        CHECK(e.position() == 2);
    }
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(kind_of([&] { DataSeries::ingest(std::vector<double>{0, 1, -inf}); }) == ErrorKind::NonFinite);
}

TEST_CASE("window statistics match a two-pass computation") {
    const auto s = testing::walk(3000, 11);
    for (std::size_t len : {4u, 17u, 256u}) {
        for (std::size_t off : {0u, 1u, 999u, 3000u - 256u}) {
            const auto st = s.stats(off, len);
            double mean = 0.0;
            for (std::size_t p = 0; p < len; ++p) mean += s[off + p];
            mean /= static_cast<double>(len);
            double var = 0.0;
            for (std::size_t p = 0; p < len; ++p) var += (s[off + p] - mean) * (s[off + p] - mean);
            CHECK_THAT(st.mu, WithinAbs(mean, 1e-9));
            CHECK_THAT(st.sigma, WithinRel(std::sqrt(var / static_cast<double>(len)), 1e-9));
            CHECK_FALSE(st.constant);
        }
    }
    CHECK(kind_of([&] { (void)s.stats(2990, 11); }) == ErrorKind::OutOfRange);
}

TEST_CASE("windows on a large offset stay accurate") {
    // Values far from zero make plain-double running sums cancel badly.
    std::vector<double> raw(20000);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0.0, 1.0);
    for (auto& v : raw) v = 1e6 + g(rng);
    const auto s = DataSeries::ingest(raw);
    const auto st = s.stats(12345, 64);
    double mean = 0.0;
    for (std::size_t p = 0; p < 64; ++p) mean += raw[12345 + p];
    mean /= 64.0;
    double var = 0.0;
    for (std::size_t p = 0; p < 64; ++p) var += (raw[12345 + p] - mean) * (raw[12345 + p] - mean);
    CHECK_THAT(st.sigma, WithinRel(std::sqrt(var / 64.0), 1e-6));
}

TEST_CASE("constant windows are flagged") {
    const auto s = DataSeries::ingest(std::vector<double>(50, 3.5));
    CHECK(s.is_constant(0, 10));
    WindowTable tab(s, 10);
    CHECK(tab.all_constant());
    CHECK(tab.inv_sigma[0] == 0.0);
}

TEST_CASE("sliding dot product: hand example and self product") {
    const auto s = DataSeries::ingest(std::vector<double>{1, 2, 3});
    const std::vector<double> q{1, 1};
    const auto qt = sliding_dot_product(q, s);
    REQUIRE(qt.size() == 2);
    CHECK_THAT(qt[0], WithinAbs(3.0, 1e-12));
    CHECK_THAT(qt[1], WithinAbs(5.0, 1e-12));

    const auto w = testing::walk(512, 3);
    const auto query = testing::slice(w, 0, 32);
    const auto row = sliding_dot_product(query, w);
    double ss = 0.0;
    for (double v : query) ss += v * v;
    CHECK_THAT(row[0], WithinRel(ss, 1e-12));
}

TEST_CASE("sliding dot product matches the direct loop") {
    const auto s = testing::walk(512, 7);
    const auto t = s.values();
    for (std::size_t i : {0u, 100u, 480u}) {
        const auto row = sliding_dot_product(testing::slice(s, i, 32), s);
        REQUIRE(row.size() == 512 - 32 + 1);
        for (std::size_t j = 0; j < row.size(); ++j) CHECK_THAT(row[j], WithinAbs(naive_dot(t, i, j, 32), 1e-9));
    }
    const std::vector<double> too_long(600, 1.0);
    CHECK(kind_of([&] { sliding_dot_product(too_long, s); }) == ErrorKind::LengthExceedsSeries);
}

TEST_CASE("advancing dot products follows the direct loop") {
    const auto s = testing::walk(700, 9);
    const auto t = s.values();
    const std::size_t len = 24;
    auto qt = sliding_dot_product(testing::slice(s, 0, len), s);
    const auto before = qt;
    advance_dot_products(qt, s, 0, len);
    CHECK(qt == before);  // offset 0 is the identity
    for (std::size_t i = 1; i < 60; ++i) {
        advance_dot_products(qt, s, i, len);
        for (std::size_t j = 0; j < qt.size(); j += 37) CHECK_THAT(qt[j], WithinAbs(naive_dot(t, i, j, len), 1e-8));
    }
}

TEST_CASE("constant series has dot products l * c^2") {
    const auto s = DataSeries::ingest(std::vector<double>(40, 2.0));
    auto qt = sliding_dot_product(std::vector<double>(8, 2.0), s);
    for (double v : qt) CHECK_THAT(v, WithinAbs(32.0, 1e-9));
    advance_dot_products(qt, s, 5, 8);
    for (double v : qt) CHECK_THAT(v, WithinAbs(32.0, 1e-9));
}

TEST_CASE("extending a dot product by one point") {
    const auto s = DataSeries::ingest(std::vector<double>{1, 2, 3});
    CHECK_THAT(extend_dot_product(3.0, s, 0, 0, 2), WithinAbs(12.0, 1e-12));
    CHECK(kind_of([&] { (void)extend_dot_product(3.0, s, 1, 0, 2); }) == ErrorKind::OutOfRange);
}

TEST_CASE("z-normalized distance: fixed points and explicit oracle") {
    const auto s = DataSeries::ingest(std::vector<double>{1, 2, 4, 3, 1, 2, 4, 3, 6, 5, 3, 4});
    const auto t = s.values();
    const auto a = s.stats(0, 4);
    CHECK_THAT(znorm_distance(naive_dot(t, 0, 4, 4), a, s.stats(4, 4)), WithinAbs(0.0, 1e-7));
    // Window 8 is window 0 negated and shifted by 7.
    CHECK_THAT(znorm_distance(naive_dot(t, 0, 8, 4), a, s.stats(8, 4)), WithinAbs(4.0, 1e-9));

    const auto w = testing::noise(400, 21);
    const auto wt = w.values();
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<std::size_t> pick(0, 400 - 16);
    for (int r = 0; r < 200; ++r) {
        const std::size_t i = pick(rng);
        const std::size_t j = pick(rng);
        const double d = znorm_distance(naive_dot(wt, i, j, 16), w.stats(i, 16), w.stats(j, 16));
        CHECK_THAT(d, WithinRel(oracle::naive_distance(w, i, j, 16), 1e-9) || WithinAbs(0.0, 1e-9));
    }
    const auto c = DataSeries::ingest(std::vector<double>{1, 1, 1, 1, 2, 3, 4, 5});
    CHECK(kind_of([&] { (void)znorm_distance(1.0, c.stats(0, 4), c.stats(4, 4)); }) == ErrorKind::ZeroVariance);
}

TEST_CASE("distance from correlation clamps the radicand") {
    CHECK(distance_from_correlation(1.0, 16) == 0.0);
    CHECK(distance_from_correlation(1.0 + 1e-15, 16) == 0.0);
    CHECK_THAT(distance_from_correlation(-1.0, 4), WithinAbs(4.0, 1e-12));
}

TEST_CASE("trivial matches use the rounded-up half length") {
    CHECK(exclusion_radius(8) == 4);
    CHECK(exclusion_radius(9) == 5);
    CHECK(is_trivial_match(10, 13, 8));
    CHECK_FALSE(is_trivial_match(10, 14, 8));
    CHECK(is_trivial_match(14, 10, 9));
    CHECK_FALSE(is_trivial_match(15, 10, 9));
}

TEST_CASE("transform sizes are 7-smooth and not smaller than asked") {
    for (std::size_t n : {1u, 2u, 11u, 97u, 1000u, 65537u, 100000u}) {
        std::size_t m = fast_transform_size(n);
        CHECK(m >= n);
        for (std::size_t f : {2u, 3u, 5u, 7u})
            while (m % f == 0) m /= f;
        CHECK(m == 1);
    }
}

TEST_CASE("spectrum correlation is reusable across queries") {
    const auto s = testing::walk(1000, 2);
    const SeriesSpectrum spec(s.values());
    std::vector<double> out(1000 - 50 + 1);
    for (std::size_t i : {0u, 321u, 950u}) {
        spec.correlate(s.values().subspan(i, 50), out);
        const auto direct = sliding_dot_product(testing::slice(s, i, 50), s);
        for (std::size_t j = 0; j < out.size(); ++j) CHECK_THAT(out[j], WithinAbs(direct[j], 1e-9));
    }
}
