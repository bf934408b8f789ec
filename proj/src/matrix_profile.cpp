#include "mine/matrix_profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mine/bounded_heap.hpp"
#include "mine/parallel.hpp"

namespace mine {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Rows per independently seeded chunk. Fixed so that the floating-point path
// of every row is the same for any thread count.
constexpr std::size_t chunk_rows = 1024;

// Rows advanced together over one column tile, so the tile stays in cache
// while every row of the batch is updated and scanned.
constexpr std::size_t batch_rows = 32;
constexpr std::size_t tile_cols = 1024;

struct Candidate {
    double key;
    std::uint32_t j;
    double q;
    double qt;
};

// Larger key first, then smaller offset.
struct KeepLarger {
    bool operator()(const Candidate& a, const Candidate& b) const noexcept {
        return a.key > b.key || (a.key == b.key && a.j < b.j);
    }
};

using CandidateHeap = BoundedHeap<Candidate, KeepLarger>;

// Harvest key: the bound is decreasing in max(q, 0) and shares the owner's
// sigma ratio across the row, so the p smallest bounds are the p largest keys.
inline double harvest_key(double q) noexcept {
    return q > 0.0 ? (q < 1.0 ? q : 1.0) : 0.0;
}

// Running best, harvest and nearest-neighbour selection for one owner. The
// heaps order candidates totally, so any visiting order that is ascending in
// j gives the same result as one pass over the whole row.
struct RowState {
    RowState(std::size_t p, std::size_t m) : harvest(p), nearest(m) {}

    double best_q = -inf;
    std::size_t best_j = no_index;
    CandidateHeap harvest;
    CandidateHeap nearest;
    double harvest_floor = inf;
    double nearest_floor = inf;

    void reset(bool use_harvest) {
        best_q = -inf;
        best_j = no_index;
        harvest.clear();
        nearest.clear();
        harvest_floor = use_harvest && harvest.capacity() > 0 ? -inf : inf;
        nearest_floor = nearest.capacity() > 0 ? -inf : inf;
    }

    // Columns [from, to); q and qt are indexed from column `origin`.
    // Largest q that can change nothing. The harvest key is clamp(q, 0, 1),
    // so a floor of 1 or more rejects every q and a negative floor none.
    double gate() const noexcept {
        const double h = harvest_floor < 0.0 ? -inf : (harvest_floor >= 1.0 ? inf : harvest_floor);
        return std::min({best_q, nearest_floor, h});
    }

    void visit(const double* q, const double* qt, std::size_t origin, std::size_t from, std::size_t to,
               const unsigned char* constant) {
        constexpr std::size_t block = 32;
        for (std::size_t b = from; b < to; b += block) {
            const std::size_t e = std::min(to, b + block);
            // An OR of comparisons vectorizes where a max reduction would not.
            const double g = gate();
            int any = 0;
            for (std::size_t j = b; j < e; ++j) any |= q[j - origin] > g ? 1 : 0;
            if (any == 0) continue;
            visit_all(q, qt, origin, b, e, constant);
        }
    }

    void visit_all(const double* q, const double* qt, std::size_t origin, std::size_t from, std::size_t to,
                   const unsigned char* constant) {
        for (std::size_t j = from; j < to; ++j) {
            const double qj = q[j - origin];
            if (qj > best_q && constant[j] == 0) {
                best_q = qj;
                best_j = j;
            }
            const double key = harvest_key(qj);
            if (key > harvest_floor) {
                harvest.offer({key, static_cast<std::uint32_t>(j), qj, qt[j - origin]});
                if (harvest.full()) harvest_floor = harvest.worst().key;
            }
            if (qj > nearest_floor && constant[j] == 0) {
                nearest.offer({qj, static_cast<std::uint32_t>(j), qj, qt[j - origin]});
                if (nearest.full()) nearest_floor = nearest.worst().key;
            }
        }
    }
};

struct ExclusionZone {
    std::size_t lo;
    std::size_t hi;
};

ExclusionZone exclusion_zone(std::size_t i, std::size_t length, std::size_t count) {
    const std::size_t r = exclusion_radius(length);
    return {i + 1 >= r ? i + 1 - r : 0, std::min(count, i + r)};
}

// Correlations of owner i against columns [origin, origin + n) of the table.
inline void correlations(const double* qt, const WindowTable& tab, std::size_t i, std::size_t origin,
                         std::size_t n, double* q) {
    const double inv_len = 1.0 / static_cast<double>(tab.length);
    const double mu_i = tab.mu[i];
    const double is_i = tab.inv_sigma[i];
    const double* __restrict mu = tab.mu.data() + origin;
    const double* __restrict is = tab.inv_sigma.data() + origin;
    for (std::size_t x = 0; x < n; ++x) q[x] = (qt[x] * inv_len - mu_i * mu[x]) * (is_i * is[x]);
}

// Visits the admissible part of columns [from, to).
void visit_admissible(RowState& st, const double* q, const double* qt, std::size_t origin,
                      std::size_t from, std::size_t to, ExclusionZone z, const unsigned char* constant) {
    st.visit(q, qt, origin, from, std::min(to, std::max(from, z.lo)), constant);
    st.visit(q, qt, origin, std::max(from, std::min(to, z.hi)), to, constant);
}

struct RowScratch {
    RowScratch(std::size_t count, std::size_t p, std::size_t m) : q(count), state(p, m) {}
    std::vector<double> q;
    RowState state;
};

// One owner against every window, from a full dot-product row.
void scan_row(std::span<const double> qt, const WindowTable& tab, std::size_t i, RowScratch& s,
              bool harvest) {
    const std::size_t count = tab.size();
    s.state.reset(harvest);
    if (tab.constant[i] != 0) return;
    correlations(qt.data(), tab, i, 0, count, s.q.data());
    visit_admissible(s.state, s.q.data(), qt.data(), 0, 0, count, exclusion_zone(i, tab.length, count),
                     tab.constant.data());
}

std::size_t admissible_count(std::size_t i, std::size_t length, std::size_t count) {
    const ExclusionZone z = exclusion_zone(i, length, count);
    return z.lo + (count - z.hi);
}

PartialDistanceProfile build_profile(std::size_t i, const WindowTable& tab, const DataSeries& series,
                                     const RowState& st) {
    PartialDistanceProfile prof;
    prof.owner = static_cast<std::uint32_t>(i);
    prof.length = tab.length;
    prof.base_length = tab.length;
    if (tab.constant[i] != 0) {
        prof.bound_numerator = 0.0;
        return prof;
    }
    const double sigma_i = tab.sigma[i];
    double sigma_next = sigma_i;
    if (i + tab.length < series.size()) sigma_next = series.sigma(i, tab.length + 1);

    const auto kept = st.harvest.sorted();
    prof.entries.reserve(kept.size());
    for (const auto& c : kept) {
        ProfileEntry e;
        e.owner = prof.owner;
        e.neighbor = c.j;
        e.qt = c.qt;
        e.dist = tab.constant[c.j] != 0 ? inf : distance_from_correlation(c.q, tab.length);
        e.lb = sigma_next > 0.0 ? bound_numerator(c.key, tab.length, sigma_i) / sigma_next : inf;
        prof.entries.push_back(e);
    }
    prof.bound_numerator = admissible_count(i, tab.length, tab.size()) > kept.size()
                               ? bound_numerator(kept.back().key, tab.length, sigma_i)
                               : inf;
    return prof;
}

void fill_nearest(const RowState& st, std::size_t length, std::span<double> out) {
    std::fill(out.begin(), out.end(), inf);
    const auto best = st.nearest.sorted();
    for (std::size_t r = 0; r < best.size() && r < out.size(); ++r)
        out[r] = distance_from_correlation(best[r].key, length);
}

void check_length(const DataSeries& series, std::size_t length) {
    if (length < 4)
        throw Error(ErrorKind::InvalidParameters, "subsequence length must be at least 4");
    if (series.size() < length + exclusion_radius(length))
        throw Error(ErrorKind::SeriesTooShort,
                    "series of " + std::to_string(series.size()) +
                        " points has no non-trivial pair at length " + std::to_string(length));
}

}  // namespace

double PartialDistanceProfile::threshold(const DataSeries& series, std::size_t at) const noexcept {
    if (bound_numerator == inf) return inf;
    const double sigma = series.sigma(owner, at);
    if (sigma < series.constant_threshold()) return inf;  // the row has no finite distance
    return bound_numerator / sigma;
}

double PartialDistanceProfile::max_lb() const noexcept {
    double m = 0.0;
    for (const auto& e : entries) m = std::max(m, e.lb);
    return m;
}

ProfileRun compute_matrix_profile(const DataSeries& series, std::size_t length,
                                  const ProfileOptions& options) {
    check_length(series, length);
    if (options.p < 1) throw Error(ErrorKind::InvalidParameters, "p must be at least 1");
    const WindowTable tab(series, length);
    if (tab.all_constant())
        throw Error(ErrorKind::AllConstant, "every window of length " + std::to_string(length) +
                                                " has zero variance");
    const std::size_t count = tab.size();
    const auto t = series.values();
    const SeriesSpectrum spectrum(t);

    std::vector<double> row0(count);
    spectrum.correlate(t.subspan(0, length), row0);

    ProfileRun run;
    run.profile.length = length;
    run.profile.distances.assign(count, inf);
    run.profile.indices.assign(count, no_index);
    if (options.keep_partial) run.partial.resize(count);
    const std::size_t m = options.nearest;
    run.nearest.assign(count * m, inf);

    const std::size_t chunks = (count + chunk_rows - 1) / chunk_rows;
    const std::size_t p = options.keep_partial ? options.p : 0;
    const double* ts = t.data();
    parallel_for(chunks, options.threads, [&](std::size_t c) {
        const std::size_t begin = c * chunk_rows;
        const std::size_t end = std::min(count, begin + chunk_rows);
        // `above` holds the dot products of the row before the current batch;
        // for the first batch it holds the chunk's seed row itself.
        std::vector<double> above(count);
        if (begin == 0)
            std::copy(row0.begin(), row0.end(), above.begin());
        else
            spectrum.correlate(t.subspan(begin, length), above);
        std::vector<RowState> states(batch_rows, RowState(p, m));
        std::vector<double> tile(batch_rows * tile_cols);
        std::vector<double> q(tile_cols);
        std::vector<double> carry(batch_rows);  // row a+r-1 at column j0-1

        for (std::size_t a = begin; a < end; a += batch_rows) {
            const std::size_t rows = std::min(end - a, batch_rows);
            for (std::size_t r = 0; r < rows; ++r) states[r].reset(options.keep_partial);
            for (std::size_t j0 = 0; j0 < count; j0 += tile_cols) {
                const std::size_t j1 = std::min(count, j0 + tile_cols);
                const std::size_t w = j1 - j0;
                const double carry_above = above[j1 - 1];
                for (std::size_t r = 0; r < rows; ++r) {
                    const std::size_t i = a + r;
                    double* __restrict cur = tile.data() + r * tile_cols;
                    if (i == begin) {
                        std::copy_n(above.data() + j0, w, cur);
                    } else {
                        const double* __restrict prev = r == 0 ? above.data() + j0 : cur - tile_cols;
                        const double head = ts[i - 1];
                        const double tail = ts[i + length - 1];
                        const double* __restrict lo = ts + j0;
                        const double* __restrict hi = ts + j0 + length - 1;
                        cur[0] = j0 == 0 ? row0[i] : carry[r] - ts[j0 - 1] * head + hi[0] * tail;
                        for (std::size_t x = 1; x < w; ++x) cur[x] = prev[x - 1] - lo[x - 1] * head + hi[x] * tail;
                    }
                    if (tab.constant[i] != 0) continue;
                    correlations(cur, tab, i, j0, w, q.data());
                    visit_admissible(states[r], q.data(), cur, j0, j0, j1, exclusion_zone(i, length, count),
                                     tab.constant.data());
                }
                carry[0] = carry_above;
                for (std::size_t r = 1; r < rows; ++r) carry[r] = tile[(r - 1) * tile_cols + w - 1];
                std::copy_n(tile.data() + (rows - 1) * tile_cols, w, above.data() + j0);
            }
            for (std::size_t r = 0; r < rows; ++r) {
                const std::size_t i = a + r;
                const RowState& st = states[r];
                if (st.best_j != no_index) {
                    run.profile.distances[i] = distance_from_correlation(st.best_q, length);
                    run.profile.indices[i] = st.best_j;
                }
                if (options.keep_partial) run.partial[i] = build_profile(i, tab, series, st);
                if (m > 0) fill_nearest(st, length, std::span<double>(run.nearest).subspan(i * m, m));
            }
        }
    });
    return run;
}

std::pair<double, std::size_t> min_with_exclusion(std::span<const double> row, std::size_t i,
                                                  std::size_t length) {
    double best = inf;
    std::size_t arg = no_index;
    for (std::size_t j = 0; j < row.size(); ++j) {
        if (is_trivial_match(i, j, length)) continue;
        if (row[j] < best) {
            best = row[j];
            arg = j;
        }
    }
    if (arg == no_index)
        throw Error(ErrorKind::NoValidNeighbor,
                    "no admissible neighbour outside the exclusion zone of offset " +
                        std::to_string(i));
    return {best, arg};
}

RowEngine::RowEngine(const DataSeries& series) : series_(&series), spectrum_(series.values()) {}

namespace {

// Owners at most this far apart share a dot-product vector; walking a gap
// costs O(n) per row against O(n log n) for a fresh transform.
constexpr std::size_t max_gap = 16;

RowEngine::Row finish_row(std::size_t owner, const WindowTable& table, const DataSeries& series,
                          std::span<const double> qt, RowScratch& s) {
    scan_row(qt, table, owner, s, true);
    RowEngine::Row row;
    if (s.state.best_j != no_index) {
        row.min_dist = distance_from_correlation(s.state.best_q, table.length);
        row.argmin = s.state.best_j;
    }
    row.profile = build_profile(owner, table, series, s.state);
    const auto best = s.state.nearest.sorted();
    row.nearest.reserve(best.size());
    for (const auto& c : best) row.nearest.push_back(distance_from_correlation(c.key, table.length));
    return row;
}

}  // namespace

RowEngine::Row RowEngine::recompute(std::size_t owner, const WindowTable& table, std::size_t p,
                                    std::size_t nearest) const {
    const std::size_t count = table.size();
    std::vector<double> qt(count);
    spectrum_.correlate(series_->values().subspan(owner, table.length), qt);
    RowScratch s(count, p, nearest);
    return finish_row(owner, table, *series_, qt, s);
}

std::vector<RowEngine::Row> RowEngine::recompute_rows(std::span<const std::size_t> owners,
                                                      const WindowTable& table, std::size_t p,
                                                      std::size_t nearest, unsigned threads) const {
    std::vector<Row> out(owners.size());
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    for (std::size_t a = 0; a < owners.size();) {
        std::size_t b = a + 1;
        while (b < owners.size() && owners[b] - owners[b - 1] <= max_gap &&
               owners[b] - owners[a] < chunk_rows)
            ++b;
        runs.emplace_back(a, b);
        a = b;
    }
    const std::size_t count = table.size();
    parallel_for(runs.size(), threads, [&](std::size_t r) {
        const auto [a, b] = runs[r];
        std::vector<double> qt(count);
        RowScratch s(count, p, nearest);
        std::size_t cur = owners[a];
        spectrum_.correlate(series_->values().subspan(cur, table.length), qt);
        for (std::size_t k = a; k < b; ++k) {
            while (cur < owners[k]) advance_dot_products(qt, *series_, ++cur, table.length);
            out[k] = finish_row(owners[k], table, *series_, qt, s);
        }
    });
    return out;
}

std::vector<double> RowEngine::distance_row(std::size_t owner, const WindowTable& table) const {
    const std::size_t count = table.size();
    std::vector<double> row(count, inf);
    if (table.constant[owner] != 0) return row;
    std::vector<double> qt(count);
    spectrum_.correlate(series_->values().subspan(owner, table.length), qt);
    const double inv_len = 1.0 / static_cast<double>(table.length);
    for (std::size_t j = 0; j < count; ++j) {
        if (table.constant[j] != 0 || is_trivial_match(owner, j, table.length)) continue;
        const double q = (qt[j] * inv_len - table.mu[owner] * table.mu[j]) *
                         (table.inv_sigma[owner] * table.inv_sigma[j]);
        row[j] = distance_from_correlation(q, table.length);
    }
    return row;
}

}  // namespace mine
