#include "mine/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mine/parallel.hpp"

namespace mine::oracle {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Every admissible distance of one length, row-major; +inf on trivial
// matches and constant windows. Each pair is evaluated once.
std::vector<double> pairwise(const NormalizedWindows& w) {
    std::vector<double> d(w.count * w.count, inf);
    for (std::size_t i = 0; i < w.count; ++i)
        for (std::size_t j = i + exclusion_radius(w.length); j < w.count; ++j)
            d[i * w.count + j] = d[j * w.count + i] = w.distance(i, j);
    return d;
}

}  // namespace

NormalizedWindows::NormalizedWindows(const DataSeries& series, std::size_t len)
    : length(len), count(series.window_count(len)), z(count * len, 0.0), constant(count, 0) {
    const auto t = series.values();
    for (std::size_t i = 0; i < count; ++i) {
        double mean = 0.0;
        for (std::size_t p = 0; p < len; ++p) mean += t[i + p];
        mean /= static_cast<double>(len);
        double var = 0.0;
        for (std::size_t p = 0; p < len; ++p) var += (t[i + p] - mean) * (t[i + p] - mean);
        const double sd = std::sqrt(var / static_cast<double>(len));
        if (sd < series.constant_threshold()) {
            constant[i] = 1;
            continue;
        }
        for (std::size_t p = 0; p < len; ++p) z[i * len + p] = (t[i + p] - mean) / sd;
    }
}

double NormalizedWindows::distance(std::size_t i, std::size_t j) const {
    if (constant[i] != 0 || constant[j] != 0) return inf;
    const double* a = z.data() + i * length;
    const double* b = z.data() + j * length;
    double s = 0.0;
    for (std::size_t p = 0; p < length; ++p) s += (a[p] - b[p]) * (a[p] - b[p]);
    return std::sqrt(s);
}

double naive_distance(const DataSeries& series, std::size_t i, std::size_t j, std::size_t length) {
    const auto t = series.values();
    auto normalize = [&](std::size_t o) {
        std::vector<double> w(t.begin() + static_cast<std::ptrdiff_t>(o),
                              t.begin() + static_cast<std::ptrdiff_t>(o + length));
        double mean = 0.0;
        for (double v : w) mean += v;
        mean /= static_cast<double>(length);
        double var = 0.0;
        for (double v : w) var += (v - mean) * (v - mean);
        const double sd = std::sqrt(var / static_cast<double>(length));
        for (double& v : w) v = (v - mean) / sd;
        return w;
    };
    const auto a = normalize(i);
    const auto b = normalize(j);
    double s = 0.0;
    for (std::size_t p = 0; p < length; ++p) s += (a[p] - b[p]) * (a[p] - b[p]);
    return std::sqrt(s);
}

MatrixProfile brute_force_matrix_profile(const DataSeries& series, std::size_t length) {
    const NormalizedWindows w(series, length);
    const std::vector<double> d = pairwise(w);
    MatrixProfile mp;
    mp.length = length;
    mp.distances.assign(w.count, inf);
    mp.indices.assign(w.count, no_index);
    for (std::size_t i = 0; i < w.count; ++i) {
        const double* row = d.data() + i * w.count;
        for (std::size_t j = 0; j < w.count; ++j) {
            if (row[j] < mp.distances[i]) {
                mp.distances[i] = row[j];
                mp.indices[i] = j;
            }
        }
    }
    return mp;
}

MotifReference brute_force_motifs(const DataSeries& series, std::size_t min_length,
                                  std::size_t max_length, unsigned threads) {
    MotifReference ref;
    const std::size_t lengths = max_length - min_length + 1;
    ref.profiles.resize(lengths);
    parallel_for(lengths, threads, [&](std::size_t k) {
        ref.profiles[k] = brute_force_matrix_profile(series, min_length + k);
    });

    ref.valmp = Valmp(series.window_count(min_length));
    for (const MatrixProfile& mp : ref.profiles) {
        std::size_t best = no_index;
        const double scale = std::sqrt(1.0 / static_cast<double>(mp.length));
        for (std::size_t i = 0; i < mp.size(); ++i) {
            const double d = mp.distances[i];
            if (!std::isfinite(d)) continue;
            if (best == no_index || d < mp.distances[best]) best = i;
            const double norm = d * scale;
            if (ref.valmp.populated[i] == 0 || norm < ref.valmp.norm_distances[i]) {
                ref.valmp.distances[i] = d;
                ref.valmp.norm_distances[i] = norm;
                ref.valmp.lengths[i] = mp.length;
                ref.valmp.indices[i] = mp.indices[i];
                ref.valmp.populated[i] = 1;
            }
        }
        if (best == no_index) continue;
        MotifPair pair;
        pair.first = std::min(best, mp.indices[best]);
        pair.second = std::max(best, mp.indices[best]);
        pair.length = mp.length;
        pair.distance = mp.distances[best];
        pair.norm_distance = pair.distance * scale;
        ref.per_length.push_back(pair);
    }
    return ref;
}

DiscordReference brute_force_discords(const DataSeries& series, std::size_t min_length,
                                      std::size_t max_length, std::size_t k, std::size_t m,
                                      unsigned threads) {
    DiscordReference ref;
    const std::size_t lengths = max_length - min_length + 1;
    ref.per_length.resize(lengths);
    parallel_for(lengths, threads, [&](std::size_t li) {
        const std::size_t L = min_length + li;
        const NormalizedWindows w(series, L);
        const std::vector<double> d = pairwise(w);
        // Row-major k x m grid; columns sorted descending.
        std::vector<DiscordCell> grid(k * m);
        std::vector<std::size_t> stored;
        for (std::size_t i = 0; i < w.count; ++i) {
            if (w.constant[i] != 0) continue;
            std::vector<double> row(d.begin() + static_cast<std::ptrdiff_t>(i * w.count),
                                    d.begin() + static_cast<std::ptrdiff_t>((i + 1) * w.count));
            std::erase_if(row, [](double d) { return !std::isfinite(d); });
            if (row.size() < m) continue;
            std::sort(row.begin(), row.end());
            const bool trivial = std::any_of(stored.begin(), stored.end(), [&](std::size_t o) {
                return is_trivial_match(i, o, L);
            });
            if (trivial) continue;
            bool inserted = false;
            for (std::size_t c = m; c-- > 0 && !inserted;) {
                for (std::size_t r = 0; r < k; ++r) {
                    if (!clearly_greater(row[c], grid[r * m + c].distance)) continue;
                    const DiscordCell last = grid[(k - 1) * m + c];
                    for (std::size_t s = k - 1; s > r; --s) grid[s * m + c] = grid[(s - 1) * m + c];
                    grid[r * m + c] = DiscordCell{row[c], i};
                    if (!last.empty()) std::erase(stored, last.offset);
                    stored.push_back(i);
                    inserted = true;
                    break;
                }
            }
        }
        ref.per_length[li] = DiscordMatrix::from_cells(k, m, L, std::move(grid));
    });

    ref.merged = VariableLengthDiscordMatrix(k, m);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < m; ++c) {
            VariableDiscordCell best;
            for (const DiscordMatrix& dkm : ref.per_length) {
                const DiscordCell& cell = dkm.at(r, c);
                if (cell.empty()) continue;
                const double norm = cell.distance * std::sqrt(1.0 / static_cast<double>(dkm.length()));
                if (best.empty() || !clearly_greater(best.norm_distance, norm))
                    best = VariableDiscordCell{norm, cell.distance, cell.offset, dkm.length()};
            }
            ref.merged.cells[r * m + c] = best;
        }
    return ref;
}

std::vector<std::size_t> range_query(const DataSeries& series, const MotifPair& anchors,
                                     double radius, const std::set<std::size_t>& used) {
    const std::size_t L = anchors.length;
    const NormalizedWindows w(series, L);
    std::vector<std::pair<double, std::size_t>> candidates;
    for (std::size_t j = 0; j < w.count; ++j) {
        if (is_trivial_match(j, anchors.first, L) || is_trivial_match(j, anchors.second, L)) continue;
        if (used.count(j) != 0) continue;
        const double d = std::min(w.distance(anchors.first, j), w.distance(anchors.second, j));
        if (d < radius) candidates.emplace_back(d, j);
    }
    std::sort(candidates.begin(), candidates.end());
    std::vector<std::size_t> members{anchors.first, anchors.second};
    for (const auto& [d, j] : candidates) {
        const bool clash = std::any_of(members.begin(), members.end(),
                                       [&](std::size_t o) { return is_trivial_match(j, o, L); });
        if (!clash) members.push_back(j);
    }
    std::sort(members.begin(), members.end());
    return members;
}

}  // namespace mine::oracle
