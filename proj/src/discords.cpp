#include "mine/discords.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "mine/parallel.hpp"
#include "profile_step.hpp"

namespace mine {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr std::size_t profile_block = 4096;

struct OwnerState {
    bool constant = false;
    bool valid = false;
};

}  // namespace

DiscordMatrix::DiscordMatrix(std::size_t k, std::size_t m, std::size_t length)
    : k_(k), m_(m), length_(length), cells_(k * m) {}

DiscordMatrix DiscordMatrix::from_cells(std::size_t k, std::size_t m, std::size_t length,
                                       std::vector<DiscordCell> cells) {
    if (cells.size() != k * m)
        throw Error(ErrorKind::InvalidParameters, "cell count does not match k x m");
    DiscordMatrix out(k, m, length);
    out.cells_ = std::move(cells);
    for (const auto& c : out.cells_)
        if (!c.empty()) out.occupied_.insert(c.offset);
    return out;
}

bool DiscordMatrix::conflicts(std::size_t offset) const {
    const std::size_t r = exclusion_radius(length_);
    const std::size_t low = offset + 1 >= r ? offset + 1 - r : 0;
    const auto it = occupied_.lower_bound(low);
    return it != occupied_.end() && *it < offset + r;
}

bool DiscordMatrix::insert(std::size_t column, double distance, std::size_t offset) {
    for (std::size_t r = 0; r < k_; ++r) {
        if (!clearly_greater(distance, cell(r, column).distance)) continue;
        const DiscordCell dropped = cell(k_ - 1, column);
        for (std::size_t s = k_ - 1; s > r; --s) cell(s, column) = cell(s - 1, column);
        cell(r, column) = DiscordCell{distance, offset};
        if (!dropped.empty()) occupied_.erase(dropped.offset);
        occupied_.insert(offset);
        return true;
    }
    return false;
}

VariableLengthDiscordMatrix::VariableLengthDiscordMatrix(std::size_t k_, std::size_t m_)
    : k(k_), m(m_), cells(k_ * m_) {}

bool update_fixed_length_discords(DiscordMatrix& dkm, std::span<const double> nearest,
                                  std::size_t offset) {
    if (nearest.size() < dkm.m())
        throw Error(ErrorKind::InvalidParameters, "fewer nearest distances than columns");
    for (std::size_t c = dkm.m(); c-- > 0;)
        if (dkm.insert(c, nearest[c], offset)) return true;
    return false;
}

void update_variable_length_discords(const DiscordMatrix& dkm, VariableLengthDiscordMatrix& range) {
    if (dkm.k() != range.k || dkm.m() != range.m)
        throw Error(ErrorKind::InvalidParameters, "discord matrices differ in shape");
    const double scale = std::sqrt(1.0 / static_cast<double>(dkm.length()));
    for (std::size_t r = 0; r < range.k; ++r)
        for (std::size_t c = 0; c < range.m; ++c) {
            const DiscordCell& src = dkm.at(r, c);
            if (src.empty()) continue;
            VariableDiscordCell& dst = range.cells[r * range.m + c];
            const double norm = src.distance * scale;
            if (dst.empty() || !clearly_greater(dst.norm_distance, norm))
                dst = VariableDiscordCell{norm, src.distance, src.offset, dkm.length()};
        }
}

DiscordMatrix topkm_next_length(const DataSeries& series, const RowEngine& engine,
                                std::vector<PartialDistanceProfile>& list_dp,
                                std::size_t new_length, std::size_t k, std::size_t m,
                                const DiscordOptions& options, LengthTrace* trace) {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = series.size();
    const std::size_t L = new_length;
    if (L < 2 || L > n) throw Error(ErrorKind::InvalidParameters, "length step outside the series");
    const std::size_t count = n - L + 1;
    if (list_dp.size() < count)
        throw Error(ErrorKind::InvalidParameters, "partial profiles do not cover every window");
    list_dp.resize(count);

    const WindowTable tab(series, L);
    const WindowTable next = L < n ? WindowTable(series, L + 1) : WindowTable{};
    const auto t = series.values();

    // First pass: advance every profile and keep its m smallest stored
    // distances, which certify the owner when they sit below its bound.
    std::vector<OwnerState> states(count);
    std::vector<double> stored(count * m, inf);
    const std::size_t blocks = (count + profile_block - 1) / profile_block;
    std::vector<detail::BlockTlb> tlb(blocks);
    parallel_for(blocks, options.threads, [&](std::size_t b) {
        std::vector<double> dists;
        const std::size_t end = std::min(count, (b + 1) * profile_block);
        for (std::size_t i = b * profile_block; i < end; ++i) {
            PartialDistanceProfile& prof = list_dp[i];
            detail::advance_profile(prof, tab, next, t, tlb[b]);
            OwnerState& st = states[i];
            st.constant = tab.constant[i] != 0;
            if (st.constant) continue;
            dists.clear();
            for (const auto& e : prof.entries)
                if (std::isfinite(e.dist)) dists.push_back(e.dist);
            const std::size_t keep = std::min(m, dists.size());
            std::partial_sort(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(keep),
                              dists.end());
            std::copy_n(dists.begin(), keep, stored.begin() + static_cast<std::ptrdiff_t>(i * m));
            const double tau = prof.bound_numerator == inf ? inf : prof.bound_numerator / tab.sigma[i];
            st.valid = keep == m && dists[m - 1] < tau;
            if (!st.valid && prof.bound_numerator == inf && keep < m) {
                // The whole row is stored and has fewer than m admissible
                // neighbours: certified, and the owner is never offered.
                st.valid = true;
            }
        }
    });

    LengthTrace local;
    local.length = L;
    local.profiles = count;
    for (const auto& b : tlb) {
        local.tlb_sum += b.sum;
        local.tlb_count += b.count;
    }

    // Second pass, in offset order: the matrix thresholds evolve.
    DiscordMatrix dkm(k, m, L);
    for (std::size_t i = 0; i < count; ++i) {
        const OwnerState& st = states[i];
        if (st.constant || st.valid) ++local.valid;
        else ++local.non_valid;
        if (st.constant || dkm.conflicts(i)) continue;
        std::span<const double> row(stored.data() + i * m, m);
        if (st.valid) {
            if (std::isfinite(row[m - 1])) update_fixed_length_discords(dkm, row, i);
            continue;
        }
        bool may_enter = false;
        for (std::size_t c = 0; c < m && !may_enter; ++c)
            may_enter = row[c] > dkm.at(k - 1, c).distance;
        if (!may_enter) continue;
        RowEngine::Row fresh = engine.recompute(i, tab, options.p, m);
        ++local.recomputed;
        list_dp[i] = std::move(fresh.profile);
        if (fresh.nearest.size() >= m) update_fixed_length_discords(dkm, fresh.nearest, i);
    }
    local.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (trace != nullptr) *trace = local;
    return dkm;
}

DiscordResult topkm_discord_discovery(const DataSeries& series, std::size_t min_length,
                                      std::size_t max_length, std::size_t k, std::size_t m,
                                      const DiscordOptions& options) {
    if (k < 1 || m < 1) throw Error(ErrorKind::InvalidParameters, "k and m must be at least 1");
    if (options.p < m)
        throw Error(ErrorKind::InvalidParameters,
                    "p must be at least m (p = " + std::to_string(options.p) +
                        ", m = " + std::to_string(m) + ")");
    check_length_range(series, min_length, max_length, options.p);

    ProfileOptions po;
    po.p = options.p;
    po.nearest = m;
    po.threads = options.threads;
    ProfileRun run = compute_matrix_profile(series, min_length, po);

    DiscordResult result;
    result.merged = VariableLengthDiscordMatrix(k, m);
    DiscordMatrix dkm(k, m, min_length);
    for (std::size_t i = 0; i < run.profile.size(); ++i) {
        std::span<const double> row(run.nearest.data() + i * m, m);
        if (!std::isfinite(row[m - 1]) || dkm.conflicts(i)) continue;
        update_fixed_length_discords(dkm, row, i);
    }
    update_variable_length_discords(dkm, result.merged);
    if (options.keep_per_length) result.per_length.push_back(std::move(dkm));

    const RowEngine engine(series);
    std::vector<PartialDistanceProfile> list_dp = std::move(run.partial);
    for (std::size_t L = min_length + 1; L <= max_length; ++L) {
        LengthTrace trace;
        DiscordMatrix next = topkm_next_length(series, engine, list_dp, L, k, m, options, &trace);
        update_variable_length_discords(next, result.merged);
        if (options.keep_per_length) result.per_length.push_back(std::move(next));
        result.trace.push_back(trace);
    }
    return result;
}

}  // namespace mine
