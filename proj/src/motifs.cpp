#include "mine/motifs.hpp"

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

// Profiles per parallel task in the advancement pass.
constexpr std::size_t profile_block = 4096;

struct ProfileState {
    double min_dist = inf;
    std::size_t argmin = no_index;
    double tau = inf;
    bool valid = false;
};

ProfileState classify(const PartialDistanceProfile& prof, const WindowTable& tab) {
    ProfileState st;
    const std::size_t i = prof.owner;
    if (tab.constant[i] != 0) {
        st.valid = true;  // no admissible neighbour exists
        return st;
    }
    for (const auto& e : prof.entries) {
        if (e.dist < st.min_dist || (e.dist == st.min_dist && e.neighbor < st.argmin)) {
            st.min_dist = e.dist;
            st.argmin = e.neighbor;
        }
    }
    if (!std::isfinite(st.min_dist)) st.argmin = no_index;
    st.tau = prof.bound_numerator == inf ? inf : prof.bound_numerator / tab.sigma[i];
    st.valid = st.min_dist < st.tau;
    return st;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

Valmp::Valmp(std::size_t size)
    : distances(size, inf),
      norm_distances(size, inf),
      lengths(size, 0),
      indices(size, no_index),
      populated(size, 0) {}

std::vector<std::size_t> update_valmp(Valmp& valmp, const MatrixProfile& mp) {
    std::vector<std::size_t> improved;
    const double scale = std::sqrt(1.0 / static_cast<double>(mp.length));
    const std::size_t count = std::min(valmp.size(), mp.size());
    for (std::size_t i = 0; i < count; ++i) {
        const double d = mp.distances[i];
        if (!std::isfinite(d)) continue;
        const double norm = d * scale;
        if (valmp.populated[i] != 0 && !(valmp.norm_distances[i] > norm)) continue;
        valmp.distances[i] = d;
        valmp.norm_distances[i] = norm;
        valmp.lengths[i] = mp.length;
        valmp.indices[i] = mp.indices[i];
        valmp.populated[i] = 1;
        improved.push_back(i);
    }
    return improved;
}

MotifPair top_variable_length_motif(const Valmp& valmp) {
    std::size_t best = no_index;
    for (std::size_t i = 0; i < valmp.size(); ++i) {
        if (valmp.populated[i] == 0) continue;
        // One length per offset, so ascending order settles every tie.
        if (best == no_index || valmp.norm_distances[i] < valmp.norm_distances[best]) best = i;
    }
    if (best == no_index) throw Error(ErrorKind::Unpopulated, "the VALMP holds no match");
    MotifPair pair;
    pair.first = std::min(best, valmp.indices[best]);
    pair.second = std::max(best, valmp.indices[best]);
    pair.length = valmp.lengths[best];
    pair.distance = valmp.distances[best];
    pair.norm_distance = valmp.norm_distances[best];
    return pair;
}

bool best_pair(const MatrixProfile& mp, MotifPair& out) {
    std::size_t best = no_index;
    for (std::size_t i = 0; i < mp.size(); ++i)
        if (std::isfinite(mp.distances[i]) &&
            (best == no_index || mp.distances[i] < mp.distances[best]))
            best = i;
    if (best == no_index) return false;
    out.first = std::min(best, mp.indices[best]);
    out.second = std::max(best, mp.indices[best]);
    out.length = mp.length;
    out.distance = mp.distances[best];
    out.norm_distance = out.distance * std::sqrt(1.0 / static_cast<double>(mp.length));
    return true;
}

SubMp compute_sub_mp(const DataSeries& series, const RowEngine& engine,
                     std::vector<PartialDistanceProfile>& list_dp, std::size_t new_length,
                     const SubMpOptions& options) {
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

    std::vector<ProfileState> states(count);
    const std::size_t blocks = (count + profile_block - 1) / profile_block;
    std::vector<detail::BlockTlb> tlb(blocks);
    parallel_for(blocks, options.threads, [&](std::size_t b) {
        const std::size_t end = std::min(count, (b + 1) * profile_block);
        for (std::size_t i = b * profile_block; i < end; ++i) {
            detail::advance_profile(list_dp[i], tab, next, t, tlb[b]);
            states[i] = classify(list_dp[i], tab);
        }
    });

    SubMp out;
    out.profile.length = L;
    out.profile.distances.assign(count, inf);
    out.profile.indices.assign(count, no_index);
    out.defined.assign(count, 0);
    LengthTrace& trace = out.trace;
    trace.length = L;
    trace.profiles = count;
    for (const auto& b : tlb) {
        trace.tlb_sum += b.sum;
        trace.tlb_count += b.count;
    }

    double min_dist_abs = inf;
    double min_lb_abs = inf;
    for (std::size_t i = 0; i < count; ++i) {
        const ProfileState& st = states[i];
        if (st.valid) {
            ++trace.valid;
            out.profile.distances[i] = st.min_dist;
            out.profile.indices[i] = st.argmin;
            out.defined[i] = 1;
            min_dist_abs = std::min(min_dist_abs, st.min_dist);
        } else {
            ++trace.non_valid;
            min_lb_abs = std::min(min_lb_abs, st.tau);
        }
    }
    out.best_motif_certified = min_dist_abs < min_lb_abs;
    trace.certified = out.best_motif_certified;

    // Rows whose bound admits a distance at or below the best certified one,
    // or (with a VALMP) an improvement of their VALMP entry.
    const double scale = std::sqrt(1.0 / static_cast<double>(L));
    std::vector<std::size_t> refine;
    for (std::size_t i = 0; i < count; ++i) {
        const ProfileState& st = states[i];
        if (st.valid) continue;
        bool need = st.tau <= min_dist_abs;
        if (!need && options.valmp != nullptr && i < options.valmp->size())
            need = options.valmp->populated[i] == 0 || st.tau * scale < options.valmp->norm_distances[i];
        if (need) refine.push_back(i);
    }

    const double limit = static_cast<double>(n) * std::log(static_cast<double>(options.p)) /
                         std::log(static_cast<double>(n));
    if (!refine.empty() && static_cast<double>(refine.size()) >= limit) {
        out.needs_full = true;
        out.min_dist_abs = min_dist_abs;
        out.min_lb_abs = min_lb_abs;
        trace.seconds = seconds_since(start);
        return out;
    }

    auto rows = engine.recompute_rows(refine, tab, options.p, 0, options.threads);
    for (std::size_t k = 0; k < refine.size(); ++k) {
        const std::size_t i = refine[k];
        out.profile.distances[i] = rows[k].min_dist;
        out.profile.indices[i] = rows[k].argmin;
        out.defined[i] = 1;
        list_dp[i] = std::move(rows[k].profile);
        min_dist_abs = std::min(min_dist_abs, rows[k].min_dist);
    }
    trace.recomputed = refine.size();
    out.min_dist_abs = min_dist_abs;
    out.min_lb_abs = min_lb_abs;
    trace.seconds = seconds_since(start);
    return out;
}

void check_length_range(const DataSeries& series, std::size_t min_length, std::size_t max_length,
                        std::size_t p) {
    if (min_length > max_length)
        throw Error(ErrorKind::InvalidParameters, "lmin must not exceed lmax");
    if (min_length < 4) throw Error(ErrorKind::InvalidParameters, "lmin must be at least 4");
    if (p < 1) throw Error(ErrorKind::InvalidParameters, "p must be at least 1");
    if (series.size() < max_length + exclusion_radius(max_length))
        throw Error(ErrorKind::SeriesTooShort,
                    "series of " + std::to_string(series.size()) + " points is too short for lmax " +
                        std::to_string(max_length));
}

MotifResult find_variable_length_motifs(const DataSeries& series, std::size_t min_length,
                                        std::size_t max_length, const MotifOptions& options) {
    check_length_range(series, min_length, max_length, options.p);
    const RowEngine engine(series);
    ProfileOptions po;
    po.p = options.p;
    po.threads = options.threads;

    MotifResult result;
    ProfileRun run = compute_matrix_profile(series, min_length, po);
    result.valmp = Valmp(run.profile.size());
    auto improved = update_valmp(result.valmp, run.profile);
    MotifPair pair;
    if (best_pair(run.profile, pair)) result.per_length.push_back(pair);
    std::vector<PartialDistanceProfile> list_dp = std::move(run.partial);
    if (options.observer) options.observer(run.profile, improved, list_dp);

    for (std::size_t L = min_length + 1; L <= max_length; ++L) {
        const auto start = std::chrono::steady_clock::now();
        SubMpOptions so;
        so.p = options.p;
        so.threads = options.threads;
        so.valmp = options.exact_valmp ? &result.valmp : nullptr;
        SubMp sub = compute_sub_mp(series, engine, list_dp, L, so);
        MatrixProfile mp;
        if (sub.needs_full) {
            run = compute_matrix_profile(series, L, po);
            list_dp = std::move(run.partial);
            mp = std::move(run.profile);
            sub.trace.full_recompute = true;
        } else {
            mp = std::move(sub.profile);
        }
        improved = update_valmp(result.valmp, mp);
        if (best_pair(mp, pair)) result.per_length.push_back(pair);
        if (options.observer) options.observer(mp, improved, list_dp);
        sub.trace.seconds = seconds_since(start);
        result.trace.push_back(sub.trace);
    }
    return result;
}

}  // namespace mine
