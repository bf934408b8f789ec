#pragma once

// Per-length advancement of partial profiles, shared by the motif and
// discord drivers.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include "mine/matrix_profile.hpp"

namespace mine::detail {

inline constexpr double unbounded = std::numeric_limits<double>::infinity();

struct BlockTlb {
    double sum = 0.0;
    std::size_t count = 0;
};

// Advances one profile from length L - 1 to L. Entries whose neighbour no
// longer fits or falls into the widened exclusion zone are dropped.
inline void advance_profile(PartialDistanceProfile& prof, const WindowTable& tab,
                            const WindowTable& next, std::span<const double> t, BlockTlb& tlb) {
    const std::size_t L = tab.length;
    const std::size_t i = prof.owner;
    const std::size_t count = tab.size();
    const double inv_len = 1.0 / static_cast<double>(L);
    const bool owner_constant = tab.constant[i] != 0;
    const double sigma_i = tab.sigma[i];
    const double sigma_next = i < next.size() ? next.sigma[i] : sigma_i;
    const double tail = t[i + L - 1];
    std::size_t kept = 0;
    for (std::size_t e = 0; e < prof.entries.size(); ++e) {
        ProfileEntry entry = prof.entries[e];
        const std::size_t j = entry.neighbor;
        if (j >= count || is_trivial_match(i, j, L)) continue;
        const double target_lb = entry.lb;
        entry.qt += tail * t[j + L - 1];
        if (owner_constant) {
            entry.dist = unbounded;
            entry.lb = unbounded;
        } else {
            double q = 0.0;
            if (tab.constant[j] != 0) {
                entry.dist = unbounded;
            } else {
                q = std::clamp((entry.qt * inv_len - tab.mu[i] * tab.mu[j]) *
                                   (tab.inv_sigma[i] * tab.inv_sigma[j]),
                               -1.0, 1.0);
                entry.dist = distance_from_correlation(q, L);
            }
            entry.lb = sigma_next > 0.0 ? bound_numerator(q, L, sigma_i) / sigma_next : unbounded;
        }
        if (entry.dist > 0.0 && std::isfinite(entry.dist) && std::isfinite(target_lb)) {
            tlb.sum += std::clamp(target_lb / entry.dist, 0.0, 1.0);
            ++tlb.count;
        }
        prof.entries[kept++] = entry;
    }
    prof.entries.resize(kept);
    prof.length = L;
}

}  // namespace mine::detail
