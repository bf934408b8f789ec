#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "mine/series.hpp"

namespace mine {

/// Pearson correlation of two equal-length windows, clamped to [-1, 1].
struct QValue {
    double q = 0.0;
};

/// Lower bound on the z-normalized distance of a pair at `target_length`,
/// derived from what is known at `base_length` and the profile owner's
/// stddev at the target length.
struct LowerBound {
    double lb = 0.0;
    std::size_t base_length = 0;
    std::size_t target_length = 0;
    double anchor_sigma = 0.0;  // owner's sigma at base_length
};

/// Throws Error{ZeroVariance} if either window is constant.
QValue q_value(double qt, const SubseqStats& a, const SubseqStats& b);

/// Closed-form bound: sqrt(l) * s_base / s_target when q <= 0, otherwise
/// sqrt(l (1 - q^2)) * s_base / s_target. Throws Error{ZeroVariance} when
/// either sigma is not positive.
LowerBound lower_bound(QValue q, double sigma_base, double sigma_target, std::size_t base_length,
                       std::size_t target_length);

/// Same, targeting base_length + 1.
inline LowerBound lower_bound(QValue q, double sigma_base, double sigma_target,
                              std::size_t base_length) {
    return lower_bound(q, sigma_base, sigma_target, base_length, base_length + 1);
}

/// One length step of the bound: only the owner's target sigma depends on the
/// target length, so the bound is rescaled by sigma_old / sigma_new.
LowerBound scale_bound(const LowerBound& lb, double sigma_old, double sigma_new);

/// sqrt(l * (1 - q+^2)) * sigma_owner, the length-independent part of the
/// bound; dividing by the owner's sigma at a target length gives the bound
/// at that length. Constant neighbours are passed as q = 0.
inline double bound_numerator(double q, std::size_t base_length, double owner_sigma) noexcept {
    const double qp = q > 0.0 ? (q < 1.0 ? q : 1.0) : 0.0;
    const double r = static_cast<double>(base_length) * (1.0 - qp * qp);
    return (r > 0.0 ? std::sqrt(r) : 0.0) * owner_sigma;
}

/// A stored neighbour in a partial distance profile. `dist` and `qt` are at
/// the profile's current length, `lb` bounds the distance one length later.
struct ProfileEntry {
    std::uint32_t owner = 0;
    std::uint32_t neighbor = 0;
    double dist = 0.0;
    double lb = 0.0;
    double qt = 0.0;
};

/// Advances an entry valid at new_length - 1 to new_length in O(1): extends
/// the dot product, recomputes the true distance and re-derives the bound
/// for new_length + 1 from the fresh correlation. Constant windows give an
/// infinite distance. Throws Error{OutOfRange} if either window no longer
/// fits; callers drop such entries.
ProfileEntry update_dist_and_lb(const ProfileEntry& entry, const DataSeries& series,
                                std::size_t new_length);

}  // namespace mine
