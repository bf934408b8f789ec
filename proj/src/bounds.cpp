#include "mine/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mine {

QValue q_value(double qt, const SubseqStats& a, const SubseqStats& b) {
    if (a.constant || b.constant || a.sigma <= 0.0 || b.sigma <= 0.0)
        throw Error(ErrorKind::ZeroVariance, "correlation of a constant window");
    const double l = static_cast<double>(a.length);
    const double q = (qt / l - a.mu * b.mu) / (a.sigma * b.sigma);
    return QValue{std::clamp(q, -1.0, 1.0)};
}

LowerBound lower_bound(QValue q, double sigma_base, double sigma_target, std::size_t base_length,
                       std::size_t target_length) {
    if (!(sigma_base > 0.0) || !(sigma_target > 0.0))
        throw Error(ErrorKind::ZeroVariance, "lower bound with a non-positive sigma");
    LowerBound out;
    out.lb = bound_numerator(q.q, base_length, sigma_base) / sigma_target;
    out.base_length = base_length;
    out.target_length = target_length;
    out.anchor_sigma = sigma_base;
    return out;
}

LowerBound scale_bound(const LowerBound& lb, double sigma_old, double sigma_new) {
    if (!(sigma_old > 0.0) || !(sigma_new > 0.0))
        throw Error(ErrorKind::ZeroVariance, "bound scaling with a non-positive sigma");
    LowerBound out = lb;
    out.lb = lb.lb * (sigma_old / sigma_new);
    out.target_length = lb.target_length + 1;
    return out;
}

ProfileEntry update_dist_and_lb(const ProfileEntry& entry, const DataSeries& series,
                                std::size_t new_length) {
    if (new_length < 2)
        throw Error(ErrorKind::OutOfRange, "length step below 2");
    const std::size_t i = entry.owner;
    const std::size_t j = entry.neighbor;
    ProfileEntry out = entry;
    out.qt = extend_dot_product(entry.qt, series, i, j, new_length - 1);

    const SubseqStats a = series.stats(i, new_length);
    const SubseqStats b = series.stats(j, new_length);
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (a.constant) {
        out.dist = inf;
        out.lb = inf;
        return out;
    }
    double q = 0.0;
    if (b.constant) {
        out.dist = inf;
    } else {
        q = q_value(out.qt, a, b).q;
        out.dist = distance_from_correlation(q, new_length);
    }
    // Owner sigma one length later; at the series end the bound targets the
    // current length instead, which is still sound there.
    double target_sigma = a.sigma;
    if (i + new_length < series.size()) target_sigma = series.sigma(i, new_length + 1);
    out.lb = target_sigma > 0.0 ? bound_numerator(q, new_length, a.sigma) / target_sigma : inf;
    return out;
}

}  // namespace mine
