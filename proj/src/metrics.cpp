#include "mine/metrics.hpp"

#include <algorithm>

#include "mine/error.hpp"

namespace mine {

double tlb(double lb, double dist) {
    if (!(dist > 0.0)) throw Error(ErrorKind::ZeroDistance, "tightness needs a positive distance");
    if (lb > dist + 1e-9) throw Error(ErrorKind::InvalidParameters, "lower bound exceeds the distance");
    return std::clamp(lb / dist, 0.0, 1.0);
}

PruningReport pruning_report(std::span<const LengthTrace> trace) {
    PruningReport report;
    double tlb_sum = 0.0;
    std::size_t tlb_count = 0;
    std::size_t recomputed_profiles = 0;
    for (const LengthTrace& t : trace) {
        PruningRow row;
        row.length = t.length;
        row.profiles = t.profiles;
        row.valid = t.valid;
        row.non_valid = t.non_valid;
        row.recomputed = t.recomputed;
        row.full_recompute = t.full_recompute;
        row.mean_tlb = t.tlb_count > 0 ? t.tlb_sum / static_cast<double>(t.tlb_count) : 0.0;
        row.seconds = t.seconds;
        report.rows.push_back(row);
        report.profiles += t.profiles;
        report.valid += t.valid;
        report.non_valid += t.non_valid;
        report.recomputed += t.recomputed;
        if (t.full_recompute) {
            ++report.full_recomputes;
            recomputed_profiles += t.profiles;
        } else {
            recomputed_profiles += t.recomputed;
        }
        tlb_sum += t.tlb_sum;
        tlb_count += t.tlb_count;
    }
    if (report.profiles > 0)
        report.recomputed_fraction =
            static_cast<double>(recomputed_profiles) / static_cast<double>(report.profiles);
    if (tlb_count > 0) report.mean_tlb = tlb_sum / static_cast<double>(tlb_count);
    return report;
}

}  // namespace mine
