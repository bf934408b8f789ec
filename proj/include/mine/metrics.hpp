#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mine/motifs.hpp"

namespace mine {

/// Tightness of a lower bound: lb / dist clamped to [0, 1]. Throws
/// ZeroDistance when dist <= 0 and InvalidParameters when lb exceeds dist by
/// more than 1e-9 (an unsound bound).
double tlb(double lb, double dist);

struct PruningRow {
    std::size_t length = 0;
    std::size_t profiles = 0;
    std::size_t valid = 0;
    std::size_t non_valid = 0;
    std::size_t recomputed = 0;
    bool full_recompute = false;
    double mean_tlb = 0.0;  // 0 when no entry was measured
    double seconds = 0.0;
};

/// Per-length partial-profile outcomes of a run. A full recomputation counts
/// every profile of that length as recomputed in `recomputed_fraction`.
struct PruningReport {
    std::vector<PruningRow> rows;
    std::size_t profiles = 0;
    std::size_t valid = 0;
    std::size_t non_valid = 0;
    std::size_t recomputed = 0;
    std::size_t full_recomputes = 0;
    double recomputed_fraction = 0.0;
    double mean_tlb = 0.0;
};

PruningReport pruning_report(std::span<const LengthTrace> trace);

}  // namespace mine
