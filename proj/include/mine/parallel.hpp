#pragma once

#include <cstddef>
#include <functional>

namespace mine {

/// Runs fn(0) .. fn(count - 1) on up to `threads` workers (0 means the
/// hardware concurrency). Tasks are claimed in index order; the first
/// exception thrown by any task is rethrown after all workers finish.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

/// Resolves a requested thread count: 0 becomes the hardware concurrency.
unsigned effective_threads(unsigned requested) noexcept;

}  // namespace mine
