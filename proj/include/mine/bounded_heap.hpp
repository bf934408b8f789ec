#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

namespace mine {

/// Keeps the `capacity` best elements seen so far. `Better(a, b)` is a strict
/// weak order that is true when `a` should be kept in preference to `b`; the
/// heap top is the current worst element, the next one to be evicted.
template <typename T, typename Better>
class BoundedHeap {
public:
    explicit BoundedHeap(std::size_t capacity, Better better = Better{})
        : capacity_(capacity), better_(std::move(better)) {
        items_.reserve(capacity);
    }

    std::size_t size() const noexcept { return items_.size(); }
    std::size_t capacity() const noexcept { return capacity_; }
    bool empty() const noexcept { return items_.empty(); }
    bool full() const noexcept { return items_.size() >= capacity_; }

    /// Worst retained element. Requires !empty().
    const T& worst() const noexcept { return items_.front(); }

    /// Inserts `item` if there is room or it beats the current worst; the
    /// evicted element, if any, is dropped. Returns whether it was kept.
    bool offer(T item) {
        if (capacity_ == 0) return false;
        if (items_.size() < capacity_) {
            items_.push_back(std::move(item));
            std::push_heap(items_.begin(), items_.end(), better_);
            return true;
        }
        if (!better_(item, items_.front())) return false;
        std::pop_heap(items_.begin(), items_.end(), better_);
        items_.back() = std::move(item);
        std::push_heap(items_.begin(), items_.end(), better_);
        return true;
    }

    void clear() noexcept { items_.clear(); }

    /// Retained elements, best first.
    std::vector<T> sorted() const {
        std::vector<T> out = items_;
        std::sort(out.begin(), out.end(), better_);
        return out;
    }

    const std::vector<T>& unordered() const noexcept { return items_; }

private:
    std::size_t capacity_;
    Better better_;
    std::vector<T> items_;
};

}  // namespace mine
