#include "mine/spectrum.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "mine/error.hpp"

namespace mine {

namespace {

struct FftwFree {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> fftw_buffer(std::size_t count) {
    auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * count));
    if (p == nullptr) throw std::bad_alloc();
    return FftwBuffer<T>(p);
}

struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

// The planner is not thread-safe; execution of an existing plan on new
// arrays is.
class PlanCache {
public:
    const PlanPair& get(std::size_t size) {
        std::lock_guard lock(mutex_);
        auto it = plans_.find(size);
        if (it != plans_.end()) return it->second;
        auto real = fftw_buffer<double>(size);
        auto cplx = fftw_buffer<fftw_complex>(size / 2 + 1);
        PlanPair pair;
        const int n = static_cast<int>(size);
        pair.forward = fftw_plan_dft_r2c_1d(n, real.get(), cplx.get(), FFTW_ESTIMATE);
        pair.backward = fftw_plan_dft_c2r_1d(n, cplx.get(), real.get(), FFTW_ESTIMATE);
        return plans_.emplace(size, pair).first->second;
    }

    ~PlanCache() {
        for (auto& [size, pair] : plans_) {
            fftw_destroy_plan(pair.forward);
            fftw_destroy_plan(pair.backward);
        }
    }

private:
    std::mutex mutex_;
    std::map<std::size_t, PlanPair> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

}  // namespace

std::size_t fast_transform_size(std::size_t n) {
    std::size_t best = 1;
    while (best < n) best <<= 1;
    for (std::size_t p7 = 1; p7 < best; p7 *= 7)
        for (std::size_t p5 = p7; p5 < best; p5 *= 5)
            for (std::size_t p3 = p5; p3 < best; p3 *= 3) {
                std::size_t v = p3;
                while (v < n) v <<= 1;
                best = std::min(best, v);
            }
    return best;
}

SeriesSpectrum::SeriesSpectrum(std::span<const double> series)
    : n_(series.size()), size_(fast_transform_size(std::max<std::size_t>(series.size(), 2))) {
    const auto& plans = plan_cache().get(size_);
    auto real = fftw_buffer<double>(size_);
    auto cplx = fftw_buffer<fftw_complex>(size_ / 2 + 1);
    std::copy(series.begin(), series.end(), real.get());
    std::fill(real.get() + n_, real.get() + size_, 0.0);
    fftw_execute_dft_r2c(plans.forward, real.get(), cplx.get());
    spectrum_.resize(size_ / 2 + 1);
    for (std::size_t k = 0; k < spectrum_.size(); ++k)
        spectrum_[k] = {cplx[k][0], cplx[k][1]};
}

void SeriesSpectrum::correlate(std::span<const double> query, std::span<double> out) const {
    const std::size_t m = query.size();
    if (m == 0 || m > n_)
        throw Error(ErrorKind::LengthExceedsSeries, "query length exceeds the series length");
    if (out.size() != n_ - m + 1)
        throw Error(ErrorKind::OutOfRange, "output span has the wrong size");

    const auto& plans = plan_cache().get(size_);
    auto real = fftw_buffer<double>(size_);
    auto cplx = fftw_buffer<fftw_complex>(size_ / 2 + 1);
    // Correlation is convolution with the reversed query.
    for (std::size_t p = 0; p < m; ++p) real[p] = query[m - 1 - p];
    std::fill(real.get() + m, real.get() + size_, 0.0);
    fftw_execute_dft_r2c(plans.forward, real.get(), cplx.get());
    for (std::size_t k = 0; k < spectrum_.size(); ++k) {
        const std::complex<double> q(cplx[k][0], cplx[k][1]);
        const std::complex<double> prod = q * spectrum_[k];
        cplx[k][0] = prod.real();
        cplx[k][1] = prod.imag();
    }
    fftw_execute_dft_c2r(plans.backward, cplx.get(), real.get());
    const double scale = 1.0 / static_cast<double>(size_);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = real[j + m - 1] * scale;
}

}  // namespace mine
