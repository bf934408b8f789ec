#include "mine/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mine/spectrum.hpp"

namespace mine {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Empty: return "Empty";
        case ErrorKind::NonFinite: return "NonFinite";
        case ErrorKind::LengthExceedsSeries: return "LengthExceedsSeries";
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::ZeroVariance: return "ZeroVariance";
        case ErrorKind::SeriesTooShort: return "SeriesTooShort";
        case ErrorKind::AllConstant: return "AllConstant";
        case ErrorKind::NoValidNeighbor: return "NoValidNeighbor";
        case ErrorKind::InvalidParameters: return "InvalidParameters";
        case ErrorKind::Unpopulated: return "Unpopulated";
        case ErrorKind::ZeroDistance: return "ZeroDistance";
        case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

DataSeries DataSeries::ingest(std::span<const double> raw) {
    if (raw.empty()) throw Error(ErrorKind::Empty, "series has no points");
    DataSeries s;
    s.values_.assign(raw.begin(), raw.end());
    s.sum_.resize(raw.size() + 1);
    s.sq_sum_.resize(raw.size() + 1);
    s.sum_[0] = 0.0L;
    s.sq_sum_[0] = 0.0L;
    double max_abs = 0.0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const double v = raw[i];
        if (!std::isfinite(v))
            throw Error(ErrorKind::NonFinite,
                        "non-finite value at position " + std::to_string(i + 1), i + 1);
        const long double lv = v;
        s.sum_[i + 1] = s.sum_[i] + lv;
        s.sq_sum_[i + 1] = s.sq_sum_[i] + lv * lv;
        max_abs = std::max(max_abs, std::abs(v));
    }
    const long double shift = s.sum_.back() / static_cast<long double>(raw.size());
    s.centered_sum_.resize(raw.size() + 1);
    s.centered_sq_sum_.resize(raw.size() + 1);
    s.centered_sum_[0] = 0.0L;
    s.centered_sq_sum_[0] = 0.0L;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const long double c = static_cast<long double>(raw[i]) - shift;
        s.centered_sum_[i + 1] = s.centered_sum_[i] + c;
        s.centered_sq_sum_[i + 1] = s.centered_sq_sum_[i] + c * c;
    }
    s.flat_run_.resize(raw.size());
    for (std::size_t i = raw.size(); i-- > 0;) {
        const bool same = i + 1 < raw.size() && raw[i + 1] == raw[i];
        s.flat_run_[i] = same ? std::min<std::uint32_t>(s.flat_run_[i + 1], UINT32_MAX - 1) + 1 : 1;
    }
    s.constant_threshold_ = 1e-13 * (max_abs > 0.0 ? max_abs : 1.0);
    return s;
}

double DataSeries::mean(std::size_t offset, std::size_t length) const noexcept {
    return static_cast<double>((sum_[offset + length] - sum_[offset]) /
                               static_cast<long double>(length));
}

double DataSeries::sigma(std::size_t offset, std::size_t length) const noexcept {
    if (flat_run_[offset] >= length) return 0.0;
    const long double l = static_cast<long double>(length);
    const long double mu = (centered_sum_[offset + length] - centered_sum_[offset]) / l;
    const long double var =
        (centered_sq_sum_[offset + length] - centered_sq_sum_[offset]) / l - mu * mu;
    return var > 0.0L ? static_cast<double>(std::sqrt(var)) : 0.0;
}

SubseqStats DataSeries::stats(std::size_t offset, std::size_t length) const {
    if (length == 0 || offset + length > size())
        throw Error(ErrorKind::OutOfRange, "window [" + std::to_string(offset) + ", " +
                                               std::to_string(offset + length) +
                                               ") exceeds the series");
    SubseqStats st;
    st.offset = offset;
    st.length = length;
    st.sum = static_cast<double>(sum_[offset + length] - sum_[offset]);
    st.sq_sum = static_cast<double>(sq_sum_[offset + length] - sq_sum_[offset]);
    st.mu = mean(offset, length);
    st.sigma = sigma(offset, length);
    st.constant = st.sigma < constant_threshold_;
    return st;
}

WindowTable::WindowTable(const DataSeries& series, std::size_t len) : length(len) {
    const std::size_t count = series.window_count(len);
    mu.resize(count);
    sigma.resize(count);
    inv_sigma.resize(count);
    constant.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        mu[i] = series.mean(i, len);
        sigma[i] = series.sigma(i, len);
        const bool c = sigma[i] < series.constant_threshold();
        constant[i] = c ? 1 : 0;
        inv_sigma[i] = c ? 0.0 : 1.0 / sigma[i];
    }
}

bool WindowTable::all_constant() const noexcept {
    return std::all_of(constant.begin(), constant.end(), [](unsigned char c) { return c != 0; });
}

std::vector<double> sliding_dot_product(std::span<const double> query, const DataSeries& series) {
    if (query.empty() || query.size() > series.size())
        throw Error(ErrorKind::LengthExceedsSeries, "query length exceeds the series length");
    SeriesSpectrum spectrum(series.values());
    std::vector<double> qt(series.size() - query.size() + 1);
    spectrum.correlate(query, qt);
    return qt;
}

void advance_dot_products(std::span<double> qt, const DataSeries& series, std::size_t offset,
                          std::size_t length) {
    if (offset == 0) return;
    const std::size_t count = series.window_count(length);
    if (qt.size() != count || offset >= count)
        throw Error(ErrorKind::OutOfRange, "dot-product vector does not match the series");
    const auto t = series.values();
    const double head = t[offset - 1];
    const double tail = t[offset + length - 1];
    for (std::size_t j = count - 1; j >= 1; --j)
        qt[j] = qt[j - 1] - t[j - 1] * head + t[j + length - 1] * tail;
    double first = 0.0;
    for (std::size_t p = 0; p < length; ++p) first += t[offset + p] * t[p];
    qt[0] = first;
}

double extend_dot_product(double qt, const DataSeries& series, std::size_t i, std::size_t j,
                          std::size_t length) {
    if (i + length >= series.size() || j + length >= series.size())
        throw Error(ErrorKind::OutOfRange, "extended window exceeds the series");
    return qt + series[i + length] * series[j + length];
}

double znorm_distance(double qt, const SubseqStats& a, const SubseqStats& b) {
    if (a.constant || b.constant)
        throw Error(ErrorKind::ZeroVariance, "z-normalized distance of a constant window");
    const double l = static_cast<double>(a.length);
    const double corr = (qt - l * a.mu * b.mu) / (l * a.sigma * b.sigma);
    return distance_from_correlation(corr, a.length);
}

}  // namespace mine
