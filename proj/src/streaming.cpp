#include "macdop/streaming.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace macdop {

void CompensatedSum::add(double x) noexcept {
    double const t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        compensation_ += (sum_ - t) + x;
    } else {
        compensation_ += (x - t) + sum_;
    }
    sum_ = t;
}

namespace {

void require_finite(double sample) {
    if (!std::isfinite(sample)) {
        throw std::invalid_argument("stream sample must be finite");
    }
}

// Sum of the `count` entries written most recently before `head`.
double ring_tail_sum(std::vector<double> const& ring, std::size_t head, std::size_t count) {
    CompensatedSum s;
    std::size_t const n = ring.size();
    for (std::size_t j = 1; j <= count; ++j) {
        s.add(ring[(head + n - j) % n]);
    }
    return s.value();
}

} // namespace

MacdStream::MacdStream(WindowSpec a)
    : config_(a)
    , ring_(2 * a.k(), 0.0) {}

std::optional<double> MacdStream::push(double sample) {
    require_finite(sample);
    if (seen_ == 0) {
        shift_ = sample;
    }
    std::size_t const k = config_.k();
    std::size_t const size = ring_.size();
    double const x = sample - shift_;

    if (seen_ >= k) {
        short_sum_.add(-ring_[(head_ + size - k) % size]);
    }
    if (seen_ >= 2 * k) {
        long_sum_.add(-ring_[head_]);
    }
    short_sum_.add(x);
    long_sum_.add(x);
    ring_[head_] = x;
    head_ = (head_ + 1) % size;
    ++seen_;

    if (seen_ % resum_interval == 0) {
        resum();
    }
    if (seen_ < 2 * k) {
        return std::nullopt;
    }
    double const kd = static_cast<double>(k);
    return short_sum_.value() / kd - long_sum_.value() / (2.0 * kd);
}

void MacdStream::resum() noexcept {
    std::size_t const k = config_.k();
    double const fresh_short = ring_tail_sum(ring_, head_, std::min<std::uint64_t>(seen_, k));
    double const fresh_long = ring_tail_sum(ring_, head_, std::min<std::uint64_t>(seen_, 2 * k));
#ifndef NDEBUG
    double mag = 0.0;
    for (double v : ring_) {
        mag += std::abs(v);
    }
    assert(std::abs(short_sum_.value() - fresh_short) <= 1e-9 * std::max(mag, 1.0));
    assert(std::abs(long_sum_.value() - fresh_long) <= 1e-9 * std::max(mag, 1.0));
#endif
    short_sum_.reset(fresh_short);
    long_sum_.reset(fresh_long);
}

double MacdStream::sum_drift() const {
    std::size_t const k = config_.k();
    double const fresh_short = ring_tail_sum(ring_, head_, std::min<std::uint64_t>(seen_, k));
    double const fresh_long = ring_tail_sum(ring_, head_, std::min<std::uint64_t>(seen_, 2 * k));
    return std::max(std::abs(short_sum_.value() - fresh_short), std::abs(long_sum_.value() - fresh_long));
}

ExpansionStream::ExpansionStream(ExpansionSpec spec)
    : spec_(std::move(spec))
    , raw_(spec_.b().k(), 0.0)
    , averages_(spec_.n() * spec_.b().k() + 1, 0.0) {
    for (double w : spec_.weights()) {
        term_weights_.push_back(w / 2.0);
    }
}

std::optional<double> ExpansionStream::push(double sample) {
    require_finite(sample);
    if (seen_ == 0) {
        shift_ = sample;
    }
    std::size_t const kb = spec_.b().k();
    double const x = sample - shift_;

    if (seen_ >= kb) {
        window_sum_.add(-raw_[raw_head_]);
    }
    window_sum_.add(x);
    raw_[raw_head_] = x;
    raw_head_ = (raw_head_ + 1) % kb;
    ++seen_;

    if (seen_ % resum_interval == 0) {
        window_sum_.reset(ring_tail_sum(raw_, raw_head_, std::min<std::uint64_t>(seen_, kb)));
    }
    if (seen_ < kb) {
        return std::nullopt;
    }

    std::size_t const hist = averages_.size();
    averages_[avg_head_] = window_sum_.value() / static_cast<double>(kb);
    std::size_t const newest = avg_head_;
    avg_head_ = (avg_head_ + 1) % hist;

    if (seen_ < (spec_.n() + 1) * kb) {
        return std::nullopt;
    }
    // term i pairs the averages at lags (i-1)*b and i*b
    double out = 0.0;
    for (std::size_t i = 1; i <= spec_.n(); ++i) {
        double const recent = averages_[(newest + hist - (i - 1) * kb) % hist];
        double const older = averages_[(newest + hist - i * kb) % hist];
        out += term_weights_[i - 1] * (recent - older);
    }
    return out;
}

} // namespace macdop
