#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace cntrx {

// Neumaier-compensated accumulator. The demodulator sums O(10^5) terms whose
// signed parts are much larger than the result; plain summation would lose
// enough digits to blur the degenerate-design checks.
class KahanSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Composite Simpson over [a, b] with n uniform intervals. n must be even and >= 2.
template <typename F>
double simpson(F&& f, double a, double b, std::size_t n) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("simpson: interval count must be even and >= 2");
    const double h = (b - a) / static_cast<double>(n);
    KahanSum acc;
    acc.add(f(a));
    acc.add(f(b));
    for (std::size_t i = 1; i < n; ++i) {
        const double w = (i % 2 == 1) ? 4.0 : 2.0;
        acc.add(w * f(a + static_cast<double>(i) * h));
    }
    return acc.value() * h / 3.0;
}

// Simpson on uniformly sampled values with spacing h. Even interval counts use
// plain composite Simpson; odd counts finish with a 3/8 tail over the last
// three intervals so the samples are used as-is, without interpolation.
inline double simpson_sampled(std::span<const double> values, double h) {
    if (values.size() < 4)
        throw std::invalid_argument("simpson_sampled: need at least 4 samples");
    if (!(h > 0.0))
        throw std::invalid_argument("simpson_sampled: step must be positive");
    const std::size_t n = values.size() - 1;  // interval count
    const std::size_t head = (n % 2 == 0) ? n : n - 3;

    KahanSum acc;
    if (head > 0) {
        acc.add(values[0] * (h / 3.0));
        acc.add(values[head] * (h / 3.0));
        for (std::size_t i = 1; i < head; ++i) {
            const double w = (i % 2 == 1) ? 4.0 : 2.0;
            acc.add(values[i] * (w * h / 3.0));
        }
    }
    if (n % 2 != 0) {
        const double w38 = 3.0 * h / 8.0;
        acc.add(values[head] * w38);
        acc.add(values[head + 1] * (3.0 * w38));
        acc.add(values[head + 2] * (3.0 * w38));
        acc.add(values[head + 3] * w38);
    }
    return acc.value();
}

}  // namespace cntrx
