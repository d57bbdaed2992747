#pragma once

#include <cmath>
#include <stdexcept>

namespace cntrx {

// Upper tail of the standard normal, Q(x) = P(N(0,1) > x).
inline double gaussian_tail(double x) {
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

struct WilsonInterval {
    double low = 0.0;
    double high = 0.0;
    bool contains(double p) const { return p >= low && p <= high; }
};

// Wilson score interval for a binomial proportion, z = 1.959964 for 95%.
inline WilsonInterval wilson_interval(std::size_t errors, std::size_t trials,
                                      double z = 1.959963984540054) {
    if (trials == 0)
        throw std::invalid_argument("wilson_interval: trials must be positive");
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    return {center - half, center + half};
}

}  // namespace cntrx
