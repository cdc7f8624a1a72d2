#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "tristat/errors.hpp"
#include "tristat/graph.hpp"

namespace tristat {

namespace detail {

/// Hurwitz zeta sum_{k>=0} (a+k)^-s for s > 1, a >= 1, via direct summation
/// plus an Euler-Maclaurin tail. Accurate to ~1e-12 over the s range used
/// for degree-distribution fits.
inline double hurwitz_zeta(double s, double a) {
    if (s <= 1.0) throw InternalError("hurwitz_zeta requires s > 1");
    constexpr int kDirect = 16;
    double sum = 0;
    for (int k = 0; k < kDirect; ++k) sum += std::pow(a + k, -s);
    const double b = a + kDirect;
    const double binv = 1.0 / b;
    const double bs = std::pow(b, -s);
    sum += bs * b / (s - 1.0);  // integral term b^(1-s)/(s-1)
    sum += 0.5 * bs;
    sum += s * bs * binv / 12.0;
    sum -= s * (s + 1.0) * (s + 2.0) * bs * binv * binv * binv / 720.0;
    sum += s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * bs * binv * binv * binv * binv *
           binv / 30240.0;
    return sum;
}

}  // namespace detail

struct PowerLawFit {
    double alpha = 0;        // exponent of p(x) ~ x^-alpha for x >= xmin
    NodeId xmin = 1;         // tail cutoff minimizing the KS distance
    double ks = 0;           // KS distance of the chosen fit
    std::uint64_t tail_n = 0;  // observations at or above xmin
};

/// Maximum-likelihood discrete power-law fit with the tail cutoff chosen by
/// minimizing the Kolmogorov-Smirnov distance between the fitted model and
/// the empirical tail. Input is the positive-degree histogram; zeros are
/// ignored.
inline PowerLawFit fit_power_law(const DegreeHistogram& hist) {
    // compress to positive (value, count) pairs; bins arrive sorted by value
    std::vector<std::pair<NodeId, std::uint64_t>> data;
    for (const auto& [value, count] : hist.bins)
        if (value >= 1 && count > 0) data.emplace_back(value, count);
    if (data.size() < 2) throw InputError("power-law fit needs at least two distinct degrees");

    // suffix statistics: tail size and sum of log(value) from each index on
    const std::size_t k = data.size();
    std::vector<std::uint64_t> tail_n(k + 1, 0);
    std::vector<double> tail_logsum(k + 1, 0.0);
    for (std::size_t i = k; i-- > 0;) {
        tail_n[i] = tail_n[i + 1] + data[i].second;
        tail_logsum[i] = tail_logsum[i + 1] +
                         static_cast<double>(data[i].second) * std::log(data[i].first);
    }

    PowerLawFit best;
    best.ks = std::numeric_limits<double>::infinity();
    for (std::size_t start = 0; start + 2 <= k; ++start) {
        const double xmin = data[start].first;
        const auto n = tail_n[start];
        const double logsum = tail_logsum[start];

        // golden-section maximization of the concave log-likelihood
        // L(alpha) = -n log zeta(alpha, xmin) - alpha * sum(log x)
        auto loglik = [&](double alpha) {
            return -static_cast<double>(n) * std::log(detail::hurwitz_zeta(alpha, xmin)) -
                   alpha * logsum;
        };
        constexpr double kInvPhi = 0.6180339887498949;
        double lo = 1.0 + 1e-6, hi = 12.0;
        double c = hi - kInvPhi * (hi - lo), d = lo + kInvPhi * (hi - lo);
        double fc = loglik(c), fd = loglik(d);
        while (hi - lo > 1e-9) {
            if (fc > fd) {
                hi = d;
                d = c;
                fd = fc;
                c = hi - kInvPhi * (hi - lo);
                fc = loglik(c);
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + kInvPhi * (hi - lo);
                fd = loglik(d);
            }
        }
        const double alpha = 0.5 * (lo + hi);

        // KS distance between empirical and model CDF over the tail
        const double zx = detail::hurwitz_zeta(alpha, xmin);
        double ks = 0;
        std::uint64_t cum = 0;
        for (std::size_t i = start; i < k; ++i) {
            cum += data[i].second;
            const double empirical = static_cast<double>(cum) / static_cast<double>(n);
            const double model =
                1.0 - detail::hurwitz_zeta(alpha, static_cast<double>(data[i].first) + 1.0) / zx;
            ks = std::max(ks, std::abs(empirical - model));
        }
        if (ks < best.ks) {
            best.alpha = alpha;
            best.xmin = data[start].first;
            best.ks = ks;
            best.tail_n = n;
        }
    }
    if (!std::isfinite(best.ks)) throw InternalError("power-law scan produced no candidate");
    return best;
}

}  // namespace tristat
