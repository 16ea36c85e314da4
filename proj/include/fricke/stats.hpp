/**
 * @file stats.hpp
 * @brief Small statistics toolbox: compensated summation, star discrepancy,
 *        KS statistics, rational-angle screening.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace fricke {

/// Kahan-Neumaier compensated accumulator; reduction over chunks in a fixed
/// order keeps parallel results order-independent.
class KahanSum {
public:
    void add(double v) {
        const double t = s_ + v;
        if (std::abs(s_) >= std::abs(v)) c_ += (s_ - t) + v;
        else c_ += (v - t) + s_;
        s_ = t;
    }
    double value() const { return s_ + c_; }

private:
    double s_ = 0.0, c_ = 0.0;
};

struct MeanStderr {
    double mean = 0;
    double stderr_ = 0;
    std::size_t n = 0;
};

inline MeanStderr mean_stderr(const std::vector<double>& xs) {
    MeanStderr m;
    m.n = xs.size();
    if (xs.empty()) return m;
    KahanSum s;
    for (double v : xs) s.add(v);
    m.mean = s.value() / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        KahanSum q;
        for (double v : xs) q.add((v - m.mean) * (v - m.mean));
        m.stderr_ = std::sqrt(q.value() / (static_cast<double>(xs.size()) * (xs.size() - 1.0)));
    }
    return m;
}

/// Star discrepancy of points in [0,1): D* = max_i max(i/N - u_(i), u_(i) - (i-1)/N).
inline double star_discrepancy(std::vector<double> u) {
    const std::size_t n = u.size();
    if (n == 0) return 1.0;
    std::sort(u.begin(), u.end());
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double hi = static_cast<double>(i + 1) / n - u[i];
        const double lo = u[i] - static_cast<double>(i) / n;
        d = std::max({d, hi, lo});
    }
    return d;
}

/// One-sample KS statistic against uniform on [0,1): identical formula.
inline double ks_uniform(std::vector<double> u) { return star_discrepancy(std::move(u)); }

/// One-sample KS statistic against an arbitrary CDF.
inline double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf) {
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double F = cdf(xs[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - F, F - static_cast<double>(i) / n});
    }
    return d;
}

struct RationalApprox {
    bool resonant = false;
    long p = 0;
    long q = 1;
    double error = 0;
};

/// Continued-fraction screen: is v within tol of a rational p/q with
/// q <= qmax? Used on theta/pi to exclude resonant rotation angles.
inline RationalApprox nearest_rational(double v, long qmax, double tol) {
    RationalApprox best;
    best.error = 1e300;
    // scan convergents of the continued fraction of v
    double x = v;
    long p0 = 1, q0 = 0, p1 = static_cast<long>(std::floor(x)), q1 = 1;
    auto consider = [&](long p, long q) {
        if (q < 1 || q > qmax) return;
        const double err = std::abs(v - static_cast<double>(p) / static_cast<double>(q));
        if (err < best.error) best = {err < tol, p, q, err};
    };
    consider(p1, q1);
    for (int it = 0; it < 64; ++it) {
        const double frac = x - std::floor(x);
        if (frac < 1e-15) break;
        x = 1.0 / frac;
        const double af = std::floor(x);
        if (af > 1e17) break;
        const long a = static_cast<long>(af);
        const long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > qmax) {
            // best semiconvergent still within qmax
            const long amax = (qmax - q0) / q1;
            if (amax >= 1) consider(amax * p1 + p0, amax * q1 + q0);
            break;
        }
        consider(p2, q2);
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    }
    return best;
}

}  // namespace fricke
