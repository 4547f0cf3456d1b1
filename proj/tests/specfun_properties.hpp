#pragma once

// Randomized identity checks for the special functions, shared by the unit
// tests and the acceptance runner.  Each check returns the number of failing
// cases together with the worst error seen.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "ptspec/specfun.hpp"

namespace ptspec::checks {

struct PropertyOutcome {
    int cases = 0;
    int failures = 0;
    double worst = 0.0;

    void record(double err, double tol) {
        ++cases;
        worst = std::max(worst, err);
        if (!(err < tol)) ++failures;
    }
};

inline double pochhammer(double x, unsigned n) {
    double p = 1.0;
    for (unsigned i = 0; i < n; ++i) p *= x + i;
    return p;
}

inline cplx random_disk(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        cplx z{u(rng), u(rng)};
        if (std::abs(z) <= 1.0) return radius * z;
    }
}

// Explicit finite sums; `scale` receives the sum of term magnitudes, so the
// comparison can be floored at the cancellation level of the sum itself.
inline cplx laguerre_sum(unsigned n, double a, cplx z, double& scale) {
    cplx s{};
    scale = 0.0;
    cplx zpow{1.0, 0.0};
    double jfact = 1.0;
    for (unsigned j = 0; j <= n; ++j) {
        if (j > 0) {
            zpow *= -z;
            jfact *= j;
        }
        double binom = 1.0;  // binom(n + a, n - j)
        for (unsigned i = 1; i <= n - j; ++i) binom *= (a + j + i) / i;
        const cplx t = binom * zpow / jfact;
        s += t;
        scale += std::abs(t);
    }
    return s;
}

inline cplx gegenbauer_sum(unsigned n, double lam, cplx x, double& scale) {
    cplx s{};
    scale = 0.0;
    double kfact = 1.0;
    for (unsigned k = 0; 2 * k <= n; ++k) {
        if (k > 0) kfact *= k;
        double rest = 1.0;
        for (unsigned i = 2; i <= n - 2 * k; ++i) rest *= i;
        const double coef = (k % 2 ? -1.0 : 1.0) * pochhammer(lam, n - k) / (kfact * rest);
        const cplx t = coef * std::pow(2.0 * x, static_cast<int>(n - 2 * k));
        s += t;
        scale += std::abs(t);
    }
    return s;
}

/// d/dz L_n^(a)(z) = -L_{n-1}^(a+1)(z), five-point central difference, rel < 1e-6.
inline PropertyOutcome check_laguerre_derivative(int cases, std::uint64_t seed = 101) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<unsigned> deg(1, 15);
    std::uniform_real_distribution<double> par(-0.9, 3.0);
    PropertyOutcome out;
    for (int trial = 0; trial < cases; ++trial) {
        const unsigned n = deg(rng);
        const double a = par(rng);
        const cplx z = random_disk(rng, 5.0);
        const double h = 1e-3;
        using specfun::laguerre;
        const cplx fd = (-laguerre(n, a, z + 2 * h) + 8.0 * laguerre(n, a, z + h) - 8.0 * laguerre(n, a, z - h) +
                         laguerre(n, a, z - 2 * h)) /
                        (12 * h);
        const cplx exact = -laguerre(n - 1, a + 1.0, z);
        out.record(std::abs(fd - exact) / std::abs(exact), 1e-6);
    }
    return out;
}

/// Recurrence against the explicit sum, n <= 15, |z| <= 5, rel < 1e-10.
inline PropertyOutcome check_laguerre_sum(int cases, std::uint64_t seed = 202) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<unsigned> deg(0, 15);
    std::uniform_real_distribution<double> par(-0.9, 3.0);
    PropertyOutcome out;
    for (int trial = 0; trial < cases; ++trial) {
        const unsigned n = deg(rng);
        const double a = par(rng);
        const cplx z = random_disk(rng, 5.0);
        double scale = 0.0;
        const cplx want = laguerre_sum(n, a, z, scale);
        const double denom = std::max(std::abs(want), 1e-4 * scale);
        out.record(std::abs(specfun::laguerre(n, a, z) - want) / denom, 1e-10);
    }
    return out;
}

inline PropertyOutcome check_gegenbauer_sum(int cases, std::uint64_t seed = 303) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<unsigned> deg(0, 15);
    std::uniform_real_distribution<double> par(-2.5, 3.0);
    PropertyOutcome out;
    for (int trial = 0; trial < cases; ++trial) {
        const unsigned n = deg(rng);
        const double lam = par(rng);
        const cplx x = random_disk(rng, 5.0);
        double scale = 0.0;
        const cplx want = gegenbauer_sum(n, lam, x, scale);
        const double denom = std::max(std::abs(want), 1e-4 * scale);
        out.record(std::abs(specfun::gegenbauer(n, lam, x) - want) / denom, 1e-10);
    }
    return out;
}

/// 2F1(-m, v; w; z) against sum_j (-1)^j binom(m, j) (v)_j/(w)_j z^j, rel < 1e-12.
inline PropertyOutcome check_terminating_hyp2f1(int cases, std::uint64_t seed = 404) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<unsigned> deg(0, 12);
    std::uniform_real_distribution<double> par(0.1, 4.0);
    PropertyOutcome out;
    for (int trial = 0; trial < cases; ++trial) {
        const unsigned m = deg(rng);
        const double v = par(rng) - 2.0;
        const double w = par(rng);
        const cplx z = random_disk(rng, 2.0);
        cplx want{};
        double scale = 0.0;
        double binom = 1.0;
        for (unsigned j = 0; j <= m; ++j) {
            if (j > 0) binom = binom * (m - j + 1) / j;
            const cplx t = (j % 2 ? -1.0 : 1.0) * binom * pochhammer(v, j) / pochhammer(w, j) *
                           std::pow(z, static_cast<int>(j));
            want += t;
            scale += std::abs(t);
        }
        const cplx got = specfun::hyp2f1(-static_cast<double>(m), v, w, z);
        // At 1e-12 the floor has to sit at the rounding level of the sum, ~m eps scale.
        const double denom = std::max(std::abs(want), 1e-2 * scale);
        out.record(std::abs(got - want) / denom, 1e-12);
    }
    return out;
}

/// cpow(b, m) for integer m against repeated multiplication, rel < 1e-12.
inline PropertyOutcome check_cpow_integer(int cases, std::uint64_t seed = 505) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> expo(-6, 6);
    PropertyOutcome out;
    for (int trial = 0; trial < cases; ++trial) {
        cplx b = random_disk(rng, 3.0);
        if (b.imag() == 0.0 && b.real() <= 0.0) b += cplx(0.0, 0.5);
        const int m = expo(rng);
        cplx want{1.0, 0.0};
        for (int i = 0; i < std::abs(m); ++i) want *= b;
        if (m < 0) want = 1.0 / want;
        out.record(std::abs(specfun::cpow(b, m) - want) / std::abs(want), 1e-12);
    }
    return out;
}

}  // namespace ptspec::checks
