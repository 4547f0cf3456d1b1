#pragma once

// Complex-argument special functions used by the closed-form eigenfunctions:
// generalized Laguerre and Gegenbauer polynomials, the Gauss series 2F1 and a
// principal-branch real power.  All functions are pure.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "ptspec/errors.hpp"

namespace ptspec {

using cplx = std::complex<double>;

namespace specfun {

/// Generalized Laguerre polynomial L_n^(a)(z), upward three-term recurrence.
inline cplx laguerre(unsigned n, double a, cplx z) {
    cplx prev{1.0, 0.0};
    if (n == 0) return prev;
    cplx cur = 1.0 + a - z;
    for (unsigned m = 2; m <= n; ++m) {
        const double md = m;
        cplx next = ((2.0 * md - 1.0 + a - z) * cur - (md - 1.0 + a) * prev) / md;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Gegenbauer polynomial C_k^lam(x), upward three-term recurrence.  Valid for
/// any real lam, including lam <= 0 where the recurrence still defines the
/// polynomial (and C_k^0 == 0 for k >= 1).
inline cplx gegenbauer(unsigned k, double lam, cplx x) {
    cplx prev{1.0, 0.0};
    if (k == 0) return prev;
    cplx cur = 2.0 * lam * x;
    for (unsigned m = 2; m <= k; ++m) {
        const double md = m;
        cplx next = (2.0 * x * (md + lam - 1.0) * cur - (md + 2.0 * lam - 2.0) * prev) / md;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Partial derivative of C_k^lam(x) with respect to lam, from the
/// differentiated recurrence.
inline cplx gegenbauer_dlambda(unsigned k, double lam, cplx x) {
    cplx c_prev{1.0, 0.0}, d_prev{0.0, 0.0};
    if (k == 0) return d_prev;
    cplx c_cur = 2.0 * lam * x;
    cplx d_cur = 2.0 * x;
    for (unsigned m = 2; m <= k; ++m) {
        const double md = m;
        const cplx a = 2.0 * x * (md + lam - 1.0);
        const double b = md + 2.0 * lam - 2.0;
        cplx c_next = (a * c_cur - b * c_prev) / md;
        cplx d_next = (2.0 * x * c_cur + a * d_cur - 2.0 * c_prev - b * d_prev) / md;
        c_prev = c_cur;
        c_cur = c_next;
        d_prev = d_cur;
        d_cur = d_next;
    }
    return d_cur;
}

/// True when C_k^lam vanishes identically as a polynomial: lam = -m for an
/// integer m >= 0 and k > 2m.  The zero in lam is simple there.
inline bool gegenbauer_vanishes(unsigned k, double lam) {
    if (lam > 0.0 || lam != std::round(lam)) return false;
    const double m = -lam;
    return static_cast<double>(k) > 2.0 * m;
}

/// C_k^lam(x), or its renormalized limit lim C_k^mu(x)/(mu - lam) =
/// dC/dmu at mu = lam when the polynomial vanishes identically.  For lam = 0
/// this is (2/k) T_k(x).
inline cplx gegenbauer_regularized(unsigned k, double lam, cplx x) {
    return gegenbauer_vanishes(k, lam) ? gegenbauer_dlambda(k, lam, x) : gegenbauer(k, lam, x);
}

namespace detail {

inline bool is_nonpositive_integer(cplx p) {
    return p.imag() == 0.0 && p.real() <= 0.0 && p.real() == std::round(p.real());
}

}  // namespace detail

struct Hyp2f1Options {
    unsigned max_terms = 10000;
    double tail_tol = 1e-14;
};

/// Gauss hypergeometric series 2F1(u, v; w; z) by direct summation.
///
/// Terminating series (u or v a non-positive integer) are summed exactly for
/// any z.  Otherwise |z| < 1 is required; there is no analytic continuation.
/// Throws DomainError outside that region and NonConvergence when the tail
/// estimate is still above tolerance after the term cap.
inline cplx hyp2f1(cplx u, cplx v, cplx w, cplx z, const Hyp2f1Options& opt = {}) {
    long terms = -1;  // index of the last nonzero term when terminating
    for (cplx p : {u, v}) {
        if (detail::is_nonpositive_integer(p)) {
            const long t = static_cast<long>(-p.real());
            if (terms < 0 || t < terms) terms = t;
        }
    }
    const bool terminating = terms >= 0;
    if (z == cplx{0.0, 0.0}) return {1.0, 0.0};
    if (!terminating && std::abs(z) >= 1.0)
        throw DomainError("hyp2f1: |z| >= 1 and the series does not terminate");

    cplx term{1.0, 0.0};
    cplx sum = term;
    const double abs_z = std::abs(z);
    for (unsigned j = 0;; ++j) {
        if (terminating && static_cast<long>(j) >= terms) return sum;
        if (j >= opt.max_terms) break;
        const cplx denom = w + static_cast<double>(j);
        if (denom == cplx{0.0, 0.0})
            throw DomainError("hyp2f1: w is a non-positive integer reached before termination");
        term *= (u + static_cast<double>(j)) * (v + static_cast<double>(j)) / (denom * (j + 1.0)) * z;
        sum += term;
        if (!terminating) {
            // Terms eventually shrink geometrically with ratio -> |z|.
            const double tail = std::abs(term) / (1.0 - abs_z);
            if (tail <= opt.tail_tol * std::abs(sum) && j >= 1) return sum;
        }
    }
    throw NonConvergence("hyp2f1: tail above tolerance after " + std::to_string(opt.max_terms) +
                         " terms");
}

/// Principal-branch power base^exponent = exp(exponent (ln|base| + i Arg base))
/// with Arg in (-pi, pi].  A base on the negative real axis takes Arg = +pi
/// regardless of the sign of its zero imaginary part.
inline cplx cpow(cplx base, double exponent) {
    if (base == cplx{0.0, 0.0}) {
        if (exponent > 0.0) return {0.0, 0.0};
        throw DomainError("cpow: zero base with non-positive exponent");
    }
    double arg = std::atan2(base.imag(), base.real());
    if (base.imag() == 0.0 && base.real() < 0.0) arg = std::numbers::pi;
    return std::polar(std::exp(exponent * std::log(std::abs(base))), exponent * arg);
}

}  // namespace specfun
}  // namespace ptspec
