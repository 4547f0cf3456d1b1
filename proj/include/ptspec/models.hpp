#pragma once

// Closed-form solutions of the two exactly solvable PT-symmetric models:
//
//  * the shifted singular harmonic oscillator (PTHO) on the line x - ic,
//      -psi'' + [(x-ic)^2 + (alpha^2 - 1/4)/(x-ic)^2] psi = E psi,
//    with E = 4n + 2 + 2 q alpha, q = +-1 the quasi-parity;
//
//  * the Poschl-Teller angular equation with lambda = 0 on (-pi, pi) shifted
//    to phi - i eps,
//      -chi'' + ell(ell+1)/sin^2(phi) chi = E chi,
//    with E = (k + q alpha + 1/2)^2 and alpha = ell + 1/2.
//
// Eigenfunctions carry no normalization constant.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "ptspec/errors.hpp"
#include "ptspec/specfun.hpp"

namespace ptspec {

/// Quasi-parity branch label.  `minus` is the quasi-even half of the spectrum.
enum class QParity : int { minus = -1, plus = +1 };

constexpr double sign_of(QParity q) { return q == QParity::plus ? 1.0 : -1.0; }
inline char qparity_char(QParity q) { return q == QParity::plus ? '+' : '-'; }

struct PthoParams {
    double alpha = 1.5;
    double c = 1.0;  // downward shift of the real axis

    /// alpha > 0, c >= 0, and c > 0 unless the centrifugal term vanishes.
    void validate() const {
        if (!(alpha > 0.0) || !std::isfinite(alpha))
            throw DomainError("PTHO: alpha must be positive");
        if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("PTHO: shift c must be >= 0");
        if (c == 0.0 && alpha != 0.5)
            throw DomainError("PTHO: c > 0 is required when alpha != 1/2");
    }

    bool operator==(const PthoParams&) const = default;
};

struct AngularParams {
    double ell = 1.0;     // strength ell(ell+1)/sin^2
    double lambda = 0.0;  // strength lambda(lambda+1)/cos^2
    int big_m = 2;        // interval (-M pi/2, M pi/2)
    double eps = 0.1;     // downward shift of the periodic interval

    double alpha() const { return ell + 0.5; }

    void validate() const {
        if (!(ell >= 0.0) || !std::isfinite(ell)) throw DomainError("angular: ell must be >= 0");
        if (!std::isfinite(lambda)) throw DomainError("angular: lambda must be finite");
        if (big_m < 1) throw DomainError("angular: M must be a positive integer");
        if (!(eps >= 0.0) || !std::isfinite(eps)) throw DomainError("angular: eps must be >= 0");
    }

    /// Closed forms exist only for lambda = 0 on the M = 2 interval.
    void require_solvable() const {
        validate();
        if (lambda != 0.0 || big_m != 2)
            throw UnsupportedModel("angular: closed-form solutions need lambda = 0 and M = 2");
    }

    bool operator==(const AngularParams&) const = default;
};

struct AnalyticLevel {
    unsigned index = 0;  // n (PTHO) or k (angular)
    QParity qparity = QParity::plus;
    double energy = 0.0;
    // Eigenfunction uses the renormalized Gegenbauer limit because
    // C_k^{1/2-alpha} vanishes identically.
    bool renormalized = false;
};

/// Sort by energy, then quasi-parity (minus first), then index.
inline void sort_levels(std::vector<AnalyticLevel>& levels) {
    std::sort(levels.begin(), levels.end(), [](const AnalyticLevel& a, const AnalyticLevel& b) {
        if (a.energy != b.energy) return a.energy < b.energy;
        if (a.qparity != b.qparity) return a.qparity == QParity::minus;
        return a.index < b.index;
    });
}

// ---------------------------------------------------------------------------
// PTHO

/// E = 4n + 2 + 2 q alpha.  Independent of the shift c.
inline double ptho_energy(unsigned n, QParity q, const PthoParams& p) {
    return 4.0 * n + 2.0 + 2.0 * sign_of(q) * p.alpha;
}

/// psi(x) = (x-ic)^{q alpha + 1/2} exp(-(x-ic)^2/2) L_n^{(q alpha)}((x-ic)^2).
/// The principal branch never meets the cut for c > 0 because Im(x-ic) < 0.
inline cplx ptho_wavefunction(unsigned n, QParity q, const PthoParams& p, double x) {
    p.validate();
    const cplx z{x, -p.c};
    const double a = sign_of(q) * p.alpha;
    const double exponent = a + 0.5;
    const cplx z2 = z * z;
    const cplx prefactor = exponent == 0.0 ? cplx{1.0, 0.0} : specfun::cpow(z, exponent);
    return prefactor * std::exp(-0.5 * z2) * specfun::laguerre(n, a, z2);
}

/// Both branches for n = 0..nmax, sorted by energy.
inline std::vector<AnalyticLevel> ptho_levels(const PthoParams& p, unsigned nmax) {
    p.validate();
    std::vector<AnalyticLevel> out;
    for (unsigned n = 0; n <= nmax; ++n)
        for (QParity q : {QParity::plus, QParity::minus}) out.push_back({n, q, ptho_energy(n, q, p), false});
    sort_levels(out);
    return out;
}

// ---------------------------------------------------------------------------
// Angular (Poschl-Teller, lambda = 0, M = 2)

/// E = (k + q alpha + 1/2)^2.
inline double angular_energy(unsigned k, QParity q, const AngularParams& p) {
    p.require_solvable();
    const double root = k + sign_of(q) * p.alpha() + 0.5;
    return root * root;
}

/// Gegenbauer parameter (and power of sin) for a branch: 1/2 + q alpha.
inline double angular_exponent(QParity q, const AngularParams& p) {
    return 0.5 + sign_of(q) * p.alpha();
}

/// Whether the branch/index pair needs the renormalized Gegenbauer limit.
inline bool angular_is_renormalized(unsigned k, QParity q, const AngularParams& p) {
    return specfun::gegenbauer_vanishes(k, angular_exponent(q, p));
}

/// chi(phi) = sin(z)^{1/2 + q alpha} C_k^{1/2 + q alpha}(cos z), z = phi - i eps.
/// Where C_k vanishes identically (1/2 - alpha a non-positive integer -m and
/// k > 2m) the renormalized limit is used instead; see
/// specfun::gegenbauer_regularized.
inline cplx angular_wavefunction(unsigned k, QParity q, const AngularParams& p, double phi) {
    p.require_solvable();
    const cplx z{phi, -p.eps};
    const double lam = angular_exponent(q, p);
    const cplx prefactor = lam == 0.0 ? cplx{1.0, 0.0} : specfun::cpow(std::sin(z), lam);
    return prefactor * specfun::gegenbauer_regularized(k, lam, std::cos(z));
}

/// Parameters u, v of the hypergeometric solution together with beta:
/// 2u = 1/2 - beta + q alpha, 2v = 1/2 + beta + q alpha.
struct HypergeomIndices {
    double u = 0.0;
    double v = 0.0;
    double beta = 0.0;
};

inline HypergeomIndices hypergeom_indices(QParity q, const AngularParams& p, double beta) {
    const double qa = sign_of(q) * p.alpha();
    return {0.5 * (0.5 - beta + qa), 0.5 * (0.5 + beta + qa), beta};
}

/// Indices for which the series terminates after j terms (u = -j):
/// beta = 2j + 1/2 + q alpha.  Substituting the solution into the ODE gives
/// E = beta^2, so this reproduces the closed-form energy of Gegenbauer index
/// k = 2j; odd k come from the companion solution carrying a cos(phi) factor.
inline HypergeomIndices termination_indices(unsigned j, QParity q, const AngularParams& p) {
    return hypergeom_indices(q, p, 2.0 * j + 0.5 + sign_of(q) * p.alpha());
}

/// chi(phi) = sin(z)^{1/2 + q alpha} 2F1(u, v; 1 + q alpha; sin^2 z), z = phi - i eps.
inline cplx hypergeom_solution(QParity q, const HypergeomIndices& idx, const AngularParams& p,
                               double phi) {
    p.validate();
    if (p.lambda != 0.0) throw UnsupportedModel("hypergeometric solution needs lambda = 0");
    const cplx z{phi, -p.eps};
    const cplx s = std::sin(z);
    const double exponent = angular_exponent(q, p);
    const cplx prefactor = exponent == 0.0 ? cplx{1.0, 0.0} : specfun::cpow(s, exponent);
    return prefactor * specfun::hyp2f1(idx.u, idx.v, 1.0 + sign_of(q) * p.alpha(), s * s);
}

/// All closed-form levels with k <= kmax on both branches, sorted by energy.
///
/// For integer ell the minus branch repeats energies (k and 2 ell - k give
/// proportional eigenfunctions); both copies are kept.
inline std::vector<AnalyticLevel> termination_levels(const AngularParams& p, unsigned kmax) {
    p.require_solvable();
    std::vector<AnalyticLevel> out;
    for (unsigned k = 0; k <= kmax; ++k)
        for (QParity q : {QParity::plus, QParity::minus})
            out.push_back({k, q, angular_energy(k, q, p), angular_is_renormalized(k, q, p)});
    sort_levels(out);
    return out;
}

}  // namespace ptspec
