#pragma once

// Shifted integration contours and the three-point finite-difference
// discretization of -d^2/dt^2 + V(t - i shift) along them.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ptspec/errors.hpp"
#include "ptspec/models.hpp"

namespace ptspec {

using ModelSpec = std::variant<PthoParams, AngularParams>;

inline bool is_ptho(const ModelSpec& m) { return std::holds_alternative<PthoParams>(m); }

/// The downward shift of the model's contour: c for PTHO, eps for angular.
inline double model_shift(const ModelSpec& m) {
    return is_ptho(m) ? std::get<PthoParams>(m).c : std::get<AngularParams>(m).eps;
}

enum class ContourKind { straight_shifted, periodic_shifted };

struct Contour {
    ContourKind kind = ContourKind::straight_shifted;
    double shift = 1.0;
    double halfwidth = 12.0;  // L for straight contours, pi for periodic ones
    std::size_t npoints = 2000;

    static Contour straight(double shift, double halfwidth, std::size_t npoints) {
        Contour g{ContourKind::straight_shifted, shift, halfwidth, npoints};
        g.validate();
        return g;
    }

    static Contour periodic(double shift, std::size_t npoints) {
        Contour g{ContourKind::periodic_shifted, shift, std::numbers::pi, npoints};
        g.validate();
        return g;
    }

    /// Straight: endpoints included, h = 2L/(N-1).  Periodic: h = 2 pi / N.
    double step() const {
        return kind == ContourKind::straight_shifted
                   ? 2.0 * halfwidth / static_cast<double>(npoints - 1)
                   : 2.0 * std::numbers::pi / static_cast<double>(npoints);
    }

    void validate() const {
        if (npoints < 16) throw DomainError("contour: npoints must be >= 16");
        if (!(shift >= 0.0) || !std::isfinite(shift)) throw DomainError("contour: shift must be >= 0");
        if (!(halfwidth > 0.0) || !std::isfinite(halfwidth))
            throw DomainError("contour: halfwidth must be positive");
        if (kind == ContourKind::periodic_shifted && halfwidth != std::numbers::pi)
            throw DomainError("contour: periodic halfwidth is fixed to pi");
    }
};

/// Real contour parameters t_j; the complex points are t_j - i shift.
/// The grid is exactly reflection-symmetric: t_{N-1-j} == -t_j bit for bit.
/// Periodic grids sit at half-integer offsets, t_j = -pi + (j + 1/2) h.
inline std::vector<double> grid_points(const Contour& g) {
    g.validate();
    const std::size_t n = g.npoints;
    const double h = g.step();
    const double offset = g.kind == ContourKind::periodic_shifted ? 0.5 : 0.0;
    std::vector<double> t(n, 0.0);
    for (std::size_t j = 0; j < n / 2; ++j) {
        t[j] = -g.halfwidth + (static_cast<double>(j) + offset) * h;
        t[n - 1 - j] = -t[j];
    }
    return t;  // odd n leaves the middle point at exactly 0
}

namespace detail {

// 1/w computed as conj(w)/|w|^2, so that 1/conj(w) == conj(1/w) exactly.
inline cplx reciprocal(cplx w) { return std::conj(w) / std::norm(w); }

inline double distance_to_multiple(double t, double period, double offset) {
    const double r = std::remainder(t - offset, period);
    return std::abs(r);
}

}  // namespace detail

/// V at the contour point t - i shift.  The constant c^2 of the PTHO equation
/// is left out, so eigenvalues are E directly.
///   PTHO:    (t-ic)^2 + (alpha^2 - 1/4)/(t-ic)^2
///   angular: ell(ell+1)/sin^2(t-i eps) + lambda(lambda+1)/cos^2(t-i eps)
/// Re V is even and Im V odd in t, exactly in floating point.
inline cplx potential_value(const ModelSpec& m, double t) {
    if (const auto* p = std::get_if<PthoParams>(&m)) {
        const double strength = p->alpha * p->alpha - 0.25;
        const double re = t * t - p->c * p->c;
        const double im = -2.0 * t * p->c;
        const cplx z2{re, im};
        if (strength == 0.0) return z2;
        if (p->c == 0.0 && t == 0.0) throw SingularPoint("PTHO potential: contour hits x = ic");
        return z2 + strength * detail::reciprocal(z2);
    }
    const auto& a = std::get<AngularParams>(m);
    const double ell_strength = a.ell * (a.ell + 1.0);
    const double lam_strength = a.lambda * (a.lambda + 1.0);
    const double ch = std::cosh(a.eps), sh = std::sinh(a.eps);
    const double st = std::sin(t), ct = std::cos(t);
    if (a.eps == 0.0) {
        const double tiny = 1e-12;
        if (ell_strength != 0.0 && detail::distance_to_multiple(t, std::numbers::pi, 0.0) < tiny)
            throw SingularPoint("angular potential: contour hits a pole of 1/sin^2");
        if (lam_strength != 0.0 &&
            detail::distance_to_multiple(t, std::numbers::pi, std::numbers::pi / 2) < tiny)
            throw SingularPoint("angular potential: contour hits a pole of 1/cos^2");
    }
    cplx v{0.0, 0.0};
    if (ell_strength != 0.0) {
        const cplx s{st * ch, -ct * sh};  // sin(t - i eps)
        v += ell_strength * detail::reciprocal(s * s);
    }
    if (lam_strength != 0.0) {
        const cplx c{ct * ch, st * sh};  // cos(t - i eps)
        v += lam_strength * detail::reciprocal(c * c);
    }
    return v;
}

/// Tridiagonal complex matrix with optional wrap-around corners.
struct HamiltonianMatrix {
    std::vector<cplx> diag;
    std::vector<cplx> lower;  // H[i+1][i]
    std::vector<cplx> upper;  // H[i][i+1]
    bool periodic = false;
    cplx corner_lower{0.0, 0.0};  // H[N-1][0]
    cplx corner_upper{0.0, 0.0};  // H[0][N-1]
    double gridstep = 0.0;
    std::vector<double> nodes;  // contour parameter of each unknown

    std::size_t order() const { return diag.size(); }

    cplx operator()(std::size_t i, std::size_t j) const {
        const std::size_t n = order();
        if (i == j) return diag[i];
        if (j == i + 1) return upper[i];
        if (i == j + 1) return lower[j];
        if (periodic && i == 0 && j == n - 1) return corner_upper;
        if (periodic && i == n - 1 && j == 0) return corner_lower;
        return {0.0, 0.0};
    }

    /// y = H x
    void apply(const std::vector<cplx>& x, std::vector<cplx>& y) const {
        const std::size_t n = order();
        y.assign(n, cplx{0.0, 0.0});
        for (std::size_t i = 0; i < n; ++i) {
            cplx acc = diag[i] * x[i];
            if (i + 1 < n) acc += upper[i] * x[i + 1];
            if (i > 0) acc += lower[i - 1] * x[i - 1];
            y[i] = acc;
        }
        if (periodic) {
            y[0] += corner_upper * x[n - 1];
            y[n - 1] += corner_lower * x[0];
        }
    }

    /// Max column sum.
    double norm1() const {
        const std::size_t n = order();
        double best = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double s = std::abs(diag[j]);
            if (j > 0) s += std::abs(upper[j - 1]);
            if (j + 1 < n) s += std::abs(lower[j]);
            if (periodic && j == 0) s += std::abs(corner_lower);
            if (periodic && j == n - 1) s += std::abs(corner_upper);
            best = std::max(best, s);
        }
        return best;
    }
};

/// Central three-point discretization: diagonal 2/h^2 + V(t_j - i shift),
/// neighbours -1/h^2.  Straight contours keep the interior points as unknowns
/// (psi = 0 at t = +-L); periodic contours wrap around with corner entries.
inline HamiltonianMatrix build_hamiltonian(const ModelSpec& m, const Contour& g) {
    g.validate();
    const bool ptho = is_ptho(m);
    if (ptho != (g.kind == ContourKind::straight_shifted))
        throw DomainError("build_hamiltonian: contour kind does not match the model");
    if (ptho) {
        std::get<PthoParams>(m).validate();
    } else {
        const auto& a = std::get<AngularParams>(m);
        a.validate();
        if (a.big_m != 2) throw UnsupportedModel("periodic contour supports M = 2 only");
    }
    if (model_shift(m) != g.shift)
        throw DomainError("build_hamiltonian: contour shift differs from the model shift");

    const std::vector<double> t = grid_points(g);
    const double h = g.step();
    const double inv_h2 = 1.0 / (h * h);

    HamiltonianMatrix out;
    out.gridstep = h;
    out.periodic = !ptho;
    if (ptho) {
        out.nodes.assign(t.begin() + 1, t.end() - 1);
    } else {
        out.nodes = t;
    }
    const std::size_t n = out.nodes.size();
    out.diag.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.diag[j] = 2.0 * inv_h2 + potential_value(m, out.nodes[j]);
    out.lower.assign(n - 1, cplx{-inv_h2, 0.0});
    out.upper.assign(n - 1, cplx{-inv_h2, 0.0});
    if (out.periodic) {
        out.corner_lower = cplx{-inv_h2, 0.0};
        out.corner_upper = cplx{-inv_h2, 0.0};
    }
    return out;
}

}  // namespace ptspec
