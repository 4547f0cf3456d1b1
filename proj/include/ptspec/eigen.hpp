#pragma once

// Dense non-Hermitian eigensolver and spectrum post-processing.
//
// Matrices with exact PT structure (H == J conj(H) J, J the index reversal)
// are first mapped to a real matrix by a fixed unitary similarity and solved
// with the real double-shift QR algorithm, so complex eigenvalues come out as
// exact conjugate pairs.  Everything else goes through the complex
// single-shift QR algorithm.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ptspec/contour.hpp"
#include "ptspec/errors.hpp"
#include "ptspec/linalg.hpp"
#include "ptspec/models.hpp"

namespace ptspec {

using DenseMatrix = Matrix<cplx>;

enum class EigenClass { Real, ConjugatePair, Spurious };

inline std::string_view to_string(EigenClass c) {
    switch (c) {
        case EigenClass::Real: return "real";
        case EigenClass::ConjugatePair: return "pair";
        case EigenClass::Spurious: return "spurious";
    }
    return "?";
}

struct SpectrumResult {
    std::vector<cplx> eigenvalues;  // sorted by real part, then imaginary part
    std::vector<EigenClass> classes;  // empty until classified
    // Eigenvectors of the first ptdefect.size() eigenvalues, unit norm.
    std::vector<std::vector<cplx>> eigenvectors;
    std::vector<double> ptdefect;
    std::vector<double> backward_error;  // ||Hv - Ev|| / ||H||_1
    double norm = 0.0;                   // ||H||_1
    // Eigenvalues closer than this cannot be told apart from a coalescing
    // (defective) pair in double precision.
    double resolution = 0.0;

    std::size_t size() const { return eigenvalues.size(); }
};

struct EigOptions {
    bool want_vectors = false;
    // Only the lowest `vector_count` eigenvalues (by real part) get vectors.
    std::size_t vector_count = std::numeric_limits<std::size_t>::max();
    // With false, only the PT-defects and backward errors are kept.
    bool keep_vectors = true;
    std::size_t max_order = 4096;
    std::size_t sweeps_per_order = 30;  // QR iteration budget is this times the order
    std::uint64_t seed = 0x51ced5eedULL;  // start vectors for inverse iteration
};

namespace detail {

inline double conj_of(double x) { return x; }
inline cplx conj_of(cplx x) { return std::conj(x); }
inline double abs1(double x) { return std::abs(x); }
inline double abs1(cplx x) { return std::abs(x.real()) + std::abs(x.imag()); }

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Multiple of sqrt(eps ||H||) below which two eigenvalues are treated as one
// defective (coalesced) eigenvalue.
constexpr double kResolutionFactor = 64.0;

/// Diagonal similarity scaling with powers of two (no permutations).
template <class T>
void balance(Matrix<T>& a) {
    const std::size_t n = a.rows();
    constexpr double radix = 2.0, sqrdx = radix * radix;
    bool done = false;
    while (!done) {
        done = true;
        for (std::size_t i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                c += abs1(a(j, i));
                r += abs1(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix, f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= sqrdx;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                const double inv = 1.0 / f;
                T* row = a.row(i);
                for (std::size_t j = 0; j < n; ++j) row[j] *= inv;
                for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
}

/// Householder reduction to upper Hessenberg form in place.  Columns whose
/// part below the subdiagonal is already zero are skipped.
template <class T>
void hessenberg(Matrix<T>& a) {
    const std::size_t n = a.rows();
    if (n < 3) return;
    std::vector<T> v(n), w(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        std::size_t last = k + 1;
        for (std::size_t i = n - 1; i > k + 1; --i) {
            if (a(i, k) != T{}) {
                last = i;
                break;
            }
        }
        if (last == k + 1) continue;

        double xnorm = 0.0;
        for (std::size_t i = k + 1; i <= last; ++i) xnorm = std::hypot(xnorm, std::abs(a(i, k)));
        const T x0 = a(k + 1, k);
        const double ax0 = std::abs(x0);
        T phase = ax0 == 0.0 ? T{1.0} : x0 / ax0;
        const T alpha = -phase * xnorm;
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i <= last; ++i) {
            v[i] = a(i, k);
            if (i == k + 1) v[i] -= alpha;
            vnorm2 += std::norm(v[i]);
        }
        const double tau = 2.0 / vnorm2;

        // A <- (I - tau v v^H) A on rows k+1..last
        std::fill(w.begin() + k, w.end(), T{});
        for (std::size_t i = k + 1; i <= last; ++i) {
            const T cv = conj_of(v[i]);
            const T* row = a.row(i);
            for (std::size_t j = k; j < n; ++j) w[j] += cv * row[j];
        }
        for (std::size_t i = k + 1; i <= last; ++i) {
            const T f = tau * v[i];
            T* row = a.row(i);
            for (std::size_t j = k; j < n; ++j) row[j] -= f * w[j];
        }
        // A <- A (I - tau v v^H) on columns k+1..last
        for (std::size_t i = 0; i < n; ++i) {
            T* row = a.row(i);
            T s{};
            for (std::size_t j = k + 1; j <= last; ++j) s += row[j] * v[j];
            if (s == T{}) continue;
            s *= tau;
            for (std::size_t j = k + 1; j <= last; ++j) row[j] -= s * conj_of(v[j]);
        }
        a(k + 1, k) = alpha;
        for (std::size_t i = k + 2; i <= last; ++i) a(i, k) = T{};
    }
}

template <class T>
double hessenberg_norm(const Matrix<T>& a) {
    double s = 0.0;
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = (i == 0 ? 0 : i - 1); j < n; ++j) s += abs1(a(i, j));
    return s;
}

// Index of the top of the active unreduced block ending at `hi`; zeroes the
// negligible subdiagonal entry it stops at.
template <class T>
std::ptrdiff_t find_split(Matrix<T>& a, std::ptrdiff_t hi, double anorm) {
    std::ptrdiff_t l = hi;
    for (; l > 0; --l) {
        double s = abs1(a(l - 1, l - 1)) + abs1(a(l, l));
        if (s == 0.0) s = anorm;
        if (abs1(a(l, l - 1)) <= kEps * s) {
            a(l, l - 1) = T{};
            break;
        }
    }
    return l;
}

// Householder vector for p (length m = 2 or 3) reflecting it onto e_0.
// Returns false when p is already a multiple of e_0.
inline bool small_reflector(double* p, std::size_t m, double& tau) {
    double tail = 0.0;
    for (std::size_t i = 1; i < m; ++i) tail = std::hypot(tail, p[i]);
    if (tail == 0.0) return false;
    const double norm = std::hypot(p[0], tail);
    const double alpha = -std::copysign(norm, p[0]);
    p[0] -= alpha;
    double vn2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) vn2 += p[i] * p[i];
    tau = 2.0 / vn2;
    return true;
}

inline void apply_small_reflector(Matrix<double>& a, std::ptrdiff_t k, const double* v, std::size_t m,
                                  double tau, std::ptrdiff_t col_lo, std::ptrdiff_t col_hi,
                                  std::ptrdiff_t row_lo, std::ptrdiff_t row_hi) {
    for (std::ptrdiff_t j = col_lo; j <= col_hi; ++j) {
        double d = 0.0;
        for (std::size_t i = 0; i < m; ++i) d += v[i] * a(k + i, j);
        d *= tau;
        for (std::size_t i = 0; i < m; ++i) a(k + i, j) -= d * v[i];
    }
    for (std::ptrdiff_t i = row_lo; i <= row_hi; ++i) {
        double* row = a.row(i) + k;
        double d = 0.0;
        for (std::size_t j = 0; j < m; ++j) d += row[j] * v[j];
        d *= tau;
        for (std::size_t j = 0; j < m; ++j) row[j] -= d * v[j];
    }
}

/// Eigenvalues of a real upper Hessenberg matrix by the Francis double-shift
/// QR algorithm.  Complex eigenvalues are returned as exact conjugate pairs.
inline std::vector<cplx> hqr_real(Matrix<double>& a, std::size_t max_sweeps) {
    const auto n = static_cast<std::ptrdiff_t>(a.rows());
    std::vector<cplx> w;
    w.reserve(a.rows());
    const double anorm = hessenberg_norm(a);
    std::ptrdiff_t hi = n - 1;
    std::size_t its = 0, total = 0;
    while (hi >= 0) {
        const std::ptrdiff_t l = find_split(a, hi, anorm);
        if (l == hi) {
            w.emplace_back(a(hi, hi), 0.0);
            --hi;
            its = 0;
            continue;
        }
        if (l == hi - 1) {
            const double p = 0.5 * (a(hi - 1, hi - 1) - a(hi, hi));
            const double bc = a(hi - 1, hi) * a(hi, hi - 1);
            const double d = a(hi, hi);
            const double disc = p * p + bc;
            if (disc >= 0.0) {
                const double z = p + std::copysign(std::sqrt(disc), p);
                w.emplace_back(d + z, 0.0);
                w.emplace_back(z != 0.0 ? d - bc / z : d, 0.0);
            } else {
                const double im = std::sqrt(-disc);
                w.emplace_back(d + p, im);
                w.emplace_back(d + p, -im);
            }
            hi -= 2;
            its = 0;
            continue;
        }
        if (total >= max_sweeps)
            throw NonConvergence("QR iteration: no deflation after " + std::to_string(total) + " sweeps");
        ++its;
        ++total;

        double s_sum, s_prod;
        if (its % 10 == 0) {
            const double ex = std::abs(a(hi, hi - 1)) + std::abs(a(hi - 1, hi - 2));
            const double d = a(hi, hi);
            s_sum = 2.0 * d + 1.5 * ex;
            s_prod = d * d + 1.5 * ex * d + ex * ex;
        } else {
            s_sum = a(hi - 1, hi - 1) + a(hi, hi);
            s_prod = a(hi - 1, hi - 1) * a(hi, hi) - a(hi - 1, hi) * a(hi, hi - 1);
        }

        double p[3];
        {
            const double h00 = a(l, l), h10 = a(l + 1, l), h01 = a(l, l + 1), h11 = a(l + 1, l + 1);
            p[0] = h00 * h00 + h01 * h10 - s_sum * h00 + s_prod;
            p[1] = h10 * (h00 + h11 - s_sum);
            p[2] = h10 * a(l + 2, l + 1);
        }
        for (std::ptrdiff_t k = l; k <= hi - 2; ++k) {
            if (k > l) {
                p[0] = a(k, k - 1);
                p[1] = a(k + 1, k - 1);
                p[2] = a(k + 2, k - 1);
            }
            double tau = 0.0;
            if (small_reflector(p, 3, tau)) {
                apply_small_reflector(a, k, p, 3, tau, k > l ? k - 1 : l, hi, l, std::min(k + 3, hi));
                if (k > l) {
                    a(k + 1, k - 1) = 0.0;
                    a(k + 2, k - 1) = 0.0;
                }
            }
        }
        p[0] = a(hi - 1, hi - 2);
        p[1] = a(hi, hi - 2);
        double tau = 0.0;
        if (small_reflector(p, 2, tau)) {
            apply_small_reflector(a, hi - 1, p, 2, tau, hi - 2, hi, l, hi);
            a(hi, hi - 2) = 0.0;
        }
    }
    return w;
}

/// Eigenvalues of a complex upper Hessenberg matrix by implicit single-shift
/// QR with Wilkinson shifts and Givens rotations.
inline std::vector<cplx> hqr_complex(Matrix<cplx>& a, std::size_t max_sweeps) {
    const auto n = static_cast<std::ptrdiff_t>(a.rows());
    std::vector<cplx> w;
    w.reserve(a.rows());
    const double anorm = hessenberg_norm(a);
    std::ptrdiff_t hi = n - 1;
    std::size_t its = 0, total = 0;
    while (hi >= 0) {
        const std::ptrdiff_t l = find_split(a, hi, anorm);
        if (l == hi) {
            w.push_back(a(hi, hi));
            --hi;
            its = 0;
            continue;
        }
        if (total >= max_sweeps)
            throw NonConvergence("QR iteration: no deflation after " + std::to_string(total) + " sweeps");
        ++its;
        ++total;

        cplx mu;
        if (its % 10 == 0) {
            mu = a(hi, hi) + 0.75 * std::abs(a(hi, hi - 1));
        } else {
            const cplx d = a(hi, hi);
            const cplx p = 0.5 * (a(hi - 1, hi - 1) - d);
            const cplx bc = a(hi - 1, hi) * a(hi, hi - 1);
            const cplx disc = std::sqrt(p * p + bc);
            const cplx den = std::abs(p + disc) >= std::abs(p - disc) ? p + disc : p - disc;
            mu = den == cplx{} ? d : d - bc / den;
        }

        cplx x = a(l, l) - mu;
        cplx y = a(l + 1, l);
        for (std::ptrdiff_t k = l; k < hi; ++k) {
            if (k > l) {
                x = a(k, k - 1);
                y = a(k + 1, k - 1);
            }
            double c;
            cplx s;
            if (y == cplx{}) {
                continue;
            } else if (x == cplx{}) {
                c = 0.0;
                s = std::conj(y) / std::abs(y);
            } else {
                const double ax = std::abs(x);
                const double nrm = std::hypot(ax, std::abs(y));
                c = ax / nrm;
                s = (x / ax) * std::conj(y) / nrm;
            }
            for (std::ptrdiff_t j = (k > l ? k - 1 : l); j <= hi; ++j) {
                const cplx t1 = a(k, j), t2 = a(k + 1, j);
                a(k, j) = c * t1 + s * t2;
                a(k + 1, j) = -std::conj(s) * t1 + c * t2;
            }
            const std::ptrdiff_t row_hi = std::min(k + 2, hi);
            for (std::ptrdiff_t i = l; i <= row_hi; ++i) {
                const cplx t1 = a(i, k), t2 = a(i, k + 1);
                a(i, k) = c * t1 + std::conj(s) * t2;
                a(i, k + 1) = -s * t1 + c * t2;
            }
            if (k > l) a(k + 1, k - 1) = cplx{};
        }
    }
    return w;
}

inline void sort_by_real(std::vector<cplx>& v) {
    std::sort(v.begin(), v.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

/// Deterministic unstructured start vector for inverse iteration.
inline std::vector<cplx> start_vector(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<cplx> v(n);
    for (auto& x : v) x = {dist(rng), dist(rng)};
    return v;
}

inline double norm2(std::span<const cplx> v) {
    double s = 0.0;
    for (const cplx& x : v) s = std::hypot(s, std::abs(x));
    return s;
}

/// Unit norm, largest-modulus component real and positive.
inline void normalize_vector(std::vector<cplx>& v) {
    const double nrm = norm2(v);
    if (nrm == 0.0) return;
    std::size_t big = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (std::abs(v[i]) > std::abs(v[big])) big = i;
    const cplx phase = std::conj(v[big]) / std::abs(v[big]);
    for (auto& x : v) x *= phase / nrm;
    v[big] = {v[big].real(), 0.0};
}

// Position of each unknown in a banded ordering of H.  Periodic matrices are
// interleaved from both ends (0, N-1, 1, N-2, ...) so the corner entries end
// up inside a band of width 2.
inline std::vector<std::size_t> band_positions(const HamiltonianMatrix& h) {
    const std::size_t n = h.order();
    std::vector<std::size_t> pos(n);
    if (!h.periodic) {
        for (std::size_t i = 0; i < n; ++i) pos[i] = i;
        return pos;
    }
    for (std::size_t c = 0; c < n / 2; ++c) {
        pos[c] = 2 * c;
        pos[n - 1 - c] = 2 * c + 1;
    }
    if (n % 2 == 1) pos[n / 2] = n - 1;
    return pos;
}

template <class ApplyFn, class FactorFn>
std::vector<cplx> inverse_iterate(std::size_t n, cplx lambda, double hnorm, std::uint64_t seed,
                                  ApplyFn&& apply, FactorFn&& factor_and_solve, double& backward_error) {
    std::vector<cplx> v = start_vector(n, seed);
    std::vector<cplx> hv;
    backward_error = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 6; ++it) {
        factor_and_solve(v);
        normalize_vector(v);
        apply(v, hv);
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) r = std::hypot(r, std::abs(hv[i] - lambda * v[i]));
        backward_error = hnorm > 0.0 ? r / hnorm : r;
        if (it >= 1 && backward_error <= 1e-14) break;
    }
    return v;
}

}  // namespace detail

/// Dense copy of a tridiagonal-plus-corners Hamiltonian.
inline DenseMatrix to_dense(const HamiltonianMatrix& h) {
    const std::size_t n = h.order();
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = h.diag[i];
        if (i + 1 < n) {
            a(i, i + 1) = h.upper[i];
            a(i + 1, i) = h.lower[i];
        }
    }
    if (h.periodic && n > 1) {
        a(0, n - 1) += h.corner_upper;
        a(n - 1, 0) += h.corner_lower;
    }
    return a;
}

/// Exact test of H[i][j] == conj(H[N-1-i][N-1-j]) on the stored entries.
inline bool is_pt_structured(const HamiltonianMatrix& h) {
    const std::size_t n = h.order();
    for (std::size_t i = 0; i < n; ++i)
        if (h.diag[i] != std::conj(h.diag[n - 1 - i])) return false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        // H[i][i+1] pairs with H[N-1-i][N-2-i], a lower entry.
        if (h.upper[i] != std::conj(h.lower[n - 2 - i])) return false;
    }
    if (h.periodic && h.corner_upper != std::conj(h.corner_lower)) return false;
    return true;
}

/// Real matrix unitarily similar to a PT-structured H.  Columns of the
/// similarity come in pairs (e_c + e_{N-1-c})/sqrt2, i(e_c - e_{N-1-c})/sqrt2,
/// interleaved, with e_{N/2} last for odd N.  Only real parts are accumulated:
/// the imaginary parts cancel exactly between mirrored entries.
inline Matrix<double> real_form(const HamiltonianMatrix& h) {
    const std::size_t n = h.order();
    const double s = 1.0 / std::numbers::sqrt2;
    // Column indices and coefficients of row i of the similarity.
    struct RowQ {
        std::size_t col[2];
        cplx coef[2];
        int count;
    };
    std::vector<RowQ> q(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = std::min(i, n - 1 - i);
        if (i == n - 1 - i) {
            q[i] = {{n - 1, 0}, {cplx{1.0, 0.0}, {}}, 1};
        } else {
            const double side = i < n - 1 - i ? 1.0 : -1.0;
            q[i] = {{2 * c, 2 * c + 1}, {cplx{s, 0.0}, cplx{0.0, side * s}}, 2};
        }
    }
    Matrix<double> k(n, n, 0.0);
    auto add = [&](std::size_t i, std::size_t j, cplx hij) {
        if (hij == cplx{}) return;
        for (int a = 0; a < q[i].count; ++a)
            for (int b = 0; b < q[j].count; ++b)
                k(q[i].col[a], q[j].col[b]) += (std::conj(q[i].coef[a]) * hij * q[j].coef[b]).real();
    };
    for (std::size_t i = 0; i < n; ++i) {
        add(i, i, h.diag[i]);
        if (i + 1 < n) {
            add(i, i + 1, h.upper[i]);
            add(i + 1, i, h.lower[i]);
        }
    }
    if (h.periodic && n > 1) {
        add(0, n - 1, h.corner_upper);
        add(n - 1, 0, h.corner_lower);
    }
    return k;
}

/// min over theta of ||conj(reverse(v)) - e^{i theta} v|| / ||v||; the
/// optimal phase is that of <v, conj(reverse(v))>.  Returns 0 for v == 0.
inline double pt_defect(std::span<const cplx> v) {
    const std::size_t n = v.size();
    cplx ip{};
    double vn2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ip += std::conj(v[i]) * std::conj(v[n - 1 - i]);
        vn2 += std::norm(v[i]);
    }
    if (vn2 == 0.0) return 0.0;
    const cplx phase = std::abs(ip) == 0.0 ? cplx{1.0, 0.0} : ip / std::abs(ip);
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) d = std::hypot(d, std::abs(std::conj(v[n - 1 - i]) - phase * v[i]));
    return d / std::sqrt(vn2);
}

/// pt_defect for a vector of unknowns on the contour `g`.
inline double pt_defect(std::span<const cplx> v, const Contour& g) {
    const std::size_t expected = g.kind == ContourKind::straight_shifted ? g.npoints - 2 : g.npoints;
    if (v.size() != expected) throw std::invalid_argument("pt_defect: vector length does not match the contour");
    return pt_defect(v);
}

/// All eigenvalues of a general complex matrix: balancing, Hessenberg
/// reduction, complex shifted QR.  Vectors by inverse iteration on `a`.
inline SpectrumResult eig_dense(const DenseMatrix& a, const EigOptions& opt = {}) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("eig_dense: matrix must be square");
    if (n > opt.max_order) throw DomainError("eig_dense: order exceeds the configured cap");
    SpectrumResult out;
    out.norm = a.norm1();
    out.resolution = detail::kResolutionFactor * std::sqrt(detail::kEps * out.norm);
    if (n == 0) return out;
    DenseMatrix work = a;
    detail::balance(work);
    detail::hessenberg(work);
    out.eigenvalues = detail::hqr_complex(work, opt.sweeps_per_order * n);
    detail::sort_by_real(out.eigenvalues);

    if (opt.want_vectors) {
        const std::size_t count = std::min(opt.vector_count, n);
        for (std::size_t e = 0; e < count; ++e) {
            const cplx lambda = out.eigenvalues[e];
            BandLU lu(n, n - 1, n - 1);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) lu.at(i, j) = a(i, j) - (i == j ? lambda : cplx{});
            lu.factor(detail::kEps * std::max(out.norm, 1e-300));
            double berr = 0.0;
            auto v = detail::inverse_iterate(
                n, lambda, out.norm, opt.seed + e,
                [&](const std::vector<cplx>& x, std::vector<cplx>& y) { a.apply(x, y); },
                [&](std::vector<cplx>& x) { lu.solve(x); }, berr);
            out.ptdefect.push_back(pt_defect(v));
            out.backward_error.push_back(berr);
            if (opt.keep_vectors) out.eigenvectors.push_back(std::move(v));
        }
    }
    return out;
}

/// Eigenvalues (and optionally eigenvectors) of a discretized Hamiltonian.
/// PT-structured matrices use the real form and the double-shift QR; vectors
/// come from inverse iteration on the original banded matrix.
inline SpectrumResult eig_dense(const HamiltonianMatrix& h, const EigOptions& opt = {}) {
    const std::size_t n = h.order();
    if (n > opt.max_order) throw DomainError("eig_dense: order exceeds the configured cap");
    if (!is_pt_structured(h)) {
        SpectrumResult out = eig_dense(to_dense(h), opt);
        return out;
    }
    SpectrumResult out;
    out.norm = h.norm1();
    out.resolution = detail::kResolutionFactor * std::sqrt(detail::kEps * out.norm);
    if (n == 0) return out;
    Matrix<double> k = real_form(h);
    detail::balance(k);
    detail::hessenberg(k);
    out.eigenvalues = detail::hqr_real(k, opt.sweeps_per_order * n);
    detail::sort_by_real(out.eigenvalues);

    if (opt.want_vectors) {
        const std::vector<std::size_t> pos = detail::band_positions(h);
        const std::size_t bw = h.periodic ? 2 : 1;
        const std::size_t count = std::min(opt.vector_count, n);
        for (std::size_t e = 0; e < count; ++e) {
            const cplx lambda = out.eigenvalues[e];
            BandLU lu(n, bw, bw);
            auto put = [&](std::size_t i, std::size_t j, cplx value) { lu.at(pos[i], pos[j]) += value; };
            for (std::size_t i = 0; i < n; ++i) {
                put(i, i, h.diag[i] - lambda);
                if (i + 1 < n) {
                    put(i, i + 1, h.upper[i]);
                    put(i + 1, i, h.lower[i]);
                }
            }
            if (h.periodic && n > 1) {
                put(0, n - 1, h.corner_upper);
                put(n - 1, 0, h.corner_lower);
            }
            lu.factor(detail::kEps * std::max(out.norm, 1e-300));
            std::vector<cplx> permuted(n);
            double berr = 0.0;
            auto v = detail::inverse_iterate(
                n, lambda, out.norm, opt.seed + e,
                [&](const std::vector<cplx>& x, std::vector<cplx>& y) { h.apply(x, y); },
                [&](std::vector<cplx>& x) {
                    for (std::size_t i = 0; i < n; ++i) permuted[pos[i]] = x[i];
                    lu.solve(permuted);
                    for (std::size_t i = 0; i < n; ++i) x[i] = permuted[pos[i]];
                },
                berr);
            out.ptdefect.push_back(pt_defect(v));
            out.backward_error.push_back(berr);
            if (opt.keep_vectors) out.eigenvectors.push_back(std::move(v));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Classification

struct ClassifyOptions {
    double reality_tol = 1e-7;  // relative: |Im| <= tol * max(1, |Re|)
    double spurious_cut = std::numeric_limits<double>::infinity();
    double pair_tol = 1e-7;    // relative: |E_i - conj(E_j)| <= tol * max(1, |E_i|)
    double resolution = 0.0;   // absolute floor for both tests
};

/// Spurious cut for a grid step: `fraction` of the stencil maximum 4/h^2.
inline double spurious_cut_for(double gridstep, double fraction = 0.5) {
    return fraction * 4.0 / (gridstep * gridstep);
}

/// Marks every eigenvalue Real, ConjugatePair or Spurious (in that order of
/// checks: spurious first).  Throws UnpairedComplexValue for a non-real
/// value without a conjugate partner.
inline void classify_spectrum(SpectrumResult& s, const ClassifyOptions& opt) {
    const std::size_t n = s.eigenvalues.size();
    const auto& e = s.eigenvalues;
    s.classes.assign(n, EigenClass::Real);
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < n; ++i) {
        const double scale = std::max(1.0, std::abs(e[i].real()));
        if (e[i].real() > opt.spurious_cut) {
            s.classes[i] = EigenClass::Spurious;
        } else if (std::abs(e[i].imag()) <= std::max(opt.reality_tol * scale, opt.resolution)) {
            s.classes[i] = EigenClass::Real;
        } else {
            s.classes[i] = EigenClass::ConjugatePair;
            open.push_back(i);
        }
    }
    std::vector<bool> matched(n, false);
    for (std::size_t i : open) {
        if (matched[i]) continue;
        std::size_t best = n;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t j : open) {
            if (j == i || matched[j] || e[i].imag() * e[j].imag() >= 0.0) continue;
            const double d = std::abs(e[i] - std::conj(e[j]));
            if (d < best_d) {
                best_d = d;
                best = j;
            }
        }
        const double tol = std::max(opt.pair_tol * std::max(1.0, std::abs(e[i])), opt.resolution);
        if (best < n && best_d <= tol) {
            matched[i] = matched[best] = true;
            continue;
        }
        // A partner just above the spurious cut makes this one spurious too.
        bool spurious_partner = false;
        for (std::size_t j = 0; j < n; ++j) {
            if (s.classes[j] == EigenClass::Spurious && std::abs(e[i] - std::conj(e[j])) <= tol) {
                spurious_partner = true;
                break;
            }
        }
        if (spurious_partner) {
            s.classes[i] = EigenClass::Spurious;
            matched[i] = true;
            continue;
        }
        throw UnpairedComplexValue("classify_spectrum: no conjugate partner for E = " +
                                   std::to_string(e[i].real()) + (e[i].imag() < 0 ? " - " : " + ") +
                                   std::to_string(std::abs(e[i].imag())) + "i");
    }
}

/// Classification of a bare list of eigenvalues (sorted on return).
inline SpectrumResult classify_spectrum(std::vector<cplx> values, double reality_tol, double spurious_cut) {
    SpectrumResult s;
    s.eigenvalues = std::move(values);
    detail::sort_by_real(s.eigenvalues);
    ClassifyOptions opt;
    opt.reality_tol = reality_tol;
    opt.pair_tol = reality_tol;
    opt.spurious_cut = spurious_cut;
    classify_spectrum(s, opt);
    return s;
}

/// Indices of the Real eigenvalues, in order.
inline std::vector<std::size_t> real_indices(const SpectrumResult& s) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < s.classes.size(); ++i)
        if (s.classes[i] == EigenClass::Real) out.push_back(i);
    return out;
}

// ---------------------------------------------------------------------------
// Comparison against closed-form levels

struct LevelMatch {
    std::size_t index = 0;  // position in the numeric spectrum
    double numeric = 0.0;
    double analytic = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;  // abs_err / max(1, |analytic|)
};

struct MatchReport {
    std::vector<LevelMatch> rows;
    double tol = 0.0;
    double max_abs_err = 0.0;
    double max_rel_err = 0.0;
    bool pass = false;
};

/// Pairs the lowest `count` Real numeric eigenvalues with the lowest `count`
/// analytic energies.  PASS iff every relative error is <= tol.
inline MatchReport match_spectra(const SpectrumResult& numeric, std::vector<AnalyticLevel> analytic,
                                 std::size_t count, double tol) {
    if (numeric.classes.size() != numeric.eigenvalues.size())
        throw std::invalid_argument("match_spectra: spectrum has not been classified");
    const auto real = real_indices(numeric);
    if (real.size() < count)
        throw InsufficientLevels("match_spectra: " + std::to_string(real.size()) + " real levels, " +
                                 std::to_string(count) + " requested");
    if (analytic.size() < count)
        throw InsufficientLevels("match_spectra: " + std::to_string(analytic.size()) +
                                 " analytic levels, " + std::to_string(count) + " requested");
    sort_levels(analytic);
    MatchReport r;
    r.tol = tol;
    for (std::size_t i = 0; i < count; ++i) {
        LevelMatch m;
        m.index = real[i];
        m.numeric = numeric.eigenvalues[real[i]].real();
        m.analytic = analytic[i].energy;
        m.abs_err = std::abs(m.numeric - m.analytic);
        m.rel_err = m.abs_err / std::max(1.0, std::abs(m.analytic));
        r.max_abs_err = std::max(r.max_abs_err, m.abs_err);
        r.max_rel_err = std::max(r.max_rel_err, m.rel_err);
        r.rows.push_back(m);
    }
    r.pass = r.max_rel_err <= tol;
    return r;
}

}  // namespace ptspec
