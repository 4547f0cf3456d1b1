#pragma once

// Parameter scans of the low-lying spectrum and detection of level crossings.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "ptspec/contour.hpp"
#include "ptspec/eigen.hpp"
#include "ptspec/errors.hpp"
#include "ptspec/models.hpp"

namespace ptspec {

/// Classified spectrum as a function of the scan parameter.
using ScanFamily = std::function<SpectrumResult(double)>;

struct Crossing {
    double param = 0.0;
    std::size_t lower = 0;  // index of the lower level of the adjacent pair
    std::size_t upper = 1;
    double gap = 0.0;
};

struct ScanFailure {
    double param = 0.0;
    std::string message;
};

struct ScanResult {
    std::vector<double> params;  // strictly increasing, failed points omitted
    std::vector<SpectrumResult> spectra;
    std::vector<Crossing> crossings;  // sorted by parameter, then level
    std::vector<ScanFailure> failures;
};

struct ScanOptions {
    double crossing_tol = 1e-3;  // energy units
    double refine_tol = 1e-4;    // width of the final refinement bracket
    unsigned max_refine = 80;
    unsigned threads = 0;  // 0: hardware concurrency
};

/// Real parts of the lowest `levels` non-spurious eigenvalues, ascending.
/// Members of conjugate pairs are included, so a pair that has just left the
/// real axis still shows up as two coincident levels.
inline std::vector<double> tracked_levels(const SpectrumResult& s, std::size_t levels) {
    std::vector<double> out;
    for (std::size_t i = 0; i < s.eigenvalues.size() && out.size() < levels; ++i) {
        const bool spurious = !s.classes.empty() && s.classes[i] == EigenClass::Spurious;
        if (!spurious) out.push_back(s.eigenvalues[i].real());
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Closed-form PTHO spectrum (both branches) as a family in alpha.
inline ScanFamily ptho_analytic_family(double c, unsigned nmax) {
    return [c, nmax](double alpha) {
        SpectrumResult s;
        for (const auto& lvl : ptho_levels(PthoParams{alpha, c}, nmax)) s.eigenvalues.emplace_back(lvl.energy, 0.0);
        s.classes.assign(s.eigenvalues.size(), EigenClass::Real);
        return s;
    };
}

/// Discretized PTHO spectrum on the straight contour `g` as a family in alpha.
inline ScanFamily ptho_numeric_family(double c, const Contour& g, double reality_tol = 1e-7,
                                      double spurious_fraction = 0.5) {
    return [c, g, reality_tol, spurious_fraction](double alpha) {
        Contour gc = g;
        gc.shift = c;
        const HamiltonianMatrix h = build_hamiltonian(PthoParams{alpha, c}, gc);
        SpectrumResult s = eig_dense(h);
        ClassifyOptions opt;
        opt.reality_tol = reality_tol;
        opt.pair_tol = reality_tol;
        opt.spurious_cut = spurious_cut_for(h.gridstep, spurious_fraction);
        opt.resolution = s.resolution;
        classify_spectrum(s, opt);
        return s;
    };
}

namespace detail {

inline std::vector<double> scan_grid(double lo, double hi, std::size_t steps) {
    if (steps < 1) throw DomainError("scan: steps must be >= 1");
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw DomainError("scan: range must be finite");
    if (steps == 1) return {lo};
    if (!(lo < hi)) throw DomainError("scan: lo must be < hi");
    std::vector<double> p(steps);
    for (std::size_t j = 0; j < steps; ++j)
        p[j] = j + 1 == steps ? hi : lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(steps - 1);
    return p;
}

inline double pair_gap(const std::vector<double>& lv, std::size_t k) {
    return k + 1 < lv.size() ? lv[k + 1] - lv[k] : std::numeric_limits<double>::infinity();
}

}  // namespace detail

/// Evaluates `family` on `steps` equally spaced parameters in [lo, hi] and
/// locates crossings among the lowest `levels` levels.  A crossing candidate
/// is an interior local minimum of an adjacent-level gap; all pairs with a
/// candidate at the same grid point are refined together by golden-section
/// search on the sum of their gaps, and a pair is reported when its gap at
/// the refined parameter is below the crossing tolerance.
///
/// Points are evaluated concurrently; a point whose evaluation throws a
/// library error is recorded in `failures` and skipped.
inline ScanResult scan_parameter(const ScanFamily& family, double lo, double hi, std::size_t steps,
                                 std::size_t levels, const ScanOptions& opt = {}) {
    if (levels < 1) throw DomainError("scan: levels must be >= 1");
    const std::vector<double> grid = detail::scan_grid(lo, hi, steps);

    std::vector<SpectrumResult> spectra(grid.size());
    std::vector<std::string> errors(grid.size());
    std::vector<char> ok(grid.size(), 0);
    {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t j = next++; j < grid.size(); j = next++) {
                try {
                    spectra[j] = family(grid[j]);
                    ok[j] = 1;
                } catch (const Error& e) {
                    errors[j] = e.what();
                }
            }
        };
        unsigned nthreads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
        nthreads = static_cast<unsigned>(std::min<std::size_t>(nthreads, grid.size()));
        std::vector<std::thread> pool;
        for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
        worker();
        for (auto& t : pool) t.join();
    }

    ScanResult out;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        if (ok[j]) {
            out.params.push_back(grid[j]);
            out.spectra.push_back(std::move(spectra[j]));
        } else {
            out.failures.push_back({grid[j], errors[j]});
        }
    }

    const std::size_t np = out.params.size();
    if (np < 3 || levels < 2) return out;
    std::vector<std::vector<double>> lv(np);
    for (std::size_t j = 0; j < np; ++j) lv[j] = tracked_levels(out.spectra[j], levels);

    // Candidate pairs grouped by grid point.
    std::map<std::size_t, std::vector<std::size_t>> candidates;
    for (std::size_t k = 0; k + 1 < levels; ++k) {
        for (std::size_t j = 1; j + 1 < np; ++j) {
            const double g0 = detail::pair_gap(lv[j - 1], k);
            const double g1 = detail::pair_gap(lv[j], k);
            const double g2 = detail::pair_gap(lv[j + 1], k);
            if (!std::isfinite(g1)) continue;
            if ((g1 < g0 && g1 <= g2) || (g1 <= g0 && g1 < g2)) candidates[j].push_back(k);
        }
    }

    std::map<double, std::vector<double>> cache;
    auto levels_at = [&](double a) -> const std::vector<double>& {
        auto it = cache.find(a);
        if (it != cache.end()) return it->second;
        return cache.emplace(a, tracked_levels(family(a), levels)).first->second;
    };

    std::vector<Crossing> found;
    for (const auto& [j, pairs] : candidates) {
        auto objective = [&](const std::vector<double>& l) {
            double s = 0.0;
            for (std::size_t k : pairs) s += detail::pair_gap(l, k);
            return s;
        };
        double best_a = out.params[j];
        double best_f = objective(lv[j]);
        std::vector<double> best_lv = lv[j];
        try {
            constexpr double inv_phi = 0.6180339887498949;
            double a = out.params[j - 1], b = out.params[j + 1];
            double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
            double f1 = objective(levels_at(x1)), f2 = objective(levels_at(x2));
            for (unsigned it = 0; it < opt.max_refine && (b - a) > opt.refine_tol; ++it) {
                if (f1 <= f2) {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - inv_phi * (b - a);
                    f1 = objective(levels_at(x1));
                } else {
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + inv_phi * (b - a);
                    f2 = objective(levels_at(x2));
                }
            }
            for (double x : {x1, x2}) {
                const auto& l = levels_at(x);
                const double f = objective(l);
                if (f < best_f) {
                    best_f = f;
                    best_a = x;
                    best_lv = l;
                }
            }
        } catch (const Error& e) {
            out.failures.push_back({out.params[j], std::string("refinement: ") + e.what()});
        }
        for (std::size_t k : pairs) {
            const double gap = detail::pair_gap(best_lv, k);
            if (gap < opt.crossing_tol) found.push_back({best_a, k, k + 1, gap});
        }
    }

    // One report per pair and crossing: merge reports closer than two grid steps.
    std::sort(found.begin(), found.end(), [](const Crossing& x, const Crossing& y) {
        return x.lower != y.lower ? x.lower < y.lower : x.param < y.param;
    });
    const double merge = 2.0 * (out.params.back() - out.params.front()) / static_cast<double>(np - 1);
    for (const Crossing& c : found) {
        if (!out.crossings.empty() && out.crossings.back().lower == c.lower &&
            c.param - out.crossings.back().param <= merge) {
            if (c.gap < out.crossings.back().gap) out.crossings.back() = c;
            continue;
        }
        out.crossings.push_back(c);
    }
    std::sort(out.crossings.begin(), out.crossings.end(), [](const Crossing& x, const Crossing& y) {
        return x.param != y.param ? x.param < y.param : x.lower < y.lower;
    });
    return out;
}

}  // namespace ptspec
