// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "ode_residuals.hpp"
#include "ptspec/contour.hpp"
#include "ptspec/eigen.hpp"
#include "ptspec/models.hpp"
#include "ptspec/scan.hpp"
#include "specfun_properties.hpp"

using namespace ptspec;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Solved {
    HamiltonianMatrix h;
    SpectrumResult s;
    bool unpaired = false;  // classification raised UnpairedComplexValue
    std::string unpaired_message;
    double seconds = 0.0;
};

Solved solve(const ModelSpec& m, const Contour& g, std::size_t vectors) {
    const auto t0 = Clock::now();
    Solved out;
    out.h = build_hamiltonian(m, g);
    EigOptions eo;
    eo.want_vectors = vectors > 0;
    eo.vector_count = vectors;
    out.s = eig_dense(out.h, eo);
    ClassifyOptions co;
    co.spurious_cut = spurious_cut_for(out.h.gridstep);
    co.resolution = out.s.resolution;
    try {
        classify_spectrum(out.s, co);
    } catch (const UnpairedComplexValue& e) {
        out.unpaired = true;
        out.unpaired_message = e.what();
    }
    out.seconds = seconds_since(t0);
    return out;
}

Solved solve_ptho(double alpha, double c, std::size_t npoints, std::size_t vectors = 0) {
    return solve(PthoParams{alpha, c}, Contour::straight(c, 12.0, npoints), vectors);
}

// Lowest `count` Real eigenvalues, or fewer if the spectrum has fewer.
std::vector<double> lowest_real(const Solved& r, std::size_t count) {
    std::vector<double> out;
    if (r.unpaired) return out;
    for (std::size_t i : real_indices(r.s)) {
        if (out.size() == count) break;
        out.push_back(r.s.eigenvalues[i].real());
    }
    return out;
}

std::vector<double> analytic_energies(const std::vector<AnalyticLevel>& levels, std::size_t count) {
    std::vector<double> out;
    for (std::size_t i = 0; i < count && i < levels.size(); ++i) out.push_back(levels[i].energy);
    return out;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return INFINITY;
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

std::string list(const std::vector<double>& v) {
    std::string s = "{";
    char buf[32];
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%s%.6f", i ? ", " : "", v[i]);
        s += buf;
    }
    return s + "}";
}

int failures = 0;

void report(const char* id, bool pass, const char* title, const std::string& detail) {
    std::printf("%s %s %s: %s\n", id, pass ? "PASS" : "FAIL", title, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

struct DefectSummary {
    std::size_t isolated = 0;
    std::size_t degenerate = 0;
    double worst_isolated = 0.0;
    double worst_degenerate = 0.0;
};

// Retained levels are the first `count` Real eigenvalues.  A level with
// another eigenvalue within `gap` sits on a crossing of the two branches and
// is reported separately.
DefectSummary pt_defects(const Solved& r, std::size_t count, double gap) {
    DefectSummary d;
    const auto& e = r.s.eigenvalues;
    const auto real = real_indices(r.s);
    for (std::size_t n = 0; n < count && n < real.size(); ++n) {
        const std::size_t i = real[n];
        bool crowded = false;
        for (std::size_t j = 0; j < e.size(); ++j) crowded |= j != i && std::abs(e[j] - e[i]) < gap;
        if (crowded) {
            ++d.degenerate;
            d.worst_degenerate = std::max(d.worst_degenerate, r.s.ptdefect[i]);
        } else {
            ++d.isolated;
            d.worst_isolated = std::max(d.worst_isolated, r.s.ptdefect[i]);
        }
    }
    return d;
}

std::size_t count_pairs(const Solved& r, std::size_t count) {
    std::size_t pairs = 0, seen = 0;
    for (std::size_t i = 0; i < r.s.size() && seen < count; ++i) {
        if (r.s.classes[i] == EigenClass::Spurious) continue;
        ++seen;
        if (r.s.classes[i] == EigenClass::ConjugatePair) ++pairs;
    }
    return pairs;
}

}  // namespace

int main() {
    const auto start = Clock::now();
    constexpr std::size_t kVectors = 16;

    // C1
    const auto ptho = solve_ptho(1.5, 1.0, 2000, kVectors);
    const auto ptho_low = lowest_real(ptho, 8);
    const auto ptho_want = analytic_energies(ptho_levels({1.5, 1.0}, 8), 8);
    const double c1_err = max_abs_diff(ptho_low, ptho_want);
    report("C1", c1_err <= 1e-3 && ptho.seconds < 300.0, "PTHO spectrum alpha=3/2 c=1 N=2000",
           fmt("max_abs_err=%.3e (tol 1e-3) time=%.1fs numeric=%s analytic=%s", c1_err, ptho.seconds,
               list(ptho_low).c_str(), list(ptho_want).c_str()));

    // C2
    const auto ptho_half = solve_ptho(1.5, 0.5, 2000);
    const auto ptho_two = solve_ptho(1.5, 2.0, 2000);
    const double c2_half = max_abs_diff(lowest_real(ptho_half, 8), ptho_low);
    const double c2_two = max_abs_diff(lowest_real(ptho_two, 8), ptho_low);
    report("C2", c2_half <= 2e-3 && c2_two <= 2e-3, "shift invariance c=0.5, 2.0 vs c=1",
           fmt("max_change c=0.5: %.3e, c=2.0: %.3e (tol 2e-3)", c2_half, c2_two));

    // C3
    const auto harmonic = solve_ptho(0.5, 1.0, 2000);
    const auto harmonic_low = lowest_real(harmonic, 7);
    const auto harmonic_want = analytic_energies(ptho_levels({0.5, 1.0}, 7), 7);
    const double c3_err = max_abs_diff(harmonic_low, harmonic_want);
    report("C3", c3_err <= 1e-3, "harmonic reduction alpha=1/2 c=1",
           fmt("max_abs_err=%.3e (tol 1e-3) numeric=%s analytic=%s", c3_err, list(harmonic_low).c_str(),
               list(harmonic_want).c_str()));

    // C4
    const AngularParams ang{1.0, 0.0, 2, 0.1};
    const auto angular = solve(ang, Contour::periodic(0.1, 1024), kVectors);
    const auto angular_low = lowest_real(angular, 7);
    const auto angular_want = analytic_energies(termination_levels(ang, 10), 7);
    const double c4_err = max_abs_diff(angular_low, angular_want);
    report("C4", c4_err <= 5e-3, "angular spectrum ell=1 eps=0.1 N=1024",
           fmt("max_abs_err=%.3e (tol 5e-3) time=%.1fs numeric=%s analytic=%s", c4_err, angular.seconds,
               list(angular_low).c_str(), list(angular_want).c_str()));

    // C5
    {
        const auto t0 = Clock::now();
        const std::size_t scan_points = 1200;
        const auto r = scan_parameter(ptho_numeric_family(1.0, Contour::straight(1.0, 12.0, scan_points)), 0.5, 2.5,
                                      41, 8);
        bool at_one = false, at_two = false, stray = false;
        std::string found;
        for (const auto& c : r.crossings) {
            const bool one = std::abs(c.param - 1.0) <= 0.02, two = std::abs(c.param - 2.0) <= 0.02;
            at_one |= one;
            at_two |= two;
            stray |= !one && !two;
            found += fmt(" %.6f(%zu,%zu gap %.1e)", c.param, c.lower, c.upper, c.gap);
        }
        report("C5", at_one && at_two && !stray && r.failures.empty(), "crossing scan alpha in [0.5, 2.5], 41 steps",
               fmt("N=%zu crossings=%zu failed_points=%zu time=%.0fs:%s", scan_points, r.crossings.size(),
                   r.failures.size(), seconds_since(t0), found.c_str()));
    }

    // C6
    {
        const auto dp = pt_defects(ptho, 8, 1e-3);
        const auto da = pt_defects(angular, 7, 1e-3);
        const double worst_iso = std::max(dp.worst_isolated, da.worst_isolated);
        const double worst_deg = std::max(dp.worst_degenerate, da.worst_degenerate);
        report("C6", worst_iso < 1e-8 && dp.isolated + da.isolated > 0, "PT-defect of retained eigenvectors",
               fmt("levels away from crossings %zu+%zu, worst=%.2e (tol 1e-8); levels on a degeneracy "
                   "%zu+%zu not asserted, worst=%.2e",
                   dp.isolated, da.isolated, worst_iso, dp.degenerate, da.degenerate, worst_deg));
    }

    // C7
    {
        std::size_t pairs = 0;
        bool raised = false;
        std::string message;
        for (const Solved* r : {&ptho, &ptho_half, &ptho_two, &harmonic, &angular}) {
            if (r->unpaired) {
                raised = true;
                message = r->unpaired_message;
                continue;
            }
            pairs += count_pairs(*r, 8);
        }
        report("C7", !raised && pairs == 0, "reality of retained low-lying levels",
               fmt("conjugate pairs among retained levels: %zu; unpaired raised: %s %s", pairs,
                   raised ? "yes" : "no", message.c_str()));
    }

    // C8
    {
        const auto coarse = solve_ptho(1.5, 1.0, 1000);
        const double e1000 = max_abs_diff(lowest_real(coarse, 8), ptho_want);
        const double ratio = e1000 / c1_err;
        report("C8", ratio >= 3.5, "convergence order N=1000 -> 2000",
               fmt("worst error %.3e -> %.3e, ratio %.3f (need >= 3.5)", e1000, c1_err, ratio));
    }

    // C9
    {
        const auto t0 = Clock::now();
        const checks::PropertyOutcome outcomes[] = {
            checks::check_laguerre_derivative(1000), checks::check_laguerre_sum(1000),
            checks::check_gegenbauer_sum(1000), checks::check_terminating_hyp2f1(1000),
            checks::check_cpow_integer(1000)};
        const double secs = seconds_since(t0);
        int cases = 0, failed = 0;
        for (const auto& o : outcomes) {
            cases += o.cases;
            failed += o.failures;
        }
        report("C9", failed == 0 && secs < 10.0, "special-function identities",
               fmt("%d cases in 5 properties, %d failures, %.2fs", cases, failed, secs));
    }

    // C10
    {
        auto summarize = [](const std::vector<checks::ResidualCase>& cases, std::size_t& over, std::size_t& slow,
                            double& worst, double& min_ratio) {
            over = slow = 0;
            worst = 0.0;
            min_ratio = INFINITY;
            for (const auto& rc : cases) {
                worst = std::max(worst, rc.fine);
                if (!(rc.fine < 1e-5)) ++over;
                if (rc.fine == 0.0) continue;  // exact on the grid
                min_ratio = std::min(min_ratio, rc.ratio());
                if (rc.ratio() < 3.5) ++slow;
            }
        };
        const auto p = checks::ptho_residuals(1e-3);
        const auto a = checks::angular_residuals(1e-3);
        std::size_t p_over, p_slow, a_over, a_slow;
        double p_worst, p_ratio, a_worst, a_ratio;
        summarize(p, p_over, p_slow, p_worst, p_ratio);
        summarize(a, a_over, a_slow, a_worst, a_ratio);
        report("C10", p_over + p_slow + a_over + a_slow == 0, "ODE residuals at h=1e-3",
               fmt("ptho: %zu/%zu above 1e-5 (worst %.2e), min h-halving ratio %.3f; "
                   "angular: %zu/%zu above 1e-5 (worst %.2e), min ratio %.3f",
                   p_over, p.size(), p_worst, p_ratio, a_over, a.size(), a_worst, a_ratio));
    }

    std::printf("acceptance: %d of 10 criteria failed, %.0fs\n", failures, seconds_since(start));
    return failures == 0 ? 0 : 1;
}
