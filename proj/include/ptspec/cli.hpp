#pragma once

// Run configuration, command implementations and output rendering for the
// `ptspec` command-line tool.  Commands render into a string so a failed run
// never leaves a partial output file behind.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "ptspec/contour.hpp"
#include "ptspec/eigen.hpp"
#include "ptspec/errors.hpp"
#include "ptspec/models.hpp"
#include "ptspec/scan.hpp"

namespace ptspec::cli {

using json = nlohmann::json;

enum class Command { spectrum, verify, scan, wavefunction };
enum class OutputFormat { csv, json };

namespace exit_code {
constexpr int ok = 0;
constexpr int failure = 1;
constexpr int config = 2;
constexpr int nonconvergence = 3;
constexpr int verify_failed = 4;
}  // namespace exit_code

struct Tolerances {
    double reality = 1e-7;
    double spurious_fraction = 0.5;
    double crossing = 1e-3;
    double match = 1e-3;
    bool operator==(const Tolerances&) const = default;
};

struct SpectrumSettings {
    std::size_t count = 0;  // rows to print; 0 prints every eigenvalue
    bool operator==(const SpectrumSettings&) const = default;
};

struct VerifySettings {
    std::size_t count = 8;
    bool operator==(const VerifySettings&) const = default;
};

struct ScanSettings {
    double lo = 0.5;
    double hi = 2.5;
    std::size_t steps = 41;
    std::size_t levels = 8;
    bool analytic = false;
    bool operator==(const ScanSettings&) const = default;
};

struct WavefunctionSettings {
    unsigned index = 0;
    QParity qparity = QParity::plus;
    bool operator==(const WavefunctionSettings&) const = default;
};

struct RunConfig {
    Command command = Command::spectrum;
    ModelSpec model = PthoParams{};
    std::size_t npoints = 2000;
    double halfwidth = 12.0;  // straight contours only
    Tolerances tolerances;
    SpectrumSettings spectrum;
    VerifySettings verify;
    ScanSettings scan;
    WavefunctionSettings wavefunction;
    OutputFormat format = OutputFormat::csv;
    std::string output_path;  // empty: standard output

    /// The integration contour implied by the model and grid settings.
    Contour contour() const {
        if (is_ptho(model)) return Contour::straight(model_shift(model), halfwidth, npoints);
        return Contour::periodic(model_shift(model), npoints);
    }
};

inline bool operator==(const RunConfig& a, const RunConfig& b) {
    return a.command == b.command && a.model == b.model && a.npoints == b.npoints &&
           a.halfwidth == b.halfwidth && a.tolerances == b.tolerances && a.spectrum == b.spectrum &&
           a.verify == b.verify && a.scan == b.scan && a.wavefunction == b.wavefunction &&
           a.format == b.format && a.output_path == b.output_path;
}

// ---------------------------------------------------------------------------
// Names

inline std::string to_string(Command c) {
    switch (c) {
        case Command::spectrum: return "spectrum";
        case Command::verify: return "verify";
        case Command::scan: return "scan";
        case Command::wavefunction: return "wavefunction";
    }
    return "?";
}

inline Command parse_command(const std::string& s) {
    if (s == "spectrum") return Command::spectrum;
    if (s == "verify") return Command::verify;
    if (s == "scan") return Command::scan;
    if (s == "wavefunction") return Command::wavefunction;
    throw ConfigError("unknown command '" + s + "'");
}

inline std::string to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

inline OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw ConfigError("unknown output format '" + s + "'");
}

// ---------------------------------------------------------------------------
// Number formatting

/// Shortest round-trip representation, capped at 12 significant digits.
/// Negative zero prints as 0.
inline std::string format_number(double v) {
    if (v == 0.0) return "0";
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, res.ptr);
    int digits = 0;
    bool leading = true;
    for (char ch : s) {
        if (ch == 'e' || ch == 'E') break;
        if (ch < '0' || ch > '9') continue;
        if (leading && ch == '0') continue;
        leading = false;
        ++digits;
    }
    if (digits > 12) {
        res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
        s.assign(buf, res.ptr);
    }
    return s;
}

/// The formatted value as a JSON number, so CSV and JSON carry the same digits.
inline json json_number(double v) {
    if (!std::isfinite(v)) return format_number(v);
    const std::string s = format_number(v);
    double parsed = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), parsed);
    return parsed;
}

// ---------------------------------------------------------------------------
// Config (de)serialization

namespace detail {

inline void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& item : obj.items())
        if (!ok.count(item.key())) throw ConfigError(where + ": unknown key '" + item.key() + "'");
}

template <class T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(where + "." + key + ": wrong type");
    }
}

inline void read_count(const json& obj, const char* key, std::size_t& out, const std::string& where) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw ConfigError(where + "." + key + ": expected a non-negative integer");
    out = v.get<std::size_t>();
}

inline void read_number(const json& obj, const char* key, double& out, const std::string& where) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
    out = v.get<double>();
}

}  // namespace detail

inline json config_to_json(const RunConfig& c) {
    json j;
    j["format_version"] = 1;
    j["command"] = to_string(c.command);
    if (const auto* p = std::get_if<PthoParams>(&c.model)) {
        j["model"] = {{"kind", "ptho"}, {"alpha", p->alpha}, {"c", p->c}};
        j["contour"] = {{"npoints", c.npoints}, {"halfwidth", c.halfwidth}};
    } else {
        const auto& a = std::get<AngularParams>(c.model);
        j["model"] = {{"kind", "angular"}, {"ell", a.ell}, {"lambda", a.lambda}, {"M", a.big_m}, {"eps", a.eps}};
        j["contour"] = {{"npoints", c.npoints}};
    }
    j["tolerances"] = {{"reality", c.tolerances.reality},
                       {"spurious_fraction", c.tolerances.spurious_fraction},
                       {"crossing", c.tolerances.crossing},
                       {"match", c.tolerances.match}};
    j["spectrum"] = {{"count", c.spectrum.count}};
    j["verify"] = {{"count", c.verify.count}};
    j["scan"] = {{"lo", c.scan.lo},
                 {"hi", c.scan.hi},
                 {"steps", c.scan.steps},
                 {"levels", c.scan.levels},
                 {"analytic", c.scan.analytic}};
    j["wavefunction"] = {{"index", c.wavefunction.index},
                         {"qparity", std::string(1, qparity_char(c.wavefunction.qparity))}};
    j["output"] = {{"format", to_string(c.format)}, {"path", c.output_path}};
    return j;
}

/// Parses a config document.  Missing keys keep their defaults; unknown keys
/// and wrong types raise ConfigError.
inline RunConfig config_from_json(const json& j) {
    using detail::read;
    using detail::read_count;
    using detail::read_number;
    detail::reject_unknown(j,
                           {"format_version", "command", "model", "contour", "tolerances", "spectrum", "verify",
                            "scan", "wavefunction", "output"},
                           "config");
    RunConfig c;
    if (!j.contains("format_version") || j.at("format_version") != 1)
        throw ConfigError("config: format_version must be 1");
    if (j.contains("command")) {
        std::string s;
        read(j, "command", s, "config");
        c.command = parse_command(s);
    }
    if (j.contains("model")) {
        const json& m = j.at("model");
        if (!m.is_object() || !m.contains("kind")) throw ConfigError("model: 'kind' is required");
        std::string kind;
        read(m, "kind", kind, "model");
        if (kind == "ptho") {
            detail::reject_unknown(m, {"kind", "alpha", "c"}, "model");
            PthoParams p;
            read_number(m, "alpha", p.alpha, "model");
            read_number(m, "c", p.c, "model");
            c.model = p;
        } else if (kind == "angular") {
            detail::reject_unknown(m, {"kind", "ell", "lambda", "M", "eps"}, "model");
            AngularParams a;
            read_number(m, "ell", a.ell, "model");
            read_number(m, "lambda", a.lambda, "model");
            if (m.contains("M")) {
                if (!m.at("M").is_number_integer()) throw ConfigError("model.M: expected an integer");
                a.big_m = m.at("M").get<int>();
            }
            read_number(m, "eps", a.eps, "model");
            c.model = a;
            c.npoints = 1024;
        } else {
            throw ConfigError("model.kind: expected 'ptho' or 'angular'");
        }
    }
    if (j.contains("contour")) {
        const json& g = j.at("contour");
        if (is_ptho(c.model)) {
            detail::reject_unknown(g, {"npoints", "halfwidth"}, "contour");
            read_number(g, "halfwidth", c.halfwidth, "contour");
        } else {
            detail::reject_unknown(g, {"npoints"}, "contour");
        }
        read_count(g, "npoints", c.npoints, "contour");
    }
    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        detail::reject_unknown(t, {"reality", "spurious_fraction", "crossing", "match"}, "tolerances");
        read_number(t, "reality", c.tolerances.reality, "tolerances");
        read_number(t, "spurious_fraction", c.tolerances.spurious_fraction, "tolerances");
        read_number(t, "crossing", c.tolerances.crossing, "tolerances");
        read_number(t, "match", c.tolerances.match, "tolerances");
    }
    if (j.contains("spectrum")) {
        detail::reject_unknown(j.at("spectrum"), {"count"}, "spectrum");
        read_count(j.at("spectrum"), "count", c.spectrum.count, "spectrum");
    }
    if (j.contains("verify")) {
        detail::reject_unknown(j.at("verify"), {"count"}, "verify");
        read_count(j.at("verify"), "count", c.verify.count, "verify");
    }
    if (j.contains("scan")) {
        const json& s = j.at("scan");
        detail::reject_unknown(s, {"lo", "hi", "steps", "levels", "analytic"}, "scan");
        read_number(s, "lo", c.scan.lo, "scan");
        read_number(s, "hi", c.scan.hi, "scan");
        read_count(s, "steps", c.scan.steps, "scan");
        read_count(s, "levels", c.scan.levels, "scan");
        read(s, "analytic", c.scan.analytic, "scan");
    }
    if (j.contains("wavefunction")) {
        const json& w = j.at("wavefunction");
        detail::reject_unknown(w, {"index", "qparity"}, "wavefunction");
        std::size_t index = c.wavefunction.index;
        read_count(w, "index", index, "wavefunction");
        c.wavefunction.index = static_cast<unsigned>(index);
        if (w.contains("qparity")) {
            std::string q;
            read(w, "qparity", q, "wavefunction");
            if (q == "+") c.wavefunction.qparity = QParity::plus;
            else if (q == "-") c.wavefunction.qparity = QParity::minus;
            else throw ConfigError("wavefunction.qparity: expected '+' or '-'");
        }
    }
    if (j.contains("output")) {
        const json& o = j.at("output");
        detail::reject_unknown(o, {"format", "path"}, "output");
        std::string f = to_string(c.format);
        read(o, "format", f, "output");
        c.format = parse_format(f);
        read(o, "path", c.output_path, "output");
    }
    return c;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    return config_from_json(j);
}

/// Command-line values that take precedence over the config file.
struct Overrides {
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<std::size_t> npoints;
    std::optional<double> alpha;  // PTHO alpha; angular ell = alpha - 1/2
    std::optional<double> shift;  // c or eps
    std::optional<double> tol;    // match tolerance
};

inline void apply_overrides(RunConfig& c, const Overrides& o) {
    if (o.out) c.output_path = *o.out;
    if (o.format) c.format = parse_format(*o.format);
    if (o.npoints) c.npoints = *o.npoints;
    if (o.tol) c.tolerances.match = *o.tol;
    if (auto* p = std::get_if<PthoParams>(&c.model)) {
        if (o.alpha) p->alpha = *o.alpha;
        if (o.shift) p->c = *o.shift;
    } else {
        auto& a = std::get<AngularParams>(c.model);
        if (o.alpha) a.ell = *o.alpha - 0.5;
        if (o.shift) a.eps = *o.shift;
    }
}

/// Consistency checks beyond what the JSON layer can see.
inline void validate(const RunConfig& c) {
    try {
        std::visit([](const auto& p) { p.validate(); }, c.model);
        (void)c.contour();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    const auto& t = c.tolerances;
    if (!(t.reality >= 0.0) || !(t.crossing > 0.0) || !(t.match >= 0.0) || !(t.spurious_fraction > 0.0))
        throw ConfigError("tolerances must be positive");
    if (c.verify.count < 1) throw ConfigError("verify.count must be >= 1");
    if (c.scan.steps < 1 || c.scan.levels < 1) throw ConfigError("scan.steps and scan.levels must be >= 1");
    if (c.scan.steps > 1 && !(c.scan.lo < c.scan.hi)) throw ConfigError("scan: lo must be < hi");
}

// ---------------------------------------------------------------------------
// Commands

struct CommandOutput {
    int exit_code = exit_code::ok;
    std::string text;
};

namespace detail {

inline SpectrumResult solve_classified(const RunConfig& c, const HamiltonianMatrix& h, bool vectors) {
    EigOptions eo;
    eo.want_vectors = vectors;
    eo.keep_vectors = false;
    SpectrumResult s = eig_dense(h, eo);
    ClassifyOptions co;
    co.reality_tol = c.tolerances.reality;
    co.pair_tol = c.tolerances.reality;
    co.spurious_cut = spurious_cut_for(h.gridstep, c.tolerances.spurious_fraction);
    co.resolution = s.resolution;
    classify_spectrum(s, co);
    return s;
}

inline std::vector<AnalyticLevel> analytic_levels(const ModelSpec& m, std::size_t count) {
    if (const auto* p = std::get_if<PthoParams>(&m)) return ptho_levels(*p, static_cast<unsigned>(count));
    const auto& a = std::get<AngularParams>(m);
    a.require_solvable();
    const unsigned extra = static_cast<unsigned>(std::ceil(2.0 * a.alpha()));
    return termination_levels(a, static_cast<unsigned>(count) + extra);
}

inline json envelope(const RunConfig& c) {
    json j;
    j["format_version"] = 1;
    j["command"] = to_string(c.command);
    j["config"] = config_to_json(c);
    return j;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace detail

/// Eigenvalue table: index, Re E, Im E, class, PT-defect of the eigenvector.
inline CommandOutput cmd_spectrum(const RunConfig& c) {
    const HamiltonianMatrix h = build_hamiltonian(c.model, c.contour());
    const SpectrumResult s = detail::solve_classified(c, h, true);
    const std::size_t rows = c.spectrum.count == 0 ? s.size() : std::min(c.spectrum.count, s.size());
    CommandOutput out;
    if (c.format == OutputFormat::csv) {
        std::string t = "index,re_e,im_e,class,pt_defect\n";
        for (std::size_t i = 0; i < rows; ++i) {
            t += std::to_string(i) + ',' + format_number(s.eigenvalues[i].real()) + ',' +
                 format_number(s.eigenvalues[i].imag()) + ',' + std::string(to_string(s.classes[i])) + ',' +
                 format_number(s.ptdefect[i]) + '\n';
        }
        out.text = std::move(t);
    } else {
        json j = detail::envelope(c);
        json arr = json::array();
        for (std::size_t i = 0; i < rows; ++i) {
            arr.push_back({{"index", i},
                           {"re_e", json_number(s.eigenvalues[i].real())},
                           {"im_e", json_number(s.eigenvalues[i].imag())},
                           {"class", std::string(to_string(s.classes[i]))},
                           {"pt_defect", json_number(s.ptdefect[i])}});
        }
        j["eigenvalues"] = std::move(arr);
        out.text = detail::dump(j);
    }
    return out;
}

/// Lowest Real levels against the closed-form energies; exit 4 on FAIL.
inline CommandOutput cmd_verify(const RunConfig& c) {
    const auto analytic = detail::analytic_levels(c.model, c.verify.count);
    const HamiltonianMatrix h = build_hamiltonian(c.model, c.contour());
    const SpectrumResult s = detail::solve_classified(c, h, false);
    CommandOutput out;
    MatchReport r;
    std::string problem;
    try {
        r = match_spectra(s, analytic, c.verify.count, c.tolerances.match);
    } catch (const InsufficientLevels& e) {
        // Report the levels that do exist; the run fails either way.
        problem = e.what();
        const std::size_t available = std::min(real_indices(s).size(), analytic.size());
        r = match_spectra(s, analytic, available, c.tolerances.match);
        r.pass = false;
    }
    out.exit_code = r.pass ? exit_code::ok : exit_code::verify_failed;
    const std::string verdict = r.pass ? "PASS" : "FAIL";
    if (c.format == OutputFormat::csv) {
        std::string t = "index,numeric,analytic,abs_err,rel_err\n";
        for (const auto& m : r.rows) {
            t += std::to_string(m.index) + ',' + format_number(m.numeric) + ',' + format_number(m.analytic) + ',' +
                 format_number(m.abs_err) + ',' + format_number(m.rel_err) + '\n';
        }
        t += "# verdict " + verdict + " max_rel_err=" + format_number(r.max_rel_err) +
             " tol=" + format_number(r.tol) + '\n';
        if (!problem.empty()) t += "# " + problem + '\n';
        out.text = std::move(t);
    } else {
        json j = detail::envelope(c);
        json arr = json::array();
        for (const auto& m : r.rows) {
            arr.push_back({{"index", m.index},
                           {"numeric", json_number(m.numeric)},
                           {"analytic", json_number(m.analytic)},
                           {"abs_err", json_number(m.abs_err)},
                           {"rel_err", json_number(m.rel_err)}});
        }
        j["levels"] = std::move(arr);
        j["verdict"] = verdict;
        j["max_rel_err"] = json_number(r.max_rel_err);
        j["tol"] = json_number(r.tol);
        if (!problem.empty()) j["problem"] = problem;
        out.text = detail::dump(j);
    }
    return out;
}

/// Long-format table of the lowest levels over an alpha range, plus crossings.
inline CommandOutput cmd_scan(const RunConfig& c) {
    const auto* p = std::get_if<PthoParams>(&c.model);
    if (!p) throw UnsupportedModel("scan: only the PTHO model has an alpha family");
    const ScanFamily family = c.scan.analytic
                                  ? ptho_analytic_family(p->c, static_cast<unsigned>(c.scan.levels))
                                  : ptho_numeric_family(p->c, c.contour(), c.tolerances.reality,
                                                        c.tolerances.spurious_fraction);
    ScanOptions so;
    so.crossing_tol = c.tolerances.crossing;
    const ScanResult r = scan_parameter(family, c.scan.lo, c.scan.hi, c.scan.steps, c.scan.levels, so);

    struct Row {
        double param;
        std::size_t index;
        cplx value;
    };
    std::vector<Row> rows;
    for (std::size_t j = 0; j < r.params.size(); ++j) {
        const auto& s = r.spectra[j];
        std::size_t level = 0;
        for (std::size_t i = 0; i < s.size() && level < c.scan.levels; ++i) {
            if (!s.classes.empty() && s.classes[i] == EigenClass::Spurious) continue;
            rows.push_back({r.params[j], level++, s.eigenvalues[i]});
        }
    }
    CommandOutput out;
    if (c.format == OutputFormat::csv) {
        std::string t = "param,index,re_e,im_e\n";
        for (const auto& row : rows) {
            t += format_number(row.param) + ',' + std::to_string(row.index) + ',' + format_number(row.value.real()) +
                 ',' + format_number(row.value.imag()) + '\n';
        }
        t += "# crossings " + std::to_string(r.crossings.size()) + '\n';
        for (const auto& x : r.crossings) {
            t += "# crossing param=" + format_number(x.param) + " levels=" + std::to_string(x.lower) + ',' +
                 std::to_string(x.upper) + " gap=" + format_number(x.gap) + '\n';
        }
        for (const auto& f : r.failures) t += "# failed param=" + format_number(f.param) + ' ' + f.message + '\n';
        out.text = std::move(t);
    } else {
        json j = detail::envelope(c);
        json arr = json::array();
        for (const auto& row : rows) {
            arr.push_back({{"param", json_number(row.param)},
                           {"index", row.index},
                           {"re_e", json_number(row.value.real())},
                           {"im_e", json_number(row.value.imag())}});
        }
        j["levels"] = std::move(arr);
        json xs = json::array();
        for (const auto& x : r.crossings) {
            xs.push_back({{"param", json_number(x.param)},
                          {"lower", x.lower},
                          {"upper", x.upper},
                          {"gap", json_number(x.gap)}});
        }
        j["crossings"] = std::move(xs);
        json fs = json::array();
        for (const auto& f : r.failures) fs.push_back({{"param", json_number(f.param)}, {"message", f.message}});
        j["failures"] = std::move(fs);
        out.text = detail::dump(j);
    }
    return out;
}

/// Closed-form eigenfunction sampled at the contour grid points.
inline CommandOutput cmd_wavefunction(const RunConfig& c) {
    const Contour g = c.contour();
    const std::vector<double> t = grid_points(g);
    const unsigned k = c.wavefunction.index;
    const QParity q = c.wavefunction.qparity;
    bool renormalized = false;
    std::vector<cplx> psi(t.size());
    if (const auto* p = std::get_if<PthoParams>(&c.model)) {
        for (std::size_t i = 0; i < t.size(); ++i) psi[i] = ptho_wavefunction(k, q, *p, t[i]);
    } else {
        const auto& a = std::get<AngularParams>(c.model);
        a.require_solvable();
        renormalized = angular_is_renormalized(k, q, a);
        for (std::size_t i = 0; i < t.size(); ++i) psi[i] = angular_wavefunction(k, q, a, t[i]);
    }
    CommandOutput out;
    if (c.format == OutputFormat::csv) {
        std::string s;
        if (renormalized) s += "# renormalized_limit\n";
        s += "t,re_psi,im_psi\n";
        for (std::size_t i = 0; i < t.size(); ++i)
            s += format_number(t[i]) + ',' + format_number(psi[i].real()) + ',' + format_number(psi[i].imag()) + '\n';
        out.text = std::move(s);
    } else {
        json j = detail::envelope(c);
        j["renormalized_limit"] = renormalized;
        json arr = json::array();
        for (std::size_t i = 0; i < t.size(); ++i) {
            arr.push_back({{"t", json_number(t[i])},
                           {"re_psi", json_number(psi[i].real())},
                           {"im_psi", json_number(psi[i].imag())}});
        }
        j["samples"] = std::move(arr);
        out.text = detail::dump(j);
    }
    return out;
}

/// Runs the configured command, mapping library errors to exit codes.
/// `error` receives a one-line message for non-zero, non-FAIL exits.
inline CommandOutput run(const RunConfig& c, std::string& error) {
    try {
        validate(c);
        switch (c.command) {
            case Command::spectrum: return cmd_spectrum(c);
            case Command::verify: return cmd_verify(c);
            case Command::scan: return cmd_scan(c);
            case Command::wavefunction: return cmd_wavefunction(c);
        }
    } catch (const ConfigError& e) {
        error = std::string("config error: ") + e.what();
        return {exit_code::config, {}};
    } catch (const UnsupportedModel& e) {
        error = std::string("unsupported model: ") + e.what();
        return {exit_code::config, {}};
    } catch (const DomainError& e) {
        error = std::string("invalid parameters: ") + e.what();
        return {exit_code::config, {}};
    } catch (const NonConvergence& e) {
        error = std::string("solver did not converge: ") + e.what();
        return {exit_code::nonconvergence, {}};
    } catch (const std::exception& e) {
        error = std::string("error: ") + e.what();
        return {exit_code::failure, {}};
    }
    error = "error: unknown command";
    return {exit_code::failure, {}};
}

}  // namespace ptspec::cli
