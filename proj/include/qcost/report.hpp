#pragma once

// Report layer: curve files, benchmark tables, the JSON report bundle and
// anchor validation.

#include "qcost/catalog.hpp"
#include "qcost/error.hpp"
#include "qcost/surface_code.hpp"
#include "qcost/tradeoff.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace qcost {

/// Six significant digits, the rendering used in every emitted number.
inline std::string format_g6(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// Curve files
// ---------------------------------------------------------------------------

inline constexpr std::string_view kCurveHeader = "knob_log2,x_log2_seconds,y_value,series_label";

inline std::string curve_csv(const TradeoffCurve& c)
{
    std::string out(kCurveHeader);
    out += '\n';
    for (const auto& p : c.points) {
        out += format_g6(p.knob_log2);
        out += ',';
        out += format_g6(p.x);
        out += ',';
        out += format_g6(p.y);
        out += ',';
        out += c.series;
        out += '\n';
    }
    return out;
}

/// File name for a curve: scheme, error rate and series, filesystem safe.
inline std::string curve_file_name(const TradeoffCurve& c)
{
    char pg[32];
    std::snprintf(pg, sizeof pg, "%.0e", c.p_g);
    std::string name = c.scheme + "_pg" + pg + "_" + std::string(to_string(c.variant)) + "_" + c.series + ".csv";
    for (char& ch : name)
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == '.'))
            ch = '_';
    return name;
}

inline void write_text_file(const std::filesystem::path& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        fail(ErrorKind::io, "cannot write '" + path.string() + "'");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out)
        fail(ErrorKind::io, "write failed for '" + path.string() + "'");
}

/// Writes one file per curve into `dir` (created if missing) and returns the paths.
inline std::vector<std::filesystem::path> emit_curves(const std::vector<TradeoffCurve>& curves,
                                                      const std::filesystem::path& dir)
{
    if (curves.empty())
        fail(ErrorKind::precondition, "no curves to emit");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        fail(ErrorKind::io, "cannot create '" + dir.string() + "': " + ec.message());
    std::vector<std::filesystem::path> paths;
    for (const auto& c : curves) {
        auto path = dir / curve_file_name(c);
        write_text_file(path, curve_csv(c));
        paths.push_back(path);
    }
    return paths;
}

/// Reads a file written by emit_curves (or any file with the same columns).
inline TradeoffCurve parse_curve_csv(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line))
        fail(ErrorKind::malformed_document, "empty curve file");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != kCurveHeader)
        fail(ErrorKind::malformed_document, "curve header must be '" + std::string(kCurveHeader) + "'");
    TradeoffCurve c;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<std::string> cols;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ','))
            cols.push_back(cell);
        if (cols.size() != 4)
            fail(ErrorKind::malformed_document, "line " + std::to_string(lineno) + ": expected 4 columns");
        double v[3];
        for (int i = 0; i < 3; ++i) {
            char* end = nullptr;
            v[i] = std::strtod(cols[i].c_str(), &end);
            if (cols[i].empty() || *end != '\0')
                fail(ErrorKind::malformed_document, "line " + std::to_string(lineno) + ": bad number '" + cols[i] + "'");
        }
        if (c.series.empty())
            c.series = cols[3];
        c.points.push_back({v[0], v[1], v[2]});
    }
    return c;
}

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& table1_schemes()
{
    static const std::vector<std::string> s{"AES-128", "AES-192", "AES-256", "SHA-256", "SHA3-256", "BITCOIN-POW"};
    return s;
}

inline const std::vector<std::string>& table2_schemes()
{
    static const std::vector<std::string> s{"RSA-1024", "RSA-2048", "RSA-3072", "RSA-4096", "RSA-7680", "RSA-15360"};
    return s;
}

inline const std::vector<std::string>& table3_schemes()
{
    static const std::vector<std::string> s{"P-160", "P-192", "P-224", "P-256", "P-384", "P-521"};
    return s;
}

struct Table1Row {
    std::string scheme;
    double p_g = 0;
    double security_parameter = 0;
};

struct ShorColumn {
    double p_g = 0;
    unsigned distance = 0;
    unsigned layers = 0;
    double sequential_cycles = 0;
    double one_day_qubits = 0;
    double r_squared = 0;
    bool extrapolated = false;
};

struct ShorRow {
    std::string scheme;
    std::uint64_t logical_qubits = 0;
    double t_count = 0;
    std::vector<ShorColumn> columns;
};

struct Tables {
    std::vector<Table1Row> table1;
    std::vector<ShorRow> table2;
    std::vector<ShorRow> table3;
};

inline ShorColumn shor_column(const LogicalCircuitSpec& spec, const PhysicalAssumptions& a)
{
    auto t = shor_tradeoff(spec, a);
    return {a.p_g,
            t.sequential.distance,
            t.sequential.layers,
            t.sequential.sequential_cycles,
            std::exp2(t.one_day_log2_qubits),
            t.fit.r_squared,
            t.one_day_extrapolated};
}

/// Table 1 at `grover_pg`; Tables 2 and 3 at each of `shor_pgs`.
inline Tables build_tables(const Catalog& catalog, const PhysicalAssumptions& base, double grover_pg,
                           const std::vector<double>& shor_pgs)
{
    Tables t;
    auto a = base;
    a.p_g = grover_pg;
    for (const auto& name : table1_schemes())
        t.table1.push_back({name, grover_pg, security_parameter(catalog.at(name), a)});
    auto shor_rows = [&](const std::vector<std::string>& names, std::vector<ShorRow>& rows) {
        for (const auto& name : names) {
            const auto& spec = catalog.at(name);
            ShorRow r{name, spec.logical_qubits, spec.t_count, {}};
            for (double pg : shor_pgs) {
                auto ap = base;
                ap.p_g = pg;
                r.columns.push_back(shor_column(spec, ap));
            }
            rows.push_back(std::move(r));
        }
    };
    shor_rows(table2_schemes(), t.table2);
    shor_rows(table3_schemes(), t.table3);
    return t;
}

inline std::string render_tables(const Tables& t)
{
    std::ostringstream o;
    char buf[256];
    o << "Table 1: quantum security parameter (Grover, K = 1)\n";
    std::snprintf(buf, sizeof buf, "%-14s %10s %8s\n", "scheme", "p_g", "qs");
    o << buf;
    for (const auto& r : t.table1) {
        std::snprintf(buf, sizeof buf, "%-14s %10.0e %8.2f\n", r.scheme.c_str(), r.p_g, r.security_parameter);
        o << buf;
    }
    auto shor = [&](const char* title, const std::vector<ShorRow>& rows) {
        o << '\n' << title << '\n';
        std::snprintf(buf, sizeof buf, "%-10s %8s %10s %8s %4s %2s %12s %14s %8s\n", "scheme", "qubits", "T-count",
                      "p_g", "d", "L", "scc", "one-day qubits", "R^2");
        o << buf;
        for (const auto& r : rows)
            for (const auto& c : r.columns) {
                std::snprintf(buf, sizeof buf, "%-10s %8llu %10.3g %8.0e %4u %2u %12.3e %14.3e %8.5f%s\n",
                              r.scheme.c_str(), static_cast<unsigned long long>(r.logical_qubits), r.t_count, c.p_g,
                              c.distance, c.layers, c.sequential_cycles, c.one_day_qubits, c.r_squared,
                              c.extrapolated ? " (extrapolated)" : "");
                o << buf;
            }
    };
    shor("Table 2: RSA factoring (lattice surgery)", t.table2);
    shor("Table 3: elliptic-curve discrete log (lattice surgery)", t.table3);
    return o.str();
}

// ---------------------------------------------------------------------------
// Report bundle
// ---------------------------------------------------------------------------

/// UTC ISO-8601 rendering of a Unix epoch.
inline std::string iso_timestamp(std::int64_t epoch)
{
    std::time_t t = static_cast<std::time_t>(epoch);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// SOURCE_DATE_EPOCH when set, otherwise the Unix epoch, so reports are reproducible.
inline std::int64_t report_epoch()
{
    if (const char* s = std::getenv("SOURCE_DATE_EPOCH")) {
        char* end = nullptr;
        long long v = std::strtoll(s, &end, 10);
        if (*s && *end == '\0')
            return v;
    }
    return 0;
}

struct NamedFit {
    std::string scheme;
    double p_g = 0;
    CubicFit fit;
};

struct ReportBundle {
    std::string catalog_version;
    std::string assumptions_digest;
    std::string timestamp;
    PhysicalAssumptions assumptions;
    std::optional<Tables> tables;
    std::vector<TradeoffCurve> curves;
    std::vector<NamedFit> fits;
};

/// Numbers are carried at six significant digits, matching the text outputs.
inline nlohmann::json json_number(double v)
{
    if (!std::isfinite(v))
        return format_g6(v);
    return std::strtod(format_g6(v).c_str(), nullptr);
}

inline nlohmann::json to_json(const CubicFit& f)
{
    return {{"alpha", f.alpha},          {"beta", f.beta},       {"gamma", f.gamma},
            {"delta", f.delta},          {"r_squared", f.r_squared}, {"zero_variance", f.zero_variance},
            {"x_min", json_number(f.x_min)}, {"x_max", json_number(f.x_max)}, {"points", f.n_points},
            {"one_day_log2_qubits", json_number(one_day(f))}};
}

inline nlohmann::json to_json(const TradeoffCurve& c)
{
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : c.points)
        pts.push_back({json_number(p.knob_log2), json_number(p.x), json_number(p.y)});
    return {{"scheme", c.scheme},
            {"variant", std::string(to_string(c.variant))},
            {"p_g", c.p_g},
            {"knob", std::string(to_string(c.knob))},
            {"series", c.series},
            {"points", pts}};
}

inline nlohmann::json to_json(const Tables& t)
{
    nlohmann::json j;
    j["table1"] = nlohmann::json::array();
    for (const auto& r : t.table1)
        j["table1"].push_back(
            {{"scheme", r.scheme}, {"p_g", r.p_g}, {"security_parameter", json_number(r.security_parameter)}});
    auto rows = [](const std::vector<ShorRow>& rs) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : rs) {
            nlohmann::json cols = nlohmann::json::array();
            for (const auto& c : r.columns)
                cols.push_back({{"p_g", c.p_g},
                                {"distance", c.distance},
                                {"layers", c.layers},
                                {"sequential_cycles", json_number(c.sequential_cycles)},
                                {"one_day_qubits", json_number(c.one_day_qubits)},
                                {"r_squared", json_number(c.r_squared)},
                                {"extrapolated", c.extrapolated}});
            arr.push_back({{"scheme", r.scheme},
                           {"logical_qubits", r.logical_qubits},
                           {"t_count", r.t_count},
                           {"columns", cols}});
        }
        return arr;
    };
    j["table2"] = rows(t.table2);
    j["table3"] = rows(t.table3);
    return j;
}

/// Keys come out sorted (nlohmann objects are ordered maps).
inline nlohmann::json to_json(const ReportBundle& b)
{
    nlohmann::json j;
    j["metadata"] = {{"catalog_version", b.catalog_version},
                     {"assumptions_digest", b.assumptions_digest},
                     {"timestamp", b.timestamp}};
    j["assumptions"] = to_json(b.assumptions);
    if (b.tables)
        j["tables"] = to_json(*b.tables);
    j["curves"] = nlohmann::json::array();
    for (const auto& c : b.curves)
        j["curves"].push_back(to_json(c));
    j["fits"] = nlohmann::json::array();
    for (const auto& f : b.fits) {
        auto fj = to_json(f.fit);
        fj["scheme"] = f.scheme;
        fj["p_g"] = f.p_g;
        j["fits"].push_back(fj);
    }
    return j;
}

inline ReportBundle make_bundle(const Catalog& catalog, const PhysicalAssumptions& a)
{
    ReportBundle b;
    b.catalog_version = catalog.source_version();
    b.assumptions_digest = assumptions_digest(a);
    b.timestamp = iso_timestamp(report_epoch());
    b.assumptions = a;
    return b;
}

// ---------------------------------------------------------------------------
// Anchors
// ---------------------------------------------------------------------------

/// One benchmark value the model is checked against.
///
/// Quantities counted in bits (security_parameter, processors_one_year,
/// black_box_queries, ideal_gates, cycles_per_cpu) carry `expected` in bits and
/// compare by plain difference. fit_r_squared is a floor. Everything else
/// compares |log2 model - log2 expected| against the tolerance.
struct Anchor {
    std::string scheme;
    double p_g = 0;
    std::string quantity;
    double expected = 0;
    double log2_tolerance = 0;
    std::string locator;
    /// Processor exponent for per-K Grover quantities.
    unsigned processors_log2 = 0;
};

struct AnchorResult {
    Anchor anchor;
    double model = 0;
    double deviation = 0;
    bool pass = false;
    std::string error;
};

inline std::vector<Anchor> load_anchors(std::string_view document)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(document);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorKind::malformed_document, e.what());
    }
    const nlohmann::json* list = &doc;
    if (doc.is_object()) {
        if (!doc.contains("anchors"))
            fail(ErrorKind::malformed_document, "anchor document needs an 'anchors' array");
        list = &doc["anchors"];
    }
    if (!list->is_array())
        fail(ErrorKind::malformed_document, "anchors must be an array");
    std::vector<Anchor> out;
    for (const auto& r : *list) {
        if (!r.is_object())
            fail(ErrorKind::malformed_document, "anchor must be an object");
        for (const auto& [k, v] : r.items()) {
            static const char* known[] = {"scheme",        "p_g",     "quantity",       "expected",
                                          "log2_tolerance", "locator", "processors_log2"};
            if (std::find_if(std::begin(known), std::end(known), [&](const char* n) { return k == n; }) ==
                std::end(known))
                fail(ErrorKind::malformed_document, "unknown anchor field '" + k + "'");
        }
        try {
            Anchor a;
            a.scheme = r.at("scheme").get<std::string>();
            a.p_g = r.at("p_g").get<double>();
            a.quantity = r.at("quantity").get<std::string>();
            a.expected = r.at("expected").get<double>();
            a.log2_tolerance = r.at("log2_tolerance").get<double>();
            a.locator = r.value("locator", "");
            a.processors_log2 = r.value("processors_log2", 0u);
            out.push_back(std::move(a));
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorKind::malformed_document, std::string("bad anchor: ") + e.what());
        }
    }
    return out;
}

inline bool is_bit_quantity(std::string_view q)
{
    return q == "security_parameter" || q == "processors_one_year" || q == "black_box_queries" ||
           q == "ideal_gates" || q == "cycles_per_cpu";
}

inline constexpr double kSecondsPerYear = 365.25 * 86400;

/// Evaluates every anchor. Shor tradeoffs are computed once per (scheme, p_g).
inline std::vector<AnchorResult> validate_anchors(const Catalog& catalog, const PhysicalAssumptions& base,
                                                  const std::vector<Anchor>& anchors)
{
    std::map<std::pair<std::string, double>, ShorTradeoff> cache;
    auto tradeoff = [&](const LogicalCircuitSpec& spec, const PhysicalAssumptions& a) -> const ShorTradeoff& {
        auto key = std::make_pair(spec.name, a.p_g);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, shor_tradeoff(spec, a)).first;
        return it->second;
    };

    std::vector<AnchorResult> results;
    for (const auto& anchor : anchors) {
        AnchorResult r{anchor};
        try {
            const auto& spec = catalog.at(anchor.scheme);
            auto a = base;
            a.p_g = anchor.p_g;
            const auto& q = anchor.quantity;
            if (q == "logical_qubits")
                r.model = static_cast<double>(spec.logical_qubits);
            else if (q == "t_count")
                r.model = spec.t_count;
            else if (q == "sequential_cycles")
                r.model = tradeoff(spec, a).sequential.sequential_cycles;
            else if (q == "one_day_qubits")
                r.model = std::exp2(tradeoff(spec, a).one_day_log2_qubits);
            else if (q == "fit_r_squared")
                r.model = tradeoff(spec, a).fit.r_squared;
            else if (q == "security_parameter")
                r.model = security_parameter(spec, a);
            else if (q == "processors_one_year")
                r.model = processors_to_deadline(spec, a, kSecondsPerYear);
            else if (q == "black_box_queries")
                r.model = log2_big(iterations_parallel(spec.search_space_bits, anchor.processors_log2));
            else if (q == "ideal_gates")
                r.model = std::log2(
                    machine_logical_totals(spec, spec.search_space_bits, anchor.processors_log2).gate_count);
            else if (q == "cycles_per_cpu")
                r.model = std::log2(grover_attack_estimate(spec, anchor.processors_log2, a).cycles_per_cpu);
            else
                fail(ErrorKind::malformed_document, "unknown anchor quantity '" + q + "'");

            if (q == "fit_r_squared") {
                r.deviation = r.model - anchor.expected;
                r.pass = r.model >= anchor.expected;
            } else if (is_bit_quantity(q)) {
                r.deviation = r.model - anchor.expected;
                r.pass = std::abs(r.deviation) <= anchor.log2_tolerance;
            } else {
                r.deviation = std::log2(r.model) - std::log2(anchor.expected);
                r.pass = anchor.log2_tolerance == 0 ? r.model == anchor.expected
                                                    : std::abs(r.deviation) <= anchor.log2_tolerance;
            }
        } catch (const Error& e) {
            r.error = e.what();
            r.pass = false;
        }
        results.push_back(std::move(r));
    }
    return results;
}

inline std::string render_anchor_results(const std::vector<AnchorResult>& results)
{
    std::ostringstream o;
    char buf[512];
    std::size_t passed = 0;
    for (const auto& r : results) {
        passed += r.pass;
        if (!r.error.empty())
            std::snprintf(buf, sizeof buf, "FAIL %-12s %-8.0e %-20s error: %s\n", r.anchor.scheme.c_str(),
                          r.anchor.p_g, r.anchor.quantity.c_str(), r.error.c_str());
        else
            std::snprintf(buf, sizeof buf, "%s %-12s %-8.0e %-20s model=%-12s expected=%-12s dev=%+.3f tol=%g  [%s]\n",
                          r.pass ? "PASS" : "FAIL", r.anchor.scheme.c_str(), r.anchor.p_g,
                          r.anchor.quantity.c_str(), format_g6(r.model).c_str(),
                          format_g6(r.anchor.expected).c_str(), r.deviation, r.anchor.log2_tolerance,
                          r.anchor.locator.c_str());
        o << buf;
    }
    std::snprintf(buf, sizeof buf, "%zu/%zu anchors pass\n", passed, results.size());
    o << buf;
    return o.str();
}

} // namespace qcost
