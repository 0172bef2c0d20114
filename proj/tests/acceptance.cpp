// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned here.
// Exit status is the number of failing criteria (0 when all pass).

#include "qcost/qcost.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

using namespace qcost;
namespace fs = std::filesystem;

namespace {

// Tolerances.
constexpr double kSccBand = 1.0;          // log2
constexpr double kOneDayBand = 1.5;       // log2
constexpr double kQsBand = 4.0;           // bits
constexpr double kMinRSquared = 0.997;
constexpr double kCubicRelTol = 1e-8;
constexpr double kAmplitudeTol = 1e-12;
constexpr double kMinSuccess = 0.999;

struct Outcome {
    bool pass = true;
    std::string detail;
    void check(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            if (!detail.empty())
                detail += "; ";
            detail += what;
        }
    }
};

const Catalog& catalog()
{
    static const Catalog c = load_catalog_file(QCOST_DATA_DIR "/catalog.json");
    return c;
}

std::string fmt(const char* f, auto... args)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

struct Row {
    const char* scheme;
    std::uint64_t qubits;
    double t_count;
    double scc3, nq3, scc5, nq5;
};

// Benchmark rows: logical qubits, T-count, then (cycles, one-day qubits) at p_g 1e-3 and 1e-5.
const std::vector<Row> kRsaRows{
    {"RSA-1024", 2050, 3.01e11, 5.86e13, 3.01e7, 2.93e13, 2.14e6},
    {"RSA-2048", 4098, 2.41e12, 4.69e14, 1.72e8, 2.35e14, 9.78e6},
    {"RSA-3072", 6146, 8.12e12, 1.58e15, 6.41e8, 7.91e14, 2.55e7},
    {"RSA-4096", 8194, 1.92e13, 3.75e15, 1.18e9, 1.88e15, 5.70e7},
    {"RSA-7680", 15362, 1.27e14, 2.64e16, 7.70e10, 2.47e16, 7.41e9},
    {"RSA-15360", 30722, 1.01e15, 2.24e17, 4.85e12, 1.98e17, 7.64e10},
};
const std::vector<Row> kEccRows{
    {"P-160", 1466, 2.08e11, 4.05e13, 1.81e7, 2.03e13, 1.38e6},
    {"P-192", 1754, 3.71e11, 7.23e13, 3.37e7, 3.62e13, 2.18e6},
    {"P-224", 2042, 5.90e11, 1.15e14, 4.91e7, 5.75e13, 3.24e6},
    {"P-256", 2330, 8.82e11, 1.72e14, 6.77e7, 8.60e13, 4.64e6},
    {"P-384", 3484, 3.16e12, 6.17e14, 2.27e8, 3.08e14, 1.28e7},
    {"P-521", 4719, 7.98e12, 1.56e15, 6.06e8, 7.78e14, 2.30e7},
};

std::uint64_t trailing(const char* name)
{
    std::string s(name);
    return std::stoull(s.substr(s.find('-') + 1));
}

Outcome c1_logical_qubits()
{
    Outcome o;
    for (const auto& r : kRsaRows) {
        auto n = trailing(r.scheme);
        o.check(rsa_logical_qubits(n) == r.qubits, fmt("%s formula", r.scheme));
        o.check(catalog().at(r.scheme).logical_qubits == r.qubits, fmt("%s catalog", r.scheme));
    }
    for (const auto& r : kEccRows) {
        auto n = trailing(r.scheme);
        o.check(ecc_logical_qubits(n) == r.qubits, fmt("%s formula", r.scheme));
        o.check(catalog().at(r.scheme).logical_qubits == r.qubits, fmt("%s catalog", r.scheme));
    }
    if (o.pass)
        o.detail = "12/12 exact";
    return o;
}

Outcome c2_t_counts()
{
    Outcome o;
    auto again = load_catalog(serialize_catalog(catalog()));
    o.check(again == catalog(), "serialize/load is not the identity");
    for (const auto* rows : {&kRsaRows, &kEccRows})
        for (const auto& r : *rows) {
            o.check(catalog().at(r.scheme).t_count == r.t_count, fmt("%s catalog T-count", r.scheme));
            o.check(again.at(r.scheme).t_count == r.t_count, fmt("%s round-trip T-count", r.scheme));
        }
    if (o.pass)
        o.detail = "12/12 exact after round trip";
    return o;
}

Outcome c3_grover_anchors()
{
    Outcome o;
    const auto& aes = catalog().at("AES-128");
    double calls = log2_big(iterations_parallel(128, 50u));
    double gates = std::log2(machine_logical_totals(aes, 128, 50).gate_count);
    o.check(calls >= 38 && calls <= 39.5, fmt("black-box log2 %.3f outside [38, 39.5]", calls));
    o.check(gates >= 62 && gates <= 64, fmt("ideal gates log2 %.3f outside [62, 64]", gates));
    if (o.pass)
        o.detail = fmt("calls 2^%.3f, gates 2^%.3f", calls, gates);
    return o;
}

Outcome shor_rows(const std::vector<Row>& rows, bool skip_calibration_row)
{
    Outcome o;
    int checked = 0, failed = 0;
    for (const auto& r : rows)
        for (int which = 0; which < 2; ++which) {
            double pg = which == 0 ? 1e-3 : 1e-5;
            if (skip_calibration_row && which == 0 && std::string(r.scheme) == "RSA-2048")
                continue;
            double scc = which == 0 ? r.scc3 : r.scc5;
            double nq = which == 0 ? r.nq3 : r.nq5;
            auto t = shor_tradeoff(catalog().at(r.scheme), calibrated_assumptions(pg));
            double dev_scc = std::log2(t.sequential.sequential_cycles) - std::log2(scc);
            double dev_nq = t.one_day_log2_qubits - std::log2(nq);
            checked += 2;
            if (std::abs(dev_scc) > kSccBand) {
                ++failed;
                o.check(false, fmt("%s@%g scc %+.2f", r.scheme, pg, dev_scc));
            }
            if (std::abs(dev_nq) > kOneDayBand) {
                ++failed;
                o.check(false, fmt("%s@%g qubits %+.2f", r.scheme, pg, dev_nq));
            }
        }
    o.detail = fmt("%d/%d values in band", checked - failed, checked) + (o.detail.empty() ? "" : ": " + o.detail);
    return o;
}

Outcome c4_table2() { return shor_rows(kRsaRows, true); }
Outcome c5_table3() { return shor_rows(kEccRows, false); }

Outcome c6_table1()
{
    Outcome o;
    const std::pair<const char*, double> rows[] = {{"AES-128", 106}, {"AES-192", 139},  {"AES-256", 172},
                                                   {"SHA-256", 166}, {"SHA3-256", 167}, {"BITCOIN-POW", 75}};
    auto a = calibrated_assumptions(1e-4);
    std::string values;
    for (auto [name, expected] : rows) {
        double qs = security_parameter(catalog().at(name), a);
        o.check(std::abs(qs - expected) <= kQsBand, fmt("%s qs %.2f vs %.0f", name, qs, expected));
        values += fmt("%s%.1f", values.empty() ? "" : " ", qs);
    }
    if (o.pass)
        o.detail = "qs = " + values;
    return o;
}

Outcome c7_one_year()
{
    Outcome o;
    unsigned kappa = processors_to_deadline(catalog().at("AES-128"), calibrated_assumptions(1e-4), kSecondsPerYear);
    o.check(kappa >= 77 && kappa <= 83, fmt("kappa %u outside [77, 83]", kappa));
    if (o.pass)
        o.detail = fmt("kappa = %u", kappa);
    return o;
}

Outcome c8_fit_quality()
{
    Outcome o;
    std::vector<double> xs, ys;
    for (double x = -2; x <= 30; x += 0.5) {
        xs.push_back(x);
        ys.push_back(2 * x * x * x - x + 5);
    }
    auto f = fit_cubic(xs, ys);
    double err = std::max({std::abs(f.alpha - 2) / 2, std::abs(f.beta), std::abs(f.gamma + 1), std::abs(f.delta - 5) / 5});
    o.check(err <= kCubicRelTol && f.r_squared == 1, fmt("cubic recovery error %.2e", err));

    int sweeps = 0, below = 0;
    double worst = 1;
    for (const auto* rows : {&kRsaRows, &kEccRows})
        for (const auto& r : *rows)
            for (double pg : {1e-3, 1e-5}) {
                auto t = shor_tradeoff(catalog().at(r.scheme), calibrated_assumptions(pg));
                ++sweeps;
                worst = std::min(worst, t.fit.r_squared);
                if (t.fit.r_squared < kMinRSquared) {
                    ++below;
                    o.check(false, fmt("%s@%g R^2 %.5f", r.scheme, pg, t.fit.r_squared));
                }
            }
    o.detail = fmt("%d/%d sweeps with R^2 >= %.3f, min %.5f, cubic error %.1e", sweeps - below, sweeps, kMinRSquared,
                   worst, err) +
               (o.pass ? "" : ": " + o.detail);
    return o;
}

Outcome c9_rescale()
{
    Outcome o;
    auto t = shor_tradeoff(catalog().at("RSA-2048"), calibrated_assumptions(1e-3));
    for (double secs : {1.0, 3600.0, 86400.0, 7 * 86400.0, 1e6}) {
        o.check(rescale_cycle_time(t.fit, secs, 200) == eval_fit(t.fit, std::log2(secs)),
                fmt("t_c = 200 not identity at %g s", secs));
        o.check(rescale_cycle_time(t.fit, 5 * secs, 1000) == eval_fit(t.fit, std::log2(secs)),
                fmt("t_c = 1000 not 5x at %g s", secs));
    }
    if (o.pass)
        o.detail = "identity and 5x exact";
    return o;
}

Outcome c10_grover_oracle()
{
    Outcome o;
    // Two-amplitude recursion (marked a, unmarked b): oracle flips a, then
    // inversion about the mean. Exact for a single marked item at every N.
    double worst = 0;
    for (std::uint64_t n = 1; n <= (1u << 16); ++n) {
        long double a = 1.0L / std::sqrt(static_cast<long double>(n)), b = a;
        auto m_opt = static_cast<std::uint64_t>(std::floor(std::numbers::pi / 4 * std::sqrt(double(n))));
        for (std::uint64_t m = 0; m <= m_opt; ++m) {
            double closed = success_probability(m, n, 1);
            worst = std::max(worst, std::abs(closed - static_cast<double>(a * a)));
            long double mean = (-a + static_cast<long double>(n - 1) * b) / static_cast<long double>(n);
            a = 2 * mean + a;
            b = 2 * mean - b;
        }
    }
    o.check(worst <= kAmplitudeTol, fmt("recursion mismatch %.2e", worst));

    // Full state vector on N = 2^16 and on each partition.
    auto full = [](std::size_t n, std::size_t m) {
        std::vector<long double> v(n, 1.0L / std::sqrt(static_cast<long double>(n)));
        for (std::size_t it = 0; it < m; ++it) {
            v[0] = -v[0];
            long double mean = 0;
            for (auto x : v)
                mean += x;
            mean /= static_cast<long double>(n);
            for (auto& x : v)
                x = 2 * mean - x;
        }
        return static_cast<double>(v[0] * v[0]);
    };
    auto m16 = static_cast<std::uint64_t>(iterations_single(16));
    double p16 = success_probability(m16, 1u << 16, 1);
    o.check(std::abs(p16 - full(1u << 16, m16)) <= kAmplitudeTol, "state vector mismatch at N = 2^16");
    o.check(p16 >= kMinSuccess, fmt("success %.6f at N = 2^16", p16));
    for (unsigned kappa : {0u, 2u, 4u}) {
        auto m = static_cast<std::uint64_t>(iterations_parallel(16, kappa));
        double p = parallel_success_probability(16, kappa, m);
        o.check(std::abs(p - full(std::size_t{1} << (16 - kappa), m)) <= kAmplitudeTol,
                fmt("partition K = %u mismatch", 1u << kappa));
        o.check(p >= kMinSuccess, fmt("partition K = %u success %.6f", 1u << kappa, p));
    }
    if (o.pass)
        o.detail = fmt("max deviation %.1e over N <= 2^16, success %.6f at N = 2^16", worst, p16);
    return o;
}

Outcome c11_monotonicity()
{
    Outcome o;
    const double pgs[] = {1e-4, 1e-5, 1e-6, 1e-7};
    int series = 0;
    for (const auto& s : catalog().entries()) {
        if (!is_grover_family(s.kind))
            continue;
        unsigned prev_d = ~0u;
        for (double pg : pgs) {
            auto a = calibrated_assumptions(pg);
            double prev = INFINITY;
            for (unsigned kappa = 0; kappa <= s.search_space_bits; ++kappa) {
                auto e = grover_attack_estimate(s, kappa, a);
                o.check(e.seconds_per_cpu <= prev, fmt("%s@%g time rises at kappa %u", s.name.c_str(), pg, kappa));
                prev = e.seconds_per_cpu;
            }
            ++series;
            auto e0 = grover_attack_estimate(s, 0u, a);
            o.check(e0.distance <= prev_d, fmt("%s d rises at p_g %g", s.name.c_str(), pg));
            prev_d = e0.distance;
            for (double nf : {1.0, 16.0}) {
                auto t = logical_totals(machine_logical_totals(s, s.search_space_bits, 0));
                auto b = execution_profile(t, a, FTVariant::defects_braiding, nf);
                auto l = execution_profile(t, a, FTVariant::lattice_surgery, nf);
                o.check(l.physical_qubits <= b.physical_qubits, fmt("%s surgery > braiding", s.name.c_str()));
            }
        }
    }
    for (const auto& s : catalog().entries()) {
        if (!is_shor_family(s.kind))
            continue;
        unsigned prev_d = ~0u;
        for (double pg : {1e-3, 1e-4, 1e-5}) {
            auto a = calibrated_assumptions(pg);
            auto e = shor_attack_estimate(s, a);
            o.check(e.distance <= prev_d, fmt("%s d rises at p_g %g", s.name.c_str(), pg));
            prev_d = e.distance;
            auto t = logical_totals(s);
            for (double nf : {1.0, 64.0}) {
                auto b = execution_profile(t, a, FTVariant::defects_braiding, nf);
                auto l = execution_profile(t, a, FTVariant::lattice_surgery, nf);
                o.check(l.physical_qubits <= b.physical_qubits, fmt("%s surgery > braiding", s.name.c_str()));
            }
        }
    }
    if (o.pass)
        o.detail = fmt("%d Grover time series, distance and variant checks hold", series);
    return o;
}

int run_command(const std::string& cmd, std::string& out)
{
    out.clear();
    FILE* p = ::popen(cmd.c_str(), "r");
    if (!p)
        return -1;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0)
        out.append(buf.data(), n);
    int st = ::pclose(p);
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

Outcome c12_determinism()
{
    Outcome o;
    auto base = fs::temp_directory_path() / ("qcost_accept_" + std::to_string(::getpid()));
    fs::remove_all(base);
    std::string out1, out2;
    int s1 = run_command(std::string(QCOST_CLI) + " tables --out " + (base / "a").string(), out1);
    int s2 = run_command(std::string(QCOST_CLI) + " tables --out " + (base / "b").string(), out2);
    o.check(s1 == 0 && s2 == 0, fmt("exit codes %d %d", s1, s2));
    o.check(!out1.empty() && out1 == out2, "stdout differs");
    for (const char* f : {"tables.txt", "report.json"}) {
        auto a = base / "a" / f, b = base / "b" / f;
        o.check(fs::exists(a) && fs::exists(b) && read_text_file(a.string()) == read_text_file(b.string()),
                fmt("%s differs", f));
    }
    fs::remove_all(base);
    if (o.pass)
        o.detail = "stdout, tables.txt and report.json byte-identical";
    return o;
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        const char* title;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "logical-qubit formulas", 1, c1_logical_qubits},
        {2, "T-count pass-through", 1, c2_t_counts},
        {3, "Grover iteration anchors", 1, c3_grover_anchors},
        {4, "RSA table validation", 10, c4_table2},
        {5, "ECC table validation", 10, c5_table3},
        {6, "security parameter table", 10, c6_table1},
        {7, "one-year processors", 10, c7_one_year},
        {8, "fit quality", 30, c8_fit_quality},
        {9, "cycle-time rescaling", 1, c9_rescale},
        {10, "Grover desk-scale oracle", 30, c10_grover_oracle},
        {11, "monotonicity suite", 30, c11_monotonicity},
        {12, "determinism", 60, c12_determinism},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_s)
            o.check(false, fmt("runtime %.2f s over %.0f s budget", secs, c.budget_s));
        failures += !o.pass;
        std::printf("%s  [%2d] %-26s (%.2f s) %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, secs, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria pass\n", int(criteria.size()) - failures, criteria.size());
    return failures;
}
