// qcost: command-line front end for the estimator.
//
//   qcost grover AES-128 --pg 1e-5 --out curves/
//   qcost shor RSA-2048 --pg 1e-3
//   qcost tables
//   qcost fit curves/RSA-2048_pg1e-03_surgery_physical_qubits.csv
//   qcost validate
//
// Exit status: 0 success, 1 validation failure, 2 usage or input error.

#include "qcost/qcost.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#ifndef QCOST_DATA_DIR
#define QCOST_DATA_DIR "data"
#endif

namespace {

using namespace qcost;

struct Options {
    std::string scheme;
    std::optional<double> pg;
    std::string variant;
    std::optional<double> cycle_ns;
    std::string catalog = std::string(QCOST_DATA_DIR) + "/catalog.json";
    std::string config;
    std::string out;
    std::string anchors = std::string(QCOST_DATA_DIR) + "/anchors.json";
    std::string curve_file;
    std::optional<unsigned> kappa_min;
    std::optional<unsigned> kappa_max;
};

PhysicalAssumptions assumptions_for(const Options& o, double default_pg)
{
    PhysicalAssumptions a = calibrated_assumptions(default_pg);
    if (!o.config.empty())
        a = load_assumptions(read_text_file(o.config), a);
    else
        a.p_g = default_pg;
    if (o.pg)
        a.p_g = *o.pg;
    if (o.cycle_ns)
        a.cycle_time_ns = *o.cycle_ns;
    a.validate();
    return a;
}

std::optional<FTVariant> variant_for(const Options& o)
{
    if (o.variant.empty())
        return std::nullopt;
    auto v = parse_variant(o.variant);
    if (!v)
        fail(ErrorKind::precondition, "variant must be 'braiding' or 'surgery'");
    return v;
}

void write_report(const Options& o, const ReportBundle& b)
{
    if (o.out.empty())
        return;
    std::filesystem::create_directories(o.out);
    write_text_file(std::filesystem::path(o.out) / "report.json", to_json(b).dump(2) + "\n");
}

int run_grover(const Options& o)
{
    auto catalog = load_catalog_file(o.catalog);
    const auto& spec = catalog.at(o.scheme);
    if (!is_grover_family(spec.kind))
        fail(ErrorKind::precondition, "'" + spec.name + "' is not a Grover target; use 'shor'");
    auto a = assumptions_for(o, 1e-4);
    auto v = variant_for(o);
    unsigned lo = o.kappa_min.value_or(0), hi = o.kappa_max.value_or(spec.search_space_bits);
    auto sweep = sweep_grover(spec, a, lo, hi, v);

    const auto& first = sweep.estimates.front();
    std::printf("%s  p_g=%g  variant=%s\n", spec.name.c_str(), a.p_g, std::string(to_string(first.variant)).c_str());
    std::printf("qs (K = 1)             %.2f\n", security_parameter(spec, a));
    try {
        std::printf("log2 K for one year    %u\n", processors_to_deadline(spec, a, kSecondsPerYear, v));
    } catch (const Error& e) {
        std::printf("log2 K for one year    unreachable\n");
    }
    std::printf("%6s %5s %3s %12s %12s %12s %12s %12s\n", "log2K", "d", "L", "factories", "log2 cycles",
                "log2 sec", "log2 qubits", "log2 total");
    for (const auto& e : sweep.estimates)
        std::printf("%6u %5u %3u %12.4g %12.3f %12.3f %12.3f %12.3f\n", e.processors_log2, e.distance, e.layers,
                    e.factories, std::log2(e.cycles_per_cpu), std::log2(e.seconds_per_cpu),
                    std::log2(e.physical_qubits_per_cpu), std::log2(e.total_physical_qubits));

    if (!o.out.empty()) {
        auto paths = emit_curves(sweep.curves(), o.out);
        auto b = make_bundle(catalog, a);
        b.curves = sweep.curves();
        write_report(o, b);
        for (const auto& p : paths)
            std::printf("wrote %s\n", p.string().c_str());
    }
    return 0;
}

int run_shor(const Options& o)
{
    auto catalog = load_catalog_file(o.catalog);
    const auto& spec = catalog.at(o.scheme);
    if (!is_shor_family(spec.kind))
        fail(ErrorKind::precondition, "'" + spec.name + "' is not a Shor target; use 'grover'");
    auto a = assumptions_for(o, 1e-3);
    auto t = shor_tradeoff(spec, a, variant_for(o));

    std::printf("%s  p_g=%g  variant=%s\n", spec.name.c_str(), a.p_g,
                std::string(to_string(t.curve.variant)).c_str());
    std::printf("logical qubits          %llu\n", static_cast<unsigned long long>(spec.logical_qubits));
    std::printf("T-count                 %.3g\n", spec.t_count);
    std::printf("distance / layers       %u / %u\n", t.sequential.distance, t.sequential.layers);
    std::printf("sequential cycles       %.3e\n", t.sequential.sequential_cycles);
    std::printf("fit                     y = %.6g x^3 + %.6g x^2 + %.6g x + %.6g  (R^2 = %.5f, %zu points)\n",
                t.fit.alpha, t.fit.beta, t.fit.gamma, t.fit.delta, t.fit.r_squared, t.fit.n_points);
    std::printf("one-day physical qubits %.3e%s\n", std::exp2(t.one_day_log2_qubits),
                t.one_day_extrapolated ? "  (warning: extrapolated)" : "");

    if (!o.out.empty()) {
        auto paths = emit_curves({t.curve}, o.out);
        auto b = make_bundle(catalog, a);
        b.curves = {t.curve};
        b.fits = {{spec.name, a.p_g, t.fit}};
        write_report(o, b);
        for (const auto& p : paths)
            std::printf("wrote %s\n", p.string().c_str());
    } else {
        std::fputs(curve_csv(t.curve).c_str(), stdout);
    }
    return 0;
}

int run_tables(const Options& o)
{
    auto catalog = load_catalog_file(o.catalog);
    auto a = assumptions_for(o, 1e-4);
    double grover_pg = o.pg.value_or(1e-4);
    std::vector<double> shor_pgs = o.pg ? std::vector<double>{*o.pg} : std::vector<double>{1e-3, 1e-5};
    auto tables = build_tables(catalog, a, grover_pg, shor_pgs);
    auto text = render_tables(tables);
    std::fputs(text.c_str(), stdout);
    if (!o.out.empty()) {
        std::filesystem::create_directories(o.out);
        write_text_file(std::filesystem::path(o.out) / "tables.txt", text);
        auto b = make_bundle(catalog, a);
        b.tables = tables;
        write_report(o, b);
    }
    return 0;
}

int run_fit(const Options& o)
{
    auto curve = parse_curve_csv(read_text_file(o.curve_file));
    std::vector<double> xs, ys;
    for (const auto& p : curve.points)
        if (std::isfinite(p.x) && std::isfinite(p.y)) {
            xs.push_back(p.x);
            ys.push_back(p.y);
        }
    auto f = fit_cubic(xs, ys);
    std::printf("series      %s\n", curve.series.c_str());
    std::printf("points      %zu\n", f.n_points);
    std::printf("alpha       %.10g\nbeta        %.10g\ngamma       %.10g\ndelta       %.10g\n", f.alpha, f.beta,
                f.gamma, f.delta);
    std::printf("R^2         %.6f%s\n", f.r_squared, f.zero_variance ? "  (zero variance, set to 1)" : "");
    std::printf("y(16.3987)  %.6f%s\n", one_day(f),
                is_extrapolation(f, kOneDayLog2Seconds) ? "  (warning: extrapolated)" : "");
    return 0;
}

int run_validate(const Options& o)
{
    auto catalog = load_catalog_file(o.catalog);
    auto a = assumptions_for(o, 1e-3);
    auto anchors = load_anchors(read_text_file(o.anchors));
    auto results = validate_anchors(catalog, a, anchors);
    std::fputs(render_anchor_results(results).c_str(), stdout);
    for (const auto& r : results)
        if (!r.pass)
            return 1;
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Quantum cryptanalysis resource estimator"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--pg", o.pg, "Physical error rate per gate");
        sub->add_option("--variant", o.variant, "braiding or surgery");
        sub->add_option("--cycle-ns", o.cycle_ns, "Surface-code cycle time in ns");
        sub->add_option("--catalog", o.catalog, "Catalog JSON")->capture_default_str();
        sub->add_option("--config", o.config, "Assumptions JSON overriding the calibrated defaults");
        sub->add_option("--out", o.out, "Output directory for curve files and report.json");
    };

    auto* grover = app.add_subcommand("grover", "Parallel Grover sweep over processor counts");
    grover->add_option("scheme", o.scheme, "Catalog entry")->required();
    grover->add_option("--kappa-min", o.kappa_min, "Smallest log2 processor count");
    grover->add_option("--kappa-max", o.kappa_max, "Largest log2 processor count");
    common(grover);

    auto* shor = app.add_subcommand("shor", "Factory sweep, cubic fit and one-day footprint");
    shor->add_option("scheme", o.scheme, "Catalog entry")->required();
    common(shor);

    auto* tables = app.add_subcommand("tables", "Reproduce the three benchmark tables");
    common(tables);

    auto* fit = app.add_subcommand("fit", "Fit a cubic to a curve file");
    fit->add_option("file", o.curve_file, "Curve CSV")->required();

    auto* validate = app.add_subcommand("validate", "Check every anchor and print pass/fail");
    validate->add_option("--anchors", o.anchors, "Anchor JSON")->capture_default_str();
    common(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (grover->parsed())
            return run_grover(o);
        if (shor->parsed())
            return run_shor(o);
        if (tables->parsed())
            return run_tables(o);
        if (fit->parsed())
            return run_fit(o);
        if (validate->parsed())
            return run_validate(o);
    } catch (const Error& e) {
        std::fprintf(stderr, "qcost: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "qcost: io: %s\n", e.what());
        return 2;
    }
    return 2;
}
