#pragma once

// Space/time tradeoff sweeps, cubic fits and the derived quantities built on
// them: one-day footprint, cycle-time rescaling, security parameter and the
// processor count needed to meet a deadline.

#include "qcost/catalog.hpp"
#include "qcost/error.hpp"
#include "qcost/grover.hpp"
#include "qcost/surface_code.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qcost {

/// log2(24 * 3600) to four decimals, the abscissa of every one-day figure.
inline constexpr double kOneDayLog2Seconds = 16.3987;
inline constexpr double kReferenceCycleNs = 200.0;
/// How far outside the swept x range a fit may be evaluated before warning.
inline constexpr double kExtrapolationMargin = 4.0;

enum class Knob { processors, factories };

inline std::string_view to_string(Knob k) noexcept { return k == Knob::processors ? "processors" : "factories"; }

struct CurvePoint {
    double knob_log2 = 0;
    double x = 0; ///< log2 seconds
    double y = 0; ///< log2 of the series quantity
};

struct TradeoffCurve {
    std::string scheme;
    FTVariant variant = FTVariant::defects_braiding;
    double p_g = 0;
    Knob knob = Knob::processors;
    std::string series;
    std::vector<CurvePoint> points;

    std::vector<double> xs() const
    {
        std::vector<double> v;
        v.reserve(points.size());
        for (const auto& p : points)
            v.push_back(p.x);
        return v;
    }
    std::vector<double> ys() const
    {
        std::vector<double> v;
        v.reserve(points.size());
        for (const auto& p : points)
            v.push_back(p.y);
        return v;
    }
};

// Series labels of a Grover sweep.
inline constexpr std::string_view kSeriesCycles = "cycles_per_cpu";
inline constexpr std::string_view kSeriesTime = "time_per_cpu";
inline constexpr std::string_view kSeriesQubits = "qubits_per_cpu";
inline constexpr std::string_view kSeriesTotalQubits = "total_qubits";
inline constexpr std::string_view kSeriesBlackBox = "black_box_queries";
inline constexpr std::string_view kSeriesIdealGates = "ideal_gates";
inline constexpr std::string_view kSeriesShor = "physical_qubits";

struct GroverSweep {
    TradeoffCurve cycles_per_cpu;
    TradeoffCurve time_per_cpu;
    TradeoffCurve qubits_per_cpu;
    TradeoffCurve total_qubits;
    /// Reference lines. A partition of size one needs zero queries, which
    /// shows up as y = -inf at K = 2^k.
    TradeoffCurve black_box;
    TradeoffCurve ideal_gates;
    std::vector<AttackEstimate> estimates;

    std::vector<TradeoffCurve> curves() const
    {
        return {cycles_per_cpu, time_per_cpu, qubits_per_cpu, total_qubits, black_box, ideal_gates};
    }
};

/// One point per kappa in [kappa_lo, kappa_hi].
inline GroverSweep sweep_grover(const LogicalCircuitSpec& spec, const PhysicalAssumptions& a, unsigned kappa_lo,
                                unsigned kappa_hi, std::optional<FTVariant> variant = std::nullopt)
{
    if (!is_grover_family(spec.kind))
        fail(ErrorKind::precondition, "'" + spec.name + "' is not a Grover target");
    unsigned k = spec.search_space_bits;
    if (kappa_lo > kappa_hi || kappa_hi > k)
        fail(ErrorKind::precondition, "processor range must lie within [0, " + std::to_string(k) + "]");
    FTVariant v = variant.value_or(default_variant(spec.kind));

    GroverSweep s;
    for (TradeoffCurve* c : {&s.cycles_per_cpu, &s.time_per_cpu, &s.qubits_per_cpu, &s.total_qubits, &s.black_box,
                             &s.ideal_gates}) {
        c->scheme = spec.name;
        c->variant = v;
        c->p_g = a.p_g;
        c->knob = Knob::processors;
    }
    s.cycles_per_cpu.series = kSeriesCycles;
    s.time_per_cpu.series = kSeriesTime;
    s.qubits_per_cpu.series = kSeriesQubits;
    s.total_qubits.series = kSeriesTotalQubits;
    s.black_box.series = kSeriesBlackBox;
    s.ideal_gates.series = kSeriesIdealGates;

    for (unsigned kappa = kappa_lo; kappa <= kappa_hi; ++kappa) {
        auto e = grover_attack_estimate(spec, k, kappa, a, v);
        auto totals = machine_logical_totals(spec, k, kappa);
        double knob = kappa;
        double x = std::log2(e.seconds_per_cpu);
        s.cycles_per_cpu.points.push_back({knob, x, std::log2(e.cycles_per_cpu)});
        s.time_per_cpu.points.push_back({knob, x, x});
        s.qubits_per_cpu.points.push_back({knob, x, std::log2(e.physical_qubits_per_cpu)});
        s.total_qubits.points.push_back({knob, x, std::log2(e.total_physical_qubits)});
        s.black_box.points.push_back({knob, x, log2_big(totals.iterations)});
        s.ideal_gates.points.push_back({knob, x, std::log2(totals.gate_count)});
        s.estimates.push_back(std::move(e));
    }
    return s;
}

inline GroverSweep sweep_grover(const LogicalCircuitSpec& spec, const PhysicalAssumptions& a,
                                std::optional<FTVariant> variant = std::nullopt)
{
    return sweep_grover(spec, a, 0, spec.search_space_bits, variant);
}

/// One (log2 seconds, log2 physical qubits) point per factory count.
inline TradeoffCurve sweep_shor(const LogicalCircuitSpec& spec, const PhysicalAssumptions& a, FTVariant variant,
                                const std::vector<double>& factories)
{
    if (!is_shor_family(spec.kind))
        fail(ErrorKind::precondition, "'" + spec.name + "' is not a Shor target");
    if (factories.empty())
        fail(ErrorKind::precondition, "factory range is empty");
    for (std::size_t i = 0; i < factories.size(); ++i) {
        if (!(factories[i] >= 1))
            fail(ErrorKind::precondition, "factory counts must be >= 1");
        if (i > 0 && !(factories[i] > factories[i - 1]))
            fail(ErrorKind::precondition, "factory counts must be ascending");
    }
    TradeoffCurve c{spec.name, variant, a.p_g, Knob::factories, std::string(kSeriesShor), {}};
    auto totals = logical_totals(spec);
    for (double nf : factories) {
        auto p = execution_profile(totals, a, variant, nf);
        c.points.push_back({std::log2(nf), std::log2(p.seconds), std::log2(p.physical_qubits)});
    }
    return c;
}

inline constexpr double kMaxSweepFactories = 1073741824.0; // 2^30

/// Default grid: n_f = 1, 2, 4, ... stopping after the first point that runs
/// in under a second, once time stops improving, or at 2^30 factories.
inline TradeoffCurve sweep_shor(const LogicalCircuitSpec& spec, const PhysicalAssumptions& a,
                                std::optional<FTVariant> variant = std::nullopt)
{
    FTVariant v = variant.value_or(default_variant(spec.kind));
    TradeoffCurve c = sweep_shor(spec, a, v, std::vector<double>{1.0});
    auto totals = logical_totals(spec);
    for (double nf = 2; nf <= kMaxSweepFactories; nf *= 2) {
        if (c.points.back().x < 0)
            break;
        auto p = execution_profile(totals, a, v, nf);
        double x = std::log2(p.seconds);
        if (!(x < c.points.back().x))
            break;
        c.points.push_back({std::log2(nf), x, std::log2(p.physical_qubits)});
    }
    return c;
}

// ---------------------------------------------------------------------------
// Cubic least squares
// ---------------------------------------------------------------------------

/// y(x) = alpha x^3 + beta x^2 + gamma x + delta.
struct CubicFit {
    double alpha = 0;
    double beta = 0;
    double gamma = 0;
    double delta = 0;
    /// 1 - SS_res / SS_tot. Set to 1 when the targets have zero variance.
    double r_squared = 1;
    bool zero_variance = false;
    double x_min = 0;
    double x_max = 0;
    std::size_t n_points = 0;
};

/// Least squares via Householder QR of the 4-column Vandermonde matrix
/// [x^3 x^2 x 1]; the normal equations are never formed.
inline CubicFit fit_cubic(const std::vector<double>& xs, const std::vector<double>& ys)
{
    if (xs.size() != ys.size())
        fail(ErrorKind::precondition, "x and y lengths differ");
    const std::size_t n = xs.size();
    if (n < 4)
        fail(ErrorKind::insufficient_points, "need 4, got " + std::to_string(n));
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i]))
            fail(ErrorKind::precondition, "fit points must be finite");

    constexpr std::size_t m = 4;
    std::vector<std::array<double, m>> A(n);
    std::vector<double> b = ys;
    for (std::size_t i = 0; i < n; ++i)
        A[i] = {xs[i] * xs[i] * xs[i], xs[i] * xs[i], xs[i], 1.0};

    double scale = 0;
    for (const auto& row : A)
        for (double v : row)
            scale = std::max(scale, std::abs(v));

    for (std::size_t j = 0; j < m; ++j) {
        double norm = 0;
        for (std::size_t i = j; i < n; ++i)
            norm += A[i][j] * A[i][j];
        norm = std::sqrt(norm);
        if (norm <= 1e-12 * scale * std::sqrt(double(n)))
            fail(ErrorKind::rank_deficient, "cubic fit is rank deficient (fewer than 4 distinct x values)");
        double alpha = A[j][j] > 0 ? -norm : norm;
        std::vector<double> v(n, 0.0);
        v[j] = A[j][j] - alpha;
        for (std::size_t i = j + 1; i < n; ++i)
            v[i] = A[i][j];
        double vnorm2 = 0;
        for (std::size_t i = j; i < n; ++i)
            vnorm2 += v[i] * v[i];
        auto reflect = [&](auto&& get) {
            double dot = 0;
            for (std::size_t i = j; i < n; ++i)
                dot += v[i] * get(i);
            double f = 2 * dot / vnorm2;
            for (std::size_t i = j; i < n; ++i)
                get(i) -= f * v[i];
        };
        for (std::size_t c = j; c < m; ++c)
            reflect([&](std::size_t i) -> double& { return A[i][c]; });
        reflect([&](std::size_t i) -> double& { return b[i]; });
    }
    for (std::size_t j = 0; j < m; ++j)
        if (std::abs(A[j][j]) <= 1e-10 * scale)
            fail(ErrorKind::rank_deficient, "cubic fit is rank deficient (fewer than 4 distinct x values)");

    std::array<double, m> coef{};
    for (std::size_t jj = m; jj-- > 0;) {
        double s = b[jj];
        for (std::size_t c = jj + 1; c < m; ++c)
            s -= A[jj][c] * coef[c];
        coef[jj] = s / A[jj][jj];
    }

    CubicFit f;
    f.alpha = coef[0];
    f.beta = coef[1];
    f.gamma = coef[2];
    f.delta = coef[3];
    f.n_points = n;
    f.x_min = *std::min_element(xs.begin(), xs.end());
    f.x_max = *std::max_element(xs.begin(), xs.end());

    double mean = 0;
    for (double y : ys)
        mean += y;
    mean /= double(n);
    double ss_tot = 0, ss_res = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double x = xs[i];
        double pred = ((f.alpha * x + f.beta) * x + f.gamma) * x + f.delta;
        ss_res += (ys[i] - pred) * (ys[i] - pred);
        ss_tot += (ys[i] - mean) * (ys[i] - mean);
    }
    // Relative test so rounding noise on constant data does not count as variance.
    if (ss_tot <= 1e-24 * std::max(1.0, mean * mean) * double(n)) {
        f.zero_variance = true;
        f.alpha = f.beta = f.gamma = 0;
        f.delta = mean;
        f.r_squared = 1;
    } else {
        f.r_squared = std::clamp(1 - ss_res / ss_tot, 0.0, 1.0);
    }
    return f;
}

inline CubicFit fit_cubic(const TradeoffCurve& c) { return fit_cubic(c.xs(), c.ys()); }

inline double eval_fit(const CubicFit& f, double x) { return ((f.alpha * x + f.beta) * x + f.gamma) * x + f.delta; }

inline double one_day(const CubicFit& f) { return eval_fit(f, kOneDayLog2Seconds); }

inline bool is_extrapolation(const CubicFit& f, double x)
{
    return x < f.x_min - kExtrapolationMargin || x > f.x_max + kExtrapolationMargin;
}

/// log2 qubits needed to finish in `seconds` on hardware with cycle time
/// `cycle_ns`: the fit was made at 200 ns, so the budget shrinks by cycle_ns/200.
inline double rescale_cycle_time(const CubicFit& f, double seconds, double cycle_ns)
{
    if (!(seconds > 0) || !(cycle_ns > 0))
        fail(ErrorKind::precondition, "time and cycle time must be positive");
    return eval_fit(f, std::log2(seconds / (cycle_ns / kReferenceCycleNs)));
}

/// Sweep, fit and one-day point for a Shor target.
struct ShorTradeoff {
    TradeoffCurve curve;
    CubicFit fit;
    AttackEstimate sequential;
    double one_day_log2_qubits = 0;
    bool one_day_extrapolated = false;
};

inline ShorTradeoff shor_tradeoff(const LogicalCircuitSpec& spec, const PhysicalAssumptions& a,
                                  std::optional<FTVariant> variant = std::nullopt)
{
    ShorTradeoff t;
    t.curve = sweep_shor(spec, a, variant);
    t.fit = fit_cubic(t.curve);
    t.sequential = shor_attack_estimate(spec, a, t.curve.variant);
    t.one_day_log2_qubits = one_day(t.fit);
    t.one_day_extrapolated = is_extrapolation(t.fit, kOneDayLog2Seconds);
    return t;
}

// ---------------------------------------------------------------------------
// Grover-derived quantities
// ---------------------------------------------------------------------------

/// log2 of the cost metric for a single machine (K = 1).
inline double security_parameter(const LogicalCircuitSpec& spec, const PhysicalAssumptions& a)
{
    return grover_attack_estimate(spec, 0u, a).security_parameter;
}

/// Smallest kappa such that 2^kappa machines each finish within `deadline_seconds`.
inline unsigned processors_to_deadline(const LogicalCircuitSpec& spec, const PhysicalAssumptions& a,
                                       double deadline_seconds, std::optional<FTVariant> variant = std::nullopt)
{
    if (!(deadline_seconds > 0))
        fail(ErrorKind::precondition, "deadline must be positive");
    unsigned k = spec.search_space_bits;
    auto seconds = [&](unsigned kappa) { return grover_attack_estimate(spec, kappa, a, variant).seconds_per_cpu; };
    if (seconds(k) > deadline_seconds)
        fail(ErrorKind::deadline_unreachable, "deadline unreachable even with 2^" + std::to_string(k) + " machines");
    if (seconds(0) <= deadline_seconds)
        return 0;
    unsigned lo = 0, hi = k; // seconds(lo) > deadline >= seconds(hi)
    while (hi - lo > 1) {
        unsigned mid = lo + (hi - lo) / 2;
        (seconds(mid) <= deadline_seconds ? hi : lo) = mid;
    }
    return hi;
}

// ---------------------------------------------------------------------------
// Calibration
// ---------------------------------------------------------------------------

/// The benchmark row the model constants are fitted to.
struct CalibrationTarget {
    std::string scheme = "RSA-2048";
    double p_g = 1e-3;
    double sequential_cycles = 4.69e14;
    double one_day_qubits = 1.72e8;
};

struct Calibration {
    double distillation_latency_coeff = 0;
    double a_footprint_braiding = 0;
};

namespace detail {

template <class F>
double bisect_increasing(F&& f, double target, double lo, double hi, int iterations = 200)
{
    for (int i = 0; i < iterations && hi - lo > 1e-12 * hi; ++i) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace detail

/// Tunes the latency coefficient against the sequential cycle count, then
/// the braiding tile footprint against the one-day qubit count. Both
/// quantities increase monotonically in their constant, so bisection suffices.
inline Calibration calibrate(const Catalog& catalog, PhysicalAssumptions base = {},
                             const CalibrationTarget& target = {})
{
    const auto& spec = catalog.at(target.scheme);
    base.p_g = target.p_g;
    FTVariant v = default_variant(spec.kind);

    Calibration c;
    c.distillation_latency_coeff = detail::bisect_increasing(
        [&](double coeff) {
            auto a = base;
            a.distillation_latency_coeff = coeff;
            return std::log2(shor_attack_estimate(spec, a, v).sequential_cycles);
        },
        std::log2(target.sequential_cycles), 0.1, 1000.0);
    base.distillation_latency_coeff = c.distillation_latency_coeff;
    c.a_footprint_braiding = detail::bisect_increasing(
        [&](double footprint) {
            auto a = base;
            a.a_footprint_braiding = footprint;
            return shor_tradeoff(spec, a, v).one_day_log2_qubits;
        },
        std::log2(target.one_day_qubits), 0.1, 10000.0);
    return c;
}

} // namespace qcost
