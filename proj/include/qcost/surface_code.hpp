#pragma once

// Fault-tolerant layer: maps logical totals onto surface-code distance,
// 15-to-1 distillation factories, physical footprint, cycles and wall time.
//
// Model summary (every constant lives in PhysicalAssumptions):
//   logical error per qubit per cycle   p_L(d) = C1 (p_g / p_th)^((d+1)/2)
//   one 15-to-1 layer                   p -> 35 p^3, input p_g * injection_error_factor
//   factory round                       distillation_latency_coeff * d cycles,
//                                       one distilled T state per factory per round
//   data block                          a_footprint * d^2 physical qubits per logical qubit
//   factory                             layers * tiles_per_layer * a_footprint_braiding * d^2,
//                                       divided by surgery_factory_scale under lattice surgery
//   depth floor                         max(t_depth, 1) * d cycles
//   sequential (single factory) cycles  T * round + floor
//   wall cycles with n_f factories      max(ceil(T / n_f) * round, floor)

#include "qcost/catalog.hpp"
#include "qcost/error.hpp"
#include "qcost/grover.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace qcost {

enum class FTVariant { defects_braiding, lattice_surgery };

inline std::string_view to_string(FTVariant v) noexcept
{
    return v == FTVariant::defects_braiding ? "braiding" : "surgery";
}

inline std::optional<FTVariant> parse_variant(std::string_view s) noexcept
{
    if (s == "braiding" || s == "defects-braiding")
        return FTVariant::defects_braiding;
    if (s == "surgery" || s == "lattice-surgery")
        return FTVariant::lattice_surgery;
    return std::nullopt;
}

/// Grover targets are costed with defects and braiding, Shor targets with
/// lattice surgery unless the caller says otherwise.
inline FTVariant default_variant(CircuitKind k) noexcept
{
    return is_shor_family(k) ? FTVariant::lattice_surgery : FTVariant::defects_braiding;
}

struct PhysicalAssumptions {
    double p_g = 1e-4;
    double p_th = 1e-2;
    double cycle_time_ns = 200;
    /// Overall failure budget, split evenly between data and distillation.
    double epsilon_total = 0.5;
    double C1 = 0.1;
    double a_footprint_braiding = 5.0;
    double a_footprint_surgery = 2.0;
    double distillation_latency_coeff = 10;
    double surgery_factory_scale = 5;
    /// Logical patches occupied by one 15-to-1 layer of a factory.
    double factory_tiles_per_layer = 16;
    /// Raw injected magic-state error relative to p_g.
    double injection_error_factor = 1.0;

    double epsilon_data() const noexcept { return epsilon_total / 2; }
    double epsilon_distillation() const noexcept { return epsilon_total / 2; }

    double a_footprint(FTVariant v) const noexcept
    {
        return v == FTVariant::defects_braiding ? a_footprint_braiding : a_footprint_surgery;
    }

    void validate() const
    {
        auto positive = [](double v, const char* name) {
            if (!(std::isfinite(v) && v > 0))
                fail(ErrorKind::precondition, std::string(name) + " must be positive");
        };
        positive(p_g, "p_g");
        positive(p_th, "p_th");
        if (!(p_g < p_th))
            fail(ErrorKind::precondition, "p_g must be below the threshold p_th");
        positive(cycle_time_ns, "cycle_time_ns");
        positive(epsilon_total, "epsilon_total");
        if (epsilon_total > 1)
            fail(ErrorKind::precondition, "epsilon_total must not exceed 1");
        positive(C1, "C1");
        positive(a_footprint_braiding, "a_footprint_braiding");
        positive(a_footprint_surgery, "a_footprint_surgery");
        positive(distillation_latency_coeff, "distillation_latency_coeff");
        positive(surgery_factory_scale, "surgery_factory_scale");
        positive(factory_tiles_per_layer, "factory_tiles_per_layer");
        positive(injection_error_factor, "injection_error_factor");
    }

    bool operator==(const PhysicalAssumptions&) const = default;
};

/// Constants fitted to the RSA-2048, p_g = 1e-3 benchmark row (sequential
/// cycles 4.69e14, one-day footprint 1.72e8). Only the latency coefficient
/// and the braiding tile footprint are tuned; `calibrate()` in tradeoff.hpp
/// reproduces them.
inline constexpr double kCalibratedLatencyCoeff = 5.5602;
inline constexpr double kCalibratedFootprintBraiding = 19.759;

inline PhysicalAssumptions calibrated_assumptions(double p_g = 1e-4)
{
    PhysicalAssumptions a;
    a.p_g = p_g;
    a.distillation_latency_coeff = kCalibratedLatencyCoeff;
    a.a_footprint_braiding = kCalibratedFootprintBraiding;
    return a;
}

// ---------------------------------------------------------------------------
// JSON configuration: an object whose keys mirror the field names above.
// ---------------------------------------------------------------------------

namespace detail {

template <class F>
void for_each_assumption(PhysicalAssumptions& a, F&& f)
{
    f("p_g", a.p_g);
    f("p_th", a.p_th);
    f("cycle_time_ns", a.cycle_time_ns);
    f("epsilon_total", a.epsilon_total);
    f("C1", a.C1);
    f("a_footprint_braiding", a.a_footprint_braiding);
    f("a_footprint_surgery", a.a_footprint_surgery);
    f("distillation_latency_coeff", a.distillation_latency_coeff);
    f("surgery_factory_scale", a.surgery_factory_scale);
    f("factory_tiles_per_layer", a.factory_tiles_per_layer);
    f("injection_error_factor", a.injection_error_factor);
}

} // namespace detail

inline nlohmann::json to_json(const PhysicalAssumptions& a)
{
    nlohmann::json j = nlohmann::json::object();
    auto copy = a;
    detail::for_each_assumption(copy, [&](const char* key, double& v) { j[key] = v; });
    return j;
}

/// Overlays a configuration document on `base`. Unknown keys are rejected.
inline PhysicalAssumptions load_assumptions(std::string_view document, PhysicalAssumptions base)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(document);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorKind::malformed_document, e.what());
    }
    if (!doc.is_object())
        fail(ErrorKind::malformed_document, "configuration must be an object");
    for (const auto& [key, value] : doc.items()) {
        bool known = false;
        detail::for_each_assumption(base, [&](const char* name, double& field) {
            if (key != name)
                return;
            known = true;
            if (!value.is_number())
                fail(ErrorKind::malformed_document, "'" + key + "' must be a number");
            field = value.get<double>();
        });
        if (!known)
            fail(ErrorKind::malformed_document, "unknown configuration key '" + key + "'");
    }
    base.validate();
    return base;
}

/// Stable 64-bit FNV-1a digest of the canonical serialization.
inline std::string assumptions_digest(const PhysicalAssumptions& a)
{
    std::string canon = to_json(a).dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// ---------------------------------------------------------------------------
// Logical error rate and code distance
// ---------------------------------------------------------------------------

inline constexpr unsigned kMaxDistance = 1001;

inline double logical_error_rate(unsigned d, const PhysicalAssumptions& a)
{
    if (d < 3 || d % 2 == 0)
        fail(ErrorKind::precondition, "code distance must be odd and >= 3, got " + std::to_string(d));
    return a.C1 * std::pow(a.p_g / a.p_th, (d + 1) / 2.0);
}

/// Distances are odd; even or too small requests round up.
constexpr unsigned round_up_distance(unsigned d) noexcept
{
    if (d < 3)
        return 3;
    return d % 2 == 0 ? d + 1 : d;
}

/// Smallest odd d >= 3 with logical_qubits * cycles(d) * p_L(d) <= epsilon_data.
/// Scans upward, so it also covers cycle counts that grow with d.
inline unsigned required_distance(double logical_qubits, const std::function<double(unsigned)>& cycles,
                                  const PhysicalAssumptions& a)
{
    if (!(logical_qubits > 0))
        fail(ErrorKind::precondition, "logical qubit count must be positive");
    for (unsigned d = 3; d <= kMaxDistance; d += 2) {
        double c = cycles(d);
        if (!(c > 0))
            fail(ErrorKind::precondition, "cycle estimate must be positive");
        if (logical_qubits * c * logical_error_rate(d, a) <= a.epsilon_data())
            return d;
    }
    fail(ErrorKind::budget_infeasible, "no distance up to " + std::to_string(kMaxDistance) + " meets the data budget");
}

inline unsigned required_distance(double logical_qubits, double cycles, const PhysicalAssumptions& a)
{
    return required_distance(logical_qubits, [cycles](unsigned) { return cycles; }, a);
}

// ---------------------------------------------------------------------------
// 15-to-1 distillation
// ---------------------------------------------------------------------------

inline constexpr unsigned kMaxDistillationLayers = 4;

/// Output error of `layers` concatenated 15-to-1 rounds: 35^((3^L-1)/2) p^(3^L).
inline double distilled_error(double input_error, unsigned layers)
{
    double e = input_error;
    for (unsigned i = 0; i < layers; ++i)
        e = 35 * e * e * e;
    return e;
}

struct DistillationStack {
    unsigned layers = 0;
    double input_error = 0;
    double output_error = 0;
    double tiles_per_layer = 0;
    FTVariant variant = FTVariant::defects_braiding;
    double a_footprint_braiding = 0;
    double surgery_factory_scale = 1;
    double latency_coeff = 0;

    double factory_logical_qubits() const noexcept { return layers * tiles_per_layer; }

    double factory_physical_qubits(unsigned d) const noexcept
    {
        double braided = factory_logical_qubits() * a_footprint_braiding * double(d) * d;
        return variant == FTVariant::lattice_surgery ? braided / surgery_factory_scale : braided;
    }

    /// Cycles for one 15-to-1 round; also the interval between outputs.
    double round_cycles(unsigned d) const noexcept { return latency_coeff * d; }
};

inline DistillationStack build_distillation_stack(const PhysicalAssumptions& a, double total_t_count,
                                                  FTVariant variant)
{
    if (!(total_t_count >= 1))
        fail(ErrorKind::precondition, "distillation needs at least one T gate");
    DistillationStack s;
    s.input_error = a.p_g * a.injection_error_factor;
    s.tiles_per_layer = a.factory_tiles_per_layer;
    s.variant = variant;
    s.a_footprint_braiding = a.a_footprint_braiding;
    s.surgery_factory_scale = a.surgery_factory_scale;
    s.latency_coeff = a.distillation_latency_coeff;
    double budget = a.epsilon_distillation() / total_t_count;
    for (unsigned L = 1; L <= kMaxDistillationLayers; ++L) {
        double out = distilled_error(s.input_error, L);
        if (out <= budget) {
            s.layers = L;
            s.output_error = out;
            return s;
        }
    }
    fail(ErrorKind::distillation_depth_exceeded,
         "more than " + std::to_string(kMaxDistillationLayers) + " layers required");
}

// ---------------------------------------------------------------------------
// Execution profile
// ---------------------------------------------------------------------------

/// What one machine has to run.
struct LogicalTotals {
    double t_count = 0;
    double t_depth = 0;
    double logical_qubits = 0;
};

inline LogicalTotals logical_totals(const MachineTotals& m)
{
    return {m.t_count, m.t_depth, static_cast<double>(m.logical_qubits)};
}

inline LogicalTotals logical_totals(const LogicalCircuitSpec& s)
{
    return {s.t_count, s.t_depth, static_cast<double>(s.logical_qubits)};
}

struct ExecutionProfile {
    unsigned distance = 0;
    unsigned layers = 0;
    double factories = 0;
    /// Single-factory cycle count at this distance.
    double sequential_cycles = 0;
    double wall_cycles = 0;
    double seconds = 0;
    double data_physical_qubits = 0;
    double factory_physical_qubits = 0;
    double physical_qubits = 0;
    /// Data qubits plus the patches of every factory.
    double logical_qubits_with_factories = 0;
};

namespace detail {

inline double depth_floor(const LogicalTotals& t, unsigned d) { return std::max(t.t_depth, 1.0) * d; }

inline double t_stream(const LogicalTotals& t, const DistillationStack& s, double factories, unsigned d)
{
    return std::ceil(t.t_count / factories) * s.round_cycles(d);
}

} // namespace detail

/// Runs the job with `factories` parallel factories (ignored when T = 0).
inline ExecutionProfile execution_profile(const LogicalTotals& t, const PhysicalAssumptions& a, FTVariant variant,
                                          double factories)
{
    a.validate();
    if (!(t.logical_qubits >= 1) || t.t_count < 0 || t.t_depth < 0)
        fail(ErrorKind::precondition, "invalid logical totals");
    ExecutionProfile p;
    std::optional<DistillationStack> stack;
    if (t.t_count > 0) {
        if (!(factories >= 1))
            fail(ErrorKind::precondition, "at least one factory is required");
        stack = build_distillation_stack(a, t.t_count, variant);
        p.layers = stack->layers;
        p.factories = std::floor(factories);
    }

    auto wall = [&](unsigned d) {
        double floor_cycles = detail::depth_floor(t, d);
        return stack ? std::max(detail::t_stream(t, *stack, p.factories, d), floor_cycles) : floor_cycles;
    };
    auto sequential = [&](unsigned d) {
        return detail::depth_floor(t, d) + (stack ? t.t_count * stack->round_cycles(d) : 0.0);
    };
    // sized for the single-factory run, so d does not move with the factory count
    p.distance = required_distance(t.logical_qubits, sequential, a);
    unsigned d = p.distance;
    p.wall_cycles = wall(d);
    p.sequential_cycles = sequential(d);
    p.seconds = p.wall_cycles * a.cycle_time_ns * 1e-9;
    p.data_physical_qubits = a.a_footprint(variant) * double(d) * d * t.logical_qubits;
    p.factory_physical_qubits = stack ? p.factories * stack->factory_physical_qubits(d) : 0.0;
    p.physical_qubits = p.data_physical_qubits + p.factory_physical_qubits;
    p.logical_qubits_with_factories =
        t.logical_qubits + (stack ? p.factories * stack->factory_logical_qubits() : 0.0);
    return p;
}

/// Factory count for Grover machines: enough factories that the T stream
/// keeps pace with the depth floor, but never more factory area than data
/// area. At least one factory whenever T > 0.
inline double grover_factory_count(const LogicalTotals& t, const PhysicalAssumptions& a, FTVariant variant)
{
    if (t.t_count <= 0)
        return 0;
    auto stack = build_distillation_stack(a, t.t_count, variant);
    double ideal = std::ceil(t.t_count * a.distillation_latency_coeff / std::max(t.t_depth, 1.0));
    // Both footprints scale with d^2, so the cap is distance independent.
    double per_factory = stack.factory_physical_qubits(1);
    double cap = std::floor(a.a_footprint(variant) * t.logical_qubits / per_factory);
    return std::max(1.0, std::min(ideal, cap));
}

// ---------------------------------------------------------------------------
// Attack estimates
// ---------------------------------------------------------------------------

/// One evaluated attack point.
///
/// `cycles_per_cpu` is the cost metric behind the security parameter:
/// logical-qubit surface-code cycles of the single-factory execution
/// (sequential cycles times data plus factory patches). Wall-clock quantities
/// come from the factory-parallel execution and are reported separately.
struct AttackEstimate {
    std::string scheme;
    FTVariant variant = FTVariant::defects_braiding;
    double p_g = 0;
    unsigned processors_log2 = 0;
    unsigned distance = 0;
    unsigned layers = 0;
    double factories = 0;
    double sequential_cycles = 0;
    double wall_cycles_per_cpu = 0;
    double seconds_per_cpu = 0;
    double cycles_per_cpu = 0;
    double logical_qubits_per_cpu = 0;
    double physical_qubits_per_cpu = 0;
    double total_physical_qubits = 0;
    double security_parameter = 0;
};

namespace detail {

inline void fill_cost_metric(AttackEstimate& e, const ExecutionProfile& sequential, double data_logical_qubits,
                             const PhysicalAssumptions& a)
{
    double factory_patches = sequential.layers > 0 ? sequential.layers * a.factory_tiles_per_layer : 0.0;
    e.sequential_cycles = sequential.sequential_cycles;
    e.cycles_per_cpu = sequential.sequential_cycles * (data_logical_qubits + factory_patches);
    e.security_parameter = std::log2(e.cycles_per_cpu);
}

inline void fill_wall(AttackEstimate& e, const ExecutionProfile& p)
{
    e.distance = p.distance;
    e.layers = p.layers;
    e.factories = p.factories;
    e.wall_cycles_per_cpu = p.wall_cycles;
    e.seconds_per_cpu = p.seconds;
    e.logical_qubits_per_cpu = p.logical_qubits_with_factories;
    e.physical_qubits_per_cpu = p.physical_qubits;
}

} // namespace detail

/// Grover attack with 2^kappa machines, each searching a 2^(k - kappa) slice.
inline AttackEstimate grover_attack_estimate(const LogicalCircuitSpec& spec, unsigned k, unsigned kappa,
                                             const PhysicalAssumptions& a,
                                             std::optional<FTVariant> variant = std::nullopt)
{
    if (!is_grover_family(spec.kind))
        fail(ErrorKind::precondition, "'" + spec.name + "' is not a Grover target");
    FTVariant v = variant.value_or(default_variant(spec.kind));
    auto totals = logical_totals(machine_logical_totals(spec, k, kappa));

    AttackEstimate e;
    e.scheme = spec.name;
    e.variant = v;
    e.p_g = a.p_g;
    e.processors_log2 = kappa;

    auto sequential = execution_profile(totals, a, v, totals.t_count > 0 ? 1.0 : 0.0);
    detail::fill_cost_metric(e, sequential, totals.logical_qubits, a);
    auto parallel = execution_profile(totals, a, v, grover_factory_count(totals, a, v));
    detail::fill_wall(e, parallel);
    e.total_physical_qubits = std::ldexp(e.physical_qubits_per_cpu, static_cast<int>(kappa));
    return e;
}

inline AttackEstimate grover_attack_estimate(const LogicalCircuitSpec& spec, unsigned kappa,
                                             const PhysicalAssumptions& a,
                                             std::optional<FTVariant> variant = std::nullopt)
{
    return grover_attack_estimate(spec, spec.search_space_bits, kappa, a, variant);
}

/// Shor attack on a single machine with `factories` parallel factories.
/// `sequential_cycles` is the single-factory count at its own distance.
inline AttackEstimate shor_attack_estimate(const LogicalCircuitSpec& spec, const PhysicalAssumptions& a,
                                           std::optional<FTVariant> variant = std::nullopt, double factories = 1)
{
    if (!is_shor_family(spec.kind))
        fail(ErrorKind::precondition, "'" + spec.name + "' is not a Shor target");
    FTVariant v = variant.value_or(default_variant(spec.kind));
    auto totals = logical_totals(spec);

    AttackEstimate e;
    e.scheme = spec.name;
    e.variant = v;
    e.p_g = a.p_g;
    auto sequential = execution_profile(totals, a, v, 1);
    detail::fill_cost_metric(e, sequential, totals.logical_qubits, a);
    auto parallel = factories == 1 ? sequential : execution_profile(totals, a, v, factories);
    detail::fill_wall(e, parallel);
    e.total_physical_qubits = e.physical_qubits_per_cpu;
    return e;
}

} // namespace qcost
