#pragma once

// Parallel Grover search: iteration counts, analytic success probability and
// logical resource totals per search machine.

#include "qcost/catalog.hpp"
#include "qcost/error.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>

namespace qcost {

using BigCount = boost::multiprecision::cpp_int;

namespace detail {
using HighPrecision = boost::multiprecision::cpp_bin_float_100;
}

/// log2 of a non-negative big integer; log2(0) is -infinity.
inline double log2_big(const BigCount& v)
{
    if (v <= 0)
        return -INFINITY;
    return static_cast<double>(boost::multiprecision::log2(detail::HighPrecision(v)));
}

inline double to_double(const BigCount& v) { return static_cast<double>(detail::HighPrecision(v)); }

/// Exponent of a power-of-two processor count; throws for anything else.
inline unsigned processors_log2(const BigCount& processors)
{
    if (processors < 1 || (processors & (processors - 1)) != 0)
        fail(ErrorKind::precondition, "processor count must be a power of two");
    return static_cast<unsigned>(boost::multiprecision::msb(processors));
}

/// floor((pi/4) * sqrt(2^k / marked)), evaluated with 100 significant digits
/// so the floor is exact for every k <= 256.
inline BigCount iterations_single(unsigned k, const BigCount& marked = 1)
{
    using detail::HighPrecision;
    require(k <= 1024, "search space exponent k <= 1024");
    BigCount space = BigCount(1) << k;
    if (marked < 1 || marked > space)
        fail(ErrorKind::precondition, "marked count must lie in [1, 2^k]");
    HighPrecision ratio = HighPrecision(space) / HighPrecision(marked);
    HighPrecision v = boost::math::constants::pi<HighPrecision>() / 4 * boost::multiprecision::sqrt(ratio);
    return static_cast<BigCount>(boost::multiprecision::floor(v));
}

/// Iterations per machine when a 2^k space is split across 2^kappa machines:
/// each machine searches its own partition of size 2^(k - kappa).
inline BigCount iterations_parallel(unsigned k, unsigned kappa)
{
    if (kappa > k)
        fail(ErrorKind::precondition, "processors 2^" + std::to_string(kappa) + " exceed the search space 2^" +
                                          std::to_string(k));
    if (k == kappa)
        return 0;
    return iterations_single(k - kappa, 1);
}

inline BigCount iterations_parallel(unsigned k, const BigCount& processors)
{
    return iterations_parallel(k, processors_log2(processors));
}

/// sin^2((2m + 1) theta) with sin theta = sqrt(M / N).
inline double success_probability(std::uint64_t m, std::uint64_t space, std::uint64_t marked)
{
    if (space < 1 || marked < 1 || marked > space)
        fail(ErrorKind::precondition, "success probability needs 1 <= M <= N");
    long double theta = std::asin(std::sqrt(static_cast<long double>(marked) / static_cast<long double>(space)));
    long double s = std::sin((2.0L * static_cast<long double>(m) + 1.0L) * theta);
    return static_cast<double>(s * s);
}

/// Probability that the machine holding the (single, uniformly placed) target
/// finds it after m iterations on its 2^(k - kappa) partition.
inline double parallel_success_probability(unsigned k, unsigned kappa, std::uint64_t m)
{
    if (kappa > k)
        fail(ErrorKind::precondition, "processors exceed the search space");
    require(k - kappa < 64, "partition size must fit in 64 bits");
    return success_probability(m, std::uint64_t{1} << (k - kappa), 1);
}

/// Costs of the two fixed subcircuits wrapped around the oracle in every
/// iteration: the comparator checking f(x) = y and the diffusion reflection.
/// Defaults model each as a ladder of k - 1 Toffoli gates, a Toffoli costing
/// 7 T gates at T-depth 3 inside 15 gates total.
struct IterationOverheads {
    double comparator_t_count = 0;
    double comparator_t_depth = 0;
    double comparator_gates = 0;
    double diffusion_t_count = 0;
    double diffusion_t_depth = 0;
    double diffusion_gates = 0;

    static IterationOverheads toffoli_ladder(unsigned k)
    {
        double toffolis = k > 0 ? static_cast<double>(k - 1) : 0.0;
        return {7 * toffolis, 3 * toffolis, 15 * toffolis, 7 * toffolis, 3 * toffolis, 15 * toffolis};
    }
};

inline double comparator_t_count(unsigned k) { return IterationOverheads::toffoli_ladder(k).comparator_t_count; }
inline double diffusion_t_count(unsigned k) { return IterationOverheads::toffoli_ladder(k).diffusion_t_count; }

struct LogicalIterationCost {
    double t_count_per_iteration = 0;
    double t_depth_per_iteration = 0;
    /// Unit-cost gates of one iteration; the ideal-gates reference line.
    /// A trivial oracle counts as one unit.
    double gate_count_per_iteration = 0;
    std::uint64_t logical_qubits = 0;
};

/// One Grover iteration: two calls to f, one comparator, one diffusion.
inline LogicalIterationCost iteration_logical_cost(const LogicalCircuitSpec& spec, const IterationOverheads& o)
{
    if (!is_grover_family(spec.kind))
        fail(ErrorKind::precondition, "'" + spec.name + "' is not a Grover oracle");
    LogicalIterationCost c;
    c.logical_qubits = spec.logical_qubits;
    c.t_count_per_iteration = 2 * spec.t_count + o.comparator_t_count + o.diffusion_t_count;
    c.t_depth_per_iteration = 2 * spec.t_depth + o.comparator_t_depth + o.diffusion_t_depth;
    if (spec.kind == CircuitKind::trivial_oracle)
        c.gate_count_per_iteration = 1;
    else
        c.gate_count_per_iteration =
            2 * (spec.t_count + spec.clifford_count.value_or(0.0)) + o.comparator_gates + o.diffusion_gates;
    return c;
}

inline LogicalIterationCost iteration_logical_cost(const LogicalCircuitSpec& spec)
{
    return iteration_logical_cost(spec, IterationOverheads::toffoli_ladder(spec.search_space_bits));
}

/// Logical work performed by one of the 2^kappa machines.
struct MachineTotals {
    unsigned search_space_bits = 0;
    unsigned processors_log2 = 0;
    BigCount iterations;
    double t_count = 0;
    double t_depth = 0;
    double gate_count = 0;
    std::uint64_t logical_qubits = 0;
};

inline MachineTotals machine_logical_totals(const LogicalCircuitSpec& spec, unsigned k, unsigned kappa,
                                            const IterationOverheads& o)
{
    auto per = iteration_logical_cost(spec, o);
    MachineTotals t;
    t.search_space_bits = k;
    t.processors_log2 = kappa;
    t.iterations = iterations_parallel(k, kappa);
    double iters = to_double(t.iterations);
    t.t_count = iters * per.t_count_per_iteration;
    t.t_depth = iters * per.t_depth_per_iteration;
    t.gate_count = iters * per.gate_count_per_iteration;
    t.logical_qubits = per.logical_qubits;
    return t;
}

inline MachineTotals machine_logical_totals(const LogicalCircuitSpec& spec, unsigned k, unsigned kappa)
{
    return machine_logical_totals(spec, k, kappa, IterationOverheads::toffoli_ladder(k));
}

} // namespace qcost
