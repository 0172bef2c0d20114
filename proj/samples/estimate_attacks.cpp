// Library walk-through: one Grover target and one Shor target.

#include "qcost/qcost.hpp"

#include <cmath>
#include <cstdio>

int main()
{
    using namespace qcost;
    auto catalog = load_catalog_file(QCOST_DATA_DIR "/catalog.json");

    auto a = calibrated_assumptions(1e-4);
    const auto& aes = catalog.at("AES-128");
    std::printf("AES-128 qs at p_g = 1e-4: %.1f\n", security_parameter(aes, a));
    std::printf("machines for a one-year attack: 2^%u\n", processors_to_deadline(aes, a, kSecondsPerYear));

    auto e = grover_attack_estimate(aes, 40u, a);
    std::printf("K = 2^40: d = %u, %.3g physical qubits per machine, %.3g s per machine\n", e.distance,
                e.physical_qubits_per_cpu, e.seconds_per_cpu);

    a.p_g = 1e-3;
    auto rsa = shor_tradeoff(catalog.at("RSA-2048"), a);
    std::printf("RSA-2048 at p_g = 1e-3: %.3g sequential cycles, %.3g qubits for a one-day run (R^2 %.4f)\n",
                rsa.sequential.sequential_cycles, std::exp2(rsa.one_day_log2_qubits), rsa.fit.r_squared);
    std::printf("same footprint with a 1 us cycle: %.3g qubits for one day\n",
                std::exp2(rescale_cycle_time(rsa.fit, 86400, 1000)));
}
