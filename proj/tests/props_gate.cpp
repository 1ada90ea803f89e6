// ctest entry for the operator property suite with the default seed, plus the
// tampered negative control (which must be caught).

#include "tanhwave/experiments.hpp"

#include <cstdio>

using namespace tanhwave;

int main() {
    ExperimentConfig cfg;
    PropertyReport r = run_property_suite(cfg);
    for (const auto& c : r.checks)
        std::printf("[%s] %-36s measured %.6e threshold %.6e %s\n",
                    c.pass ? "PASS" : "FAIL", c.name.c_str(), c.measured, c.threshold,
                    c.detail.c_str());

    ExperimentConfig tampered = cfg;
    tampered.tamper = "tanh_sign_flip";
    PropertyReport neg = run_property_suite(tampered);
    std::printf("[%s] negative control: tampered identity detected\n",
                neg.all_pass ? "FAIL" : "PASS");

    const bool ok = r.all_pass && !neg.all_pass;
    std::printf("property gate: %s\n", ok ? "ALL PASS" : "FAILURES");
    return ok ? 0 : 1;
}
