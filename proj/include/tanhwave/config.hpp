#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tanhwave {

// Flat key=value experiment configuration. Unknown keys are rejected so typos
// fail loudly. Keys mirror the documented config format (see README).
struct ExperimentConfig {
    std::string experiment = "nls_validity"; // existence | nls_validity |
                                             // residual_scaling | energy_drift |
                                             // property_suite | simulate
    std::vector<double> eps_list{0.1, 0.05, 0.025};
    double k0 = 1.0;
    double delta = -1.0; // <= 0: default 0.9*k0/20
    double T0 = 1.0;
    int s = 7;
    int grid_n = 0;          // 0: choose per experiment rule
    double slow_length = 256.0; // envelope domain L_X; fast L = L_X/eps
    double dt = 0.05;
    int dt_auto_halvings = 3; // max halvings while self-convergence > 5%
    std::string envelope = "gaussian:1:10"; // gaussian:amp:width or file:<path>
    std::string order = "corrected2";       // basic | corrected2 (initial-data ansatz)
    double observer_time = 0.5;             // sampling interval in time units
    std::string output_dir = ".";
    std::uint64_t seed = 1234;
    std::string tamper; // test hook for the negative control, normally empty

    std::map<std::string, std::string> extra; // raw overrides, for the hash

    void validate_common(std::vector<std::string>& warnings) const;
    std::string canonical_text() const;
    std::string hash() const; // FNV-1a over canonical_text
};

ExperimentConfig parse_config_file(const std::string& path);
void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value);

std::string fnv1a_hex(const std::string& data);

// Deterministic number formatting for reports (shortest round-trip form).
std::string format_double(double v);

} // namespace tanhwave
