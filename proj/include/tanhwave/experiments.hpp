#pragma once

#include "tanhwave/ansatz.hpp"
#include "tanhwave/config.hpp"
#include "tanhwave/envelope.hpp"
#include "tanhwave/scaling.hpp"
#include "tanhwave/solver.hpp"

#include <map>
#include <string>
#include <vector>

namespace tanhwave {

// Fast/slow grid pair for a carrier run: k0 lands exactly on the fast grid
// (L = 2 pi m0 / k0) and the slow grid spans eps * L. band_factor fixes the
// resolved bandwidth: the dealiasing cutoff stays above band_factor/3 * k0.
struct WaveGrids {
    GridPtr fast;
    GridPtr slow;
    int m0 = 0;
};
WaveGrids make_wave_grids(double k0, double eps, double slow_length_target, int fast_n,
                          double band_factor);

Envelope make_initial_envelope(const ExperimentConfig& cfg, const GridPtr& slow_grid);
AnsatzOrder order_from_string(const std::string& name);

// Theorem 2 as a scaling law: evolve the full equation from eps*psi(0) and the
// envelope equation side by side; record sup_t ||u - eps psi_NLS||_{H^s}.
ScalingReport run_nls_validity(const ExperimentConfig& cfg);

// Theorem 1 surrogate: random data with ||u0||_{H^2} = eps, run to T0/eps^2,
// record sup_t ||u||_{H^s} / ||u0||_{H^s}.
ScalingReport run_long_time_existence(const ExperimentConfig& cfg);

// sup_t ||Res(eps psi)||_{L2} per eps, for both ansatz orders.
std::map<std::string, ScalingReport> run_residual_scaling(const ExperimentConfig& cfg);

// Exponential growth rate of the normal-form energy E_s(t); rows carry
// |rho|/eps^2 (signed rho in row_extras).
ScalingReport run_energy_drift(const ExperimentConfig& cfg);

struct PropertyCheck {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string detail;
};
struct PropertyReport {
    std::vector<PropertyCheck> checks;
    bool all_pass = true;
    std::string config_hash;
};

// Every operator identity, bound, and kernel equivalence as a seeded check.
PropertyReport run_property_suite(const ExperimentConfig& cfg);

// Plain simulation of the first eps in the list; returns the sampled series.
RunLog simulate_once(const ExperimentConfig& cfg, std::vector<std::string>& columns);

void write_scaling_csv(const std::string& path, const ScalingReport& report);
void write_scaling_json(const std::string& path, const ScalingReport& report,
                        const ExperimentConfig& cfg);
void write_property_json(const std::string& path, const PropertyReport& report);
void write_runlog_csv(const std::string& path, const RunLog& log,
                      const std::vector<std::string>& columns);

} // namespace tanhwave
