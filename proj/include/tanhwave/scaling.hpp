#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace tanhwave {

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    bool defined = false; // false when fewer than 2 rows
};

struct ScalingRow {
    double eps = 0.0;
    double metric = 0.0;
    double t_of_sup = 0.0;
    int grid_n = 0;
    double dt = 0.0;
};

struct ScalingReport {
    std::string experiment;
    std::vector<ScalingRow> rows;
    std::vector<std::map<std::string, double>> row_extras; // parallel to rows
    SlopeFit fit;
    std::string config_hash;
    std::string dt_convergence; // self-convergence evidence
    double wall_seconds = 0.0;
    std::vector<std::string> warnings;
};

// Ordinary least squares on (log eps, log value). Values must be positive.
SlopeFit fit_slope(const std::vector<std::pair<double, double>>& rows);

SlopeFit fit_report_slope(ScalingReport& report);

} // namespace tanhwave
