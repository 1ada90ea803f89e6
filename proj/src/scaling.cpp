#include "tanhwave/scaling.hpp"

#include <cmath>
#include <stdexcept>

namespace tanhwave {

SlopeFit fit_slope(const std::vector<std::pair<double, double>>& rows) {
    SlopeFit fit;
    if (rows.size() < 2)
        return fit;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    const double n = static_cast<double>(rows.size());
    for (const auto& [eps, value] : rows) {
        if (!(eps > 0.0) || !(value > 0.0))
            throw std::invalid_argument("fit_slope: nonpositive value");
        const double x = std::log(eps), y = std::log(value);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    const double denom = n * sxx - sx * sx;
    if (std::fabs(denom) < 1e-300)
        return fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    const double ss_tot = syy - sy * sy / n;
    double ss_res = 0.0;
    for (const auto& [eps, value] : rows) {
        const double y = std::log(value);
        const double yhat = fit.intercept + fit.slope * std::log(eps);
        ss_res += (y - yhat) * (y - yhat);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.defined = true;
    return fit;
}

SlopeFit fit_report_slope(ScalingReport& report) {
    std::vector<std::pair<double, double>> rows;
    for (const auto& r : report.rows)
        rows.emplace_back(r.eps, r.metric);
    report.fit = rows.size() >= 2 ? fit_slope(rows) : SlopeFit{};
    return report.fit;
}

} // namespace tanhwave
