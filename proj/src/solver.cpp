#include "tanhwave/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace tanhwave {

SolverConfig make_solver_config(const GridPtr& grid, double dt, double t_end,
                                int observer_stride) {
    if (!(dt > 0.0))
        throw std::invalid_argument("make_solver_config: dt must be positive");
    if (observer_stride < 1)
        throw std::invalid_argument("make_solver_config: observer_stride must be >= 1");
    SolverConfig c;
    c.dt = dt;
    c.t_end = t_end;
    c.observer_stride = observer_stride;
    c.linear_symbol = k0_multiplier(grid);
    return c;
}

Field rhs_nonlinear(const Field& u) {
    Field ux = derivative(u, 1);
    Field out = dealiased_product(u, ux);
    for (auto& z : out.v)
        z = -z;
    return out;
}

namespace {
// Spectral nonlinearity: -(u u_x)^ with the 2/3 truncation, computed from uhat.
Spectrum rhs_nonlinear_hat(const Spectrum& uhat) {
    Spectrum ux = derivative(uhat, 1);
    Spectrum prod = dealiased_product_spectrum(uhat, ux);
    for (auto& z : prod.c)
        z = -z;
    return prod;
}
} // namespace

IfRk4::IfRk4(const GridPtr& grid, const Multiplier& linear_symbol, double dt, bool nonlinear)
    : grid_(grid), dt_(dt), nonlinear_(nonlinear) {
    require_same_grid(grid, linear_symbol.grid, "IfRk4");
    const int n = grid->num_points();
    e_half_.resize(n);
    e_full_.resize(n);
    for (int i = 0; i < n; ++i) {
        e_half_[i] = std::exp(linear_symbol.symbol[i] * (0.5 * dt));
        e_full_[i] = std::exp(linear_symbol.symbol[i] * dt);
    }
}

// Classical integrating-factor RK4 (Kassam/Trefethen arrangement): with
// E = exp(L dt/2) and N the nonlinearity,
//   N1 = N(u),  N2 = N(E(u + dt/2 N1)),  N3 = N(E u + dt/2 N2),
//   N4 = N(E^2 u + dt E N3),
//   u <- E^2 u + dt/6 (E^2 N1 + 2 E N2 + 2 E N3 + N4).
// A pure linear flow is advanced exactly.
void IfRk4::step(Spectrum& uhat) const {
    const int n = uhat.size();
    if (!nonlinear_) {
        for (int i = 0; i < n; ++i)
            uhat.c[i] *= e_full_[i];
        return;
    }
    Spectrum n1 = rhs_nonlinear_hat(uhat);

    Spectrum stage = uhat;
    add_scaled(stage, n1, 0.5 * dt_);
    for (int i = 0; i < n; ++i)
        stage.c[i] *= e_half_[i];
    Spectrum n2 = rhs_nonlinear_hat(stage);

    for (int i = 0; i < n; ++i)
        stage.c[i] = uhat.c[i] * e_half_[i] + 0.5 * dt_ * n2.c[i];
    Spectrum n3 = rhs_nonlinear_hat(stage);

    for (int i = 0; i < n; ++i)
        stage.c[i] = uhat.c[i] * e_full_[i] + dt_ * e_half_[i] * n3.c[i];
    Spectrum n4 = rhs_nonlinear_hat(stage);

    for (int i = 0; i < n; ++i) {
        uhat.c[i] = uhat.c[i] * e_full_[i] +
                    (dt_ / 6.0) * (e_full_[i] * n1.c[i] + 2.0 * e_half_[i] * n2.c[i] +
                                   2.0 * e_half_[i] * n3.c[i] + n4.c[i]);
    }
}

void step(SimulationState& state, const SolverConfig& config) {
    IfRk4 engine(state.u.grid, config.linear_symbol, config.dt, config.nonlinear);
    Spectrum uhat = forward_transform(state.u);
    engine.step(uhat);
    state.u = inverse_transform(uhat);
    state.u.real_valued = true;
    state.t += config.dt;
    state.step_count += 1;
}

RunLog run(const Field& initial, const SolverConfig& config, const Observer& observer) {
    RunLog log;
    log.dt = config.dt;
    const long nsteps = (config.t_end <= 0.0)
                            ? 0
                            : static_cast<long>(std::llround(config.t_end / config.dt));

    IfRk4 engine(initial.grid, config.linear_symbol, config.dt, config.nonlinear);
    SimulationState state{0.0, initial, 0};
    Spectrum uhat = forward_transform(initial);

    auto sample = [&](long step_idx) {
        state.t = step_idx * config.dt;
        state.step_count = step_idx;
        state.u = inverse_transform(uhat);
        state.u.real_valued = true;
        if (observer) {
            log.times.push_back(state.t);
            log.observations.push_back(observer(state));
        }
    };

    sample(0);
    for (long s = 1; s <= nsteps; ++s) {
        engine.step(uhat);
        // Blow-up guard; the sum propagates inf/nan where max would mask them.
        double amp = 0.0;
        for (const auto& z : uhat.c)
            amp += std::norm(z);
        if (!std::isfinite(amp)) {
            log.nan_detected = true;
            log.warnings.push_back("non-finite state at t = " + std::to_string(s * config.dt));
            break;
        }
        if (s % config.observer_stride == 0 || s == nsteps)
            sample(s);
    }
    log.steps = state.step_count;
    return log;
}

} // namespace tanhwave
