#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "epf/core/table.hpp"

namespace epf {

/// Synthetic market scenario. Drivers are strongly seasonal and
/// auto-correlated (so stage-1 forecasts carry real information); the price
/// links to them through a fixed nonlinear map plus heavy-tailed noise and a
/// jump overlay. Identical specs generate bit-identical panels: every
/// stochastic component draws from its own xoshiro256++ stream seeded by
/// splitmix64(seed ^ stream id), so switching one component off never
/// shifts the others.
struct ScenarioSpec {
    uint64_t seed = 42;
    int days = 365;
    int resolution_minutes = 15;
    std::string start_date = "2024-07-01";

    // System load: base MW * daily shape * (1 + daily level + step noise).
    double base_load = 30000.0;
    double load_shape_amp1 = 0.16;
    double load_shape_amp2 = 0.07;
    double load_level_rho = 0.85;
    double load_level_sigma = 0.05;
    double load_step_rho = 0.97;
    double load_step_sigma = 0.010;
    double weekend_factor = 0.92;

    // Renewables.
    double wind_capacity = 12000.0;
    double wind_rho = 0.995;
    double wind_sigma = 0.10;
    double solar_capacity = 9000.0;
    double solar_weather_rho = 0.80;
    double solar_weather_sigma = 0.50;

    // Thermal fleet.
    double thermal_capacity = 27000.0;
    double capacity_walk_sigma = 0.01;
    double committed_noise_sigma = 0.02;

    // Grid plans published for D+1 (future-available): true series times
    // (1 + AR error) with these innovation scales.
    double plan_error_rho = 0.9;
    double plan_error_sigma_load = 0.035;
    double plan_error_sigma_wind = 0.16;
    double plan_error_sigma_solar = 0.12;

    // Price link p = base + a*load_norm - b*renewable_ratio
    //              + spike_amp*softplus(spike_k*(spike_h0 - headroom))*jump
    //              + level + t-noise.
    double price_base = 400.0;
    double price_load_coeff = 350.0;
    double price_renewable_coeff = 320.0;
    double spike_amp = 260.0;
    double spike_k = 14.0;
    double spike_h0 = 0.18;
    double price_level_rho = 0.90;
    double price_level_sigma = 28.0;
    double noise_scale = 18.0;
    double noise_nu = 4.0;           // Student-t degrees of freedom
    double jump_per_day = 3.0;       // Poisson arrival intensity
    int jump_len = 8;                // steps per jump event
    double rt_extra_noise = 10.0;    // real-time price adds its own noise
    double rt_spike_factor = 1.3;

    void validate() const;
};

/// Per-step additive terms of the price link, for sanity-checking SHAP
/// directions on synthetic data. base + load + renewable + spike + noise
/// reproduces the day-ahead price exactly.
struct PriceDecomposition {
    std::vector<double> base;
    std::vector<double> load_term;
    std::vector<double> renewable_term;
    std::vector<double> spike_term;
    std::vector<double> noise;  // price level + heavy-tailed innovations
};

TimeSeriesTable generate(const ScenarioSpec& spec);

/// Recomputes the decomposition from the spec and checks it against the
/// table; a table not produced by generate(spec) raises "spec-table-mismatch".
PriceDecomposition oracle_decomposition(const ScenarioSpec& spec, const TimeSeriesTable& table);

/// Scenario file: flat JSON object with any subset of the spec fields.
ScenarioSpec load_scenario(const std::string& path);

}  // namespace epf
