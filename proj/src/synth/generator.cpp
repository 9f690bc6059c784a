#include "epf/synth/generator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "epf/error.hpp"
#include "epf/rng.hpp"

namespace epf {

namespace {

constexpr double kPi = 3.14159265358979323846;

double softplus(double x) { return x > 30.0 ? x : std::log1p(std::exp(x)); }

double clamp(double v, double lo, double hi) { return std::min(hi, std::max(lo, v)); }

Rng stream(uint64_t seed, uint64_t id) {
    uint64_t s = seed ^ (0xabcd0000 + id);
    return Rng(splitmix64(s));
}

struct SimData {
    std::vector<Timestamp> index;
    std::vector<double> load, wind, solar, capacity, committed;
    std::vector<double> plan_load, plan_wind, plan_solar;
    std::vector<double> da_price, rt_price;
    PriceDecomposition decomp;
};

SimData simulate(const ScenarioSpec& spec) {
    spec.validate();
    const int H = 1440 / spec.resolution_minutes;
    const int n = spec.days * H;
    const Date start = Date::parse(spec.start_date);

    SimData sim;
    sim.index.reserve(n);
    for (int t = 0; t < n; ++t)
        sim.index.push_back(Timestamp(start.plus_days(t / H), (t % H) * spec.resolution_minutes));

    auto hour_of = [&](int t) {
        return (t % H + 0.5) * spec.resolution_minutes / 60.0;
    };

    // --- system load: daily shape x slow level x step noise -------------
    Rng load_rng = stream(spec.seed, 1);
    sim.load.resize(n);
    double level = 0.0, step_noise = 0.0;
    for (int d = 0; d < spec.days; ++d) {
        level = spec.load_level_rho * level + spec.load_level_sigma * load_rng.normal();
        const Date day = start.plus_days(d);
        const double wk = day.weekday() >= 5 ? spec.weekend_factor : 1.0;
        for (int h = 0; h < H; ++h) {
            const int t = d * H + h;
            step_noise =
                spec.load_step_rho * step_noise + spec.load_step_sigma * load_rng.normal();
            const double hour = hour_of(t);
            const double shape = 1.0 +
                                 spec.load_shape_amp1 * std::cos(2.0 * kPi * (hour - 18.5) / 24.0) +
                                 spec.load_shape_amp2 * std::cos(4.0 * kPi * (hour - 10.5) / 24.0);
            sim.load[t] =
                std::max(0.2 * spec.base_load, spec.base_load * shape * wk * (1.0 + level + step_noise));
        }
    }

    // --- wind: capacity x logistic of a slow AR walk ---------------------
    Rng wind_rng = stream(spec.seed, 2);
    sim.wind.resize(n);
    double wind_state = 0.0;
    for (int t = 0; t < n; ++t) {
        wind_state = spec.wind_rho * wind_state + spec.wind_sigma * wind_rng.normal();
        sim.wind[t] = spec.wind_capacity / (1.0 + std::exp(-wind_state));
    }

    // --- solar: clear-sky bell x daily weather factor ---------------------
    Rng solar_rng = stream(spec.seed, 3);
    sim.solar.resize(n);
    double weather_state = 0.0;
    const double sunrise = 6.0, sunset = 19.0;
    for (int d = 0; d < spec.days; ++d) {
        weather_state =
            spec.solar_weather_rho * weather_state + spec.solar_weather_sigma * solar_rng.normal();
        const double weather = 0.25 + 0.75 / (1.0 + std::exp(-weather_state));
        for (int h = 0; h < H; ++h) {
            const int t = d * H + h;
            const double hour = hour_of(t);
            double bell = 0.0;
            if (hour > sunrise && hour < sunset)
                bell = std::sin(kPi * (hour - sunrise) / (sunset - sunrise));
            sim.solar[t] = spec.solar_capacity * bell * weather;
        }
    }

    // --- thermal fleet: slow capacity walk, committed tracks residual load
    Rng thermal_rng = stream(spec.seed, 4);
    sim.capacity.resize(n);
    sim.committed.resize(n);
    double cap_factor = 1.0;
    for (int d = 0; d < spec.days; ++d) {
        cap_factor = clamp(cap_factor * (1.0 + spec.capacity_walk_sigma * thermal_rng.normal()),
                           0.8, 1.2);
        for (int h = 0; h < H; ++h) {
            const int t = d * H + h;
            sim.capacity[t] = spec.thermal_capacity * cap_factor;
            const double residual = sim.load[t] - sim.wind[t] - sim.solar[t];
            const double noisy =
                residual * (1.0 + spec.committed_noise_sigma * thermal_rng.normal());
            sim.committed[t] = clamp(noisy, 0.25 * sim.load[t], 0.98 * sim.capacity[t]);
        }
    }

    // --- grid plans for D+1: true series x (1 + AR error) ----------------
    Rng plan_rng = stream(spec.seed, 5);
    sim.plan_load.resize(n);
    sim.plan_wind.resize(n);
    sim.plan_solar.resize(n);
    double el = 0.0, ew = 0.0, es = 0.0;
    for (int t = 0; t < n; ++t) {
        el = spec.plan_error_rho * el + spec.plan_error_sigma_load * plan_rng.normal();
        ew = spec.plan_error_rho * ew + spec.plan_error_sigma_wind * plan_rng.normal();
        es = spec.plan_error_rho * es + spec.plan_error_sigma_solar * plan_rng.normal();
        sim.plan_load[t] = sim.load[t] * (1.0 + el);
        sim.plan_wind[t] = std::max(0.0, sim.wind[t] * (1.0 + ew));
        sim.plan_solar[t] = std::max(0.0, sim.solar[t] * (1.0 + es));
    }

    // --- jump overlay ------------------------------------------------------
    Rng jump_rng = stream(spec.seed, 6);
    std::vector<uint8_t> jump(n, 0);
    if (spec.jump_per_day > 0.0) {
        for (int d = 0; d < spec.days; ++d) {
            const int events = jump_rng.poisson(spec.jump_per_day);
            for (int e = 0; e < events; ++e) {
                const int s = d * H + static_cast<int>(jump_rng.below(H));
                for (int t = s; t < std::min(n, s + spec.jump_len); ++t) jump[t] = 1;
            }
        }
    }

    // --- price link ---------------------------------------------------------
    Rng noise_rng = stream(spec.seed, 7);
    sim.da_price.resize(n);
    sim.rt_price.resize(n);
    auto& dec = sim.decomp;
    dec.base.assign(n, spec.price_base);
    dec.load_term.resize(n);
    dec.renewable_term.resize(n);
    dec.spike_term.resize(n);
    dec.noise.resize(n);
    double price_level = 0.0;
    for (int d = 0; d < spec.days; ++d) {
        price_level =
            spec.price_level_rho * price_level + spec.price_level_sigma * noise_rng.normal();
        for (int h = 0; h < H; ++h) {
            const int t = d * H + h;
            const double load_norm = sim.load[t] / spec.base_load - 1.0;
            const double ren_ratio = (sim.wind[t] + sim.solar[t]) / sim.load[t];
            const double headroom = (sim.capacity[t] - sim.committed[t]) / sim.load[t];
            const double spike_shape =
                softplus(spec.spike_k * (spec.spike_h0 - headroom));

            dec.load_term[t] = spec.price_load_coeff * load_norm;
            dec.renewable_term[t] = -spec.price_renewable_coeff * ren_ratio;
            dec.spike_term[t] = jump[t] ? spec.spike_amp * spike_shape : 0.0;

            const double eps = spec.noise_scale > 0.0
                                   ? spec.noise_scale * noise_rng.student_t(spec.noise_nu)
                                   : 0.0;
            const double rt_eps = spec.rt_extra_noise > 0.0
                                      ? spec.rt_extra_noise * noise_rng.normal()
                                      : 0.0;
            dec.noise[t] = price_level + eps;

            sim.da_price[t] = dec.base[t] + dec.load_term[t] + dec.renewable_term[t] +
                              dec.spike_term[t] + dec.noise[t];
            const double rt_spike =
                jump[t] ? spec.rt_spike_factor * spec.spike_amp * spike_shape : 0.0;
            sim.rt_price[t] = dec.base[t] + dec.load_term[t] + dec.renewable_term[t] + rt_spike +
                              dec.noise[t] + rt_eps;
        }
    }
    return sim;
}

Column make_column(std::string name, AvailabilityClass avail, std::string unit,
                   std::vector<double> values) {
    Column c;
    c.name = std::move(name);
    c.availability = avail;
    c.unit = std::move(unit);
    c.missing.assign(values.size(), 0);
    c.values = std::move(values);
    return c;
}

}  // namespace

void ScenarioSpec::validate() const {
    if (days < 1) throw Error("invalid-spec", "days must be >= 1");
    if (resolution_minutes <= 0 || 1440 % resolution_minutes != 0)
        throw Error("invalid-spec", "resolution must divide 1440");
    if (noise_nu <= 2.0) throw Error("invalid-spec", "noise_nu must exceed 2");
    if (jump_len < 1) throw Error("invalid-spec", "jump_len must be >= 1");
    if (base_load <= 0.0 || thermal_capacity <= 0.0)
        throw Error("invalid-spec", "capacities must be positive");
    Date::parse(start_date);
}

TimeSeriesTable generate(const ScenarioSpec& spec) {
    SimData sim = simulate(spec);
    std::vector<Column> cols;
    cols.push_back(make_column("day_ahead_price", AvailabilityClass::target, "CNY/MWh",
                               std::move(sim.da_price)));
    cols.push_back(make_column("real_time_price", AvailabilityClass::target, "CNY/MWh",
                               std::move(sim.rt_price)));
    cols.push_back(make_column("system_load", AvailabilityClass::historical_exogenous, "MW",
                               std::move(sim.load)));
    cols.push_back(make_column("wind_generation", AvailabilityClass::historical_exogenous, "MW",
                               std::move(sim.wind)));
    cols.push_back(make_column("solar_generation", AvailabilityClass::historical_exogenous, "MW",
                               std::move(sim.solar)));
    cols.push_back(make_column("system_load_forecast",
                               AvailabilityClass::future_available_exogenous, "MW",
                               std::move(sim.plan_load)));
    cols.push_back(make_column("forecast_wind_power",
                               AvailabilityClass::future_available_exogenous, "MW",
                               std::move(sim.plan_wind)));
    cols.push_back(make_column("forecast_pv_power",
                               AvailabilityClass::future_available_exogenous, "MW",
                               std::move(sim.plan_solar)));
    cols.push_back(make_column("thermal_capacity_plan",
                               AvailabilityClass::future_available_exogenous, "MW",
                               std::move(sim.capacity)));
    cols.push_back(make_column("committed_thermal_plan",
                               AvailabilityClass::future_available_exogenous, "MW",
                               std::move(sim.committed)));
    return TimeSeriesTable(spec.resolution_minutes, std::move(sim.index), std::move(cols));
}

PriceDecomposition oracle_decomposition(const ScenarioSpec& spec,
                                        const TimeSeriesTable& table) {
    SimData sim = simulate(spec);
    const Column& da = table.column("day_ahead_price");
    if (da.values.size() != sim.da_price.size())
        throw Error("spec-table-mismatch", "table size does not match the scenario");
    for (size_t t = 0; t < sim.da_price.size(); ++t)
        if (da.values[t] != sim.da_price[t])
            throw Error("spec-table-mismatch",
                        "table was not produced by this scenario (differs at row " +
                            std::to_string(t) + ")");
    return std::move(sim.decomp);
}

ScenarioSpec load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("io", "cannot open scenario '" + path + "'");
    nlohmann::json j = nlohmann::json::parse(in);
    ScenarioSpec s;
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("seed", s.seed);
    get("days", s.days);
    get("resolution_minutes", s.resolution_minutes);
    get("start_date", s.start_date);
    get("base_load", s.base_load);
    get("load_shape_amp1", s.load_shape_amp1);
    get("load_shape_amp2", s.load_shape_amp2);
    get("load_level_rho", s.load_level_rho);
    get("load_level_sigma", s.load_level_sigma);
    get("load_step_rho", s.load_step_rho);
    get("load_step_sigma", s.load_step_sigma);
    get("weekend_factor", s.weekend_factor);
    get("wind_capacity", s.wind_capacity);
    get("wind_rho", s.wind_rho);
    get("wind_sigma", s.wind_sigma);
    get("solar_capacity", s.solar_capacity);
    get("solar_weather_rho", s.solar_weather_rho);
    get("solar_weather_sigma", s.solar_weather_sigma);
    get("thermal_capacity", s.thermal_capacity);
    get("capacity_walk_sigma", s.capacity_walk_sigma);
    get("committed_noise_sigma", s.committed_noise_sigma);
    get("plan_error_rho", s.plan_error_rho);
    get("plan_error_sigma_load", s.plan_error_sigma_load);
    get("plan_error_sigma_wind", s.plan_error_sigma_wind);
    get("plan_error_sigma_solar", s.plan_error_sigma_solar);
    get("price_base", s.price_base);
    get("price_load_coeff", s.price_load_coeff);
    get("price_renewable_coeff", s.price_renewable_coeff);
    get("spike_amp", s.spike_amp);
    get("spike_k", s.spike_k);
    get("spike_h0", s.spike_h0);
    get("price_level_rho", s.price_level_rho);
    get("price_level_sigma", s.price_level_sigma);
    get("noise_scale", s.noise_scale);
    get("noise_nu", s.noise_nu);
    get("jump_per_day", s.jump_per_day);
    get("jump_len", s.jump_len);
    get("rt_extra_noise", s.rt_extra_noise);
    get("rt_spike_factor", s.rt_spike_factor);
    s.validate();
    return s;
}

}  // namespace epf
