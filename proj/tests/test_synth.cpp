#include <doctest.h>

#include <cmath>

#include "epf/error.hpp"
#include "epf/eval/difficulty.hpp"
#include "epf/synth/generator.hpp"

using namespace epf;

namespace {

PriceSeries price_series(const TimeSeriesTable& table, const char* column) {
    PriceSeries s;
    s.resolution_minutes = table.resolution_minutes();
    s.stamps = table.index();
    s.values = table.column(column).values;
    return s;
}

}  // namespace

TEST_CASE("synth: one day at 15 minutes gives 96 rows with full schema") {
    ScenarioSpec spec;
    spec.days = 1;
    auto table = generate(spec);
    CHECK(table.rows() == 96);
    CHECK(table.column("day_ahead_price").availability == AvailabilityClass::target);
    CHECK(table.column("real_time_price").availability == AvailabilityClass::target);
    CHECK(table.column("system_load").availability == AvailabilityClass::historical_exogenous);
    CHECK(table.column("wind_generation").availability ==
          AvailabilityClass::historical_exogenous);
    CHECK(table.column("system_load_forecast").availability ==
          AvailabilityClass::future_available_exogenous);
    CHECK(table.column("thermal_capacity_plan").availability ==
          AvailabilityClass::future_available_exogenous);
}

TEST_CASE("synth: identical spec regenerates a bit-identical panel") {
    ScenarioSpec spec;
    spec.days = 20;
    auto t1 = generate(spec);
    auto t2 = generate(spec);
    REQUIRE(t1.rows() == t2.rows());
    for (size_t c = 0; c < t1.columns().size(); ++c)
        for (size_t r = 0; r < t1.rows(); ++r)
            CHECK(t1.columns()[c].values[r] == t2.columns()[c].values[r]);
    ScenarioSpec other = spec;
    other.seed = 43;
    auto t3 = generate(other);
    bool any_diff = false;
    for (size_t r = 0; r < t3.rows() && !any_diff; ++r)
        any_diff = t3.column("day_ahead_price").values[r] !=
                   t1.column("day_ahead_price").values[r];
    CHECK(any_diff);
}

TEST_CASE("synth: near-Gaussian limit when spikes are off and tails are thin") {
    ScenarioSpec spec;
    spec.days = 365;
    spec.jump_per_day = 0.0;
    spec.noise_nu = 200.0;
    auto table = generate(spec);
    auto rep = difficulty_indicators(price_series(table, "day_ahead_price"), 1000, 200);
    CHECK(std::abs(rep.excess_kurtosis) <= 0.3);
}

TEST_CASE("synth: default scenario is measurably heavy-tailed and jumpy") {
    ScenarioSpec spec;  // defaults: 365 days, seed 42
    auto table = generate(spec);
    auto rep = difficulty_indicators(price_series(table, "day_ahead_price"), 1000, 200);
    // hard floors for the verification experiment
    CHECK(rep.excess_kurtosis > 2.0);
    CHECK(rep.jump_freq > 0.01);
    // pinned one-time measurements, +-20% relative
    CHECK(rep.excess_kurtosis == doctest::Approx(5.0489).epsilon(0.20));
    CHECK(rep.jump_freq == doctest::Approx(0.01984).epsilon(0.20));
}

TEST_CASE("synth: decomposition terms sum to the price exactly") {
    ScenarioSpec spec;
    spec.days = 30;
    auto table = generate(spec);
    auto dec = oracle_decomposition(spec, table);
    const auto& price = table.column("day_ahead_price").values;
    for (size_t t = 0; t < price.size(); ++t) {
        double sum = dec.base[t] + dec.load_term[t] + dec.renewable_term[t] +
                     dec.spike_term[t] + dec.noise[t];
        CHECK(sum == price[t]);
    }
}

TEST_CASE("synth: zero renewable capacity zeroes the renewable term") {
    ScenarioSpec spec;
    spec.days = 5;
    spec.wind_capacity = 0.0;
    spec.solar_capacity = 0.0;
    auto table = generate(spec);
    auto dec = oracle_decomposition(spec, table);
    for (double v : dec.renewable_term) CHECK(v == 0.0);
}

TEST_CASE("synth: doubling the renewable coefficient doubles the renewable term") {
    ScenarioSpec spec;
    spec.days = 5;
    auto dec1 = oracle_decomposition(spec, generate(spec));
    ScenarioSpec spec2 = spec;
    spec2.price_renewable_coeff *= 2.0;
    auto dec2 = oracle_decomposition(spec2, generate(spec2));
    for (size_t t = 0; t < dec1.renewable_term.size(); ++t)
        CHECK(dec2.renewable_term[t] == doctest::Approx(2.0 * dec1.renewable_term[t])
                                            .epsilon(1e-12));
}

TEST_CASE("synth: zeroed noise reproduces the driver map exactly") {
    ScenarioSpec spec;
    spec.days = 10;
    spec.noise_scale = 0.0;
    spec.price_level_sigma = 0.0;
    spec.rt_extra_noise = 0.0;
    auto table = generate(spec);
    auto dec = oracle_decomposition(spec, table);
    const auto& price = table.column("day_ahead_price").values;
    for (size_t t = 0; t < price.size(); ++t) {
        CHECK(dec.noise[t] == 0.0);
        double g = dec.base[t] + dec.load_term[t] + dec.renewable_term[t] + dec.spike_term[t];
        CHECK(price[t] == g);
    }
}

TEST_CASE("synth: drivers are unchanged when only the noise settings differ") {
    ScenarioSpec spec;
    spec.days = 8;
    auto t1 = generate(spec);
    ScenarioSpec quiet = spec;
    quiet.noise_scale = 0.0;
    quiet.price_level_sigma = 0.0;
    quiet.jump_per_day = 0.0;
    auto t2 = generate(quiet);
    for (const char* col : {"system_load", "wind_generation", "solar_generation",
                            "system_load_forecast", "thermal_capacity_plan"})
        for (size_t r = 0; r < t1.rows(); ++r)
            CHECK(t1.column(col).values[r] == t2.column(col).values[r]);
}

TEST_CASE("synth: table from another spec is rejected by the oracle") {
    ScenarioSpec a;
    a.days = 3;
    ScenarioSpec b = a;
    b.seed = 7;
    auto table_b = generate(b);
    CHECK_THROWS_WITH_AS(oracle_decomposition(a, table_b),
                         doctest::Contains("spec-table-mismatch"), Error);
}

TEST_CASE("synth: invalid specs are rejected") {
    ScenarioSpec s;
    s.days = 0;
    CHECK_THROWS_WITH_AS(generate(s), doctest::Contains("invalid-spec"), Error);
    ScenarioSpec s2;
    s2.noise_nu = 2.0;
    CHECK_THROWS_WITH_AS(generate(s2), doctest::Contains("invalid-spec"), Error);
}
