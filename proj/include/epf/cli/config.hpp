#pragma once

#include <map>
#include <string>
#include <vector>

#include "epf/core/time.hpp"
#include "epf/eval/protocol.hpp"

namespace epf {

/// Run configuration for the command-line pipeline. One JSON file drives
/// every command; flags only override paths and the seed. Unknown keys are
/// rejected so typos fail loudly.
struct RunConfig {
    std::string mode = "shanxi_like";  // shanxi_like | reale_like
    std::string target = "day_ahead";  // day_ahead | real_time
    uint64_t seed = 42;
    int jobs = 1;

    std::string data_csv;
    std::string data_sidecar;
    std::string cache_dir;
    std::string output_dir = ".";
    std::string scenario_file;
    std::string registry_file;
    std::string holiday_file;
    std::string external_forecast_file;
    int ingest_resolution_minutes = 15;

    std::vector<YearMonth> test_months;
    int train_months = 12;
    int val_months = 2;
    bool workday_filter = false;

    std::vector<std::string> forecast_variables;
    std::map<std::string, ForecasterSpec> forecaster_specs;
    std::vector<FactorSpec> factors;
    std::vector<std::string> future_covariates;

    bool use_gbdt = true;
    GbdtParams gbdt;
    double ridge_lambda = 1.0;

    double difficulty_theta = 1000.0;
    double difficulty_jump_theta = 200.0;

    std::string stage_window;  // test month driven by single-stage commands

    std::string target_column() const {
        return target == "real_time" ? "real_time_price" : "day_ahead_price";
    }
    ProtocolConfig protocol_config() const;
};

RunConfig load_run_config(const std::string& path);

}  // namespace epf
