#pragma once

#include <map>
#include <string>
#include <vector>

#include "epf/core/windows.hpp"
#include "epf/eval/difficulty.hpp"
#include "epf/eval/metrics.hpp"
#include "epf/factors/features.hpp"
#include "epf/forecast/cache.hpp"
#include "epf/gbdt/gbdt.hpp"
#include "epf/linreg/ridge.hpp"

namespace epf {

/// Method names reported by the protocol.
inline constexpr const char* kMethodForecasterOnly = "forecaster_only";
inline constexpr const char* kMethodCovariateOnly = "covariate_only";
inline constexpr const char* kMethodFutureBoosting = "futureboosting";

struct ProtocolConfig {
    std::vector<std::string> forecast_variables;             // stage-1 variate list
    std::map<std::string, ForecasterSpec> forecaster_specs;  // per variable or "default"
    std::vector<FactorSpec> factors;
    std::vector<std::string> future_covariates;  // empty = every future-available column
    std::string target_column = "day_ahead_price";
    bool reale_like_standardize = false;  // per-window train-only standardization

    bool use_gbdt = true;
    GbdtParams gbdt;
    double ridge_lambda = 1.0;

    double difficulty_theta = 1000.0;
    double difficulty_jump_theta = 200.0;
    int jobs = 1;
};

/// Either stage-2 regressor behind one interface, for training, prediction
/// and model files.
struct TrainedRegressor {
    bool is_gbdt = true;
    TreeEnsemble gbdt;
    RidgeModel ridge;

    std::vector<double> predict(const FeatureMatrix& m) const;
    void save(const std::string& path) const;
    static TrainedRegressor load(const std::string& path);
};

TrainedRegressor train_regressor(const ProtocolConfig& cfg, const FeatureMatrix& train,
                                 const FeatureMatrix& val);

/// Per-window inputs shared by the protocol and the stage-wise CLI commands.
struct WindowArtifacts {
    RollingSplit split;
    FeatureMatrix train, val, test;                   // enriched matrices
    FeatureMatrix cov_train, cov_val, cov_test;       // covariate-only matrices
    std::map<Date, ForecastSet> forecasts;            // per horizon day, stage-1 variables
    std::vector<double> forecaster_only_test;         // stage-1 target forecast, test rows
    std::vector<double> test_target;                  // realized target, test rows
    std::vector<Timestamp> test_stamps;
};

WindowArtifacts build_window_artifacts(const TimeSeriesTable& table, const RollingSplit& split,
                                       const ProtocolConfig& cfg, const ForecastCache* cache);

struct WindowRecord {
    YearMonth test_month;
    std::map<std::string, MetricPair> per_method;
    size_t train_rows = 0, val_rows = 0, test_rows = 0;
};

struct EvaluationReport {
    std::string target_column;
    std::vector<std::string> methods;
    std::vector<WindowRecord> windows;
    std::map<std::string, MetricPair> averages;  // unweighted across windows
    DifficultyReport difficulty;                 // realized prices over all test windows
    bool has_difficulty = false;
};

/// Runs every split (optionally in parallel), scoring forecaster-only,
/// covariate-only regression and the two-stage method per window. All
/// models for a window see only that window's train/val ranges.
EvaluationReport run_protocol(const TimeSeriesTable& table,
                              const std::vector<RollingSplit>& splits,
                              const ProtocolConfig& cfg, const ForecastCache* cache);

/// report.csv (method rows with Val and improvement columns), report.json
/// (full nested per-window data) and difficulty.csv.
void render_report(const EvaluationReport& report, const std::string& csv_path,
                   const std::string& json_path, const std::string& difficulty_csv_path);

}  // namespace epf
