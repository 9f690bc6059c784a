#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "epf/core/table.hpp"

namespace epf {

enum class ForecasterKind { seasonal_naive, ridge_lag_ar, exp_smoothing, external_file };

ForecasterKind forecaster_kind_from_string(const std::string& s);
std::string to_string(ForecasterKind k);

/// Stage-1 forecaster configuration. `params` keys by kind:
///   ridge_lag_ar:  "lambda" (default 1.0), "extra_lag_periods" ("2,7":
///                  multiples of the horizon added beyond lags 1..H)
///   exp_smoothing: "alpha" (default 0.3), smoothing runs per intra-day step
///   external_file: "path" of the forecast CSV
struct ForecasterSpec {
    ForecasterKind kind = ForecasterKind::seasonal_naive;
    int context_length = 1440;
    std::map<std::string, std::string> params;

    double param(const std::string& key, double fallback) const;
    std::string param_str(const std::string& key, const std::string& fallback) const;

    /// Stable identity used in cache keys; covers kind + context + params.
    std::string id() const;
};

/// Per-variable H-step forecasts for one issue day. Entries are keyed by
/// variable name; every entry has exactly H finite values.
struct ForecastSet {
    Date issue_day;      // forecasts are made at the end of this day
    Date horizon_day;    // = issue_day + 1
    int horizon = 0;     // H
    std::map<std::string, std::vector<double>> entries;
    std::string forecaster_id;
    std::map<std::string, std::string> cache_keys;  // variable -> content hash
};

/// H-step forecast from plain history. History is the most recent
/// context_length values ending at the issue boundary; missing values are
/// forward-filled inside the window.
std::vector<double> forecast_variable(const std::vector<double>& history,
                                      const std::vector<uint8_t>& history_missing,
                                      const ForecasterSpec& spec, int horizon);

/// Global count of stand-in forecaster evaluations, exposed so cache tests
/// can assert that warm runs recompute nothing.
std::atomic<uint64_t>& forecaster_evaluation_counter();

/// Stage 1 for one issue day: forecasts every variable in `variables` for
/// day D+1 using only rows with timestamp <= end of day D. Requesting a
/// future_available column is an availability violation.
ForecastSet forecast_day(const TimeSeriesTable& table, const std::vector<std::string>& variables,
                         Date issue_day, const std::map<std::string, ForecasterSpec>& specs);

/// Content hash for one (forecaster, variable, issue day, context) tuple.
std::string forecast_cache_key(const std::string& forecaster_id, const std::string& variable,
                               Date issue_day, const std::vector<double>& context,
                               const std::vector<uint8_t>& context_missing);

}  // namespace epf
