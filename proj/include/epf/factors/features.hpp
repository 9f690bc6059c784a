#pragma once

#include <map>
#include <string>
#include <vector>

#include "epf/core/table.hpp"
#include "epf/forecast/forecast.hpp"

namespace epf {

/// Where an assembled feature column came from. Nothing with historical
/// availability may enter a feature matrix; that is the leakage guard.
enum class Provenance { forecasted_feature, constructed_factor, future_available, calendar };

std::string to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);

struct FeatureColumn {
    std::string name;
    Provenance provenance;
};

/// Enriched design matrix over (day, step) rows. Missing cells are NaN;
/// rows with NaN target are excluded from training and metrics downstream.
struct FeatureMatrix {
    std::vector<Timestamp> timestamps;
    std::vector<FeatureColumn> columns;
    std::vector<std::vector<double>> values;  // column-major: values[col][row]
    std::vector<double> target;

    size_t rows() const { return timestamps.size(); }
    size_t feature_count() const { return columns.size(); }
    int column_index(const std::string& name) const;
    std::vector<double> row(size_t r) const;
};

/// Constructed-factor configuration with explicit column bindings. Bindings
/// resolve against stage-1 forecasts first, then future-available columns;
/// anything else is an availability violation.
struct FactorSpec {
    enum class Formula { thermal_auction_space, renewable_ratio };

    std::string name;
    Formula formula = Formula::thermal_auction_space;
    std::string variant;  // vs_load | vs_power | short_term (informational)
    // thermal_auction_space bindings
    std::string capacity, committed;
    // renewable_ratio bindings
    std::string wind, solar;
    // shared denominator binding (system load or total generation)
    std::string denominator;
};

/// Forms the enriched matrix [forecasted features, factors, future-available
/// covariates, calendar] for the given windows, with the realized target
/// aligned per (day, step). Output rows are sorted by timestamp regardless
/// of window order.
FeatureMatrix assemble_features(const TimeSeriesTable& table,
                                const std::vector<DayWindow>& windows,
                                const std::map<Date, ForecastSet>& forecasts_by_day,
                                const std::vector<FactorSpec>& factors,
                                const std::vector<std::string>& future_covariates,
                                const std::string& target_column);

/// CSV (`timestamp`, features..., `target`; empty field = missing) plus a
/// JSON sidecar mapping column name to provenance.
void save_feature_matrix(const FeatureMatrix& m, const std::string& csv_path,
                         const std::string& sidecar_path);
FeatureMatrix load_feature_matrix(const std::string& csv_path, const std::string& sidecar_path);

}  // namespace epf
