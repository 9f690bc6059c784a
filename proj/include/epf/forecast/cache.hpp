#pragma once

#include <atomic>
#include <optional>
#include <string>
#include <vector>

#include "epf/forecast/forecast.hpp"

namespace epf {

/// Disk cache of per-variable forecasts, one file per cache key
/// (`<key>.fc.csv`). Writes are atomic (temp file + rename); corrupt
/// entries are logged and treated as misses.
class ForecastCache {
public:
    explicit ForecastCache(std::string directory);

    /// Intact cached forecast for the key, or nullopt on miss/corruption.
    std::optional<std::vector<double>> get(const std::string& cache_key, int horizon) const;

    void put(const std::string& cache_key, const std::string& forecaster_id,
             const std::string& variable, Date issue_day,
             const std::vector<double>& values) const;

    const std::string& directory() const { return dir_; }

    mutable std::atomic<uint64_t> hits{0};
    mutable std::atomic<uint64_t> misses{0};

private:
    std::string path_of(const std::string& cache_key) const;
    std::string dir_;
};

/// forecast_day with a per-variable cache consult: cached variables skip
/// forecaster evaluation entirely, so a warm run reports zero evaluations.
ForecastSet forecast_day_cached(const TimeSeriesTable& table,
                                const std::vector<std::string>& variables, Date issue_day,
                                const std::map<std::string, ForecasterSpec>& specs,
                                const ForecastCache* cache);

}  // namespace epf
