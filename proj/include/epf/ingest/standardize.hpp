#pragma once

#include <string>
#include <vector>

#include "epf/core/table.hpp"

namespace epf {

/// Per-column mean/std fitted on training rows only; population stddev
/// (divide by N). Zero-variance columns pass through unscaled and are
/// flagged rather than rejected.
class Standardizer {
public:
    struct Stats {
        std::string column;
        double mean = 0.0;
        double stddev = 1.0;
        bool zero_variance = false;
    };

    /// Means/stddevs over non-missing rows with train_first <= date <= train_last.
    static Standardizer fit(const TimeSeriesTable& table, Date train_first, Date train_last,
                            const std::vector<std::string>& columns);

    /// (x - mean) / stddev on every fitted column; other columns untouched.
    TimeSeriesTable apply(const TimeSeriesTable& table) const;

    std::vector<double> transform(const std::string& column,
                                  const std::vector<double>& values) const;
    std::vector<double> invert(const std::string& column,
                               const std::vector<double>& values) const;
    double invert_one(const std::string& column, double value) const;

    const Stats& stats(const std::string& column) const;
    const std::vector<Stats>& all_stats() const { return stats_; }
    const std::string& fitted_on() const { return fitted_on_; }

private:
    std::vector<Stats> stats_;
    std::string fitted_on_;
};

}  // namespace epf
