#pragma once

#include <cstddef>
#include <vector>

#include "epf/core/time.hpp"

namespace epf {

/// Price series for the difficulty suite: masked points are NaN, months and
/// step contiguity derive from the timestamps.
struct PriceSeries {
    std::vector<Timestamp> stamps;  // strictly increasing
    std::vector<double> values;     // NaN = masked
    int resolution_minutes = 15;
};

struct DifficultyReport {
    double tail_ratio = 0.0;       // p99 / p50
    double extreme_freq = 0.0;     // P(p > theta)
    double excess_kurtosis = 0.0;  // m4 / m2^2 - 3
    double jump_size_p99 = 0.0;    // p99(|dp|) over contiguous pairs
    double jump_freq = 0.0;        // P(|dp| > jump_theta)
    double ks_max = 0.0;           // max KS over consecutive-month pairs
    double p95_range = 0.0;        // max - min of monthly p95
    double theta = 1000.0;
    double jump_theta = 200.0;
    size_t n = 0;
};

/// Quantile by linear interpolation between order statistics at position
/// (n-1)*q (the common "type 7" rule). Input need not be sorted.
double quantile_type7(std::vector<double> values, double q);

/// Biased moment estimator m4/m2^2 - 3.
double excess_kurtosis(const std::vector<double>& values);

/// Two-sample Kolmogorov-Smirnov statistic, ties handled exactly.
double ks_statistic(std::vector<double> a, std::vector<double> b);

/// Full indicator suite. First differences are taken only within contiguous
/// runs (consecutive timestamps exactly one resolution step apart, both
/// unmasked). Needs >= 2 points and >= 2 months.
DifficultyReport difficulty_indicators(const PriceSeries& series, double theta,
                                       double jump_theta);

}  // namespace epf
