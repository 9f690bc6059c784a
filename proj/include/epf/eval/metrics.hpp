#pragma once

#include <vector>

namespace epf {

struct MetricPair {
    double mse = 0.0;
    double mae = 0.0;
    size_t n = 0;
};

/// MSE/MAE over pairs where both sides are finite (masked points are
/// excluded pairwise). Throws "empty-input" when nothing is scorable.
MetricPair compute_metrics(const std::vector<double>& y, const std::vector<double>& yhat);

struct ImprovementDelta {
    MetricPair baseline;
    MetricPair candidate;
    double delta_mse_pct = 0.0;  // 100 * (baseline - candidate) / baseline
    double delta_mae_pct = 0.0;  // positive = improvement
};

ImprovementDelta improvement(const MetricPair& baseline, const MetricPair& candidate);

/// Unweighted mean of per-window metrics (the AVG row convention).
MetricPair average_metrics(const std::vector<MetricPair>& windows);

}  // namespace epf
