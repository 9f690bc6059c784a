#include "epf/eval/metrics.hpp"

#include <cmath>

#include "epf/error.hpp"

namespace epf {

MetricPair compute_metrics(const std::vector<double>& y, const std::vector<double>& yhat) {
    if (y.size() != yhat.size())
        throw Error("length-mismatch", "y and yhat must have equal length");
    MetricPair m;
    double se = 0.0, ae = 0.0;
    for (size_t i = 0; i < y.size(); ++i) {
        if (std::isnan(y[i]) || std::isnan(yhat[i])) continue;
        const double d = y[i] - yhat[i];
        se += d * d;
        ae += std::abs(d);
        ++m.n;
    }
    if (m.n == 0) throw Error("empty-input", "no scorable points");
    m.mse = se / static_cast<double>(m.n);
    m.mae = ae / static_cast<double>(m.n);
    return m;
}

ImprovementDelta improvement(const MetricPair& baseline, const MetricPair& candidate) {
    if (baseline.mse <= 0.0 || baseline.mae <= 0.0)
        throw Error("zero-baseline", "improvement is undefined for a zero baseline metric");
    ImprovementDelta d;
    d.baseline = baseline;
    d.candidate = candidate;
    d.delta_mse_pct = 100.0 * (baseline.mse - candidate.mse) / baseline.mse;
    d.delta_mae_pct = 100.0 * (baseline.mae - candidate.mae) / baseline.mae;
    return d;
}

MetricPair average_metrics(const std::vector<MetricPair>& windows) {
    if (windows.empty()) throw Error("empty-input", "no windows to average");
    MetricPair avg;
    for (const auto& w : windows) {
        avg.mse += w.mse;
        avg.mae += w.mae;
        avg.n += w.n;
    }
    avg.mse /= static_cast<double>(windows.size());
    avg.mae /= static_cast<double>(windows.size());
    return avg;
}

}  // namespace epf
