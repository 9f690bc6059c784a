#include "epf/eval/difficulty.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "epf/error.hpp"

namespace epf {

double quantile_type7(std::vector<double> values, double q) {
    if (values.empty()) throw Error("empty-input", "quantile of empty sample");
    if (q < 0.0 || q > 1.0) throw Error("bad-params", "quantile level must be in [0,1]");
    std::sort(values.begin(), values.end());
    const double pos = (static_cast<double>(values.size()) - 1.0) * q;
    const size_t lo = static_cast<size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= values.size()) return values.back();
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

double excess_kurtosis(const std::vector<double>& values) {
    const size_t n = values.size();
    if (n < 2) throw Error("insufficient-data", "kurtosis needs at least two points");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    double m2 = 0.0, m4 = 0.0;
    for (double v : values) {
        const double d = v - mean;
        const double d2 = d * d;
        m2 += d2;
        m4 += d2 * d2;
    }
    m2 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);
    if (m2 <= 0.0) throw Error("insufficient-data", "kurtosis of a constant series");
    return m4 / (m2 * m2) - 3.0;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw Error("empty-input", "KS needs two nonempty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

DifficultyReport difficulty_indicators(const PriceSeries& series, double theta,
                                       double jump_theta) {
    if (series.stamps.size() != series.values.size())
        throw Error("length-mismatch", "stamps and values differ in length");

    std::vector<double> obs;
    obs.reserve(series.values.size());
    std::map<YearMonth, std::vector<double>> by_month;
    for (size_t i = 0; i < series.values.size(); ++i) {
        const double v = series.values[i];
        if (std::isnan(v)) continue;
        obs.push_back(v);
        Date d = series.stamps[i].date();
        by_month[YearMonth(d.year(), d.month())].push_back(v);
    }
    if (obs.size() < 2) throw Error("insufficient-data", "need at least two observed prices");
    if (by_month.size() < 2)
        throw Error("insufficient-data", "drift indicators need at least two months");

    DifficultyReport rep;
    rep.theta = theta;
    rep.jump_theta = jump_theta;
    rep.n = obs.size();

    const double p50 = quantile_type7(obs, 0.50);
    const double p99 = quantile_type7(obs, 0.99);
    rep.tail_ratio = p99 / p50;

    size_t extreme = 0;
    for (double v : obs)
        if (v > theta) ++extreme;
    rep.extreme_freq = static_cast<double>(extreme) / static_cast<double>(obs.size());

    rep.excess_kurtosis = excess_kurtosis(obs);

    // First differences within contiguous unmasked runs only.
    std::vector<double> jumps;
    for (size_t i = 1; i < series.values.size(); ++i) {
        if (std::isnan(series.values[i]) || std::isnan(series.values[i - 1])) continue;
        if (series.stamps[i].minutes_since_epoch() -
                series.stamps[i - 1].minutes_since_epoch() !=
            series.resolution_minutes)
            continue;
        jumps.push_back(std::abs(series.values[i] - series.values[i - 1]));
    }
    if (!jumps.empty()) {
        rep.jump_size_p99 = quantile_type7(jumps, 0.99);
        size_t big = 0;
        for (double j : jumps)
            if (j > jump_theta) ++big;
        rep.jump_freq = static_cast<double>(big) / static_cast<double>(jumps.size());
    }

    // Month-over-month drift: KS over calendar-adjacent month pairs and the
    // spread of monthly p95.
    double p95_min = 0.0, p95_max = 0.0;
    bool first = true;
    const YearMonth* prev_month = nullptr;
    const std::vector<double>* prev_values = nullptr;
    for (const auto& [month, values] : by_month) {
        const double p95 = quantile_type7(values, 0.95);
        if (first || p95 < p95_min) p95_min = p95;
        if (first || p95 > p95_max) p95_max = p95;
        first = false;
        if (prev_month && month == prev_month->plus_months(1))
            rep.ks_max = std::max(rep.ks_max, ks_statistic(*prev_values, values));
        prev_month = &month;
        prev_values = &values;
    }
    rep.p95_range = p95_max - p95_min;
    return rep;
}

}  // namespace epf
