#include "epf/forecast/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "epf/error.hpp"
#include "epf/hash.hpp"
#include "epf/ingest/csv.hpp"
#include "epf/linreg/ridge.hpp"

namespace epf {

ForecasterKind forecaster_kind_from_string(const std::string& s) {
    if (s == "seasonal_naive") return ForecasterKind::seasonal_naive;
    if (s == "ridge_lag_ar") return ForecasterKind::ridge_lag_ar;
    if (s == "exp_smoothing") return ForecasterKind::exp_smoothing;
    if (s == "external_file") return ForecasterKind::external_file;
    throw Error("bad-spec", "unknown forecaster kind '" + s + "'");
}

std::string to_string(ForecasterKind k) {
    switch (k) {
        case ForecasterKind::seasonal_naive: return "seasonal_naive";
        case ForecasterKind::ridge_lag_ar: return "ridge_lag_ar";
        case ForecasterKind::exp_smoothing: return "exp_smoothing";
        case ForecasterKind::external_file: return "external_file";
    }
    return "?";
}

double ForecasterSpec::param(const std::string& key, double fallback) const {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    return std::strtod(it->second.c_str(), nullptr);
}

std::string ForecasterSpec::param_str(const std::string& key, const std::string& fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

std::string ForecasterSpec::id() const {
    std::string s = to_string(kind) + ":ctx=" + std::to_string(context_length);
    for (const auto& [k, v] : params) s += ":" + k + "=" + v;
    return s;
}

std::atomic<uint64_t>& forecaster_evaluation_counter() {
    static std::atomic<uint64_t> counter{0};
    return counter;
}

namespace {

/// Forward-fill inside the window; a leading gap takes the first observed
/// value so every slot is defined. Entirely-missing windows are an error.
std::vector<double> fill_context(const std::vector<double>& values,
                                 const std::vector<uint8_t>& missing) {
    size_t first = values.size();
    for (size_t i = 0; i < values.size(); ++i)
        if (!missing[i]) { first = i; break; }
    if (first == values.size())
        throw Error("all-missing-context", "context window has no observed values");
    std::vector<double> out(values.size());
    double last = values[first];
    for (size_t i = 0; i < values.size(); ++i) {
        if (i < first || missing[i]) {
            out[i] = last;
        } else {
            out[i] = values[i];
            last = values[i];
        }
    }
    return out;
}

std::vector<double> seasonal_naive_forecast(const std::vector<double>& ctx, int horizon) {
    const size_t n = ctx.size();
    std::vector<double> out(horizon);
    for (int h = 0; h < horizon; ++h) out[h] = ctx[n - horizon + h];
    return out;
}

std::vector<int> ridge_lag_set(const ForecasterSpec& spec, int horizon) {
    std::vector<int> lags;
    for (int l = 1; l <= horizon; ++l) lags.push_back(l);
    std::string extra = spec.param_str("extra_lag_periods", "2,7");
    size_t pos = 0;
    while (pos < extra.size()) {
        size_t comma = extra.find(',', pos);
        if (comma == std::string::npos) comma = extra.size();
        int mult = std::atoi(extra.substr(pos, comma - pos).c_str());
        if (mult > 1) lags.push_back(mult * horizon);
        pos = comma + 1;
    }
    std::sort(lags.begin(), lags.end());
    lags.erase(std::unique(lags.begin(), lags.end()), lags.end());
    return lags;
}

/// One-step ridge autoregression on the lag set, rolled forward recursively
/// over the horizon with forecasts fed back as future lags.
std::vector<double> ridge_lag_forecast(const std::vector<double>& ctx,
                                       const ForecasterSpec& spec, int horizon) {
    const std::vector<int> lags = ridge_lag_set(spec, horizon);
    const int max_lag = lags.back();
    const int n = static_cast<int>(ctx.size());
    const int rows = n - max_lag;
    if (rows < 8)
        throw Error("insufficient-history",
                    "ridge_lag_ar needs more than " + std::to_string(max_lag + 8) +
                        " context values, got " + std::to_string(n));

    std::vector<std::vector<double>> X(rows);
    std::vector<double> y(rows);
    for (int t = max_lag; t < n; ++t) {
        auto& row = X[t - max_lag];
        row.reserve(lags.size());
        for (int lag : lags) row.push_back(ctx[t - lag]);
        y[t - max_lag] = ctx[t];
    }
    std::vector<std::string> names(lags.size());
    for (size_t j = 0; j < lags.size(); ++j) names[j] = "lag_" + std::to_string(lags[j]);
    RidgeModel model = fit_ridge(X, y, names, spec.param("lambda", 1.0));

    std::vector<double> extended = ctx;
    std::vector<double> out;
    out.reserve(horizon);
    std::vector<double> row(lags.size());
    for (int h = 0; h < horizon; ++h) {
        const int t = static_cast<int>(extended.size());
        for (size_t j = 0; j < lags.size(); ++j) row[j] = extended[t - lags[j]];
        double v = model.predict_row(row);
        extended.push_back(v);
        out.push_back(v);
    }
    return out;
}

/// Simple exponential smoothing run separately per intra-day step; alpha=1
/// collapses to the last observation at each step (seasonal naive).
std::vector<double> exp_smoothing_forecast(const std::vector<double>& ctx,
                                           const ForecasterSpec& spec, int horizon) {
    const double alpha = spec.param("alpha", 0.3);
    if (alpha <= 0.0 || alpha > 1.0)
        throw Error("bad-spec", "exp_smoothing alpha must be in (0, 1]");
    const int n = static_cast<int>(ctx.size());
    std::vector<double> out(horizon);
    // The context ends exactly at a day boundary, so position n-horizon+h is
    // the most recent observation of intra-day step h.
    for (int h = 0; h < horizon; ++h) {
        int start = (n - horizon + h) % horizon;
        bool have = false;
        double s = 0.0;
        for (int t = start; t < n; t += horizon) {
            if (!have) {
                s = ctx[t];
                have = true;
            } else {
                s = alpha * ctx[t] + (1.0 - alpha) * s;
            }
        }
        out[h] = s;
    }
    return out;
}

}  // namespace

std::vector<double> forecast_variable(const std::vector<double>& history,
                                      const std::vector<uint8_t>& history_missing,
                                      const ForecasterSpec& spec, int horizon) {
    if (horizon < 1) throw Error("bad-spec", "horizon must be positive");
    if (spec.kind == ForecasterKind::external_file)
        throw Error("bad-spec", "external_file forecasts are loaded from disk, not computed");
    if (history.size() != history_missing.size())
        throw Error("length-mismatch", "history and missing mask differ in length");
    if (static_cast<int>(history.size()) < spec.context_length)
        throw Error("insufficient-history",
                    "need " + std::to_string(spec.context_length) + " context values, got " +
                        std::to_string(history.size()));
    if ((spec.kind == ForecasterKind::seasonal_naive ||
         spec.kind == ForecasterKind::exp_smoothing) &&
        spec.context_length < horizon)
        throw Error("bad-spec", "context_length must cover one seasonal period");

    const size_t n = history.size();
    const size_t ctx_len = static_cast<size_t>(spec.context_length);
    std::vector<double> ctx_vals(history.end() - ctx_len, history.end());
    std::vector<uint8_t> ctx_miss(history_missing.end() - ctx_len, history_missing.end());
    (void)n;
    std::vector<double> ctx = fill_context(ctx_vals, ctx_miss);

    forecaster_evaluation_counter().fetch_add(1, std::memory_order_relaxed);

    std::vector<double> out;
    switch (spec.kind) {
        case ForecasterKind::seasonal_naive: out = seasonal_naive_forecast(ctx, horizon); break;
        case ForecasterKind::ridge_lag_ar: out = ridge_lag_forecast(ctx, spec, horizon); break;
        case ForecasterKind::exp_smoothing: out = exp_smoothing_forecast(ctx, spec, horizon); break;
        case ForecasterKind::external_file: break;  // unreachable
    }
    for (double v : out)
        if (!std::isfinite(v)) throw Error("nonfinite-forecast", "forecast produced a non-finite value");
    return out;
}

std::string forecast_cache_key(const std::string& forecaster_id, const std::string& variable,
                               Date issue_day, const std::vector<double>& context,
                               const std::vector<uint8_t>& context_missing) {
    uint64_t h = fnv1a64(forecaster_id.data(), forecaster_id.size());
    h = fnv1a64(variable.data(), variable.size(), h);
    std::string day = issue_day.iso();
    h = fnv1a64(day.data(), day.size(), h);
    if (!context.empty()) h = fnv1a64(context.data(), context.size() * sizeof(double), h);
    if (!context_missing.empty()) h = fnv1a64(context_missing.data(), context_missing.size(), h);
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ForecastSet forecast_day(const TimeSeriesTable& table, const std::vector<std::string>& variables,
                         Date issue_day, const std::map<std::string, ForecasterSpec>& specs) {
    const int H = table.steps_per_day();
    ForecastSet set;
    set.issue_day = issue_day;
    set.horizon_day = issue_day.next();
    set.horizon = H;

    std::vector<std::string> ordered = variables;
    std::sort(ordered.begin(), ordered.end());

    const Timestamp boundary(set.horizon_day, 0);  // first instant after day D
    std::string joint_id;

    for (const auto& name : ordered) {
        const Column& col = table.column(name);
        if (col.availability != AvailabilityClass::target &&
            col.availability != AvailabilityClass::historical_exogenous)
            throw Error("availability-violation",
                        "column '" + name + "' is " + to_string(col.availability) +
                            "; only target/historical series are forecast");

        auto it = specs.find(name);
        if (it == specs.end()) it = specs.find("default");
        if (it == specs.end())
            throw Error("bad-spec", "no forecaster spec for variable '" + name + "'");
        const ForecasterSpec& spec = it->second;

        // Context: rows strictly before the horizon day (planning time).
        size_t end = 0;
        while (end < table.rows() && table.index()[end] < boundary) ++end;
        std::vector<double> hist(col.values.begin(), col.values.begin() + end);
        std::vector<uint8_t> miss(col.missing.begin(), col.missing.begin() + end);

        std::vector<double> fc = forecast_variable(hist, miss, spec, H);

        size_t ctx_len = std::min(hist.size(), static_cast<size_t>(spec.context_length));
        std::vector<double> ctx(hist.end() - ctx_len, hist.end());
        std::vector<uint8_t> ctx_miss(miss.end() - ctx_len, miss.end());
        set.cache_keys[name] = forecast_cache_key(spec.id(), name, issue_day, ctx, ctx_miss);

        set.entries[name] = std::move(fc);
        if (joint_id.empty())
            joint_id = spec.id();
        else if (joint_id != spec.id())
            joint_id = "mixed";
    }
    set.forecaster_id = joint_id;
    return set;
}

}  // namespace epf
