#include "epf/eval/protocol.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "epf/error.hpp"
#include "epf/ingest/csv.hpp"
#include "epf/ingest/standardize.hpp"

namespace epf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string> default_future_covariates(const TimeSeriesTable& table) {
    std::vector<std::string> out;
    for (const auto& c : table.columns())
        if (c.availability == AvailabilityClass::future_available_exogenous)
            out.push_back(c.name);
    return out;
}

/// Column-major copy of the rows whose target is finite.
void finite_target_view(const FeatureMatrix& m, std::vector<std::vector<double>>& cols,
                        std::vector<double>& target) {
    cols.assign(m.feature_count(), {});
    target.clear();
    for (size_t r = 0; r < m.rows(); ++r) {
        if (std::isnan(m.target[r])) continue;
        target.push_back(m.target[r]);
        for (size_t c = 0; c < m.feature_count(); ++c) cols[c].push_back(m.values[c][r]);
    }
}

}  // namespace

std::vector<double> TrainedRegressor::predict(const FeatureMatrix& m) const {
    std::vector<std::string> names;
    names.reserve(m.columns.size());
    for (const auto& c : m.columns) names.push_back(c.name);
    if (is_gbdt) return predict_gbdt_named(gbdt, names, m.values);

    std::vector<double> out;
    out.reserve(m.rows());
    std::vector<size_t> order;
    for (const auto& want : ridge.feature_names) {
        auto it = std::find(names.begin(), names.end(), want);
        if (it == names.end())
            throw Error("missing-feature", "feature '" + want + "' absent from input");
        order.push_back(static_cast<size_t>(it - names.begin()));
    }
    std::vector<double> row(order.size());
    for (size_t r = 0; r < m.rows(); ++r) {
        for (size_t j = 0; j < order.size(); ++j) row[j] = m.values[order[j]][r];
        out.push_back(ridge.predict_row(row));
    }
    return out;
}

void TrainedRegressor::save(const std::string& path) const {
    if (is_gbdt)
        save_gbdt(gbdt, path);
    else
        save_ridge(ridge, path);
}

TrainedRegressor TrainedRegressor::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("io", "cannot open model '" + path + "'");
    std::string magic;
    in >> magic;
    in.close();
    TrainedRegressor r;
    if (magic == "EPFGBDT") {
        r.is_gbdt = true;
        r.gbdt = load_gbdt(path);
    } else if (magic == "EPFRIDGE") {
        r.is_gbdt = false;
        r.ridge = load_ridge(path);
    } else {
        throw Error("bad-format", "unrecognized model file '" + path + "'");
    }
    return r;
}

TrainedRegressor train_regressor(const ProtocolConfig& cfg, const FeatureMatrix& train,
                                 const FeatureMatrix& val) {
    std::vector<std::string> names;
    for (const auto& c : train.columns) names.push_back(c.name);

    std::vector<std::vector<double>> tr_cols, va_cols;
    std::vector<double> tr_y, va_y;
    finite_target_view(train, tr_cols, tr_y);
    finite_target_view(val, va_cols, va_y);
    if (tr_y.empty()) throw Error("empty-data", "no training rows with a realized target");

    TrainedRegressor out;
    if (cfg.use_gbdt) {
        out.is_gbdt = true;
        Dataset tr{&tr_cols, &tr_y};
        Dataset va{&va_cols, &va_y};
        out.gbdt = fit_gbdt(tr, va_y.empty() ? Dataset{} : va, names, cfg.gbdt);
        return out;
    }

    // Ridge: fill NaN cells with train column means so rows stay usable.
    std::vector<double> means(tr_cols.size(), 0.0);
    for (size_t c = 0; c < tr_cols.size(); ++c) {
        double sum = 0.0;
        size_t n = 0;
        for (double v : tr_cols[c])
            if (!std::isnan(v)) { sum += v; ++n; }
        means[c] = n ? sum / static_cast<double>(n) : 0.0;
    }
    std::vector<std::vector<double>> rows(tr_y.size(), std::vector<double>(tr_cols.size()));
    for (size_t r = 0; r < tr_y.size(); ++r)
        for (size_t c = 0; c < tr_cols.size(); ++c) {
            double v = tr_cols[c][r];
            rows[r][c] = std::isnan(v) ? means[c] : v;
        }
    out.is_gbdt = false;
    out.ridge = fit_ridge(rows, tr_y, names, cfg.ridge_lambda);
    out.ridge.impute_means = means;
    return out;
}

WindowArtifacts build_window_artifacts(const TimeSeriesTable& raw_table,
                                       const RollingSplit& split, const ProtocolConfig& cfg,
                                       const ForecastCache* cache) {
    WindowArtifacts art;
    art.split = split;

    const TimeSeriesTable* table = &raw_table;
    TimeSeriesTable standardized(raw_table.resolution_minutes(), {}, {});
    if (cfg.reale_like_standardize) {
        if (!split.has_train())
            throw Error("empty-training-range", "standardization needs a training range");
        std::vector<std::string> numeric;
        for (const auto& c : raw_table.columns()) numeric.push_back(c.name);
        Standardizer sz =
            Standardizer::fit(raw_table, split.train_first, split.train_last, numeric);
        standardized = sz.apply(raw_table);
        table = &standardized;
    }

    const std::vector<Date> train_dates = split.train_dates();
    const std::vector<Date> val_dates = split.val_dates();
    const std::vector<Date> test_dates = split.test_dates();
    if (test_dates.empty()) throw Error("empty-input", "test month has no evaluation days");

    const std::vector<DayWindow> train_w = day_windows_for_dates(*table, train_dates);
    const std::vector<DayWindow> val_w = day_windows_for_dates(*table, val_dates);
    const std::vector<DayWindow> test_w = day_windows_for_dates(*table, test_dates);

    std::vector<std::string> futures =
        cfg.future_covariates.empty() ? default_future_covariates(*table) : cfg.future_covariates;

    // Stage 1: forecasts for every day of every range; test days also get a
    // target forecast so the forecaster-only baseline can be scored.
    const bool target_in_v =
        std::find(cfg.forecast_variables.begin(), cfg.forecast_variables.end(),
                  cfg.target_column) != cfg.forecast_variables.end();
    std::map<Date, ForecastSet> full;  // keyed by horizon day
    auto forecast_for = [&](const std::vector<Date>& days, bool with_target) {
        for (Date day : days) {
            if (full.count(day)) continue;
            std::vector<std::string> vars = cfg.forecast_variables;
            if (with_target && !target_in_v) vars.push_back(cfg.target_column);
            full[day] =
                forecast_day_cached(*table, vars, day.plus_days(-1), cfg.forecaster_specs, cache);
        }
    };
    forecast_for(test_dates, true);
    forecast_for(train_dates, false);
    forecast_for(val_dates, false);

    // Matrices for the two-stage method see only the configured variate list.
    std::map<Date, ForecastSet> stage1;
    std::map<Date, ForecastSet> none;
    const int H = table->steps_per_day();
    for (const auto& [day, set] : full) {
        ForecastSet filtered = set;
        if (!target_in_v) filtered.entries.erase(cfg.target_column);
        stage1[day] = std::move(filtered);
        ForecastSet empty;
        empty.issue_day = day.plus_days(-1);
        empty.horizon_day = day;
        empty.horizon = H;
        none[day] = std::move(empty);
    }

    art.train = assemble_features(*table, train_w, stage1, cfg.factors, futures,
                                  cfg.target_column);
    art.val =
        assemble_features(*table, val_w, stage1, cfg.factors, futures, cfg.target_column);
    art.test =
        assemble_features(*table, test_w, stage1, cfg.factors, futures, cfg.target_column);
    art.cov_train =
        assemble_features(*table, train_w, none, cfg.factors, futures, cfg.target_column);
    art.cov_val =
        assemble_features(*table, val_w, none, cfg.factors, futures, cfg.target_column);
    art.cov_test =
        assemble_features(*table, test_w, none, cfg.factors, futures, cfg.target_column);

    for (const DayWindow& w : test_w) {
        const ForecastSet& set = full.at(w.day);
        const auto& fc = set.entries.at(cfg.target_column);
        art.forecaster_only_test.insert(art.forecaster_only_test.end(), fc.begin(), fc.end());
    }
    art.test_target = art.test.target;
    art.test_stamps = art.test.timestamps;
    art.forecasts = std::move(full);
    return art;
}

EvaluationReport run_protocol(const TimeSeriesTable& table,
                              const std::vector<RollingSplit>& splits,
                              const ProtocolConfig& cfg, const ForecastCache* cache) {
    if (splits.empty()) throw Error("empty-input", "no evaluation windows");
    std::vector<RollingSplit> ordered = splits;
    std::sort(ordered.begin(), ordered.end(),
              [](const RollingSplit& a, const RollingSplit& b) {
                  return a.test_month < b.test_month;
              });

    struct WindowOut {
        WindowRecord record;
        std::vector<Timestamp> stamps;
        std::vector<double> prices;
    };
    std::vector<WindowOut> outs(ordered.size());
    std::vector<std::string> errors(ordered.size());

    auto run_one = [&](size_t i) {
        const RollingSplit& split = ordered[i];
        try {
            WindowArtifacts art = build_window_artifacts(table, split, cfg, cache);
            WindowOut& out = outs[i];
            out.record.test_month = split.test_month;
            out.record.train_rows = art.train.rows();
            out.record.val_rows = art.val.rows();
            out.record.test_rows = art.test.rows();

            out.record.per_method[kMethodForecasterOnly] =
                compute_metrics(art.test_target, art.forecaster_only_test);

            TrainedRegressor cov = train_regressor(cfg, art.cov_train, art.cov_val);
            out.record.per_method[kMethodCovariateOnly] =
                compute_metrics(art.test_target, cov.predict(art.cov_test));

            TrainedRegressor fb = train_regressor(cfg, art.train, art.val);
            out.record.per_method[kMethodFutureBoosting] =
                compute_metrics(art.test_target, fb.predict(art.test));

            out.stamps = art.test_stamps;
            out.prices = art.test_target;
        } catch (const std::exception& e) {
            errors[i] = "window " + split.test_month.str() + ": " + e.what();
        }
    };

    const int jobs = std::max(1, cfg.jobs);
    if (jobs == 1 || ordered.size() == 1) {
        for (size_t i = 0; i < ordered.size(); ++i) run_one(i);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> workers;
        const size_t nw = std::min<size_t>(jobs, ordered.size());
        for (size_t w = 0; w < nw; ++w)
            workers.emplace_back([&] {
                for (;;) {
                    size_t i = next.fetch_add(1);
                    if (i >= ordered.size()) return;
                    run_one(i);
                }
            });
        for (auto& t : workers) t.join();
    }
    for (const auto& err : errors)
        if (!err.empty()) throw Error("window-failed", err);

    EvaluationReport report;
    report.target_column = cfg.target_column;
    report.methods = {kMethodForecasterOnly, kMethodCovariateOnly, kMethodFutureBoosting};

    std::map<std::string, std::vector<MetricPair>> by_method;
    PriceSeries all_prices;
    all_prices.resolution_minutes = table.resolution_minutes();
    for (auto& out : outs) {
        report.windows.push_back(std::move(out.record));
        for (const auto& m : report.methods)
            by_method[m].push_back(report.windows.back().per_method.at(m));
        all_prices.stamps.insert(all_prices.stamps.end(), out.stamps.begin(), out.stamps.end());
        all_prices.values.insert(all_prices.values.end(), out.prices.begin(), out.prices.end());
    }
    for (const auto& m : report.methods) report.averages[m] = average_metrics(by_method[m]);

    try {
        report.difficulty = difficulty_indicators(all_prices, cfg.difficulty_theta,
                                                  cfg.difficulty_jump_theta);
        report.has_difficulty = true;
    } catch (const Error&) {
        report.has_difficulty = false;  // single-month runs have no drift stats
    }
    return report;
}

namespace {

std::string pct_or_dash(const MetricPair& baseline, const MetricPair& candidate, bool mse) {
    char buf[32];
    const double b = mse ? baseline.mse : baseline.mae;
    const double c = mse ? candidate.mse : candidate.mae;
    if (b <= 0.0) return "--";
    std::snprintf(buf, sizeof(buf), "%+.2f%%", 100.0 * (b - c) / b);
    return buf;
}

}  // namespace

void render_report(const EvaluationReport& report, const std::string& csv_path,
                   const std::string& json_path, const std::string& difficulty_csv_path) {
    if (report.methods.empty()) throw Error("empty-input", "report has no methods");

    // CSV mirrors the summary-table layout: Val plus improvement columns
    // against the covariate-only regression and the forecaster-only run.
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw Error("io", "cannot write '" + csv_path + "'");
    csv << "method,mse,mse_delta_vs_covariate,mse_delta_vs_forecaster,"
           "mae,mae_delta_vs_covariate,mae_delta_vs_forecaster\n";
    const MetricPair& cov = report.averages.at(kMethodCovariateOnly);
    const MetricPair& fc = report.averages.at(kMethodForecasterOnly);
    for (const auto& method : report.methods) {
        const MetricPair& mp = report.averages.at(method);
        char val[64];
        std::snprintf(val, sizeof(val), "%.2f", mp.mse);
        csv << method << ',' << val << ',' << pct_or_dash(cov, mp, true) << ','
            << (method == kMethodForecasterOnly ? "--" : pct_or_dash(fc, mp, true)) << ',';
        std::snprintf(val, sizeof(val), "%.2f", mp.mae);
        csv << val << ',' << pct_or_dash(cov, mp, false) << ','
            << (method == kMethodForecasterOnly ? "--" : pct_or_dash(fc, mp, false)) << '\n';
    }
    csv.close();

    nlohmann::json j;
    j["target"] = report.target_column;
    j["methods"] = report.methods;
    nlohmann::json windows = nlohmann::json::array();
    for (const auto& w : report.windows) {
        nlohmann::json jw;
        jw["test_month"] = w.test_month.str();
        jw["train_rows"] = w.train_rows;
        jw["val_rows"] = w.val_rows;
        jw["test_rows"] = w.test_rows;
        nlohmann::json per;
        for (const auto& [m, mp] : w.per_method)
            per[m] = {{"mse", mp.mse}, {"mae", mp.mae}, {"n", mp.n}};
        jw["metrics"] = per;
        windows.push_back(jw);
    }
    j["windows"] = windows;
    nlohmann::json avg;
    for (const auto& [m, mp] : report.averages)
        avg[m] = {{"mse", mp.mse}, {"mae", mp.mae}, {"n", mp.n}};
    j["averages"] = avg;
    if (report.has_difficulty) {
        const DifficultyReport& d = report.difficulty;
        j["difficulty"] = {{"tail_ratio", d.tail_ratio},
                           {"extreme_freq", d.extreme_freq},
                           {"excess_kurtosis", d.excess_kurtosis},
                           {"jump_size_p99", d.jump_size_p99},
                           {"jump_freq", d.jump_freq},
                           {"ks_max", d.ks_max},
                           {"p95_range", d.p95_range},
                           {"theta", d.theta},
                           {"jump_theta", d.jump_theta},
                           {"n", d.n}};
    }
    std::ofstream js(json_path, std::ios::binary);
    if (!js) throw Error("io", "cannot write '" + json_path + "'");
    js << j.dump(2) << '\n';
    js.close();

    std::ofstream dc(difficulty_csv_path, std::ios::binary);
    if (!dc) throw Error("io", "cannot write '" + difficulty_csv_path + "'");
    dc << "indicator,value\n";
    if (report.has_difficulty) {
        const DifficultyReport& d = report.difficulty;
        char buf[48];
        auto row = [&](const char* name, double v) {
            std::snprintf(buf, sizeof(buf), "%.6f", v);
            dc << name << ',' << buf << '\n';
        };
        row("tail_ratio_p99_p50", d.tail_ratio);
        row("extreme_freq", d.extreme_freq);
        row("excess_kurtosis", d.excess_kurtosis);
        row("jump_size_p99", d.jump_size_p99);
        row("jump_freq", d.jump_freq);
        row("ks_max", d.ks_max);
        row("p95_range", d.p95_range);
    }
}

}  // namespace epf
