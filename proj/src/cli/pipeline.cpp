#include "epf/cli/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "epf/error.hpp"
#include "epf/explain/shap.hpp"
#include "epf/forecast/external.hpp"
#include "epf/ingest/csv.hpp"
#include "epf/ingest/ingest.hpp"
#include "epf/synth/generator.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace epf::pipeline {

namespace {

std::string out_path(const RunConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.output_dir);
    return (fs::path(cfg.output_dir) / name).string();
}

std::string effective_cache_dir(const RunConfig& cfg) {
    if (const char* env = std::getenv("FUTUREBOOST_CACHE_DIR"); env && *env) return env;
    return cfg.cache_dir;
}

TimeSeriesTable load_table(const RunConfig& cfg) {
    if (cfg.data_csv.empty()) throw Error("bad-config", "paths.data is not set");
    return load_canonical_table(cfg.data_csv, cfg.data_sidecar);
}

std::vector<RollingSplit> resolve_splits(const RunConfig& cfg) {
    if (cfg.test_months.empty())
        throw Error("bad-config", "protocol.test_months is empty");
    auto splits = build_rolling_splits(cfg.test_months, cfg.train_months, cfg.val_months);
    std::set<Date> holidays;
    if (!cfg.holiday_file.empty()) holidays = load_holiday_calendar(cfg.holiday_file);
    for (auto& s : splits) {
        s.workday_filter = cfg.workday_filter;
        s.holiday_calendar = holidays;
    }
    return splits;
}

RollingSplit stage_split(const RunConfig& cfg) {
    auto splits = resolve_splits(cfg);
    if (cfg.stage_window.empty()) return splits.front();
    const YearMonth want = YearMonth::parse(cfg.stage_window);
    for (const auto& s : splits)
        if (s.test_month == want) return s;
    throw Error("bad-config", "stage_window " + cfg.stage_window + " is not a test month");
}

void print_plan(const RunConfig& cfg, const char* command) {
    std::cerr << "[plan] command: " << command << "\n"
              << "[plan] mode=" << cfg.mode << " target=" << cfg.target_column()
              << " seed=" << cfg.seed << " jobs=" << cfg.jobs << "\n"
              << "[plan] data=" << cfg.data_csv << " cache=" << effective_cache_dir(cfg)
              << " output=" << cfg.output_dir << "\n";
    if (!cfg.test_months.empty()) {
        std::cerr << "[plan] windows:";
        for (const auto& m : cfg.test_months) std::cerr << ' ' << m.str();
        std::cerr << " (train " << cfg.train_months << "m, val " << cfg.val_months
                  << "m, workday_filter=" << (cfg.workday_filter ? "on" : "off") << ")\n";
    }
    std::cerr << "[plan] stage1 variables:";
    for (const auto& v : cfg.forecast_variables) std::cerr << ' ' << v;
    std::cerr << "\n[plan] regressor: " << (cfg.use_gbdt ? "gbdt" : "ridge") << "\n";
}

uint64_t counter_now() { return forecaster_evaluation_counter().load(); }

void report_evaluations(uint64_t before) {
    std::cerr << "forecaster evaluations: " << (counter_now() - before) << "\n";
}

}  // namespace

void simulate(const RunConfig& cfg, const Options& opt) {
    if (opt.dry_run) return print_plan(cfg, "simulate");
    ScenarioSpec spec;
    if (!cfg.scenario_file.empty()) spec = load_scenario(cfg.scenario_file);
    if (cfg.scenario_file.empty() ||
        !json::parse(std::ifstream(cfg.scenario_file)).contains("seed"))
        spec.seed = cfg.seed;
    TimeSeriesTable table = generate(spec);
    if (cfg.data_csv.empty()) throw Error("bad-config", "paths.data is not set");
    if (auto dir = fs::path(cfg.data_csv).parent_path(); !dir.empty())
        fs::create_directories(dir);
    save_canonical_table(table, cfg.data_csv, cfg.data_sidecar);
    std::cerr << "simulated " << spec.days << " days (" << table.rows() << " rows, seed "
              << spec.seed << ") -> " << cfg.data_csv << "\n";
}

void ingest(const RunConfig& cfg, const Options& opt) {
    if (opt.dry_run) return print_plan(cfg, "ingest");
    if (cfg.registry_file.empty()) throw Error("bad-config", "registry_file is not set");
    auto specs = load_column_registry(cfg.registry_file);
    TimeSeriesTable table = ingest_sources(specs, cfg.ingest_resolution_minutes);
    if (auto dir = fs::path(cfg.data_csv).parent_path(); !dir.empty())
        fs::create_directories(dir);
    save_canonical_table(table, cfg.data_csv, cfg.data_sidecar);
    std::cerr << "ingested " << specs.size() << " columns, " << table.rows() << " rows -> "
              << cfg.data_csv << "\n";
}

void forecast(const RunConfig& cfg, const Options& opt) {
    if (opt.dry_run) return print_plan(cfg, "forecast");
    const uint64_t before = counter_now();
    TimeSeriesTable table = load_table(cfg);
    RollingSplit split = stage_split(cfg);
    const std::string cache_dir = effective_cache_dir(cfg);
    ForecastCache cache(cache_dir.empty() ? out_path(cfg, "cache") : cache_dir);

    std::vector<Date> days;
    for (const auto& v : {split.train_dates(), split.val_dates(), split.test_dates()})
        days.insert(days.end(), v.begin(), v.end());
    std::vector<std::string> vars = cfg.forecast_variables;
    if (std::find(vars.begin(), vars.end(), cfg.target_column()) == vars.end())
        vars.push_back(cfg.target_column());
    for (Date day : days)
        forecast_day_cached(table, vars, day.plus_days(-1), cfg.forecaster_specs, &cache);
    std::cerr << "forecast " << days.size() << " days x " << vars.size() << " variables (cache "
              << cache.directory() << ": " << cache.hits << " hits, " << cache.misses
              << " misses)\n";
    report_evaluations(before);
}

void features(const RunConfig& cfg, const Options& opt) {
    if (opt.dry_run) return print_plan(cfg, "features");
    TimeSeriesTable table = load_table(cfg);
    RollingSplit split = stage_split(cfg);
    const std::string cache_dir = effective_cache_dir(cfg);
    ForecastCache cache(cache_dir.empty() ? out_path(cfg, "cache") : cache_dir);
    WindowArtifacts art = build_window_artifacts(table, split, cfg.protocol_config(), &cache);
    save_feature_matrix(art.train, out_path(cfg, "features_train.csv"),
                        out_path(cfg, "features_train.meta.json"));
    save_feature_matrix(art.val, out_path(cfg, "features_val.csv"),
                        out_path(cfg, "features_val.meta.json"));
    save_feature_matrix(art.test, out_path(cfg, "features_test.csv"),
                        out_path(cfg, "features_test.meta.json"));
    std::cerr << "features for window " << split.test_month.str() << ": train "
              << art.train.rows() << ", val " << art.val.rows() << ", test " << art.test.rows()
              << " rows x " << art.train.feature_count() << " columns\n";
}

void train(const RunConfig& cfg, const Options& opt) {
    if (opt.dry_run) return print_plan(cfg, "train");
    TimeSeriesTable table = load_table(cfg);
    RollingSplit split = stage_split(cfg);
    const std::string cache_dir = effective_cache_dir(cfg);
    ForecastCache cache(cache_dir.empty() ? out_path(cfg, "cache") : cache_dir);
    WindowArtifacts art = build_window_artifacts(table, split, cfg.protocol_config(), &cache);
    TrainedRegressor model = train_regressor(cfg.protocol_config(), art.train, art.val);
    model.save(out_path(cfg, "model.txt"));
    if (model.is_gbdt)
        std::cerr << "trained gbdt: " << model.gbdt.trees.size() << " trees, best iteration "
                  << model.gbdt.best_iteration << "\n";
    else
        std::cerr << "trained ridge on " << model.ridge.feature_names.size() << " features\n";
}

void predict(const RunConfig& cfg, const Options& opt) {
    if (opt.dry_run) return print_plan(cfg, "predict");
    TimeSeriesTable table = load_table(cfg);
    RollingSplit split = stage_split(cfg);
    const std::string cache_dir = effective_cache_dir(cfg);
    ForecastCache cache(cache_dir.empty() ? out_path(cfg, "cache") : cache_dir);
    WindowArtifacts art = build_window_artifacts(table, split, cfg.protocol_config(), &cache);

    const std::string model_path = out_path(cfg, "model.txt");
    TrainedRegressor model =
        fs::exists(model_path) ? TrainedRegressor::load(model_path)
                               : train_regressor(cfg.protocol_config(), art.train, art.val);
    std::vector<double> pred = model.predict(art.test);

    std::ofstream out(out_path(cfg, "predictions.csv"), std::ios::binary);
    out << "timestamp,prediction\n";
    for (size_t r = 0; r < pred.size(); ++r)
        out << art.test.timestamps[r].iso() << ',' << format_double(pred[r]) << '\n';
    std::cerr << "predicted " << pred.size() << " steps for window " << split.test_month.str()
              << "\n";
}

void evaluate(const RunConfig& cfg, const Options& opt) {
    if (opt.dry_run) return print_plan(cfg, "evaluate");
    const uint64_t before = counter_now();
    TimeSeriesTable table = load_table(cfg);
    auto splits = resolve_splits(cfg);
    const std::string cache_dir = effective_cache_dir(cfg);
    ForecastCache cache(cache_dir.empty() ? out_path(cfg, "cache") : cache_dir);
    EvaluationReport rep = run_protocol(table, splits, cfg.protocol_config(), &cache);
    render_report(rep, out_path(cfg, "report.csv"), out_path(cfg, "report.json"),
                  out_path(cfg, "difficulty.csv"));
    for (const auto& m : rep.methods) {
        const MetricPair& mp = rep.averages.at(m);
        std::cerr << m << ": avg mse " << mp.mse << ", avg mae " << mp.mae << "\n";
    }
    report_evaluations(before);
}

void explain(const RunConfig& cfg, const Options& opt) {
    if (opt.dry_run) return print_plan(cfg, "explain");
    TimeSeriesTable table = load_table(cfg);
    RollingSplit split = stage_split(cfg);
    const std::string cache_dir = effective_cache_dir(cfg);
    ForecastCache cache(cache_dir.empty() ? out_path(cfg, "cache") : cache_dir);
    WindowArtifacts art = build_window_artifacts(table, split, cfg.protocol_config(), &cache);

    const std::string model_path = out_path(cfg, "model.txt");
    TrainedRegressor model =
        fs::exists(model_path) ? TrainedRegressor::load(model_path)
                               : train_regressor(cfg.protocol_config(), art.train, art.val);
    if (!model.is_gbdt)
        throw Error("bad-config", "explain requires the gbdt regressor");

    size_t row = 0;
    if (!opt.instance.empty()) {
        const Timestamp want = Timestamp::parse(opt.instance);
        auto it = std::find(art.test.timestamps.begin(), art.test.timestamps.end(), want);
        if (it == art.test.timestamps.end())
            throw Error("bad-config",
                        "instance " + opt.instance + " is not in the test window");
        row = static_cast<size_t>(it - art.test.timestamps.begin());
    }

    // Columns reordered to the model's feature order.
    std::vector<std::string> names;
    for (const auto& c : art.test.columns) names.push_back(c.name);
    std::vector<double> instance(model.gbdt.feature_names.size());
    for (size_t f = 0; f < model.gbdt.feature_names.size(); ++f) {
        auto it = std::find(names.begin(), names.end(), model.gbdt.feature_names[f]);
        if (it == names.end())
            throw Error("missing-required-feature",
                        "feature '" + model.gbdt.feature_names[f] + "' absent from test matrix");
        instance[f] = art.test.values[static_cast<size_t>(it - names.begin())][row];
    }

    ShapAttribution attr =
        tree_shap(model.gbdt, instance, art.test.timestamps[row].iso());
    WaterfallRecord rec =
        export_waterfall(attr, model.gbdt.feature_names, instance, opt.top_k);
    save_waterfall_json(rec, out_path(cfg, "waterfall.json"));
    save_waterfall_csv(rec, out_path(cfg, "waterfall.csv"));

    std::vector<std::vector<double>> ordered;
    for (const auto& name : model.gbdt.feature_names) {
        auto it = std::find(names.begin(), names.end(), name);
        ordered.push_back(art.test.values[static_cast<size_t>(it - names.begin())]);
    }
    GlobalImportance gi = global_importance(model.gbdt, ordered);
    save_global_importance_csv(gi, out_path(cfg, "global_importance.csv"));
    std::cerr << "explained " << art.test.timestamps[row].iso() << ": prediction "
              << attr.prediction << ", base " << attr.base_value << "\n";
}

void report(const RunConfig& cfg, const Options& opt) {
    if (opt.dry_run) return print_plan(cfg, "report");
    const std::string json_path = out_path(cfg, "report.json");
    std::ifstream in(json_path);
    if (!in) throw Error("io", "cannot open '" + json_path + "' (run evaluate first)");
    json j = json::parse(in);

    EvaluationReport rep;
    rep.target_column = j.value("target", "");
    rep.methods = j.at("methods").get<std::vector<std::string>>();
    for (const auto& jw : j.at("windows")) {
        WindowRecord w;
        w.test_month = YearMonth::parse(jw.at("test_month").get<std::string>());
        w.train_rows = jw.value("train_rows", 0);
        w.val_rows = jw.value("val_rows", 0);
        w.test_rows = jw.value("test_rows", 0);
        for (const auto& [m, mp] : jw.at("metrics").items())
            w.per_method[m] = MetricPair{mp.at("mse").get<double>(), mp.at("mae").get<double>(),
                                         mp.at("n").get<size_t>()};
        rep.windows.push_back(std::move(w));
    }
    for (const auto& [m, mp] : j.at("averages").items())
        rep.averages[m] = MetricPair{mp.at("mse").get<double>(), mp.at("mae").get<double>(),
                                     mp.at("n").get<size_t>()};
    if (j.contains("difficulty")) {
        const json& d = j.at("difficulty");
        rep.has_difficulty = true;
        rep.difficulty.tail_ratio = d.at("tail_ratio").get<double>();
        rep.difficulty.extreme_freq = d.at("extreme_freq").get<double>();
        rep.difficulty.excess_kurtosis = d.at("excess_kurtosis").get<double>();
        rep.difficulty.jump_size_p99 = d.at("jump_size_p99").get<double>();
        rep.difficulty.jump_freq = d.at("jump_freq").get<double>();
        rep.difficulty.ks_max = d.at("ks_max").get<double>();
        rep.difficulty.p95_range = d.at("p95_range").get<double>();
        rep.difficulty.theta = d.at("theta").get<double>();
        rep.difficulty.jump_theta = d.at("jump_theta").get<double>();
        rep.difficulty.n = d.at("n").get<size_t>();
    }
    render_report(rep, out_path(cfg, "report.csv"), json_path,
                  out_path(cfg, "difficulty.csv"));
    std::cerr << "re-rendered report files in " << cfg.output_dir << "\n";
}

}  // namespace epf::pipeline
