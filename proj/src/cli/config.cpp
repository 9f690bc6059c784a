#include "epf/cli/config.hpp"

#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

#include "epf/error.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace epf {

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key))
            throw Error("unknown-config-key", "unknown key '" + key + "' in " + where);
}

void require_file(const std::string& path, const char* what) {
    if (!path.empty() && !fs::exists(path))
        throw Error("missing-file", std::string(what) + " '" + path + "' does not exist");
}

ForecasterSpec parse_forecaster(const json& j, const std::string& where) {
    reject_unknown(j, {"kind", "context_length", "params"}, where);
    ForecasterSpec spec;
    spec.kind = forecaster_kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("context_length")) spec.context_length = j.at("context_length").get<int>();
    if (j.contains("params"))
        for (const auto& [k, v] : j.at("params").items())
            spec.params[k] = v.is_string() ? v.get<std::string>() : v.dump();
    return spec;
}

FactorSpec parse_factor(const json& j) {
    reject_unknown(j, {"name", "formula", "variant", "capacity", "committed", "wind", "solar",
                       "denominator"},
                   "factors[]");
    FactorSpec f;
    f.name = j.at("name").get<std::string>();
    const std::string formula = j.at("formula").get<std::string>();
    if (formula == "thermal_auction_space") {
        f.formula = FactorSpec::Formula::thermal_auction_space;
        f.capacity = j.at("capacity").get<std::string>();
        f.committed = j.at("committed").get<std::string>();
    } else if (formula == "renewable_ratio") {
        f.formula = FactorSpec::Formula::renewable_ratio;
        f.wind = j.at("wind").get<std::string>();
        f.solar = j.at("solar").get<std::string>();
    } else {
        throw Error("bad-config", "unknown factor formula '" + formula + "'");
    }
    f.denominator = j.at("denominator").get<std::string>();
    if (j.contains("variant")) f.variant = j.at("variant").get<std::string>();
    return f;
}

}  // namespace

ProtocolConfig RunConfig::protocol_config() const {
    ProtocolConfig p;
    p.forecast_variables = forecast_variables;
    p.forecaster_specs = forecaster_specs;
    p.factors = factors;
    p.future_covariates = future_covariates;
    p.target_column = target_column();
    p.reale_like_standardize = mode == "reale_like";
    p.use_gbdt = use_gbdt;
    p.gbdt = gbdt;
    p.ridge_lambda = ridge_lambda;
    p.difficulty_theta = difficulty_theta;
    p.difficulty_jump_theta = difficulty_jump_theta;
    p.jobs = jobs;
    return p;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("io", "cannot open config '" + path + "'");
    json j = json::parse(in);
    reject_unknown(j,
                   {"mode", "target", "seed", "jobs", "paths", "scenario_file", "registry_file",
                    "ingest_resolution_minutes", "protocol", "stage1", "factors",
                    "future_covariates", "regressor", "difficulty", "stage_window",
                    "external_forecast_file"},
                   "config root");

    RunConfig cfg;
    if (j.contains("mode")) cfg.mode = j.at("mode").get<std::string>();
    if (cfg.mode != "shanxi_like" && cfg.mode != "reale_like")
        throw Error("bad-config", "mode must be shanxi_like or reale_like");
    if (j.contains("target")) cfg.target = j.at("target").get<std::string>();
    if (cfg.target != "day_ahead" && cfg.target != "real_time")
        throw Error("bad-config", "target must be day_ahead or real_time");
    if (j.contains("seed")) cfg.seed = j.at("seed").get<uint64_t>();
    if (j.contains("jobs")) cfg.jobs = j.at("jobs").get<int>();

    if (j.contains("paths")) {
        const json& p = j.at("paths");
        reject_unknown(p, {"data", "sidecar", "cache", "output"}, "paths");
        if (p.contains("data")) cfg.data_csv = p.at("data").get<std::string>();
        if (p.contains("sidecar")) cfg.data_sidecar = p.at("sidecar").get<std::string>();
        if (p.contains("cache")) cfg.cache_dir = p.at("cache").get<std::string>();
        if (p.contains("output")) cfg.output_dir = p.at("output").get<std::string>();
    }
    if (cfg.data_sidecar.empty() && !cfg.data_csv.empty())
        cfg.data_sidecar = cfg.data_csv + ".meta.json";

    if (j.contains("scenario_file")) cfg.scenario_file = j.at("scenario_file").get<std::string>();
    if (j.contains("registry_file")) cfg.registry_file = j.at("registry_file").get<std::string>();
    if (j.contains("external_forecast_file"))
        cfg.external_forecast_file = j.at("external_forecast_file").get<std::string>();
    if (j.contains("ingest_resolution_minutes"))
        cfg.ingest_resolution_minutes = j.at("ingest_resolution_minutes").get<int>();

    if (j.contains("protocol")) {
        const json& p = j.at("protocol");
        reject_unknown(p, {"test_months", "train_months", "val_months", "workday_filter",
                           "holiday_file"},
                       "protocol");
        if (p.contains("test_months"))
            for (const auto& m : p.at("test_months"))
                cfg.test_months.push_back(YearMonth::parse(m.get<std::string>()));
        if (p.contains("train_months")) cfg.train_months = p.at("train_months").get<int>();
        if (p.contains("val_months")) cfg.val_months = p.at("val_months").get<int>();
        if (p.contains("workday_filter")) cfg.workday_filter = p.at("workday_filter").get<bool>();
        if (p.contains("holiday_file")) cfg.holiday_file = p.at("holiday_file").get<std::string>();
    }

    if (j.contains("stage1")) {
        const json& s = j.at("stage1");
        reject_unknown(s, {"variables", "forecasters"}, "stage1");
        if (s.contains("variables"))
            cfg.forecast_variables = s.at("variables").get<std::vector<std::string>>();
        if (s.contains("forecasters"))
            for (const auto& [name, spec] : s.at("forecasters").items())
                cfg.forecaster_specs[name] = parse_forecaster(spec, "forecasters." + name);
    }
    if (cfg.forecaster_specs.empty())
        cfg.forecaster_specs["default"] = ForecasterSpec{};

    if (j.contains("factors"))
        for (const auto& f : j.at("factors")) cfg.factors.push_back(parse_factor(f));
    if (j.contains("future_covariates"))
        cfg.future_covariates = j.at("future_covariates").get<std::vector<std::string>>();

    if (j.contains("regressor")) {
        const json& r = j.at("regressor");
        reject_unknown(r, {"type", "lambda", "gbdt"}, "regressor");
        const std::string type = r.at("type").get<std::string>();
        if (type == "gbdt") {
            cfg.use_gbdt = true;
            bool seed_given = false;
            if (r.contains("gbdt")) {
                const json& g = r.at("gbdt");
                reject_unknown(g,
                               {"learning_rate", "num_leaves", "feature_fraction",
                                "bagging_fraction", "bagging_freq", "min_gain_to_split",
                                "max_rounds", "early_stopping_rounds", "l2_leaf_reg",
                                "min_samples_leaf", "max_bins", "seed"},
                               "regressor.gbdt");
                GbdtParams& gp = cfg.gbdt;
                if (g.contains("learning_rate")) gp.learning_rate = g.at("learning_rate").get<double>();
                if (g.contains("num_leaves")) gp.num_leaves = g.at("num_leaves").get<int>();
                if (g.contains("feature_fraction"))
                    gp.feature_fraction = g.at("feature_fraction").get<double>();
                if (g.contains("bagging_fraction"))
                    gp.bagging_fraction = g.at("bagging_fraction").get<double>();
                if (g.contains("bagging_freq")) gp.bagging_freq = g.at("bagging_freq").get<int>();
                if (g.contains("min_gain_to_split"))
                    gp.min_gain_to_split = g.at("min_gain_to_split").get<double>();
                if (g.contains("max_rounds")) gp.max_rounds = g.at("max_rounds").get<int>();
                if (g.contains("early_stopping_rounds"))
                    gp.early_stopping_rounds = g.at("early_stopping_rounds").get<int>();
                if (g.contains("l2_leaf_reg")) gp.l2_leaf_reg = g.at("l2_leaf_reg").get<double>();
                if (g.contains("min_samples_leaf"))
                    gp.min_samples_leaf = g.at("min_samples_leaf").get<int>();
                if (g.contains("max_bins")) gp.max_bins = g.at("max_bins").get<int>();
                if (g.contains("seed")) {
                    gp.seed = g.at("seed").get<uint64_t>();
                    seed_given = true;
                }
            }
            if (!seed_given) cfg.gbdt.seed = cfg.seed;
        } else if (type == "ridge") {
            cfg.use_gbdt = false;
            if (r.contains("lambda")) cfg.ridge_lambda = r.at("lambda").get<double>();
        } else {
            throw Error("bad-config", "regressor type must be gbdt or ridge");
        }
    } else {
        cfg.gbdt.seed = cfg.seed;
    }

    if (j.contains("difficulty")) {
        const json& d = j.at("difficulty");
        reject_unknown(d, {"extreme_threshold", "jump_threshold"}, "difficulty");
        if (d.contains("extreme_threshold"))
            cfg.difficulty_theta = d.at("extreme_threshold").get<double>();
        if (d.contains("jump_threshold"))
            cfg.difficulty_jump_theta = d.at("jump_threshold").get<double>();
    }
    if (j.contains("stage_window")) cfg.stage_window = j.at("stage_window").get<std::string>();

    require_file(cfg.scenario_file, "scenario file");
    require_file(cfg.registry_file, "registry file");
    require_file(cfg.holiday_file, "holiday file");
    require_file(cfg.external_forecast_file, "external forecast file");
    return cfg;
}

}  // namespace epf
