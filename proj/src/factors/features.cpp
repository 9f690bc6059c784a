#include "epf/factors/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include <json.hpp>

#include "epf/error.hpp"
#include "epf/factors/factors.hpp"
#include "epf/ingest/csv.hpp"

namespace epf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::forecasted_feature: return "forecasted_feature";
        case Provenance::constructed_factor: return "constructed_factor";
        case Provenance::future_available: return "future_available";
        case Provenance::calendar: return "calendar";
    }
    return "?";
}

Provenance provenance_from_string(const std::string& s) {
    if (s == "forecasted_feature") return Provenance::forecasted_feature;
    if (s == "constructed_factor") return Provenance::constructed_factor;
    if (s == "future_available") return Provenance::future_available;
    if (s == "calendar") return Provenance::calendar;
    throw Error("bad-provenance", "unknown provenance '" + s + "'");
}

int FeatureMatrix::column_index(const std::string& name) const {
    for (size_t i = 0; i < columns.size(); ++i)
        if (columns[i].name == name) return static_cast<int>(i);
    return -1;
}

std::vector<double> FeatureMatrix::row(size_t r) const {
    std::vector<double> out(columns.size());
    for (size_t c = 0; c < columns.size(); ++c) out[c] = values[c][r];
    return out;
}

namespace {

/// Resolves a factor binding for one window: stage-1 forecast entries win,
/// then future-available table columns; historical columns are rejected.
std::vector<double> resolve_binding(const std::string& name, const TimeSeriesTable& table,
                                    const DayWindow& window, const ForecastSet& fs) {
    auto it = fs.entries.find(name);
    if (it != fs.entries.end()) return it->second;
    if (table.has_column(name)) {
        const Column& col = table.column(name);
        if (col.availability != AvailabilityClass::future_available_exogenous)
            throw Error("availability-violation",
                        "factor binding '" + name + "' is " + to_string(col.availability) +
                            ", not future-available or forecasted");
        std::vector<double> out(window.steps.size(), kNaN);
        for (size_t i = 0; i < window.steps.size(); ++i)
            if (auto v = table.at(window.steps[i], name)) out[i] = *v;
        return out;
    }
    throw Error("unknown-column", "factor binding '" + name + "' not found in forecasts or table");
}

std::vector<double> compute_factor(const FactorSpec& spec, const TimeSeriesTable& table,
                                   const DayWindow& window, const ForecastSet& fs) {
    auto to_nan = [](const std::vector<std::optional<double>>& in) {
        std::vector<double> out(in.size());
        for (size_t i = 0; i < in.size(); ++i) out[i] = in[i] ? *in[i] : kNaN;
        return out;
    };
    switch (spec.formula) {
        case FactorSpec::Formula::thermal_auction_space: {
            auto cap = resolve_binding(spec.capacity, table, window, fs);
            auto com = resolve_binding(spec.committed, table, window, fs);
            auto den = resolve_binding(spec.denominator, table, window, fs);
            return to_nan(thermal_auction_space(cap, com, den));
        }
        case FactorSpec::Formula::renewable_ratio: {
            auto wind = resolve_binding(spec.wind, table, window, fs);
            auto solar = resolve_binding(spec.solar, table, window, fs);
            auto den = resolve_binding(spec.denominator, table, window, fs);
            return to_nan(renewable_ratio(wind, solar, den));
        }
    }
    throw Error("bad-spec", "unknown factor formula");
}

}  // namespace

FeatureMatrix assemble_features(const TimeSeriesTable& table,
                                const std::vector<DayWindow>& windows,
                                const std::map<Date, ForecastSet>& forecasts_by_day,
                                const std::vector<FactorSpec>& factors,
                                const std::vector<std::string>& future_covariates,
                                const std::string& target_column) {
    const size_t H = static_cast<size_t>(table.steps_per_day());

    std::vector<const DayWindow*> ordered;
    ordered.reserve(windows.size());
    for (const auto& w : windows) ordered.push_back(&w);
    std::sort(ordered.begin(), ordered.end(),
              [](const DayWindow* a, const DayWindow* b) { return a->day < b->day; });

    const Column& target_col = table.column(target_column);
    if (target_col.availability != AvailabilityClass::target)
        throw Error("availability-violation",
                    "target column '" + target_column + "' is tagged " +
                        to_string(target_col.availability));

    for (const auto& name : future_covariates) {
        const Column& col = table.column(name);
        if (col.availability != AvailabilityClass::future_available_exogenous)
            throw Error("availability-violation",
                        "covariate '" + name + "' is tagged " + to_string(col.availability) +
                            "; only future-available columns may enter the matrix directly");
    }

    // Forecast variables must be consistent across windows.
    std::vector<std::string> forecast_vars;
    if (!ordered.empty()) {
        auto first = forecasts_by_day.find(ordered.front()->day);
        if (first == forecasts_by_day.end())
            throw Error("missing-forecast",
                        "no forecast set for day " + ordered.front()->day.iso());
        for (const auto& [var, _] : first->second.entries) forecast_vars.push_back(var);
    }

    FeatureMatrix m;
    for (const auto& var : forecast_vars)
        m.columns.push_back({var + "_fc", Provenance::forecasted_feature});
    for (const auto& f : factors) m.columns.push_back({f.name, Provenance::constructed_factor});
    for (const auto& name : future_covariates)
        m.columns.push_back({name, Provenance::future_available});
    m.columns.push_back({"month", Provenance::calendar});
    m.columns.push_back({"weekday", Provenance::calendar});
    m.columns.push_back({"day", Provenance::calendar});
    {
        std::set<std::string> seen;
        for (const auto& c : m.columns)
            if (!seen.insert(c.name).second)
                throw Error("duplicate-column", "feature '" + c.name + "' appears twice");
    }

    m.values.assign(m.columns.size(), {});
    for (auto& v : m.values) v.reserve(ordered.size() * H);
    m.timestamps.reserve(ordered.size() * H);
    m.target.reserve(ordered.size() * H);

    for (const DayWindow* w : ordered) {
        if (w->steps.size() != H)
            throw Error("gap-in-index", "window " + w->day.iso() + " does not have H steps");
        auto fit = forecasts_by_day.find(w->day);
        if (fit == forecasts_by_day.end())
            throw Error("missing-forecast", "no forecast set for day " + w->day.iso());
        const ForecastSet& fs = fit->second;

        size_t col = 0;
        for (const auto& var : forecast_vars) {
            auto eit = fs.entries.find(var);
            if (eit == fs.entries.end())
                throw Error("missing-forecast",
                            "day " + w->day.iso() + " lacks a forecast for '" + var + "'");
            if (eit->second.size() != H)
                throw Error("horizon-length-mismatch",
                            "forecast for '" + var + "' has wrong horizon");
            auto& dst = m.values[col++];
            dst.insert(dst.end(), eit->second.begin(), eit->second.end());
        }
        for (const auto& f : factors) {
            std::vector<double> vals = compute_factor(f, table, *w, fs);
            auto& dst = m.values[col++];
            dst.insert(dst.end(), vals.begin(), vals.end());
        }
        for (const auto& name : future_covariates) {
            auto& dst = m.values[col++];
            for (const auto& t : w->steps) {
                auto v = table.at(t, name);
                dst.push_back(v ? *v : kNaN);
            }
        }
        CalendarFeatures cal = calendar_features(*w);
        m.values[col].insert(m.values[col].end(), cal.month.begin(), cal.month.end());
        m.values[col + 1].insert(m.values[col + 1].end(), cal.weekday.begin(),
                                 cal.weekday.end());
        m.values[col + 2].insert(m.values[col + 2].end(), cal.day.begin(), cal.day.end());

        for (const auto& t : w->steps) {
            m.timestamps.push_back(t);
            auto v = table.at(t, target_column);
            m.target.push_back(v ? *v : kNaN);
        }
    }
    return m;
}

void save_feature_matrix(const FeatureMatrix& m, const std::string& csv_path,
                         const std::string& sidecar_path) {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw Error("io", "cannot write '" + csv_path + "'");
    out << "timestamp";
    for (const auto& c : m.columns) out << ',' << csv_escape(c.name);
    out << ",target\n";
    for (size_t r = 0; r < m.rows(); ++r) {
        out << m.timestamps[r].iso();
        for (size_t c = 0; c < m.columns.size(); ++c) {
            out << ',';
            if (!std::isnan(m.values[c][r])) out << format_double(m.values[c][r]);
        }
        out << ',';
        if (!std::isnan(m.target[r])) out << format_double(m.target[r]);
        out << '\n';
    }
    out.close();

    nlohmann::json side;
    nlohmann::json prov = nlohmann::json::object();
    for (const auto& c : m.columns) prov[c.name] = to_string(c.provenance);
    side["provenance"] = prov;
    nlohmann::json order = nlohmann::json::array();
    for (const auto& c : m.columns) order.push_back(c.name);
    side["column_order"] = order;
    std::ofstream sout(sidecar_path, std::ios::binary);
    if (!sout) throw Error("io", "cannot write '" + sidecar_path + "'");
    sout << side.dump(2) << '\n';
}

FeatureMatrix load_feature_matrix(const std::string& csv_path,
                                  const std::string& sidecar_path) {
    std::ifstream sin(sidecar_path);
    if (!sin) throw Error("io", "cannot open '" + sidecar_path + "'");
    nlohmann::json side = nlohmann::json::parse(sin);

    CsvData csv = read_csv(csv_path);
    if (csv.header.size() < 2 || csv.header.front() != "timestamp" ||
        csv.header.back() != "target")
        throw Error("bad-format", "feature CSV must be timestamp,...,target");

    FeatureMatrix m;
    const auto& prov = side.at("provenance");
    for (size_t c = 1; c + 1 < csv.header.size(); ++c) {
        const std::string& name = csv.header[c];
        if (!prov.contains(name))
            throw Error("bad-format", "sidecar lacks provenance for '" + name + "'");
        m.columns.push_back({name, provenance_from_string(prov.at(name).get<std::string>())});
    }
    m.values.assign(m.columns.size(), std::vector<double>(csv.rows.size(), kNaN));
    m.target.assign(csv.rows.size(), kNaN);
    m.timestamps.reserve(csv.rows.size());
    for (size_t r = 0; r < csv.rows.size(); ++r) {
        m.timestamps.push_back(Timestamp::parse(csv.rows[r][0]));
        for (size_t c = 0; c < m.columns.size(); ++c) {
            const std::string& f = csv.rows[r][c + 1];
            if (!f.empty()) m.values[c][r] = std::strtod(f.c_str(), nullptr);
        }
        const std::string& tf = csv.rows[r].back();
        if (!tf.empty()) m.target[r] = std::strtod(tf.c_str(), nullptr);
    }
    return m;
}

}  // namespace epf
