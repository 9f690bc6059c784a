#include "epf/forecast/cache.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "epf/error.hpp"
#include "epf/hash.hpp"
#include "epf/ingest/csv.hpp"

namespace fs = std::filesystem;

namespace epf {

namespace {

uint64_t values_checksum(const std::vector<double>& values) {
    std::string joined;
    for (double v : values) {
        joined += format_double(v);
        joined += ',';
    }
    return fnv1a64(joined.data(), joined.size());
}

}  // namespace

ForecastCache::ForecastCache(std::string directory) : dir_(std::move(directory)) {
    fs::create_directories(dir_);
}

std::string ForecastCache::path_of(const std::string& cache_key) const {
    return (fs::path(dir_) / (cache_key + ".fc.csv")).string();
}

std::optional<std::vector<double>> ForecastCache::get(const std::string& cache_key,
                                                      int horizon) const {
    std::string path = path_of(cache_key);
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        ++misses;
        return std::nullopt;
    }
    auto corrupt = [&](const std::string& why) -> std::optional<std::vector<double>> {
        std::cerr << "[cache] corrupt entry " << cache_key << " (" << why << "), recomputing\n";
        ++misses;
        return std::nullopt;
    };

    std::string comment;
    if (!std::getline(in, comment) || comment.rfind("# ", 0) != 0)
        return corrupt("missing header comment");
    auto cpos = comment.find("values_checksum=");
    if (cpos == std::string::npos) return corrupt("missing checksum");
    unsigned long long stored = 0;
    if (std::sscanf(comment.c_str() + cpos, "values_checksum=%llx", &stored) != 1)
        return corrupt("bad checksum field");

    std::ostringstream rest;
    rest << in.rdbuf();
    CsvData csv;
    try {
        csv = parse_csv(rest.str());
    } catch (const Error&) {
        return corrupt("unparsable body");
    }
    if (csv.header != std::vector<std::string>{"step", "value"}) return corrupt("bad columns");
    if (static_cast<int>(csv.rows.size()) != horizon) return corrupt("wrong row count");

    std::vector<double> values;
    values.reserve(csv.rows.size());
    for (size_t i = 0; i < csv.rows.size(); ++i) {
        if (csv.rows[i].size() != 2 || csv.rows[i][0] != std::to_string(i + 1))
            return corrupt("bad step column");
        char* end = nullptr;
        double v = std::strtod(csv.rows[i][1].c_str(), &end);
        if (end == csv.rows[i][1].c_str() || *end != '\0') return corrupt("bad value");
        values.push_back(v);
    }
    if (values_checksum(values) != stored) return corrupt("checksum mismatch");
    ++hits;
    return values;
}

void ForecastCache::put(const std::string& cache_key, const std::string& forecaster_id,
                        const std::string& variable, Date issue_day,
                        const std::vector<double>& values) const {
    static std::atomic<uint64_t> tmp_counter{0};
    std::string final_path = path_of(cache_key);
    std::string tmp_path = final_path + ".tmp" + std::to_string(tmp_counter.fetch_add(1));
    {
        std::ofstream out(tmp_path, std::ios::binary);
        if (!out) throw Error("io", "cannot write cache entry '" + tmp_path + "'");
        char csum[20];
        std::snprintf(csum, sizeof(csum), "%016llx",
                      static_cast<unsigned long long>(values_checksum(values)));
        out << "# forecaster_id=" << forecaster_id << " variable=" << variable
            << " issue_day=" << issue_day.iso() << " values_checksum=" << csum << '\n';
        out << "step,value\n";
        for (size_t i = 0; i < values.size(); ++i)
            out << (i + 1) << ',' << format_double(values[i]) << '\n';
    }
    fs::rename(tmp_path, final_path);
}

ForecastSet forecast_day_cached(const TimeSeriesTable& table,
                                const std::vector<std::string>& variables, Date issue_day,
                                const std::map<std::string, ForecasterSpec>& specs,
                                const ForecastCache* cache) {
    if (!cache) return forecast_day(table, variables, issue_day, specs);

    const int H = table.steps_per_day();
    ForecastSet set;
    set.issue_day = issue_day;
    set.horizon_day = issue_day.next();
    set.horizon = H;

    std::vector<std::string> ordered = variables;
    std::sort(ordered.begin(), ordered.end());
    const Timestamp boundary(set.horizon_day, 0);
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

        size_t end = 0;
        while (end < table.rows() && table.index()[end] < boundary) ++end;
        std::vector<double> hist(col.values.begin(), col.values.begin() + end);
        std::vector<uint8_t> miss(col.missing.begin(), col.missing.begin() + end);

        size_t ctx_len = std::min(hist.size(), static_cast<size_t>(spec.context_length));
        std::vector<double> ctx(hist.end() - ctx_len, hist.end());
        std::vector<uint8_t> ctx_miss(miss.end() - ctx_len, miss.end());
        std::string key = forecast_cache_key(spec.id(), name, issue_day, ctx, ctx_miss);

        std::vector<double> values;
        if (auto hit = cache->get(key, H)) {
            values = std::move(*hit);
        } else {
            values = forecast_variable(hist, miss, spec, H);
            cache->put(key, spec.id(), name, issue_day, values);
        }
        set.cache_keys[name] = key;
        set.entries[name] = std::move(values);
        if (joint_id.empty())
            joint_id = spec.id();
        else if (joint_id != spec.id())
            joint_id = "mixed";
    }
    set.forecaster_id = joint_id;
    return set;
}

}  // namespace epf
