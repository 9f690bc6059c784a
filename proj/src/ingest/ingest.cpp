#include "epf/ingest/ingest.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "epf/error.hpp"
#include "epf/ingest/csv.hpp"

namespace epf {

namespace {

double parse_value(const std::string& field, const std::string& context) {
    char* end = nullptr;
    double v = std::strtod(field.c_str(), &end);
    if (end == field.c_str() || *end != '\0')
        throw Error("bad-number", "cannot parse value '" + field + "' in " + context);
    return v;
}

void forward_fill(Column& col) {
    bool have = false;
    double last = 0.0;
    for (size_t i = 0; i < col.values.size(); ++i) {
        if (!col.missing[i]) {
            have = true;
            last = col.values[i];
        } else if (have) {
            col.values[i] = last;
            col.missing[i] = 0;
        }
    }
}

}  // namespace

TimeSeriesTable ingest_sources(const std::vector<ColumnSpec>& specs, int resolution_minutes,
                               MissingPolicy policy) {
    if (resolution_minutes <= 0 || 1440 % resolution_minutes != 0)
        throw Error("bad-resolution", "resolution must divide 1440 minutes");

    std::unordered_set<std::string> names;
    for (const auto& s : specs)
        if (!names.insert(s.canonical_name).second)
            throw Error("canonical-name-collision",
                        "canonical name '" + s.canonical_name + "' appears twice");

    // Parse each distinct source once; duplicate timestamps within one
    // source indicate corrupt data, duplicates across sources are a join.
    struct Source {
        std::vector<Timestamp> stamps;
        CsvData csv;
    };
    std::map<std::string, Source> sources;
    for (const auto& spec : specs) {
        if (sources.count(spec.source_file)) continue;
        Source src;
        src.csv = read_csv(spec.source_file);
        int tcol = src.csv.column_index("timestamp");
        if (tcol < 0)
            throw Error("missing-timestamp-column",
                        "'" + spec.source_file + "' has no `timestamp` column");
        std::set<Timestamp> seen;
        for (const auto& row : src.csv.rows) {
            Timestamp t = Timestamp::parse(row[tcol]);
            if (t.minutes_since_epoch() % resolution_minutes != 0)
                throw Error("off-grid-timestamp", t.iso() + " in '" + spec.source_file +
                                                      "' is not on the declared grid");
            if (!seen.insert(t).second)
                throw Error("duplicate-timestamp",
                            "'" + spec.source_file + "' repeats " + t.iso());
            src.stamps.push_back(t);
        }
        sources.emplace(spec.source_file, std::move(src));
    }

    Timestamp lo, hi;
    bool any = false;
    for (const auto& [file, src] : sources) {
        for (const Timestamp& t : src.stamps) {
            if (!any || t < lo) lo = t;
            if (!any || t > hi) hi = t;
            any = true;
        }
    }
    if (!any) throw Error("empty-input", "no rows in any source");

    // Contiguous grid over the covered span; sources fill what they have.
    std::vector<Timestamp> index;
    for (Timestamp t = lo; t <= hi; t = t.plus_minutes(resolution_minutes)) index.push_back(t);

    std::vector<Column> columns;
    columns.reserve(specs.size());
    for (const auto& spec : specs) {
        const Source& src = sources.at(spec.source_file);
        int vcol = src.csv.column_index(spec.source_column);
        if (vcol < 0)
            throw Error("unknown-column", "'" + spec.source_file + "' has no column '" +
                                              spec.source_column + "'");
        Column col;
        col.name = spec.canonical_name;
        col.availability = spec.availability;
        col.unit = spec.unit;
        col.values.assign(index.size(), 0.0);
        col.missing.assign(index.size(), 1);
        for (size_t r = 0; r < src.csv.rows.size(); ++r) {
            const std::string& field = src.csv.rows[r][vcol];
            if (field.empty()) continue;  // empty field = missing on disk
            size_t pos = static_cast<size_t>(
                (src.stamps[r].minutes_since_epoch() - lo.minutes_since_epoch()) /
                resolution_minutes);
            col.values[pos] = parse_value(field, spec.source_file);
            col.missing[pos] = 0;
        }
        if (policy == MissingPolicy::forward_fill) forward_fill(col);
        columns.push_back(std::move(col));
    }

    return TimeSeriesTable(resolution_minutes, std::move(index), std::move(columns));
}

void save_canonical_table(const TimeSeriesTable& table, const std::string& csv_path,
                          const std::string& sidecar_path) {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw Error("io", "cannot write '" + csv_path + "'");
    out << "timestamp";
    for (const auto& c : table.columns()) out << ',' << csv_escape(c.name);
    out << '\n';
    for (size_t r = 0; r < table.rows(); ++r) {
        out << table.index()[r].iso();
        for (const auto& c : table.columns()) {
            out << ',';
            if (!c.missing[r]) out << format_double(c.values[r]);
        }
        out << '\n';
    }
    out.close();

    nlohmann::json side;
    side["resolution_minutes"] = table.resolution_minutes();
    nlohmann::json cols = nlohmann::json::array();
    for (const auto& c : table.columns()) {
        cols.push_back({{"name", c.name},
                        {"availability", to_string(c.availability)},
                        {"unit", c.unit}});
    }
    side["columns"] = cols;
    std::ofstream sout(sidecar_path, std::ios::binary);
    if (!sout) throw Error("io", "cannot write '" + sidecar_path + "'");
    sout << side.dump(2) << '\n';
}

TimeSeriesTable load_canonical_table(const std::string& csv_path,
                                     const std::string& sidecar_path) {
    std::ifstream sin(sidecar_path);
    if (!sin) throw Error("io", "cannot open '" + sidecar_path + "'");
    nlohmann::json side = nlohmann::json::parse(sin);
    int resolution = side.at("resolution_minutes").get<int>();

    CsvData csv = read_csv(csv_path);
    if (csv.header.empty() || csv.header[0] != "timestamp")
        throw Error("bad-format", "'" + csv_path + "' must start with a `timestamp` column");

    std::vector<Timestamp> index;
    index.reserve(csv.rows.size());
    for (const auto& row : csv.rows) index.push_back(Timestamp::parse(row[0]));

    std::vector<Column> columns;
    const auto& meta = side.at("columns");
    if (meta.size() + 1 != csv.header.size())
        throw Error("bad-format", "sidecar column count does not match CSV");
    for (size_t c = 1; c < csv.header.size(); ++c) {
        const auto& m = meta[c - 1];
        if (m.at("name").get<std::string>() != csv.header[c])
            throw Error("bad-format", "sidecar order does not match CSV header");
        Column col;
        col.name = csv.header[c];
        col.availability = availability_from_string(m.at("availability").get<std::string>());
        col.unit = m.value("unit", "");
        col.values.assign(csv.rows.size(), 0.0);
        col.missing.assign(csv.rows.size(), 1);
        for (size_t r = 0; r < csv.rows.size(); ++r) {
            const std::string& field = csv.rows[r][c];
            if (field.empty()) continue;
            col.values[r] = parse_value(field, csv_path);
            col.missing[r] = 0;
        }
        columns.push_back(std::move(col));
    }
    return TimeSeriesTable(resolution, std::move(index), std::move(columns));
}

std::vector<ColumnSpec> load_column_registry(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("io", "cannot open registry '" + path + "'");
    nlohmann::json j = nlohmann::json::parse(in);
    if (!j.is_array()) throw Error("bad-format", "registry must be a JSON array");
    std::vector<ColumnSpec> specs;
    for (const auto& e : j) {
        ColumnSpec s;
        s.source_file = e.at("file").get<std::string>();
        s.source_column = e.at("source_column").get<std::string>();
        s.canonical_name = e.at("canonical_name").get<std::string>();
        s.availability = availability_from_string(e.at("availability").get<std::string>());
        s.unit = e.value("unit", "");
        specs.push_back(std::move(s));
    }
    return specs;
}

}  // namespace epf
