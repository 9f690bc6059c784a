#include "epf/forecast/external.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "epf/error.hpp"
#include "epf/hash.hpp"
#include "epf/ingest/csv.hpp"

namespace epf {

ForecastSet load_external_forecasts(const std::string& path, Date issue_day,
                                    const std::vector<std::string>& variables, int horizon) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("io", "cannot open external forecast file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    CsvData csv = parse_csv(text);
    int vcol = csv.column_index("variable");
    int dcol = csv.column_index("issue_day");
    int scol = csv.column_index("step");
    int valcol = csv.column_index("value");
    if (vcol < 0 || dcol < 0 || scol < 0 || valcol < 0)
        throw Error("bad-format",
                    "external forecast file must have variable,issue_day,step,value columns");

    std::set<std::string> wanted(variables.begin(), variables.end());
    std::set<std::string> ignored;
    std::map<std::string, std::map<int, double>> collected;
    for (const auto& row : csv.rows) {
        if (Date::parse(row[dcol]) != issue_day) continue;
        const std::string& var = row[vcol];
        if (!wanted.count(var)) {
            ignored.insert(var);
            continue;
        }
        int step = std::atoi(row[scol].c_str());
        if (step < 1 || step > horizon)
            throw Error("horizon-length-mismatch",
                        "step " + row[scol] + " outside 1.." + std::to_string(horizon));
        char* end = nullptr;
        double v = std::strtod(row[valcol].c_str(), &end);
        if (end == row[valcol].c_str() || *end != '\0')
            throw Error("bad-number", "cannot parse value '" + row[valcol] + "'");
        collected[var][step] = v;
    }
    for (const auto& var : ignored)
        std::cerr << "[external] ignoring unrequested variable '" << var << "' in " << path
                  << "\n";

    ForecastSet set;
    set.issue_day = issue_day;
    set.horizon_day = issue_day.next();
    set.horizon = horizon;
    char fh[20];
    std::snprintf(fh, sizeof(fh), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(text.data(), text.size())));
    set.forecaster_id = std::string("external:") + fh;

    for (const auto& var : variables) {
        auto it = collected.find(var);
        if (it == collected.end())
            throw Error("unknown-variable",
                        "variable '" + var + "' absent from '" + path + "' for " +
                            issue_day.iso());
        if (static_cast<int>(it->second.size()) != horizon)
            throw Error("horizon-length-mismatch",
                        "variable '" + var + "' has " + std::to_string(it->second.size()) +
                            " steps, expected " + std::to_string(horizon));
        std::vector<double> values(horizon);
        for (const auto& [step, v] : it->second) values[step - 1] = v;
        set.entries[var] = std::move(values);
        set.cache_keys[var] = set.forecaster_id;
    }
    return set;
}

}  // namespace epf
