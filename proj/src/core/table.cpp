#include "epf/core/table.hpp"

#include <algorithm>
#include <unordered_set>

#include "epf/error.hpp"

namespace epf {

std::string to_string(AvailabilityClass c) {
    switch (c) {
        case AvailabilityClass::target: return "target";
        case AvailabilityClass::historical_exogenous: return "historical_exogenous";
        case AvailabilityClass::future_available_exogenous: return "future_available_exogenous";
        case AvailabilityClass::constructed_factor: return "constructed_factor";
        case AvailabilityClass::forecasted_feature: return "forecasted_feature";
    }
    return "?";
}

AvailabilityClass availability_from_string(const std::string& s) {
    if (s == "target") return AvailabilityClass::target;
    if (s == "historical_exogenous") return AvailabilityClass::historical_exogenous;
    if (s == "future_available_exogenous") return AvailabilityClass::future_available_exogenous;
    if (s == "constructed_factor") return AvailabilityClass::constructed_factor;
    if (s == "forecasted_feature") return AvailabilityClass::forecasted_feature;
    throw Error("bad-availability", "unknown availability class '" + s + "'");
}

TimeSeriesTable::TimeSeriesTable(int resolution_minutes, std::vector<Timestamp> index,
                                 std::vector<Column> columns)
    : resolution_(resolution_minutes), index_(std::move(index)), columns_(std::move(columns)) {
    if (resolution_ <= 0 || 1440 % resolution_ != 0)
        throw Error("bad-resolution",
                    "resolution must divide 1440 minutes, got " + std::to_string(resolution_));
    for (size_t i = 0; i < index_.size(); ++i) {
        if (index_[i].minutes_since_epoch() % resolution_ != 0)
            throw Error("off-grid-timestamp", index_[i].iso() + " is not on the " +
                                                  std::to_string(resolution_) + "-minute grid");
        if (i > 0 && index_[i] <= index_[i - 1])
            throw Error("unsorted-index", "index not strictly increasing at " + index_[i].iso());
    }
    std::unordered_set<std::string> names;
    for (const auto& c : columns_) {
        if (!names.insert(c.name).second)
            throw Error("duplicate-column", "duplicate column name '" + c.name + "'");
        if (c.values.size() != index_.size() || c.missing.size() != index_.size())
            throw Error("length-mismatch",
                        "column '" + c.name + "' length does not match index");
    }
}

bool TimeSeriesTable::has_column(const std::string& name) const {
    for (const auto& c : columns_)
        if (c.name == name) return true;
    return false;
}

const Column& TimeSeriesTable::column(const std::string& name) const {
    for (const auto& c : columns_)
        if (c.name == name) return c;
    throw Error("unknown-column", "no column named '" + name + "'");
}

std::optional<size_t> TimeSeriesTable::row_of(Timestamp t) const {
    auto it = std::lower_bound(index_.begin(), index_.end(), t);
    if (it == index_.end() || *it != t) return std::nullopt;
    return static_cast<size_t>(it - index_.begin());
}

std::optional<double> TimeSeriesTable::at(Timestamp t, const std::string& column_name) const {
    auto r = row_of(t);
    if (!r) return std::nullopt;
    const Column& c = column(column_name);
    if (c.missing[*r]) return std::nullopt;
    return c.values[*r];
}

}  // namespace epf
