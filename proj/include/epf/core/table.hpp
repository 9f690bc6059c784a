#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "epf/core/time.hpp"

namespace epf {

/// Planning-time availability of a column. Every column carries exactly one.
enum class AvailabilityClass {
    target,                      // day-ahead / real-time clearing price
    historical_exogenous,        // observed only up to the issue day
    future_available_exogenous,  // published in advance for the forecast day
    constructed_factor,          // derived market-structure factor
    forecasted_feature,          // stage-1 forecast of a driver
};

std::string to_string(AvailabilityClass c);
AvailabilityClass availability_from_string(const std::string& s);

struct Column {
    std::string name;
    AvailabilityClass availability = AvailabilityClass::historical_exogenous;
    std::string unit;
    std::vector<double> values;
    std::vector<uint8_t> missing;  // 1 = missing; parallel to values
};

/// Timestamp-indexed panel shared by the whole pipeline. Immutable once
/// built; cheap to share between threads by const reference.
class TimeSeriesTable {
public:
    /// Index must be strictly increasing and aligned to the resolution grid;
    /// every column must match the index length; names must be unique.
    TimeSeriesTable(int resolution_minutes, std::vector<Timestamp> index,
                    std::vector<Column> columns);

    int resolution_minutes() const { return resolution_; }
    int steps_per_day() const { return 1440 / resolution_; }
    size_t rows() const { return index_.size(); }

    const std::vector<Timestamp>& index() const { return index_; }
    const std::vector<Column>& columns() const { return columns_; }

    bool has_column(const std::string& name) const;
    const Column& column(const std::string& name) const;

    /// Row position of a timestamp, or nullopt when absent from the index.
    std::optional<size_t> row_of(Timestamp t) const;

    /// Value at (timestamp, column); nullopt when the row is absent or masked.
    std::optional<double> at(Timestamp t, const std::string& column) const;

private:
    int resolution_;
    std::vector<Timestamp> index_;
    std::vector<Column> columns_;
};

/// One forecast day: H consecutive steps covering a single calendar date.
struct DayWindow {
    Date day;
    std::vector<Timestamp> steps;
};

}  // namespace epf
