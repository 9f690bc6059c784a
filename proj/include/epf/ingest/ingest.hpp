#pragma once

#include <string>
#include <vector>

#include "epf/core/table.hpp"

namespace epf {

/// One entry of the column-spec registry: where a canonical column comes
/// from and how it behaves at planning time.
struct ColumnSpec {
    std::string source_file;
    std::string source_column;
    std::string canonical_name;
    AvailabilityClass availability = AvailabilityClass::historical_exogenous;
    std::string unit;
};

enum class MissingPolicy { mask_through, forward_fill };

/// Loads every source file, aligns all series onto one contiguous grid at
/// the given resolution and returns a single table. The index spans the
/// union of source timestamps; cells a source does not cover are masked.
TimeSeriesTable ingest_sources(const std::vector<ColumnSpec>& specs, int resolution_minutes,
                               MissingPolicy policy = MissingPolicy::mask_through);

/// Canonical on-disk form: CSV with `timestamp` first and columns in table
/// order (empty field = missing) plus a JSON sidecar with resolution,
/// availability classes and units.
void save_canonical_table(const TimeSeriesTable& table, const std::string& csv_path,
                          const std::string& sidecar_path);
TimeSeriesTable load_canonical_table(const std::string& csv_path,
                                     const std::string& sidecar_path);

/// Registry file: JSON array of {file, source_column, canonical_name,
/// availability, unit} objects.
std::vector<ColumnSpec> load_column_registry(const std::string& path);

}  // namespace epf
