#pragma once

#include <set>
#include <vector>

#include "epf/core/table.hpp"
#include "epf/core/time.hpp"

namespace epf {

/// One rolling-origin evaluation window: train months, then validation
/// months, then a single test month, disjoint and contiguous in that order.
struct RollingSplit {
    YearMonth test_month;
    Date train_first, train_last;  // empty range when train_months == 0
    Date val_first, val_last;      // empty range when val_months == 0
    bool workday_filter = false;
    std::set<Date> holiday_calendar;

    bool has_train() const { return train_first <= train_last; }
    bool has_val() const { return val_first <= val_last; }
    Date test_first() const { return test_month.first_day(); }
    Date test_last() const { return test_month.last_day(); }

    /// Dates of each range after the workday/holiday filter (when enabled).
    std::vector<Date> train_dates() const;
    std::vector<Date> val_dates() const;
    std::vector<Date> test_dates() const;
};

/// One DayWindow per calendar date in [first, last]; each must have exactly
/// H index rows at the table's resolution, else "gap-in-index".
std::vector<DayWindow> enumerate_day_windows(const TimeSeriesTable& table, Date first,
                                             Date last);

/// Same, for an explicit (possibly non-contiguous) date list.
std::vector<DayWindow> day_windows_for_dates(const TimeSeriesTable& table,
                                             const std::vector<Date>& dates);

/// One split per test month: train_m months, then val_m months, then the
/// test month. Throws "insufficient-history" via the caller's table checks
/// only at run time; the split arithmetic itself is pure calendar math.
std::vector<RollingSplit> build_rolling_splits(const std::vector<YearMonth>& test_months,
                                               int train_m, int val_m);

/// Drops Saturdays, Sundays and calendar members; preserves order.
std::vector<Date> filter_workdays(const std::vector<Date>& dates,
                                  const std::set<Date>& holiday_calendar);

/// Holiday file: one ISO date per line, '#' comments and blank lines ignored.
std::set<Date> load_holiday_calendar(const std::string& path);

}  // namespace epf
