#include "epf/core/windows.hpp"

#include <algorithm>
#include <fstream>

#include "epf/error.hpp"

namespace epf {

namespace {

std::vector<Date> filtered_range(Date first, Date last, bool workday_filter,
                                 const std::set<Date>& holidays) {
    if (first > last) return {};
    std::vector<Date> dates = date_range(first, last);
    if (!workday_filter) return dates;
    return filter_workdays(dates, holidays);
}

}  // namespace

std::vector<Date> RollingSplit::train_dates() const {
    return filtered_range(train_first, train_last, workday_filter, holiday_calendar);
}

std::vector<Date> RollingSplit::val_dates() const {
    return filtered_range(val_first, val_last, workday_filter, holiday_calendar);
}

std::vector<Date> RollingSplit::test_dates() const {
    return filtered_range(test_first(), test_last(), workday_filter, holiday_calendar);
}

std::vector<DayWindow> enumerate_day_windows(const TimeSeriesTable& table, Date first,
                                             Date last) {
    return day_windows_for_dates(table, date_range(first, last));
}

std::vector<DayWindow> day_windows_for_dates(const TimeSeriesTable& table,
                                             const std::vector<Date>& dates) {
    const int H = table.steps_per_day();
    const int res = table.resolution_minutes();
    std::vector<DayWindow> out;
    out.reserve(dates.size());
    for (Date d : dates) {
        DayWindow w;
        w.day = d;
        w.steps.reserve(H);
        for (int h = 0; h < H; ++h) {
            Timestamp t(d, h * res);
            if (!table.row_of(t))
                throw Error("gap-in-index", "date " + d.iso() + " is missing step " + t.iso());
            w.steps.push_back(t);
        }
        out.push_back(std::move(w));
    }
    return out;
}

std::vector<RollingSplit> build_rolling_splits(const std::vector<YearMonth>& test_months,
                                               int train_m, int val_m) {
    if (train_m < 0 || val_m < 0)
        throw Error("bad-split", "train/val month counts must be non-negative");
    std::vector<YearMonth> months = test_months;
    std::sort(months.begin(), months.end());
    months.erase(std::unique(months.begin(), months.end()), months.end());

    std::vector<RollingSplit> splits;
    splits.reserve(months.size());
    for (const YearMonth& tm : months) {
        RollingSplit s;
        s.test_month = tm;
        YearMonth val_start = tm.plus_months(-val_m);
        YearMonth train_start = val_start.plus_months(-train_m);
        // Empty ranges are encoded first > last.
        s.val_first = val_start.first_day();
        s.val_last = val_m > 0 ? tm.plus_months(-1).last_day() : val_start.first_day().plus_days(-1);
        s.train_first = train_start.first_day();
        s.train_last = train_m > 0 ? val_start.plus_months(-1).last_day()
                                   : train_start.first_day().plus_days(-1);
        splits.push_back(std::move(s));
    }
    return splits;
}

std::vector<Date> filter_workdays(const std::vector<Date>& dates,
                                  const std::set<Date>& holiday_calendar) {
    std::vector<Date> out;
    out.reserve(dates.size());
    for (Date d : dates) {
        if (d.weekday() >= 5) continue;  // Saturday=5, Sunday=6
        if (holiday_calendar.count(d)) continue;
        out.push_back(d);
    }
    return out;
}

std::set<Date> load_holiday_calendar(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("io", "cannot open holiday file '" + path + "'");
    std::set<Date> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        size_t end = line.find_last_not_of(" \t");
        out.insert(Date::parse(line.substr(start, end - start + 1)));
    }
    return out;
}

}  // namespace epf
