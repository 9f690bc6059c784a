#include "epf/core/time.hpp"

#include <chrono>
#include <cstdio>

#include "epf/error.hpp"

namespace epf {

namespace {

std::chrono::year_month_day ymd_of(int32_t days) {
    return std::chrono::year_month_day(
        std::chrono::sys_days(std::chrono::days(days)));
}

}  // namespace

Date::Date(int year, int month, int day) {
    using namespace std::chrono;
    year_month_day ymd{std::chrono::year(year), std::chrono::month(unsigned(month)),
                       std::chrono::day(unsigned(day))};
    if (!ymd.ok())
        throw Error("bad-date", "invalid calendar date " + std::to_string(year) + "-" +
                                    std::to_string(month) + "-" + std::to_string(day));
    days_ = static_cast<int32_t>(sys_days(ymd).time_since_epoch().count());
}

Date Date::parse(const std::string& iso) {
    int y = 0, m = 0, d = 0;
    char dash1 = 0, dash2 = 0;
    if (std::sscanf(iso.c_str(), "%d%c%d%c%d", &y, &dash1, &m, &dash2, &d) != 5 ||
        dash1 != '-' || dash2 != '-')
        throw Error("unparsable-timestamp", "cannot parse date '" + iso + "'");
    return Date(y, m, d);
}

int Date::year() const { return int(ymd_of(days_).year()); }
int Date::month() const { return int(unsigned(ymd_of(days_).month())); }
int Date::day() const { return int(unsigned(ymd_of(days_).day())); }

int Date::weekday() const {
    std::chrono::weekday wd{std::chrono::sys_days(std::chrono::days(days_))};
    return int(wd.iso_encoding()) - 1;  // Monday=0 .. Sunday=6
}

std::string Date::iso() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year(), month(), day());
    return buf;
}

Timestamp Timestamp::parse(const std::string& iso) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    char sep = 0;
    int n = std::sscanf(iso.c_str(), "%d-%d-%d%c%d:%d:%d", &y, &mo, &d, &sep, &h, &mi, &s);
    if (n < 6 || (sep != 'T' && sep != ' '))
        throw Error("unparsable-timestamp", "cannot parse timestamp '" + iso + "'");
    if (n == 7 && s != 0)
        throw Error("unparsable-timestamp", "sub-minute timestamp '" + iso + "'");
    if (h < 0 || h > 23 || mi < 0 || mi > 59)
        throw Error("unparsable-timestamp", "time of day out of range in '" + iso + "'");
    return Timestamp(Date(y, mo, d), h * 60 + mi);
}

Date Timestamp::date() const {
    int64_t d = minutes_ >= 0 ? minutes_ / 1440 : (minutes_ - 1439) / 1440;
    return Date(static_cast<int32_t>(d));
}

int Timestamp::minute_of_day() const {
    return static_cast<int>(minutes_ - static_cast<int64_t>(date().days_since_epoch()) * 1440);
}

std::string Timestamp::iso() const {
    Date d = date();
    int mod = minute_of_day();
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:00", d.year(), d.month(),
                  d.day(), mod / 60, mod % 60);
    return buf;
}

YearMonth YearMonth::parse(const std::string& s) {
    int y = 0, m = 0;
    char dash = 0;
    if (std::sscanf(s.c_str(), "%d%c%d", &y, &dash, &m) != 3 || dash != '-' || m < 1 || m > 12)
        throw Error("bad-month", "cannot parse month '" + s + "'");
    return YearMonth(y, m);
}

std::string YearMonth::str() const {
    char buf[12];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", year(), month());
    return buf;
}

std::vector<Date> date_range(Date first, Date last) {
    std::vector<Date> out;
    for (Date d = first; d <= last; d = d.next()) out.push_back(d);
    return out;
}

}  // namespace epf
