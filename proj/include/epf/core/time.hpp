#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace epf {

/// Calendar date, stored as days since 1970-01-01. Market-local, no timezone.
class Date {
public:
    Date() : days_(0) {}
    explicit Date(int32_t days_since_epoch) : days_(days_since_epoch) {}
    Date(int year, int month, int day);

    static Date parse(const std::string& iso);  // "YYYY-MM-DD"

    int year() const;
    int month() const;   // 1..12
    int day() const;     // 1..31
    int weekday() const; // Monday=0 .. Sunday=6

    int32_t days_since_epoch() const { return days_; }
    Date next() const { return Date(days_ + 1); }
    Date plus_days(int n) const { return Date(days_ + n); }

    std::string iso() const;

    auto operator<=>(const Date&) const = default;

private:
    int32_t days_;
};

/// Wall-clock instant at fixed resolution, stored as minutes since epoch.
class Timestamp {
public:
    Timestamp() : minutes_(0) {}
    explicit Timestamp(int64_t minutes_since_epoch) : minutes_(minutes_since_epoch) {}
    Timestamp(Date d, int minute_of_day)
        : minutes_(static_cast<int64_t>(d.days_since_epoch()) * 1440 + minute_of_day) {}

    /// Accepts "YYYY-MM-DD{T| }HH:MM[:SS]"; seconds must be zero.
    static Timestamp parse(const std::string& iso);

    int64_t minutes_since_epoch() const { return minutes_; }
    Date date() const;
    int minute_of_day() const;

    std::string iso() const;  // "YYYY-MM-DDTHH:MM:00"

    Timestamp plus_minutes(int64_t m) const { return Timestamp(minutes_ + m); }
    auto operator<=>(const Timestamp&) const = default;

private:
    int64_t minutes_;
};

/// Calendar month, for rolling-split arithmetic.
class YearMonth {
public:
    YearMonth() : months_(0) {}
    YearMonth(int year, int month) : months_(year * 12 + (month - 1)) {}

    static YearMonth parse(const std::string& s);  // "YYYY-MM"

    int year() const { return months_ >= 0 ? months_ / 12 : (months_ - 11) / 12; }
    int month() const { return months_ - year() * 12 + 1; }

    YearMonth plus_months(int n) const { YearMonth m; m.months_ = months_ + n; return m; }
    Date first_day() const { return Date(year(), month(), 1); }
    Date last_day() const { return plus_months(1).first_day().plus_days(-1); }
    bool contains(Date d) const { return d >= first_day() && d <= last_day(); }

    std::string str() const;  // "YYYY-MM"

    auto operator<=>(const YearMonth&) const = default;

private:
    int months_;  // months since year 0
};

/// All dates of [first, last], inclusive.
std::vector<Date> date_range(Date first, Date last);

}  // namespace epf
