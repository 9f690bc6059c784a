#include "epf/ingest/standardize.hpp"

#include <cmath>

#include "epf/error.hpp"

namespace epf {

Standardizer Standardizer::fit(const TimeSeriesTable& table, Date train_first, Date train_last,
                               const std::vector<std::string>& columns) {
    Standardizer sz;
    sz.fitted_on_ = train_first.iso() + ".." + train_last.iso();
    Timestamp lo(train_first, 0);
    Timestamp hi(train_last.next(), 0);

    for (const auto& name : columns) {
        const Column& col = table.column(name);
        double sum = 0.0;
        size_t n = 0;
        for (size_t r = 0; r < table.rows(); ++r) {
            Timestamp t = table.index()[r];
            if (t < lo || t >= hi || col.missing[r]) continue;
            sum += col.values[r];
            ++n;
        }
        if (n == 0)
            throw Error("empty-training-range",
                        "no training rows for column '" + name + "'");
        double mean = sum / static_cast<double>(n);
        double ss = 0.0;
        for (size_t r = 0; r < table.rows(); ++r) {
            Timestamp t = table.index()[r];
            if (t < lo || t >= hi || col.missing[r]) continue;
            double d = col.values[r] - mean;
            ss += d * d;
        }
        Stats st;
        st.column = name;
        st.mean = mean;
        st.stddev = std::sqrt(ss / static_cast<double>(n));
        if (st.stddev <= 0.0) {
            st.zero_variance = true;
            st.mean = 0.0;
            st.stddev = 1.0;  // passthrough
        }
        sz.stats_.push_back(st);
    }
    return sz;
}

const Standardizer::Stats& Standardizer::stats(const std::string& column) const {
    for (const auto& s : stats_)
        if (s.column == column) return s;
    throw Error("unknown-column", "column '" + column + "' was not fitted");
}

TimeSeriesTable Standardizer::apply(const TimeSeriesTable& table) const {
    std::vector<Column> cols = table.columns();
    for (auto& c : cols) {
        const Stats* st = nullptr;
        for (const auto& s : stats_)
            if (s.column == c.name) { st = &s; break; }
        if (!st) continue;
        for (size_t r = 0; r < c.values.size(); ++r)
            if (!c.missing[r]) c.values[r] = (c.values[r] - st->mean) / st->stddev;
    }
    return TimeSeriesTable(table.resolution_minutes(), table.index(), std::move(cols));
}

std::vector<double> Standardizer::transform(const std::string& column,
                                            const std::vector<double>& values) const {
    const Stats& st = stats(column);
    std::vector<double> out(values.size());
    for (size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - st.mean) / st.stddev;
    return out;
}

std::vector<double> Standardizer::invert(const std::string& column,
                                         const std::vector<double>& values) const {
    const Stats& st = stats(column);
    std::vector<double> out(values.size());
    for (size_t i = 0; i < values.size(); ++i) out[i] = values[i] * st.stddev + st.mean;
    return out;
}

double Standardizer::invert_one(const std::string& column, double value) const {
    const Stats& st = stats(column);
    return value * st.stddev + st.mean;
}

}  // namespace epf
