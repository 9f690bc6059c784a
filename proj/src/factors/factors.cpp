#include "epf/factors/factors.hpp"

#include <iostream>

#include "epf/error.hpp"

namespace epf {

namespace {

std::vector<std::optional<double>> guarded_ratio(const std::vector<double>& numerator,
                                                 const std::vector<double>& denominator,
                                                 const char* what) {
    if (numerator.size() != denominator.size())
        throw Error("length-mismatch", std::string(what) + " inputs are not aligned");
    std::vector<std::optional<double>> out(numerator.size());
    bool warned = false;
    for (size_t i = 0; i < numerator.size(); ++i) {
        if (denominator[i] <= kDivisionEpsilon) {
            if (!warned) {
                std::cerr << "[factors] " << what << ": denominator <= epsilon at step " << i
                          << ", masking\n";
                warned = true;
            }
            out[i] = std::nullopt;
        } else {
            out[i] = numerator[i] / denominator[i];
        }
    }
    return out;
}

}  // namespace

std::vector<std::optional<double>> thermal_auction_space(
    const std::vector<double>& thermal_capacity, const std::vector<double>& committed_thermal,
    const std::vector<double>& system_load) {
    if (thermal_capacity.size() != committed_thermal.size())
        throw Error("length-mismatch", "thermal_auction_space inputs are not aligned");
    std::vector<double> headroom(thermal_capacity.size());
    for (size_t i = 0; i < headroom.size(); ++i)
        headroom[i] = thermal_capacity[i] - committed_thermal[i];
    return guarded_ratio(headroom, system_load, "thermal_auction_space");
}

std::vector<std::optional<double>> renewable_ratio(const std::vector<double>& wind,
                                                   const std::vector<double>& solar,
                                                   const std::vector<double>& denominator) {
    if (wind.size() != solar.size())
        throw Error("length-mismatch", "renewable_ratio inputs are not aligned");
    std::vector<double> renewables(wind.size());
    for (size_t i = 0; i < renewables.size(); ++i) renewables[i] = wind[i] + solar[i];
    return guarded_ratio(renewables, denominator, "renewable_ratio");
}

CalendarFeatures calendar_features(const DayWindow& window) {
    CalendarFeatures out;
    const size_t n = window.steps.size();
    out.month.assign(n, static_cast<double>(window.day.month()));
    out.weekday.assign(n, static_cast<double>(window.day.weekday()));
    out.day.assign(n, static_cast<double>(window.day.day()));
    return out;
}

}  // namespace epf
