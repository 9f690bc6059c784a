#pragma once

#include <optional>
#include <vector>

#include "epf/core/table.hpp"

namespace epf {

/// Division guard: steps whose denominator is <= kDivisionEpsilon come back
/// masked (nullopt) instead of infinite.
inline constexpr double kDivisionEpsilon = 1e-6;

/// (thermal_capacity - committed_thermal) / system_load, elementwise.
std::vector<std::optional<double>> thermal_auction_space(
    const std::vector<double>& thermal_capacity, const std::vector<double>& committed_thermal,
    const std::vector<double>& system_load);

/// (wind + solar) / denominator, elementwise; the denominator is system
/// load (vs_load) or total generation (vs_power) per the factor binding.
std::vector<std::optional<double>> renewable_ratio(const std::vector<double>& wind,
                                                   const std::vector<double>& solar,
                                                   const std::vector<double>& denominator);

struct CalendarFeatures {
    std::vector<double> month;    // 1..12
    std::vector<double> weekday;  // Monday=0 .. Sunday=6
    std::vector<double> day;      // 1..31
};

CalendarFeatures calendar_features(const DayWindow& window);

}  // namespace epf
