#pragma once

#include <string>
#include <vector>

#include "epf/forecast/forecast.hpp"

namespace epf {

/// Adapter for forecasts produced elsewhere (e.g. GPU TSFM runs). File
/// format: CSV with columns `variable,issue_day,step,value`, step in 1..H.
/// Unrequested variables in the file are ignored with a warning.
ForecastSet load_external_forecasts(const std::string& path, Date issue_day,
                                    const std::vector<std::string>& variables, int horizon);

}  // namespace epf
