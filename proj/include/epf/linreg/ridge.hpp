#pragma once

#include <string>
#include <vector>

namespace epf {

/// Ridge regression (lambda = 0 gives OLS). Features are standardized
/// internally before fitting so the penalty is scale-free; reported weights
/// are mapped back to original units. Intercept is never penalized.
struct RidgeModel {
    std::vector<std::string> feature_names;
    std::vector<double> weights;  // original units, parallel to feature_names
    double intercept = 0.0;
    double lambda = 1.0;
    // Optional per-feature fill values for NaN cells at prediction time
    // (set by pipelines that train on data with missing covariates).
    std::vector<double> impute_means;

    double predict_row(const std::vector<double>& row) const;
};

/// Minimizes sum (y - Xw - b)^2 + lambda * ||w_std||^2 via the normal
/// equations of the standardized system, solved with an SPD factorization.
/// Throws "singular-system" only when lambda = 0 and X is rank-deficient.
RidgeModel fit_ridge(const std::vector<std::vector<double>>& rows,
                     const std::vector<double>& target,
                     const std::vector<std::string>& feature_names, double lambda);

/// Xw + b for each row; rows must carry the fitted features in order.
std::vector<double> predict_ridge(const RidgeModel& model,
                                  const std::vector<std::vector<double>>& rows);

void save_ridge(const RidgeModel& model, const std::string& path);
RidgeModel load_ridge(const std::string& path);

}  // namespace epf
