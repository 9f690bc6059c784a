#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace epf {

/// Training hyperparameters. Defaults follow the published regressor setup
/// (learning rate 0.05, 63 leaves, 0.9/0.8 feature/bagging fractions,
/// bagging every 5 rounds, min split gain 0.08, 30000 rounds with 1000
/// early-stopping rounds, seed 42); l2_leaf_reg, min_samples_leaf and
/// max_bins are our declared defaults.
struct GbdtParams {
    double learning_rate = 0.05;
    int num_leaves = 63;
    double feature_fraction = 0.9;
    double bagging_fraction = 0.8;
    int bagging_freq = 5;
    double min_gain_to_split = 0.08;
    int max_rounds = 30000;
    int early_stopping_rounds = 1000;
    double l2_leaf_reg = 1.0;
    int min_samples_leaf = 20;
    int max_bins = 255;
    uint64_t seed = 42;

    void validate() const;
};

struct TreeNode {
    int split_feature = -1;        // -1 marks a leaf
    double split_threshold = 0.0;  // raw value; x <= threshold goes left
    int left = -1;
    int right = -1;
    bool default_left = true;  // routing for missing values
    double leaf_value = 0.0;
    double cover = 0.0;  // training hessian sum reaching this node

    bool is_leaf() const { return split_feature < 0; }
};

struct Tree {
    std::vector<TreeNode> nodes;  // nodes[0] is the root

    /// NaN feature values follow the node's default direction.
    double predict_row(const double* row) const;
    int route_to_leaf(const double* row) const;
};

struct TreeEnsemble {
    double base_score = 0.0;
    std::vector<Tree> trees;
    std::vector<std::string> feature_names;
    GbdtParams params;
    int best_iteration = 0;  // prediction uses trees[0..best_iteration)

    std::vector<double> train_mse_history;  // full unbagged training set, per round
    std::vector<double> valid_mse_history;  // recorded when a validation set was given

    double predict_row(const double* row) const;
    double predict_row(const std::vector<double>& row) const;
};

/// Column-major dataset: columns[f][i] is feature f of row i; NaN = missing.
struct Dataset {
    const std::vector<std::vector<double>>* columns = nullptr;
    const std::vector<double>* target = nullptr;

    size_t rows() const { return target ? target->size() : 0; }
    size_t features() const { return columns ? columns->size() : 0; }
};

/// Boosted squared-error fit with histogram binning and leaf-wise growth.
/// Validation enables early stopping; pass an empty dataset to train for
/// max_rounds. Rows with NaN target are rejected (callers drop them).
TreeEnsemble fit_gbdt(const Dataset& train, const Dataset& valid,
                      const std::vector<std::string>& feature_names, const GbdtParams& params);

/// Predictions in row order; columns must be in model feature order.
std::vector<double> predict_gbdt(const TreeEnsemble& model,
                                 const std::vector<std::vector<double>>& columns);

/// Same, with name-based alignment: `names` may be a superset in any order.
std::vector<double> predict_gbdt_named(const TreeEnsemble& model,
                                       const std::vector<std::string>& names,
                                       const std::vector<std::vector<double>>& columns);

void save_gbdt(const TreeEnsemble& model, const std::string& path);
TreeEnsemble load_gbdt(const std::string& path);

}  // namespace epf
