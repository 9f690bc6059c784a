#pragma once

#include <string>
#include <vector>

#include "epf/gbdt/gbdt.hpp"

namespace epf {

/// Shapley attribution of one prediction under the cover-weighted
/// conditional-expectation game: base_value + sum(phi) equals the model
/// output (local accuracy).
struct ShapAttribution {
    double base_value = 0.0;
    std::vector<double> phi;  // parallel to model.feature_names
    double prediction = 0.0;
    std::string instance_id;
};

/// Exact path-dependent TreeSHAP, summed over the trees in
/// trees[0..best_iteration). Missing feature values follow each node's
/// default direction, like an ordinary branch choice.
ShapAttribution tree_shap(const TreeEnsemble& model, const std::vector<double>& instance,
                          const std::string& instance_id = "");

/// Cover-weighted expected output of the model (the attribution baseline).
double expected_output(const TreeEnsemble& model);

/// Validates that child covers sum to the parent cover on every internal
/// node; throws "cover-inconsistency" otherwise.
void check_cover_consistency(const TreeEnsemble& model);

struct GlobalImportance {
    struct Entry {
        std::string feature;
        double mean_abs_phi;
    };
    std::vector<Entry> ranking;  // sorted non-increasing by mean_abs_phi
};

/// Mean |phi| per feature over all rows of the evaluation set (column-major,
/// model feature order).
GlobalImportance global_importance(const TreeEnsemble& model,
                                   const std::vector<std::vector<double>>& columns);

struct WaterfallRecord {
    double base_value = 0.0;
    double prediction = 0.0;
    std::string instance_id;
    struct Entry {
        std::string feature;
        double phi;
        double value;  // the instance's raw feature value
    };
    std::vector<Entry> top;   // by |phi|, non-increasing
    double others_phi = 0.0;  // exact sum of the remaining attributions
    int others_count = 0;
};

WaterfallRecord export_waterfall(const ShapAttribution& attr,
                                 const std::vector<std::string>& feature_names,
                                 const std::vector<double>& instance, int top_k);

void save_waterfall_csv(const WaterfallRecord& rec, const std::string& path);
void save_waterfall_json(const WaterfallRecord& rec, const std::string& path);
void save_global_importance_csv(const GlobalImportance& gi, const std::string& path);

}  // namespace epf
