#include "epf/explain/shap.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "epf/error.hpp"
#include "epf/ingest/csv.hpp"

namespace epf {

namespace {

// Path-dependent TreeSHAP. One path element per unique feature encountered
// on the way down; `zero_fraction` is the cover share that flows through
// when the feature is out of the coalition, `one_fraction` is 1 when the
// instance follows this branch and 0 otherwise, and `pweight` carries the
// permutation weights for each coalition size.
struct PathElement {
    int feature = -1;
    double zero_fraction = 0.0;
    double one_fraction = 0.0;
    double pweight = 0.0;
};

void extend_path(std::vector<PathElement>& path, double zero_fraction, double one_fraction,
                 int feature) {
    const int l = static_cast<int>(path.size());
    path.push_back({feature, zero_fraction, one_fraction, l == 0 ? 1.0 : 0.0});
    for (int i = l - 1; i >= 0; --i) {
        path[i + 1].pweight += one_fraction * path[i].pweight * (i + 1.0) / (l + 1.0);
        path[i].pweight = zero_fraction * path[i].pweight * (l - i) / (l + 1.0);
    }
}

void unwind_path(std::vector<PathElement>& path, int index) {
    const int l = static_cast<int>(path.size()) - 1;
    const double o = path[index].one_fraction;
    const double z = path[index].zero_fraction;
    double n = path[l].pweight;
    for (int i = l - 1; i >= 0; --i) {
        if (o != 0.0) {
            const double t = path[i].pweight;
            path[i].pweight = n * (l + 1.0) / ((i + 1.0) * o);
            n = t - path[i].pweight * z * (l - i) / (l + 1.0);
        } else {
            path[i].pweight = path[i].pweight * (l + 1.0) / (z * (l - i));
        }
    }
    for (int i = index; i < l; ++i) {
        path[i].feature = path[i + 1].feature;
        path[i].zero_fraction = path[i + 1].zero_fraction;
        path[i].one_fraction = path[i + 1].one_fraction;
    }
    path.pop_back();
}

double unwound_path_sum(const std::vector<PathElement>& path, int index) {
    const int l = static_cast<int>(path.size()) - 1;
    const double o = path[index].one_fraction;
    const double z = path[index].zero_fraction;
    double n = path[l].pweight;
    double total = 0.0;
    for (int i = l - 1; i >= 0; --i) {
        if (o != 0.0) {
            const double t = n * (l + 1.0) / ((i + 1.0) * o);
            total += t;
            n = path[i].pweight - t * z * (l - i) / (l + 1.0);
        } else {
            total += path[i].pweight * (l + 1.0) / (z * (l - i));
        }
    }
    return total;
}

void shap_recurse(const Tree& tree, const double* x, std::vector<double>& phi, int node_id,
                  std::vector<PathElement> path, double parent_zero_fraction,
                  double parent_one_fraction, int parent_feature) {
    extend_path(path, parent_zero_fraction, parent_one_fraction, parent_feature);
    const TreeNode& node = tree.nodes[node_id];

    if (node.is_leaf()) {
        for (size_t i = 1; i < path.size(); ++i) {
            const double w = unwound_path_sum(path, static_cast<int>(i));
            phi[path[i].feature] +=
                w * (path[i].one_fraction - path[i].zero_fraction) * node.leaf_value;
        }
        return;
    }

    const double v = x[node.split_feature];
    const bool go_left = std::isnan(v) ? node.default_left : (v <= node.split_threshold);
    const int hot = go_left ? node.left : node.right;
    const int cold = go_left ? node.right : node.left;
    const double hot_zero = tree.nodes[hot].cover / node.cover;
    const double cold_zero = tree.nodes[cold].cover / node.cover;

    double incoming_zero = 1.0, incoming_one = 1.0;
    int found = -1;
    for (size_t i = 0; i < path.size(); ++i) {
        if (path[i].feature == node.split_feature) {
            found = static_cast<int>(i);
            break;
        }
    }
    if (found >= 0) {
        incoming_zero = path[found].zero_fraction;
        incoming_one = path[found].one_fraction;
        unwind_path(path, found);
    }

    shap_recurse(tree, x, phi, hot, path, incoming_zero * hot_zero, incoming_one,
                 node.split_feature);
    shap_recurse(tree, x, phi, cold, std::move(path), incoming_zero * cold_zero, 0.0,
                 node.split_feature);
}

double tree_expected_value(const Tree& tree, int node_id) {
    const TreeNode& node = tree.nodes[node_id];
    if (node.is_leaf()) return node.leaf_value;
    const double wl = tree.nodes[node.left].cover;
    const double wr = tree.nodes[node.right].cover;
    return (wl * tree_expected_value(tree, node.left) +
            wr * tree_expected_value(tree, node.right)) /
           node.cover;
}

}  // namespace

void check_cover_consistency(const TreeEnsemble& model) {
    for (const auto& tree : model.trees) {
        for (const auto& node : tree.nodes) {
            if (node.is_leaf()) {
                if (!(node.cover > 0.0))
                    throw Error("cover-inconsistency", "leaf with non-positive cover");
                continue;
            }
            const double sum = tree.nodes[node.left].cover + tree.nodes[node.right].cover;
            const double tol = 1e-6 * std::max(1.0, node.cover);
            if (std::abs(sum - node.cover) > tol)
                throw Error("cover-inconsistency", "child covers do not sum to parent");
        }
    }
}

double expected_output(const TreeEnsemble& model) {
    double acc = model.base_score;
    for (int t = 0; t < model.best_iteration; ++t)
        acc += tree_expected_value(model.trees[t], 0);
    return acc;
}

ShapAttribution tree_shap(const TreeEnsemble& model, const std::vector<double>& instance,
                          const std::string& instance_id) {
    if (instance.size() != model.feature_names.size())
        throw Error("missing-required-feature", "instance width does not match model features");
    check_cover_consistency(model);

    ShapAttribution attr;
    attr.instance_id = instance_id;
    attr.phi.assign(model.feature_names.size(), 0.0);
    for (int t = 0; t < model.best_iteration; ++t) {
        if (model.trees[t].nodes.empty()) continue;
        shap_recurse(model.trees[t], instance.data(), attr.phi, 0, {}, 1.0, 1.0, -1);
    }
    attr.base_value = expected_output(model);
    attr.prediction = model.predict_row(instance.data());
    return attr;
}

GlobalImportance global_importance(const TreeEnsemble& model,
                                   const std::vector<std::vector<double>>& columns) {
    if (columns.size() != model.feature_names.size())
        throw Error("missing-required-feature", "column count does not match model features");
    const size_t n = columns.empty() ? 0 : columns[0].size();
    if (n == 0) throw Error("empty-data", "global importance needs a nonempty evaluation set");

    std::vector<double> acc(model.feature_names.size(), 0.0);
    std::vector<double> row(columns.size());
    for (size_t r = 0; r < n; ++r) {
        for (size_t c = 0; c < columns.size(); ++c) row[c] = columns[c][r];
        ShapAttribution attr = tree_shap(model, row);
        for (size_t c = 0; c < acc.size(); ++c) acc[c] += std::abs(attr.phi[c]);
    }

    GlobalImportance gi;
    for (size_t c = 0; c < acc.size(); ++c)
        gi.ranking.push_back({model.feature_names[c], acc[c] / static_cast<double>(n)});
    std::stable_sort(gi.ranking.begin(), gi.ranking.end(),
                     [](const auto& a, const auto& b) { return a.mean_abs_phi > b.mean_abs_phi; });
    return gi;
}

WaterfallRecord export_waterfall(const ShapAttribution& attr,
                                 const std::vector<std::string>& feature_names,
                                 const std::vector<double>& instance, int top_k) {
    if (top_k < 1) throw Error("bad-params", "top_k must be >= 1");
    WaterfallRecord rec;
    rec.base_value = attr.base_value;
    rec.prediction = attr.prediction;
    rec.instance_id = attr.instance_id;

    std::vector<size_t> order(attr.phi.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return std::abs(attr.phi[a]) > std::abs(attr.phi[b]);
    });

    const size_t k = std::min<size_t>(static_cast<size_t>(top_k), order.size());
    for (size_t i = 0; i < k; ++i)
        rec.top.push_back({feature_names[order[i]], attr.phi[order[i]], instance[order[i]]});
    for (size_t i = k; i < order.size(); ++i) {
        rec.others_phi += attr.phi[order[i]];
        ++rec.others_count;
    }
    return rec;
}

void save_waterfall_csv(const WaterfallRecord& rec, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("io", "cannot write '" + path + "'");
    out << "feature,phi,value\n";
    for (const auto& e : rec.top)
        out << csv_escape(e.feature) << ',' << format_double(e.phi) << ','
            << format_double(e.value) << '\n';
    if (rec.others_count > 0)
        out << "others," << format_double(rec.others_phi) << ",\n";
}

void save_waterfall_json(const WaterfallRecord& rec, const std::string& path) {
    nlohmann::json j;
    j["base_value"] = rec.base_value;
    j["prediction"] = rec.prediction;
    j["instance_id"] = rec.instance_id;
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : rec.top)
        entries.push_back({{"feature", e.feature}, {"phi", e.phi}, {"value", e.value}});
    j["top"] = entries;
    j["others_phi"] = rec.others_phi;
    j["others_count"] = rec.others_count;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("io", "cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

void save_global_importance_csv(const GlobalImportance& gi, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("io", "cannot write '" + path + "'");
    out << "feature,mean_abs_phi\n";
    for (const auto& e : gi.ranking)
        out << csv_escape(e.feature) << ',' << format_double(e.mean_abs_phi) << '\n';
}

}  // namespace epf
