#include "epf/gbdt/gbdt.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "epf/error.hpp"
#include "epf/hash.hpp"
#include "epf/ingest/csv.hpp"
#include "epf/rng.hpp"

namespace epf {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void GbdtParams::validate() const {
    if (!(learning_rate > 0.0 && learning_rate <= 1.0))
        throw Error("bad-params", "learning_rate must be in (0, 1]");
    if (num_leaves < 2) throw Error("bad-params", "num_leaves must be >= 2");
    if (!(feature_fraction > 0.0 && feature_fraction <= 1.0))
        throw Error("bad-params", "feature_fraction must be in (0, 1]");
    if (!(bagging_fraction > 0.0 && bagging_fraction <= 1.0))
        throw Error("bad-params", "bagging_fraction must be in (0, 1]");
    if (bagging_freq < 1) throw Error("bad-params", "bagging_freq must be >= 1");
    if (max_bins < 2 || max_bins > 255) throw Error("bad-params", "max_bins must be in 2..255");
    if (l2_leaf_reg < 0.0) throw Error("bad-params", "l2_leaf_reg must be >= 0");
    if (min_samples_leaf < 1) throw Error("bad-params", "min_samples_leaf must be >= 1");
    if (max_rounds < 0) throw Error("bad-params", "max_rounds must be >= 0");
}

int Tree::route_to_leaf(const double* row) const {
    int id = 0;
    while (!nodes[id].is_leaf()) {
        const TreeNode& n = nodes[id];
        double v = row[n.split_feature];
        bool go_left = std::isnan(v) ? n.default_left : (v <= n.split_threshold);
        id = go_left ? n.left : n.right;
    }
    return id;
}

double Tree::predict_row(const double* row) const { return nodes[route_to_leaf(row)].leaf_value; }

double TreeEnsemble::predict_row(const double* row) const {
    double acc = base_score;
    for (int t = 0; t < best_iteration; ++t) acc += trees[t].predict_row(row);
    return acc;
}

double TreeEnsemble::predict_row(const std::vector<double>& row) const {
    return predict_row(row.data());
}

namespace {

// ---------------------------------------------------------------------------
// Histogram binning. Value bin b holds x <= upper[b]; the last value bin is
// unbounded; missing values get the dedicated bin right after the value bins.
// Edges are quantile-spaced over the training split and fixed before round 1.
// ---------------------------------------------------------------------------

struct FeatureBins {
    std::vector<double> upper;
    int value_bins() const { return static_cast<int>(upper.size()); }
    int missing_bin() const { return value_bins(); }

    int bin_of(double v) const {
        if (std::isnan(v) || upper.empty()) return missing_bin();
        auto it = std::lower_bound(upper.begin(), upper.end(), v);
        return static_cast<int>(it - upper.begin());  // upper.back() is +inf
    }
};

FeatureBins build_bins(const std::vector<double>& column, int max_bins) {
    std::vector<double> vals;
    vals.reserve(column.size());
    for (double v : column)
        if (!std::isnan(v)) vals.push_back(v);
    FeatureBins bins;
    if (vals.empty()) return bins;
    std::sort(vals.begin(), vals.end());

    // Distinct runs with counts.
    std::vector<std::pair<double, size_t>> distinct;
    for (double v : vals) {
        if (!distinct.empty() && distinct.back().first == v)
            ++distinct.back().second;
        else
            distinct.push_back({v, 1});
    }

    const size_t d = distinct.size();
    if (static_cast<int>(d) <= max_bins) {
        for (size_t i = 0; i + 1 < d; ++i)
            bins.upper.push_back(distinct[i].first +
                                 (distinct[i + 1].first - distinct[i].first) / 2.0);
        bins.upper.push_back(kInf);
        return bins;
    }

    // Cumulative equal-count targets keep bins near n/max_bins without drift.
    const double target = static_cast<double>(vals.size()) / max_bins;
    size_t cum = 0;
    int closed = 0;
    for (size_t i = 0; i + 1 < d && closed < max_bins - 1; ++i) {
        cum += distinct[i].second;
        if (static_cast<double>(cum) >= target * (closed + 1)) {
            bins.upper.push_back(distinct[i].first +
                                 (distinct[i + 1].first - distinct[i].first) / 2.0);
            ++closed;
        }
    }
    bins.upper.push_back(kInf);
    return bins;
}

// ---------------------------------------------------------------------------
// Leaf-wise growth.
// ---------------------------------------------------------------------------

struct SplitCandidate {
    double gain = -kInf;
    int feature = -1;
    int bin = -1;  // value bins <= bin go left
    bool missing_left = true;
    double g_left = 0.0, h_left = 0.0;

    bool valid() const { return feature >= 0; }
};

struct LeafBuild {
    int node_id = -1;
    std::vector<int> rows;
    double sum_g = 0.0;
    double sum_h = 0.0;
    std::vector<double> hist_g;  // flat over all features' bins
    std::vector<double> hist_h;
    SplitCandidate best;
};

class TreeGrower {
public:
    TreeGrower(const std::vector<std::vector<uint8_t>>& binned,
               const std::vector<FeatureBins>& bins, const std::vector<int>& bin_offset,
               int total_bins, const GbdtParams& params)
        : binned_(binned), bins_(bins), bin_offset_(bin_offset), total_bins_(total_bins),
          params_(params) {}

    /// Grows one tree on the bagged rows against gradients g (hessians are
    /// all one for squared loss). Returns a tree with no nodes when no split
    /// clears min_gain_to_split.
    Tree grow(const std::vector<int>& bag, const std::vector<double>& grad,
              const std::vector<int>& feature_subset) {
        Tree tree;
        std::vector<LeafBuild> leaves;

        LeafBuild root;
        root.node_id = 0;
        root.rows = bag;
        build_histogram(root, grad, feature_subset);
        for (int r : bag) root.sum_g += grad[r];
        root.sum_h = static_cast<double>(bag.size());
        find_best_split(root, feature_subset);
        if (!root.best.valid() || root.best.gain <= params_.min_gain_to_split) return Tree{};

        TreeNode root_node;
        root_node.cover = root.sum_h;
        tree.nodes.push_back(root_node);
        leaves.push_back(std::move(root));

        int leaf_count = 1;
        while (leaf_count < params_.num_leaves) {
            // Global best leaf; ties go to the earliest-created node.
            int pick = -1;
            for (size_t i = 0; i < leaves.size(); ++i) {
                const auto& lf = leaves[i];
                if (!lf.best.valid() || lf.best.gain <= params_.min_gain_to_split) continue;
                if (pick < 0 || lf.best.gain > leaves[pick].best.gain ||
                    (lf.best.gain == leaves[pick].best.gain &&
                     lf.node_id < leaves[pick].node_id))
                    pick = static_cast<int>(i);
            }
            if (pick < 0) break;
            apply_split(tree, leaves, pick, grad, feature_subset);
            ++leaf_count;
        }

        for (const auto& lf : leaves) {
            TreeNode& n = tree.nodes[lf.node_id];
            n.leaf_value =
                -params_.learning_rate * lf.sum_g / (lf.sum_h + params_.l2_leaf_reg);
        }
        return tree;
    }

private:
    void build_histogram(LeafBuild& leaf, const std::vector<double>& grad,
                         const std::vector<int>& feature_subset) const {
        leaf.hist_g.assign(total_bins_, 0.0);
        leaf.hist_h.assign(total_bins_, 0.0);
        for (int f : feature_subset) {
            const auto& col = binned_[f];
            double* hg = leaf.hist_g.data() + bin_offset_[f];
            double* hh = leaf.hist_h.data() + bin_offset_[f];
            for (int r : leaf.rows) {
                int b = col[r];
                hg[b] += grad[r];
                hh[b] += 1.0;
            }
        }
    }

    static double leaf_objective(double g, double h, double lambda) {
        return g * g / (h + lambda);
    }

    void find_best_split(LeafBuild& leaf, const std::vector<int>& feature_subset) const {
        leaf.best = SplitCandidate{};
        const double lambda = params_.l2_leaf_reg;
        const double parent_obj = leaf_objective(leaf.sum_g, leaf.sum_h, lambda);
        const double min_h = static_cast<double>(params_.min_samples_leaf);

        for (int f : feature_subset) {
            const int vb = bins_[f].value_bins();
            if (vb < 2) continue;
            const double* hg = leaf.hist_g.data() + bin_offset_[f];
            const double* hh = leaf.hist_h.data() + bin_offset_[f];
            const double miss_g = hg[vb];
            const double miss_h = hh[vb];

            double cg = 0.0, ch = 0.0;  // cumulative over value bins, missing excluded
            for (int b = 0; b + 1 < vb; ++b) {
                cg += hg[b];
                ch += hh[b];
                // Missing-left first so an exact tie keeps the left default.
                for (int variant = 0; variant < (miss_h > 0.0 ? 2 : 1); ++variant) {
                    const bool missing_left = (miss_h > 0.0) ? (variant == 0) : true;
                    const double gl = missing_left ? cg + miss_g : cg;
                    const double hl = missing_left ? ch + miss_h : ch;
                    const double gr = leaf.sum_g - gl;
                    const double hr = leaf.sum_h - hl;
                    if (hl < min_h || hr < min_h) continue;
                    const double gain = 0.5 * (leaf_objective(gl, hl, lambda) +
                                               leaf_objective(gr, hr, lambda) - parent_obj);
                    if (gain > leaf.best.gain) {
                        leaf.best.gain = gain;
                        leaf.best.feature = f;
                        leaf.best.bin = b;
                        leaf.best.missing_left = missing_left;
                        leaf.best.g_left = gl;
                        leaf.best.h_left = hl;
                    }
                }
            }
        }
    }

    void apply_split(Tree& tree, std::vector<LeafBuild>& leaves, int pick,
                     const std::vector<double>& grad,
                     const std::vector<int>& feature_subset) const {
        LeafBuild parent = std::move(leaves[pick]);
        leaves.erase(leaves.begin() + pick);
        const SplitCandidate& sp = parent.best;
        const auto& col = binned_[sp.feature];
        const int miss_bin = bins_[sp.feature].missing_bin();

        LeafBuild lhs, rhs;
        lhs.rows.reserve(parent.rows.size());
        rhs.rows.reserve(parent.rows.size());
        for (int r : parent.rows) {
            const int b = col[r];
            const bool go_left = (b == miss_bin) ? sp.missing_left : (b <= sp.bin);
            (go_left ? lhs.rows : rhs.rows).push_back(r);
        }
        lhs.sum_g = sp.g_left;
        lhs.sum_h = sp.h_left;
        rhs.sum_g = parent.sum_g - sp.g_left;
        rhs.sum_h = parent.sum_h - sp.h_left;

        TreeNode& pnode = tree.nodes[parent.node_id];
        pnode.split_feature = sp.feature;
        pnode.split_threshold = bins_[sp.feature].upper[sp.bin];
        pnode.default_left = sp.missing_left;
        pnode.left = static_cast<int>(tree.nodes.size());
        pnode.right = pnode.left + 1;
        lhs.node_id = pnode.left;
        rhs.node_id = pnode.right;

        TreeNode lnode, rnode;
        lnode.cover = lhs.sum_h;
        rnode.cover = rhs.sum_h;
        tree.nodes.push_back(lnode);
        tree.nodes.push_back(rnode);

        // Build the smaller child's histogram; the sibling is the difference.
        LeafBuild* small = lhs.rows.size() <= rhs.rows.size() ? &lhs : &rhs;
        LeafBuild* large = small == &lhs ? &rhs : &lhs;
        build_histogram(*small, grad, feature_subset);
        large->hist_g = std::move(parent.hist_g);
        large->hist_h = std::move(parent.hist_h);
        for (int i = 0; i < total_bins_; ++i) {
            large->hist_g[i] -= small->hist_g[i];
            large->hist_h[i] -= small->hist_h[i];
        }

        find_best_split(lhs, feature_subset);
        find_best_split(rhs, feature_subset);
        leaves.push_back(std::move(lhs));
        leaves.push_back(std::move(rhs));
    }

    const std::vector<std::vector<uint8_t>>& binned_;
    const std::vector<FeatureBins>& bins_;
    const std::vector<int>& bin_offset_;
    const int total_bins_;
    const GbdtParams& params_;
};

std::vector<int> sample_without_replacement(int n, int k, Rng& rng) {
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    for (int i = 0; i < k; ++i) {
        int j = i + static_cast<int>(rng.below(static_cast<uint64_t>(n - i)));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

double mse_of(const std::vector<double>& pred, const std::vector<double>& y) {
    double acc = 0.0;
    for (size_t i = 0; i < y.size(); ++i) {
        double d = pred[i] - y[i];
        acc += d * d;
    }
    return y.empty() ? 0.0 : acc / static_cast<double>(y.size());
}

}  // namespace

TreeEnsemble fit_gbdt(const Dataset& train, const Dataset& valid,
                      const std::vector<std::string>& feature_names, const GbdtParams& params) {
    params.validate();
    if (!train.columns || !train.target || train.rows() == 0)
        throw Error("empty-data", "training set is empty");
    if (train.features() != feature_names.size())
        throw Error("feature-mismatch", "feature name count does not match columns");
    const bool has_valid = valid.target && valid.rows() > 0;
    if (has_valid && valid.features() != train.features())
        throw Error("feature-mismatch", "validation feature count differs from training");

    const int n = static_cast<int>(train.rows());
    const int p = static_cast<int>(train.features());
    for (int f = 0; f < p; ++f)
        if (static_cast<int>((*train.columns)[f].size()) != n)
            throw Error("length-mismatch", "column length mismatch in training set");
    for (double y : *train.target)
        if (std::isnan(y)) throw Error("nonfinite-target", "training target contains NaN");

    TreeEnsemble model;
    model.feature_names = feature_names;
    model.params = params;
    double ysum = 0.0;
    for (double y : *train.target) ysum += y;
    model.base_score = ysum / n;

    // Bin edges fixed on the training split before round 1.
    std::vector<FeatureBins> bins(p);
    std::vector<std::vector<uint8_t>> binned(p);
    std::vector<int> bin_offset(p);
    int total_bins = 0;
    for (int f = 0; f < p; ++f) {
        bins[f] = build_bins((*train.columns)[f], params.max_bins);
        bin_offset[f] = total_bins;
        total_bins += bins[f].value_bins() + 1;
        binned[f].resize(n);
        for (int r = 0; r < n; ++r)
            binned[f][r] = static_cast<uint8_t>(bins[f].bin_of((*train.columns)[f][r]));
    }

    std::vector<double> train_pred(n, model.base_score);
    std::vector<double> valid_pred;
    const int n_valid = has_valid ? static_cast<int>(valid.rows()) : 0;
    if (has_valid) valid_pred.assign(n_valid, model.base_score);

    Rng bag_rng(params.seed);
    Rng feat_rng(params.seed ^ 0x9e3779b97f4a7c15ULL);
    TreeGrower grower(binned, bins, bin_offset, total_bins, params);

    std::vector<int> bag;
    std::vector<double> grad(n);
    std::vector<double> row_buf(p);
    double best_valid = kInf;
    int best_round = 0;

    for (int round = 0; round < params.max_rounds; ++round) {
        if (round % params.bagging_freq == 0 || bag.empty()) {
            if (params.bagging_fraction >= 1.0) {
                bag.resize(n);
                for (int i = 0; i < n; ++i) bag[i] = i;
            } else {
                int k = std::max(1, static_cast<int>(params.bagging_fraction * n));
                bag = sample_without_replacement(n, k, bag_rng);
            }
        }
        std::vector<int> feats;
        if (params.feature_fraction >= 1.0) {
            feats.resize(p);
            for (int f = 0; f < p; ++f) feats[f] = f;
        } else {
            int k = std::max(1, static_cast<int>(params.feature_fraction * p));
            feats = sample_without_replacement(p, k, feat_rng);
        }

        for (int i : bag) grad[i] = train_pred[i] - (*train.target)[i];

        Tree tree = grower.grow(bag, grad, feats);
        if (tree.nodes.empty()) break;  // no split clears min_gain: boosting is done

        for (int i = 0; i < n; ++i) {
            for (int f = 0; f < p; ++f) row_buf[f] = (*train.columns)[f][i];
            train_pred[i] += tree.predict_row(row_buf.data());
        }
        model.trees.push_back(std::move(tree));
        model.train_mse_history.push_back(mse_of(train_pred, *train.target));

        if (has_valid) {
            const Tree& t = model.trees.back();
            for (int i = 0; i < n_valid; ++i) {
                for (int f = 0; f < p; ++f) row_buf[f] = (*valid.columns)[f][i];
                valid_pred[i] += t.predict_row(row_buf.data());
            }
            double vm = mse_of(valid_pred, *valid.target);
            model.valid_mse_history.push_back(vm);
            const int this_round = static_cast<int>(model.trees.size());
            if (vm < best_valid) {
                best_valid = vm;
                best_round = this_round;
            }
            if (params.early_stopping_rounds > 0 &&
                this_round - best_round >= params.early_stopping_rounds)
                break;
        }
    }

    model.best_iteration =
        has_valid ? best_round : static_cast<int>(model.trees.size());
    return model;
}

std::vector<double> predict_gbdt(const TreeEnsemble& model,
                                 const std::vector<std::vector<double>>& columns) {
    if (columns.size() != model.feature_names.size())
        throw Error("missing-required-feature",
                    "expected " + std::to_string(model.feature_names.size()) + " columns, got " +
                        std::to_string(columns.size()));
    const size_t n = columns.empty() ? 0 : columns[0].size();
    std::vector<double> row(columns.size());
    std::vector<double> out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t f = 0; f < columns.size(); ++f) row[f] = columns[f][i];
        out.push_back(model.predict_row(row.data()));
    }
    return out;
}

std::vector<double> predict_gbdt_named(const TreeEnsemble& model,
                                       const std::vector<std::string>& names,
                                       const std::vector<std::vector<double>>& columns) {
    std::vector<std::vector<double>> ordered;
    ordered.reserve(model.feature_names.size());
    for (const auto& want : model.feature_names) {
        auto it = std::find(names.begin(), names.end(), want);
        if (it == names.end())
            throw Error("missing-required-feature", "feature '" + want + "' absent from input");
        ordered.push_back(columns[static_cast<size_t>(it - names.begin())]);
    }
    return predict_gbdt(model, ordered);
}

// ---------------------------------------------------------------------------
// Serialization: text container with a magic string, format version and a
// whole-body checksum; doubles round-trip exactly.
// ---------------------------------------------------------------------------

void save_gbdt(const TreeEnsemble& model, const std::string& path) {
    std::ostringstream body;
    const GbdtParams& p = model.params;
    body << "learning_rate " << format_double(p.learning_rate) << '\n'
         << "num_leaves " << p.num_leaves << '\n'
         << "feature_fraction " << format_double(p.feature_fraction) << '\n'
         << "bagging_fraction " << format_double(p.bagging_fraction) << '\n'
         << "bagging_freq " << p.bagging_freq << '\n'
         << "min_gain_to_split " << format_double(p.min_gain_to_split) << '\n'
         << "max_rounds " << p.max_rounds << '\n'
         << "early_stopping_rounds " << p.early_stopping_rounds << '\n'
         << "l2_leaf_reg " << format_double(p.l2_leaf_reg) << '\n'
         << "min_samples_leaf " << p.min_samples_leaf << '\n'
         << "max_bins " << p.max_bins << '\n'
         << "seed " << p.seed << '\n'
         << "base_score " << format_double(model.base_score) << '\n'
         << "best_iteration " << model.best_iteration << '\n';
    body << "features " << model.feature_names.size() << '\n';
    for (const auto& name : model.feature_names) body << name << '\n';
    body << "trees " << model.trees.size() << '\n';
    for (const auto& tree : model.trees) {
        body << "tree " << tree.nodes.size() << '\n';
        for (const auto& n : tree.nodes)
            body << n.split_feature << ' ' << format_double(n.split_threshold) << ' ' << n.left
                 << ' ' << n.right << ' ' << (n.default_left ? 1 : 0) << ' '
                 << format_double(n.leaf_value) << ' ' << format_double(n.cover) << '\n';
    }

    const std::string body_str = body.str();
    char csum[20];
    std::snprintf(csum, sizeof(csum), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(body_str.data(), body_str.size())));

    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("io", "cannot write '" + path + "'");
    out << "EPFGBDT 1\nchecksum " << csum << '\n' << body_str;
}

TreeEnsemble load_gbdt(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("io", "cannot open '" + path + "'");
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "EPFGBDT") throw Error("bad-format", "not a gbdt model file");
    if (version != 1)
        throw Error("version-mismatch",
                    "model format version " + std::to_string(version) + " unsupported");
    std::string key, csum_hex;
    in >> key >> csum_hex;
    if (key != "checksum") throw Error("bad-format", "missing checksum line");
    in.ignore();

    std::ostringstream rest;
    rest << in.rdbuf();
    const std::string body = rest.str();
    char expect[20];
    std::snprintf(expect, sizeof(expect), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(body.data(), body.size())));
    if (csum_hex != expect) throw Error("checksum", "model file checksum mismatch");

    std::istringstream is(body);
    TreeEnsemble model;
    GbdtParams& p = model.params;
    auto expect_key = [&](const char* want) {
        std::string k;
        is >> k;
        if (k != want) throw Error("bad-format", std::string("expected key ") + want);
    };
    expect_key("learning_rate"); is >> p.learning_rate;
    expect_key("num_leaves"); is >> p.num_leaves;
    expect_key("feature_fraction"); is >> p.feature_fraction;
    expect_key("bagging_fraction"); is >> p.bagging_fraction;
    expect_key("bagging_freq"); is >> p.bagging_freq;
    expect_key("min_gain_to_split"); is >> p.min_gain_to_split;
    expect_key("max_rounds"); is >> p.max_rounds;
    expect_key("early_stopping_rounds"); is >> p.early_stopping_rounds;
    expect_key("l2_leaf_reg"); is >> p.l2_leaf_reg;
    expect_key("min_samples_leaf"); is >> p.min_samples_leaf;
    expect_key("max_bins"); is >> p.max_bins;
    expect_key("seed"); is >> p.seed;
    expect_key("base_score"); is >> model.base_score;
    expect_key("best_iteration"); is >> model.best_iteration;
    size_t nfeat = 0;
    expect_key("features"); is >> nfeat;
    is.ignore();
    for (size_t i = 0; i < nfeat; ++i) {
        std::string name;
        if (!std::getline(is, name)) throw Error("bad-format", "truncated feature names");
        model.feature_names.push_back(name);
    }
    size_t ntrees = 0;
    expect_key("trees"); is >> ntrees;
    for (size_t t = 0; t < ntrees; ++t) {
        size_t nnodes = 0;
        expect_key("tree"); is >> nnodes;
        Tree tree;
        tree.nodes.resize(nnodes);
        for (auto& n : tree.nodes) {
            int dl = 0;
            is >> n.split_feature >> n.split_threshold >> n.left >> n.right >> dl >>
                n.leaf_value >> n.cover;
            n.default_left = dl != 0;
        }
        if (!is) throw Error("bad-format", "truncated tree nodes");
        model.trees.push_back(std::move(tree));
    }
    return model;
}

}  // namespace epf
