#include <doctest.h>

#include <cmath>
#include <fstream>

#include "epf/error.hpp"
#include "epf/gbdt/gbdt.hpp"
#include "epf/rng.hpp"
#include "test_util.hpp"

using namespace epf;

namespace {

GbdtParams plain_params() {
    GbdtParams p;
    p.learning_rate = 0.1;
    p.num_leaves = 31;
    p.feature_fraction = 1.0;
    p.bagging_fraction = 1.0;
    p.min_gain_to_split = 0.0;
    p.max_rounds = 50;
    p.early_stopping_rounds = 0;
    p.l2_leaf_reg = 1.0;
    p.min_samples_leaf = 1;
    p.seed = 42;
    return p;
}

/// Naive per-tree routing oracle on raw values.
double route_oracle(const Tree& tree, const std::vector<double>& row) {
    int id = 0;
    while (!tree.nodes[id].is_leaf()) {
        const TreeNode& n = tree.nodes[id];
        double v = row[n.split_feature];
        bool left = std::isnan(v) ? n.default_left : v <= n.split_threshold;
        id = left ? n.left : n.right;
    }
    return tree.nodes[id].leaf_value;
}

}  // namespace

TEST_CASE("gbdt: constant target yields zero trees and a constant prediction") {
    std::vector<std::vector<double>> cols = {{1, 2, 3, 4, 5, 6, 7, 8}};
    std::vector<double> y(8, 3.25);
    auto model = fit_gbdt(Dataset{&cols, &y}, Dataset{}, {"x"}, plain_params());
    CHECK(model.trees.empty());
    CHECK(model.predict_row({100.0}) == 3.25);
}

TEST_CASE("gbdt: learns a step function; threshold lands within one bin of the step") {
    // 200 distinct values keep one histogram bin per value, so an exact
    // split at the step is representable.
    Rng rng(1);
    std::vector<std::vector<double>> cols(1);
    std::vector<double> y;
    for (int i = 0; i < 200; ++i) {
        double x = (rng.uniform() - 0.5) * 4.0;
        cols[0].push_back(x);
        y.push_back(x < 0.0 ? -2.0 : 5.0);
    }
    GbdtParams p = plain_params();
    p.max_rounds = 200;
    p.num_leaves = 4;
    auto model = fit_gbdt(Dataset{&cols, &y}, Dataset{}, {"x"}, p);
    CHECK(model.train_mse_history.back() < 1e-8);

    // Split threshold of the first tree's root is within one bin of 0: the
    // nearest training values bracket it.
    double below = -4, above = 4;
    for (double v : cols[0]) {
        if (v < 0 && v > below) below = v;
        if (v >= 0 && v < above) above = v;
    }
    const TreeNode& root = model.trees[0].nodes[0];
    CHECK(root.split_threshold >= below);
    CHECK(root.split_threshold <= above);

    // Brute-force check that no other single split on binned data beats it:
    // evaluate the gain of every candidate threshold by direct partition.
    double best_gain = -1, best_thr = 0;
    std::vector<double> sorted = cols[0];
    std::sort(sorted.begin(), sorted.end());
    const double lambda = p.l2_leaf_reg;
    double gsum = 0;
    for (size_t i = 0; i < y.size(); ++i) gsum += (0.0 /*pred=base*/);
    // gradients at round 1: pred − y = mean − y
    double mean = 0;
    for (double v : y) mean += v;
    mean /= y.size();
    for (size_t cut = 0; cut + 1 < sorted.size(); ++cut) {
        if (sorted[cut] == sorted[cut + 1]) continue;
        double thr = sorted[cut] + (sorted[cut + 1] - sorted[cut]) / 2;
        double gl = 0, hl = 0, gr = 0, hr = 0;
        for (size_t i = 0; i < y.size(); ++i) {
            double g = mean - y[i];
            if (cols[0][i] <= thr) {
                gl += g;
                hl += 1;
            } else {
                gr += g;
                hr += 1;
            }
        }
        double gain = 0.5 * (gl * gl / (hl + lambda) + gr * gr / (hr + lambda) -
                             (gl + gr) * (gl + gr) / (hl + hr + lambda));
        if (gain > best_gain) {
            best_gain = gain;
            best_thr = thr;
        }
    }
    CHECK(root.split_threshold == doctest::Approx(best_thr).epsilon(0.05));
}

TEST_CASE("gbdt: one round, two leaves, lambda 0, lr 1 gives exact closed-form leaf values") {
    std::vector<std::vector<double>> cols(1);
    std::vector<double> y;
    for (int i = 0; i < 20; ++i) {
        cols[0].push_back(i < 10 ? -1.0 - i * 0.01 : 1.0 + i * 0.01);
        y.push_back(i < 10 ? -1.0 : 1.0);
    }
    GbdtParams p = plain_params();
    p.learning_rate = 1.0;
    p.l2_leaf_reg = 0.0;
    p.max_rounds = 1;
    p.num_leaves = 2;
    auto model = fit_gbdt(Dataset{&cols, &y}, Dataset{}, {"x"}, p);
    REQUIRE(model.trees.size() == 1);
    CHECK(model.base_score == 0.0);
    CHECK(model.predict_row({-1.05}) == -1.0);
    CHECK(model.predict_row({1.05}) == 1.0);
}

TEST_CASE("gbdt: prediction matches a naive routing oracle on random rows") {
    Rng rng(7);
    const int n = 500, p_feat = 6;
    std::vector<std::vector<double>> cols(p_feat);
    std::vector<double> y;
    for (int i = 0; i < n; ++i) {
        for (int f = 0; f < p_feat; ++f) cols[f].push_back(rng.normal());
        y.push_back(std::sin(cols[0][i]) + 0.5 * cols[1][i] * cols[2][i] + 0.1 * rng.normal());
    }
    GbdtParams p = plain_params();
    p.max_rounds = 30;
    auto model = fit_gbdt(Dataset{&cols, &y}, Dataset{}, {"a", "b", "c", "d", "e", "f"}, p);
    REQUIRE(model.trees.size() > 0);

    Rng rng2(8);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> row(p_feat);
        for (auto& v : row) v = 3.0 * rng2.normal();
        double expect = model.base_score;
        for (int t = 0; t < model.best_iteration; ++t)
            expect += route_oracle(model.trees[t], row);
        CHECK(model.predict_row(row) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("gbdt: all-missing row routes by default directions to a finite value") {
    Rng rng(9);
    std::vector<std::vector<double>> cols(2);
    std::vector<double> y;
    for (int i = 0; i < 200; ++i) {
        cols[0].push_back(rng.normal());
        cols[1].push_back(rng.normal());
        y.push_back(cols[0][i] + cols[1][i]);
    }
    GbdtParams p = plain_params();
    p.max_rounds = 10;
    auto model = fit_gbdt(Dataset{&cols, &y}, Dataset{}, {"a", "b"}, p);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK(std::isfinite(model.predict_row({nan, nan})));
}

TEST_CASE("gbdt: training MSE is non-increasing without subsampling") {
    Rng rng(11);
    for (int ds = 0; ds < 3; ++ds) {
        std::vector<std::vector<double>> cols(4);
        std::vector<double> y;
        for (int i = 0; i < 300; ++i) {
            for (auto& c : cols) c.push_back(rng.normal());
            y.push_back(cols[0][i] * cols[1][i] + std::abs(cols[2][i]) + rng.normal());
        }
        GbdtParams p = plain_params();
        p.max_rounds = 120;
        p.learning_rate = 0.3;
        auto model = fit_gbdt(Dataset{&cols, &y}, Dataset{}, {"a", "b", "c", "d"}, p);
        for (size_t r = 1; r < model.train_mse_history.size(); ++r)
            CHECK(model.train_mse_history[r] <=
                  model.train_mse_history[r - 1] + 1e-12 * model.train_mse_history[r - 1]);
    }
}

TEST_CASE("gbdt: early stopping halts after the validation minimum") {
    // Train target has structure plus noise; the validation set follows a
    // different draw, so late rounds overfit and validation MSE turns up.
    Rng rng(13);
    auto make = [&](int n, std::vector<std::vector<double>>& cols, std::vector<double>& y) {
        cols.assign(3, {});
        y.clear();
        for (int i = 0; i < n; ++i) {
            for (auto& c : cols) c.push_back(rng.normal());
            y.push_back(cols[0][i] + 2.0 * rng.normal());
        }
    };
    std::vector<std::vector<double>> tr_cols, va_cols;
    std::vector<double> tr_y, va_y;
    make(400, tr_cols, tr_y);
    make(150, va_cols, va_y);

    GbdtParams p = plain_params();
    p.max_rounds = 2000;
    p.learning_rate = 0.2;
    p.early_stopping_rounds = 30;
    auto model =
        fit_gbdt(Dataset{&tr_cols, &tr_y}, Dataset{&va_cols, &va_y}, {"a", "b", "c"}, p);

    REQUIRE(!model.valid_mse_history.empty());
    const int rounds = static_cast<int>(model.valid_mse_history.size());
    CHECK(rounds < p.max_rounds);  // actually stopped early
    CHECK(rounds - model.best_iteration <= p.early_stopping_rounds);
    double best = model.valid_mse_history[model.best_iteration - 1];
    for (double v : model.valid_mse_history) CHECK(best <= v + 1e-12);
}

TEST_CASE("gbdt: identical seed and params give identical models") {
    Rng rng(17);
    std::vector<std::vector<double>> cols(3);
    std::vector<double> y;
    for (int i = 0; i < 300; ++i) {
        for (auto& c : cols) c.push_back(rng.normal());
        y.push_back(cols[0][i] - cols[2][i] + 0.3 * rng.normal());
    }
    GbdtParams p = plain_params();
    p.feature_fraction = 0.7;
    p.bagging_fraction = 0.6;
    p.bagging_freq = 2;
    p.max_rounds = 40;
    auto m1 = fit_gbdt(Dataset{&cols, &y}, Dataset{}, {"a", "b", "c"}, p);
    auto m2 = fit_gbdt(Dataset{&cols, &y}, Dataset{}, {"a", "b", "c"}, p);
    REQUIRE(m1.trees.size() == m2.trees.size());
    Rng probe(18);
    for (int i = 0; i < 50; ++i) {
        std::vector<double> row = {probe.normal(), probe.normal(), probe.normal()};
        CHECK(m1.predict_row(row) == m2.predict_row(row));
    }
}

TEST_CASE("gbdt: cover bookkeeping - child covers sum to the parent") {
    Rng rng(19);
    std::vector<std::vector<double>> cols(3);
    std::vector<double> y;
    for (int i = 0; i < 250; ++i) {
        for (auto& c : cols) c.push_back(rng.normal());
        y.push_back(std::abs(cols[1][i]));
    }
    GbdtParams p = plain_params();
    p.max_rounds = 15;
    auto model = fit_gbdt(Dataset{&cols, &y}, Dataset{}, {"a", "b", "c"}, p);
    for (const auto& tree : model.trees) {
        for (const auto& node : tree.nodes) {
            if (node.is_leaf()) continue;
            CHECK(tree.nodes[node.left].cover + tree.nodes[node.right].cover ==
                  doctest::Approx(node.cover).epsilon(1e-12));
        }
        CHECK(tree.nodes[0].cover == 250.0);
    }
}

TEST_CASE("gbdt: split decisions are invariant to a strictly increasing transform") {
    Rng rng(23);
    std::vector<std::vector<double>> cols(2), tcols(2);
    std::vector<double> y;
    for (int i = 0; i < 300; ++i) {
        double a = rng.normal(), b = rng.normal();
        cols[0].push_back(a);
        cols[1].push_back(b);
        tcols[0].push_back(std::exp(a));  // strictly increasing transform
        tcols[1].push_back(b);
        y.push_back(a > 0 ? b : -b);
    }
    GbdtParams p = plain_params();
    p.max_rounds = 20;
    auto m1 = fit_gbdt(Dataset{&cols, &y}, Dataset{}, {"a", "b"}, p);
    auto m2 = fit_gbdt(Dataset{&tcols, &y}, Dataset{}, {"a", "b"}, p);
    REQUIRE(m1.trees.size() == m2.trees.size());
    // same topology: identical (feature, leaf value) sequences node by node
    for (size_t t = 0; t < m1.trees.size(); ++t) {
        REQUIRE(m1.trees[t].nodes.size() == m2.trees[t].nodes.size());
        for (size_t nd = 0; nd < m1.trees[t].nodes.size(); ++nd) {
            const TreeNode& n1 = m1.trees[t].nodes[nd];
            const TreeNode& n2 = m2.trees[t].nodes[nd];
            CHECK(n1.split_feature == n2.split_feature);
            CHECK(n1.cover == n2.cover);
            if (n1.is_leaf())
                CHECK(n1.leaf_value == doctest::Approx(n2.leaf_value).epsilon(1e-12));
        }
    }
    // training points route identically
    for (int i = 0; i < 300; i += 17)
        CHECK(m1.predict_row({cols[0][i], cols[1][i]}) ==
              doctest::Approx(m2.predict_row({tcols[0][i], tcols[1][i]})).epsilon(1e-12));
}

TEST_CASE("gbdt: model file round trip predicts bit-identically") {
    auto dir = epf_test::scratch_dir("gbdt_io");
    Rng rng(29);
    std::vector<std::vector<double>> cols(4);
    std::vector<double> y;
    for (int i = 0; i < 400; ++i) {
        for (auto& c : cols) c.push_back(10 * rng.normal());
        y.push_back(cols[0][i] * 0.5 + std::max(0.0, cols[3][i]) + rng.normal());
    }
    GbdtParams p = plain_params();
    p.max_rounds = 25;
    p.feature_fraction = 0.8;
    auto model = fit_gbdt(Dataset{&cols, &y}, Dataset{}, {"w", "x", "y", "z"}, p);
    save_gbdt(model, dir + "/m.txt");
    auto back = load_gbdt(dir + "/m.txt");

    Rng probe(31);
    for (int i = 0; i < 1000; ++i) {
        std::vector<double> row = {20 * probe.normal(), 20 * probe.normal(),
                                   20 * probe.normal(), 20 * probe.normal()};
        CHECK(model.predict_row(row) == back.predict_row(row));
    }
}

TEST_CASE("gbdt: corrupted model file fails the checksum") {
    auto dir = epf_test::scratch_dir("gbdt_corrupt");
    std::vector<std::vector<double>> cols = {{1, 2, 3, 4, 5, 6, 7, 8, -1, -2}};
    std::vector<double> y = {1, 1, 1, 1, 1, 0, 0, 0, 0, 0};
    GbdtParams p = plain_params();
    p.max_rounds = 3;
    auto model = fit_gbdt(Dataset{&cols, &y}, Dataset{}, {"x"}, p);
    save_gbdt(model, dir + "/m.txt");

    auto text = epf_test::read_file(dir + "/m.txt");
    text[text.size() / 2] = text[text.size() / 2] == '1' ? '2' : '1';
    std::ofstream(dir + "/m.txt", std::ios::binary) << text;
    CHECK_THROWS_WITH_AS(load_gbdt(dir + "/m.txt"), doctest::Contains("checksum"), Error);
}

TEST_CASE("gbdt: future format versions are rejected") {
    auto dir = epf_test::scratch_dir("gbdt_version");
    epf_test::write_file(dir, "m.txt", "EPFGBDT 99\nchecksum 0\n");
    CHECK_THROWS_WITH_AS(load_gbdt(dir + "/m.txt"), doctest::Contains("version-mismatch"),
                         Error);
}

TEST_CASE("gbdt: parameter validation and empty-data errors") {
    std::vector<std::vector<double>> cols = {{1, 2}};
    std::vector<double> y = {1, 2};
    GbdtParams p = plain_params();
    p.learning_rate = 0.0;
    CHECK_THROWS_WITH_AS(fit_gbdt(Dataset{&cols, &y}, Dataset{}, {"x"}, p),
                         doctest::Contains("bad-params"), Error);
    CHECK_THROWS_WITH_AS(fit_gbdt(Dataset{}, Dataset{}, {}, plain_params()),
                         doctest::Contains("empty-data"), Error);
    std::vector<std::vector<double>> cols2 = {{1, 2}, {3, 4}};
    CHECK_THROWS_WITH_AS(fit_gbdt(Dataset{&cols2, &y}, Dataset{}, {"x"}, plain_params()),
                         doctest::Contains("feature-mismatch"), Error);
}
