#include "epf/linreg/ridge.hpp"

#include <cmath>
#include <fstream>

#include <Eigen/Dense>

#include "epf/error.hpp"
#include "epf/ingest/csv.hpp"

namespace epf {

double RidgeModel::predict_row(const std::vector<double>& row) const {
    double acc = intercept;
    for (size_t j = 0; j < weights.size(); ++j) {
        double v = row[j];
        if (std::isnan(v) && j < impute_means.size()) v = impute_means[j];
        acc += weights[j] * v;
    }
    return acc;
}

RidgeModel fit_ridge(const std::vector<std::vector<double>>& rows,
                     const std::vector<double>& target,
                     const std::vector<std::string>& feature_names, double lambda) {
    if (rows.empty()) throw Error("empty-data", "ridge fit needs at least one row");
    if (rows.size() != target.size())
        throw Error("length-mismatch", "rows and target sizes differ");
    const size_t p = feature_names.size();

    std::vector<size_t> keep;
    keep.reserve(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        if (!std::isfinite(target[i])) continue;
        bool ok = rows[i].size() == p;
        for (size_t j = 0; ok && j < p; ++j)
            if (!std::isfinite(rows[i][j])) ok = false;
        if (ok) keep.push_back(i);
    }
    if (keep.empty()) throw Error("empty-data", "no finite rows to fit on");
    const size_t n = keep.size();

    Eigen::MatrixXd X(n, p);
    Eigen::VectorXd y(n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < p; ++j) X(i, j) = rows[keep[i]][j];
        y(i) = target[keep[i]];
    }

    // Standardize columns so lambda penalizes comparable scales; constant
    // columns get scale 1 and end up with weight 0.
    Eigen::VectorXd mean = X.colwise().mean();
    Eigen::VectorXd scale(p);
    for (size_t j = 0; j < p; ++j) {
        double ss = (X.col(j).array() - mean(j)).square().sum() / double(n);
        scale(j) = ss > 0 ? std::sqrt(ss) : 1.0;
    }
    Eigen::MatrixXd Z = (X.rowwise() - mean.transpose()).array().rowwise() /
                        scale.transpose().array();
    double ybar = y.mean();
    Eigen::VectorXd yc = y.array() - ybar;

    Eigen::MatrixXd A = Z.transpose() * Z;
    A.diagonal().array() += lambda;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
    if (lambda == 0.0) {
        double dmax = p ? ldlt.vectorD().cwiseAbs().maxCoeff() : 0.0;
        if (p && (ldlt.vectorD().minCoeff() <= dmax * 1e-12 || ldlt.info() != Eigen::Success))
            throw Error("singular-system", "rank-deficient design with lambda = 0");
    }
    Eigen::VectorXd ws = ldlt.solve(Z.transpose() * yc);

    RidgeModel m;
    m.feature_names = feature_names;
    m.lambda = lambda;
    m.weights.resize(p);
    double dot = 0.0;
    for (size_t j = 0; j < p; ++j) {
        m.weights[j] = ws(j) / scale(j);
        dot += m.weights[j] * mean(j);
    }
    m.intercept = ybar - dot;
    return m;
}

std::vector<double> predict_ridge(const RidgeModel& model,
                                  const std::vector<std::vector<double>>& rows) {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        if (r.size() != model.weights.size())
            throw Error("missing-feature", "row width does not match fitted features");
        out.push_back(model.predict_row(r));
    }
    return out;
}

void save_ridge(const RidgeModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("io", "cannot write '" + path + "'");
    out << "EPFRIDGE 1\n";
    out << "lambda " << format_double(model.lambda) << '\n';
    out << "intercept " << format_double(model.intercept) << '\n';
    out << "features " << model.feature_names.size() << '\n';
    for (size_t j = 0; j < model.feature_names.size(); ++j)
        out << csv_escape(model.feature_names[j]) << ',' << format_double(model.weights[j])
            << '\n';
    if (!model.impute_means.empty()) {
        out << "impute_means";
        for (double m : model.impute_means) out << ' ' << format_double(m);
        out << '\n';
    }
}

RidgeModel load_ridge(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("io", "cannot open '" + path + "'");
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "EPFRIDGE") throw Error("bad-format", "not a ridge model file");
    if (version != 1) throw Error("version-mismatch", "unsupported ridge model version");
    RidgeModel m;
    std::string key;
    size_t nfeat = 0;
    in >> key >> m.lambda >> key >> m.intercept >> key >> nfeat;
    in.ignore();
    for (size_t j = 0; j < nfeat; ++j) {
        std::string line;
        if (!std::getline(in, line)) throw Error("bad-format", "truncated ridge model file");
        auto comma = line.rfind(',');
        if (comma == std::string::npos) throw Error("bad-format", "bad ridge model row");
        std::string name = line.substr(0, comma);
        if (name.size() >= 2 && name.front() == '"' && name.back() == '"') {
            std::string unq;
            for (size_t i = 1; i + 1 < name.size(); ++i) {
                if (name[i] == '"' && i + 2 < name.size() && name[i + 1] == '"') ++i;
                unq += name[i];
            }
            name = unq;
        }
        m.feature_names.push_back(name);
        m.weights.push_back(std::strtod(line.c_str() + comma + 1, nullptr));
    }
    std::string tail;
    if (in >> tail && tail == "impute_means") {
        m.impute_means.resize(nfeat);
        for (size_t j = 0; j < nfeat; ++j) in >> m.impute_means[j];
    }
    return m;
}

}  // namespace epf
