#include "scd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "scd/errors.hpp"
#include "scd/relaxed.hpp"

namespace scd {

namespace {

std::vector<int> remap_ascending(const std::vector<int>& labels, int& k_out) {
    std::map<int, int> ids;
    for (int v : labels) ids.emplace(v, 0);
    int next = 0;
    for (auto& [key, idx] : ids) idx = next++;
    std::vector<int> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) out[i] = ids[labels[i]];
    k_out = next;
    return out;
}

} // namespace

Eigen::MatrixXi contingency_table(const std::vector<int>& true_labels,
                                  const std::vector<int>& pred_labels) {
    if (true_labels.size() != pred_labels.size())
        throw InvalidInputError("metrics: label sequences have different lengths");
    if (true_labels.empty())
        throw InvalidInputError("metrics: empty label sequences");
    int r = 0, k = 0;
    std::vector<int> t = remap_ascending(true_labels, r);
    std::vector<int> p = remap_ascending(pred_labels, k);
    Eigen::MatrixXi table = Eigen::MatrixXi::Zero(r, k);
    for (std::size_t i = 0; i < t.size(); ++i) ++table(t[i], p[i]);
    return table;
}

std::vector<int> min_cost_matching(const Matrix& cost) {
    const int n = static_cast<int>(cost.rows());
    if (cost.cols() != n || n == 0)
        throw InvalidInputError("matching: cost matrix must be square and non-empty");
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<int> p(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> way(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(static_cast<std::size_t>(n) + 1, inf);
        std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
        do {
            used[static_cast<std::size_t>(j0)] = 1;
            int i0 = p[static_cast<std::size_t>(j0)], j1 = -1;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                double cur = cost(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] -
                             v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    minv[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (p[static_cast<std::size_t>(j0)] != 0);
        do {
            int j1 = way[static_cast<std::size_t>(j0)];
            p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> match(static_cast<std::size_t>(n), -1);
    for (int j = 1; j <= n; ++j)
        if (p[static_cast<std::size_t>(j)] > 0)
            match[static_cast<std::size_t>(p[static_cast<std::size_t>(j)] - 1)] = j - 1;
    return match;
}

double accuracy(const std::vector<int>& true_labels, const std::vector<int>& pred_labels) {
    Eigen::MatrixXi table = contingency_table(true_labels, pred_labels);
    const int r = static_cast<int>(table.rows());
    const int k = static_cast<int>(table.cols());
    if (k < r)
        throw DegeneratePartitionError(
            "accuracy: prediction has fewer clusters than the reference labeling");
    if (k > 2 * r)
        throw InvalidInputError("accuracy: prediction has more than twice the reference clusters");
    const int m = std::max(r, k);
    const double top = static_cast<double>(table.maxCoeff());
    Matrix cost = Matrix::Constant(m, m, top); // padding rows match nothing
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < k; ++j)
            cost(i, j) = top - static_cast<double>(table(i, j));
    std::vector<int> match = min_cost_matching(cost);
    long matched = 0;
    for (int i = 0; i < r; ++i)
        if (match[static_cast<std::size_t>(i)] < k)
            matched += table(i, match[static_cast<std::size_t>(i)]);
    return static_cast<double>(matched) / static_cast<double>(true_labels.size());
}

double nmi(const std::vector<int>& true_labels, const std::vector<int>& pred_labels) {
    Eigen::MatrixXi table = contingency_table(true_labels, pred_labels);
    const double n = static_cast<double>(true_labels.size());
    Eigen::VectorXi row_sums = table.rowwise().sum();
    Eigen::VectorXi col_sums = table.colwise().sum();

    double h_true = 0.0, h_pred = 0.0, info = 0.0;
    for (Eigen::Index i = 0; i < row_sums.size(); ++i) {
        double p = row_sums(i) / n;
        if (p > 0.0) h_true -= p * std::log(p);
    }
    for (Eigen::Index j = 0; j < col_sums.size(); ++j) {
        double q = col_sums(j) / n;
        if (q > 0.0) h_pred -= q * std::log(q);
    }
    for (Eigen::Index i = 0; i < table.rows(); ++i) {
        for (Eigen::Index j = 0; j < table.cols(); ++j) {
            if (table(i, j) == 0) continue;
            double pij = table(i, j) / n;
            info += pij * std::log(pij * n * n / (static_cast<double>(row_sums(i)) *
                                                  static_cast<double>(col_sums(j))));
        }
    }
    double denom = std::sqrt(h_true * h_pred);
    if (denom <= 0.0)
        return same_partition(true_labels, pred_labels) ? 1.0 : 0.0;
    return std::clamp(info / denom, 0.0, 1.0);
}

EvalResult evaluate(const std::vector<int>& true_labels, const std::vector<int>& pred_labels) {
    EvalResult out;
    out.contingency = contingency_table(true_labels, pred_labels);
    out.acc = accuracy(true_labels, pred_labels);
    out.nmi = nmi(true_labels, pred_labels);
    return out;
}

} // namespace scd
