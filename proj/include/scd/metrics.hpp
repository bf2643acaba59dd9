#pragma once

#include <vector>

#include "scd/numerics.hpp"

namespace scd {

struct EvalResult {
    double acc = 0.0;
    double nmi = 0.0;
    Eigen::MatrixXi contingency; // rows: true classes, cols: predicted clusters
};

// Count table after remapping each side's distinct labels (ascending) to
// 0..k-1. Lengths must match and be nonzero.
Eigen::MatrixXi contingency_table(const std::vector<int>& true_labels,
                                  const std::vector<int>& pred_labels);

// Best matched fraction over one-to-one cluster-to-class matchings, solved
// exactly on the zero-padded square contingency table. Throws
// DegeneratePartitionError when pred has fewer distinct labels than truth,
// InvalidInputError when it has more than twice as many.
double accuracy(const std::vector<int>& true_labels,
                const std::vector<int>& pred_labels);

// Mutual information normalized by the geometric mean of the entropies
// (natural logs). Zero-entropy cases: 1 when the partitions are identical,
// else 0.
double nmi(const std::vector<int>& true_labels,
           const std::vector<int>& pred_labels);

EvalResult evaluate(const std::vector<int>& true_labels,
                    const std::vector<int>& pred_labels);

// Minimum-cost perfect matching on a square cost matrix; returns the column
// matched to each row. Exposed for direct testing against exhaustive search.
std::vector<int> min_cost_matching(const Matrix& cost);

} // namespace scd
