#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "scd/relaxed.hpp"

namespace scd {

struct OracleResult {
    Assignment best_labels;     // exhaustive cut-objective minimizer
    double best_value = 0.0;
    Assignment closest_labels;  // partition whose scaled indicator is rotation-closest to the basis
    double closest_value = 0.0; // cut objective of closest_labels
    double closest_distance = 0.0; // min over rotations of ||f(Y) - F R||_F^2
    std::uint64_t feasible_count = 0;
};

// Streams every partition of n points into exactly c non-empty clusters,
// one canonical labeling each (restricted growth strings, lexicographically
// ascending). Returns the count. Requires 1 <= c <= n <= 16.
std::uint64_t enumerate_assignments(
    int n, int c, const std::function<void(const Assignment&)>& fn);

// Exhaustive minimum of the cut objective. Ties keep the lexicographically
// smallest canonical label vector. Fills best_* and feasible_count.
OracleResult brute_force_optimum(const Graph& g, int c);

// Exhaustive minimum of min_R ||f(Y) - F R||_F^2 using the closed form
// ||F||^2 + c - 2 ||F^T f(Y)||_* (nuclear norm). Fills closest_* and
// feasible_count.
OracleResult closest_discrete(const RelaxedSolution& rs, const Graph& g, int c);

struct MismatchStudyRow {
    int n = 0;
    int trials = 0;
    double mismatch_proportion = 0.0; // closest-discrete partition != brute-force optimum
};

// For each instance size: random dense graphs, ratio cut, c clusters; the
// proportion of instances where the rotation-closest partition is not the
// exhaustive optimum. Requires trials > 0 and every n within the exhaustive
// range.
std::vector<MismatchStudyRow> mismatch_study(const std::vector<int>& n_values,
                                             int trials, int c,
                                             std::uint64_t seed);

} // namespace scd
