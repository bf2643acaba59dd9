#include "scd/oracle.hpp"

#include <string>

#include "scd/dataset.hpp"
#include "scd/errors.hpp"

namespace scd {

namespace {

constexpr int kMaxExhaustiveN = 16;

void check_size_guard(int n, int c) {
    if (n < 1 || n > kMaxExhaustiveN)
        throw InvalidInputError("oracle: exhaustive search limited to 1 <= n <= 16, got n = " +
                                std::to_string(n));
    if (c < 1 || c > n)
        throw InvalidInputError("oracle: requires 1 <= c <= n");
}

void enumerate_rec(Assignment& a, int i, int max_used, int n, int c,
                   const std::function<void(const Assignment&)>& fn, std::uint64_t& count) {
    if (i == n) {
        if (max_used + 1 == c) {
            ++count;
            fn(a);
        }
        return;
    }
    if (c - (max_used + 1) > n - i) return; // not enough rows left to open the missing clusters
    int top = std::min(max_used + 1, c - 1);
    for (int v = 0; v <= top; ++v) {
        a.labels[static_cast<std::size_t>(i)] = v;
        enumerate_rec(a, i + 1, std::max(max_used, v), n, c, fn, count);
    }
}

} // namespace

std::uint64_t enumerate_assignments(int n, int c,
                                    const std::function<void(const Assignment&)>& fn) {
    check_size_guard(n, c);
    Assignment a;
    a.num_clusters = c;
    a.labels.assign(static_cast<std::size_t>(n), 0);
    std::uint64_t count = 0;
    enumerate_rec(a, 0, -1, n, c, fn, count);
    return count;
}

OracleResult brute_force_optimum(const Graph& g, int c) {
    OracleResult out;
    bool have = false;
    out.feasible_count = enumerate_assignments(g.size(), c, [&](const Assignment& a) {
        double value = cut_objective(a, g);
        if (!have || value < out.best_value) {
            out.best_value = value;
            out.best_labels = a;
            have = true;
        }
    });
    return out;
}

OracleResult closest_discrete(const RelaxedSolution& rs, const Graph& g, int c) {
    if (rs.clusters() != c)
        throw InvalidInputError("closest_discrete: basis has a different cluster count");
    const double basis_norm_sq = rs.basis.squaredNorm();
    OracleResult out;
    bool have = false;
    out.feasible_count = enumerate_assignments(g.size(), c, [&](const Assignment& a) {
        Matrix cross = rs.basis.transpose() * scaled_indicator(a, g);
        double nuclear = thin_svd(cross).singular_values.sum();
        double dist = basis_norm_sq + static_cast<double>(c) - 2.0 * nuclear;
        if (!have || dist < out.closest_distance) {
            out.closest_distance = dist;
            out.closest_labels = a;
            have = true;
        }
    });
    out.closest_value = cut_objective(out.closest_labels, g);
    return out;
}

std::vector<MismatchStudyRow> mismatch_study(const std::vector<int>& n_values, int trials,
                                             int c, std::uint64_t seed) {
    if (trials <= 0)
        throw InvalidInputError("mismatch_study: trials must be positive (empty report)");
    if (n_values.empty())
        throw InvalidInputError("mismatch_study: no instance sizes given");
    std::vector<MismatchStudyRow> rows;
    rows.reserve(n_values.size());
    for (int n : n_values) {
        check_size_guard(n, c);
        if (n < 3)
            throw InvalidInputError("mismatch_study: instance size must be >= 3");
        int mismatches = 0;
        for (int t = 0; t < trials; ++t) {
            Matrix s = gen_random_graph(n, seed + static_cast<std::uint64_t>(t));
            Graph g = build_graph_from_weights(std::move(s), Cut::ratio);
            RelaxedSolution rs = solve_relaxed(g, c);
            OracleResult best = brute_force_optimum(g, c);
            OracleResult closest = closest_discrete(rs, g, c);
            if (!same_partition(best.best_labels.labels, closest.closest_labels.labels))
                ++mismatches;
        }
        rows.push_back({n, trials, static_cast<double>(mismatches) / static_cast<double>(trials)});
    }
    return rows;
}

} // namespace scd
