#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "scd/relaxed.hpp"

namespace scd {

enum class Method { km, km_norm, sr, isr, first_order };

const char* method_name(Method m);
Method method_from_name(const std::string& name);

struct DiscretizerConfig {
    Method method = Method::first_order;
    double eta = 1e-3;       // only first_order reads it; must be >= 0
    std::uint64_t seed = 0;
    int max_sweeps = 100;
    int km_restarts = 10;
    int km_max_iters = 100;
};

struct DiscretizeReport {
    int iterations = 0;                 // sweeps (rotation methods) or Lloyd iterations of the best restart
    double final_objective = 0.0;       // cut objective of the returned assignment
    std::vector<double> objective_trace; // per-sweep alignment objective (rotation methods only)
    double loop_ms = 0.0;               // wall time spent in the sweep loop; excluded from serialized reports
};

struct DiscretizeResult {
    Assignment assignment;
    DiscretizeReport report;
};

// Dispatches on cfg.method. Deterministic given (rs, g, cfg). The returned
// assignment has no empty clusters.
DiscretizeResult discretize(const RelaxedSolution& rs, const Graph& g,
                            const DiscretizerConfig& cfg);

// k-means on the rows of the basis (farthest-first seeding, best of
// `restarts` runs by within-cluster sum of squares).
Assignment km_discretize(const Matrix& basis, int c, std::uint64_t seed,
                         int restarts = 10, int max_iters = 100);

// Same, but rows are scaled to unit norm first (rows with norm < 1e-12 kept
// unscaled).
Assignment km_norm_discretize(const Matrix& basis, int c, std::uint64_t seed,
                              int restarts = 10, int max_iters = 100);

// Spectral-rotation baseline: alternates a Procrustes rotation aligned to the
// current binary indicator with per-row argmax of basis*R; empty columns are
// repaired by moving the best-scoring row out of a column with >= 2 members.
Assignment sr_discretize(const RelaxedSolution& rs, const Graph& g,
                         std::uint64_t seed, int max_sweeps = 100);

// Alternating minimization of ||f(Y) - F R||_F^2 over (Y, R): the rotation
// engine with no gradient tilt.
Assignment isr_discretize(const RelaxedSolution& rs, const Graph& g,
                          std::uint64_t seed, int max_sweeps = 100);

// The tilted rotation engine: R from the SVD of F^T f(Y) - eta F^T L f(Y),
// greedy per-row updates by exact loss gain, singleton columns protected.
Assignment first_order_discretize(const RelaxedSolution& rs, const Graph& g,
                                  double eta, std::uint64_t seed,
                                  int max_sweeps = 100);

// State shared by isr/first_order sweeps. scores = (F - eta L F) R; the
// column caches make each candidate move O(1):
//   column_mass[j]   = sum_{i in C_j} sqrt(d_i) scores(i, j)
//   column_weight[j] = sum_{i in C_j} d_i
//   column_count[j]  = |C_j|
struct FirstOrderState {
    Matrix rotation; // c x c orthogonal
    Matrix scores;   // n x c
    Assignment y;
    Vector column_mass;
    Vector column_weight;
    std::vector<int> column_count;
};

// Basis tilted against the Laplacian: F - eta L F.
Matrix tilt_basis(const RelaxedSolution& rs, const Graph& g, double eta);

// Builds the state for a given assignment: Procrustes rotation from
// tilted^T f(Y), scores, and the column caches.
FirstOrderState init_first_order_state(const Matrix& tilted, const Graph& g,
                                       Assignment y);

// Recomputes rotation, scores and column_mass for the current assignment
// (the rotation half-step of a sweep).
void refresh_rotation(FirstOrderState& state, const Matrix& tilted, const Graph& g);

// One greedy pass over all rows in ascending order, moving each row to the
// argmax-gain column (ties to the lowest index, singleton sources held).
// Caches updated incrementally. Returns true if any row moved.
bool sweep_rows(FirstOrderState& state, const Graph& g);

// sum_j column_mass[j] / sqrt(column_weight[j]); the alignment objective the
// sweeps maximize (empty columns contribute zero).
double alignment_objective(const FirstOrderState& state);

// Gain in the alignment objective's j-th term from row i being a member of
// column j versus being absent from it. A move i: p -> q changes the
// objective by loss_gain(i, q) - loss_gain(i, p). O(1) via the column caches;
// the 0/0 case (i is the sole member) counts the absent term as zero.
double loss_gain(const FirstOrderState& state, int i, int j, const Graph& g);

// Uniform random labels with empty clusters repaired from columns that can
// spare a member. Deterministic per generator state.
Assignment random_assignment(std::mt19937_64& gen, int n, int c);

} // namespace scd
