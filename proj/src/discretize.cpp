#include "scd/discretize.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "scd/errors.hpp"
#include "scd/rng.hpp"

namespace scd {

const char* method_name(Method m) {
    switch (m) {
        case Method::km: return "km";
        case Method::km_norm: return "km_norm";
        case Method::sr: return "sr";
        case Method::isr: return "isr";
        case Method::first_order: return "first_order";
    }
    return "?";
}

Method method_from_name(const std::string& name) {
    if (name == "km") return Method::km;
    if (name == "km_norm") return Method::km_norm;
    if (name == "sr") return Method::sr;
    if (name == "isr") return Method::isr;
    if (name == "first_order") return Method::first_order;
    throw InvalidInputError("unknown method '" + name +
                            "' (expected km|km_norm|sr|isr|first_order)");
}

Assignment random_assignment(std::mt19937_64& gen, int n, int c) {
    if (c < 1 || n < c)
        throw InvalidInputError("random_assignment: requires n >= c >= 1");
    Assignment y;
    y.num_clusters = c;
    y.labels.resize(static_cast<std::size_t>(n));
    std::vector<int> counts(static_cast<std::size_t>(c), 0);
    for (int i = 0; i < n; ++i) {
        int v = static_cast<int>(uniform_index(gen, static_cast<std::size_t>(c)));
        y.labels[static_cast<std::size_t>(i)] = v;
        ++counts[static_cast<std::size_t>(v)];
    }
    for (int j = 0; j < c; ++j) {
        if (counts[static_cast<std::size_t>(j)] > 0) continue;
        std::vector<int> movable;
        for (int i = 0; i < n; ++i)
            if (counts[static_cast<std::size_t>(y.labels[static_cast<std::size_t>(i)])] > 1)
                movable.push_back(i);
        int pick = movable[uniform_index(gen, movable.size())];
        --counts[static_cast<std::size_t>(y.labels[static_cast<std::size_t>(pick)])];
        y.labels[static_cast<std::size_t>(pick)] = j;
        ++counts[static_cast<std::size_t>(j)];
    }
    return y;
}

Matrix tilt_basis(const RelaxedSolution& rs, const Graph& g, double eta) {
    if (rs.basis.rows() != g.laplacian.rows())
        throw InvalidInputError("tilt_basis: basis and graph sizes differ");
    if (eta == 0.0) return rs.basis;
    Matrix tilted = rs.basis;
    tilted.noalias() -= eta * (g.laplacian * rs.basis);
    return tilted;
}

namespace {

void rebuild_columns(FirstOrderState& state, const Graph& g) {
    const int n = state.y.size();
    const int c = state.y.num_clusters;
    state.column_mass = Vector::Zero(c);
    state.column_weight = Vector::Zero(c);
    state.column_count.assign(static_cast<std::size_t>(c), 0);
    for (int i = 0; i < n; ++i) {
        int j = state.y.labels[static_cast<std::size_t>(i)];
        double d = g.degrees(i);
        state.column_mass(j) += std::sqrt(d) * state.scores(i, j);
        state.column_weight(j) += d;
        ++state.column_count[static_cast<std::size_t>(j)];
    }
}

} // namespace

void refresh_rotation(FirstOrderState& state, const Matrix& tilted, const Graph& g) {
    Matrix cross = tilted.transpose() * scaled_indicator(state.y, g);
    state.rotation = procrustes(cross);
    state.scores.noalias() = tilted * state.rotation;
    rebuild_columns(state, g);
}

FirstOrderState init_first_order_state(const Matrix& tilted, const Graph& g, Assignment y) {
    y.validate();
    if (tilted.rows() != static_cast<Eigen::Index>(y.size()) ||
        tilted.cols() != static_cast<Eigen::Index>(y.num_clusters))
        throw InvalidInputError("first_order: basis and assignment sizes differ");
    FirstOrderState state;
    state.y = std::move(y);
    state.scores.resize(tilted.rows(), tilted.cols());
    refresh_rotation(state, tilted, g);
    return state;
}

double loss_gain(const FirstOrderState& state, int i, int j, const Graph& g) {
    const double d = g.degrees(i);
    const double sd = std::sqrt(d);
    const double m_ij = state.scores(i, j);
    const double mass = state.column_mass(j);
    const double weight = state.column_weight(j);
    const bool member = state.y.labels[static_cast<std::size_t>(i)] == j;

    double with_num = member ? mass : mass + sd * m_ij;
    double with_den = member ? weight : weight + d;
    double with_term = with_num / std::sqrt(with_den);

    double without_term;
    if (member) {
        double den = weight - d;
        without_term = (state.column_count[static_cast<std::size_t>(j)] <= 1 || den <= 0.0)
                           ? 0.0
                           : (mass - sd * m_ij) / std::sqrt(den);
    } else {
        without_term = state.column_count[static_cast<std::size_t>(j)] == 0
                           ? 0.0
                           : mass / std::sqrt(weight);
    }
    return with_term - without_term;
}

bool sweep_rows(FirstOrderState& state, const Graph& g) {
    const int n = state.y.size();
    const int c = state.y.num_clusters;
    bool changed = false;
    for (int i = 0; i < n; ++i) {
        int p = state.y.labels[static_cast<std::size_t>(i)];
        int best_j = 0;
        double best_gain = -std::numeric_limits<double>::infinity();
        for (int j = 0; j < c; ++j) {
            double gain = loss_gain(state, i, j, g);
            if (gain > best_gain) {
                best_gain = gain;
                best_j = j;
            }
        }
        if (best_j == p) continue;
        if (state.column_count[static_cast<std::size_t>(p)] <= 1) continue; // would empty a column
        const double d = g.degrees(i);
        const double sd = std::sqrt(d);
        state.column_mass(p) -= sd * state.scores(i, p);
        state.column_weight(p) -= d;
        --state.column_count[static_cast<std::size_t>(p)];
        state.column_mass(best_j) += sd * state.scores(i, best_j);
        state.column_weight(best_j) += d;
        ++state.column_count[static_cast<std::size_t>(best_j)];
        state.y.labels[static_cast<std::size_t>(i)] = best_j;
        changed = true;
    }
    return changed;
}

double alignment_objective(const FirstOrderState& state) {
    double total = 0.0;
    for (int j = 0; j < state.y.num_clusters; ++j)
        if (state.column_count[static_cast<std::size_t>(j)] > 0)
            total += state.column_mass(j) / std::sqrt(state.column_weight(j));
    return total;
}

namespace {

struct EngineOutput {
    Assignment y;
    int sweeps = 0;
    std::vector<double> trace;
    double loop_ms = 0.0;
};

EngineOutput rotation_engine(const RelaxedSolution& rs, const Graph& g, double eta,
                             std::uint64_t seed, int max_sweeps) {
    if (max_sweeps < 1)
        throw InvalidInputError("rotation engine: max_sweeps must be >= 1");
    const int n = g.size();
    const int c = rs.clusters();
    std::mt19937_64 gen(seed);
    Assignment y = random_assignment(gen, n, c);
    Matrix tilted = tilt_basis(rs, g, eta);
    FirstOrderState state = init_first_order_state(tilted, g, std::move(y));

    EngineOutput out;
    auto start = std::chrono::steady_clock::now();
    for (int s = 1; s <= max_sweeps; ++s) {
        if (s > 1) refresh_rotation(state, tilted, g);
        bool changed = sweep_rows(state, g);
        out.trace.push_back(alignment_objective(state));
        out.sweeps = s;
        if (!changed) break;
    }
    auto stop = std::chrono::steady_clock::now();
    out.loop_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    out.y = state.y;
    return out;
}

struct KmOutput {
    Assignment y;
    int iterations = 0;
    double wcss = 0.0;
};

KmOutput km_single_run(const Matrix& points, int c, std::mt19937_64& gen, int max_iters) {
    const int n = static_cast<int>(points.rows());
    const int m = static_cast<int>(points.cols());
    Matrix centers(c, m);

    // farthest-first seeding
    int first = static_cast<int>(uniform_index(gen, static_cast<std::size_t>(n)));
    centers.row(0) = points.row(first);
    Vector nearest_sq = (points.rowwise() - centers.row(0)).rowwise().squaredNorm();
    for (int k = 1; k < c; ++k) {
        int far_idx = 0;
        double far_val = -1.0;
        for (int i = 0; i < n; ++i) {
            if (nearest_sq(i) > far_val) {
                far_val = nearest_sq(i);
                far_idx = i;
            }
        }
        centers.row(k) = points.row(far_idx);
        Vector d = (points.rowwise() - centers.row(k)).rowwise().squaredNorm();
        nearest_sq = nearest_sq.cwiseMin(d);
    }

    KmOutput out;
    out.y.num_clusters = c;
    out.y.labels.assign(static_cast<std::size_t>(n), -1);
    std::vector<int> counts(static_cast<std::size_t>(c), 0);

    for (int iter = 1; iter <= max_iters; ++iter) {
        out.iterations = iter;
        bool changed = false;
        std::fill(counts.begin(), counts.end(), 0);
        for (int i = 0; i < n; ++i) {
            int best_k = 0;
            double best_d = (points.row(i) - centers.row(0)).squaredNorm();
            for (int k = 1; k < c; ++k) {
                double d = (points.row(i) - centers.row(k)).squaredNorm();
                if (d < best_d) {
                    best_d = d;
                    best_k = k;
                }
            }
            if (out.y.labels[static_cast<std::size_t>(i)] != best_k) {
                out.y.labels[static_cast<std::size_t>(i)] = best_k;
                changed = true;
            }
            ++counts[static_cast<std::size_t>(best_k)];
        }
        // repair empty clusters with the point farthest from its centroid
        for (int k = 0; k < c; ++k) {
            if (counts[static_cast<std::size_t>(k)] > 0) continue;
            int far_idx = -1;
            double far_val = -1.0;
            for (int i = 0; i < n; ++i) {
                int ci = out.y.labels[static_cast<std::size_t>(i)];
                if (counts[static_cast<std::size_t>(ci)] < 2) continue;
                double d = (points.row(i) - centers.row(ci)).squaredNorm();
                if (d > far_val) {
                    far_val = d;
                    far_idx = i;
                }
            }
            --counts[static_cast<std::size_t>(out.y.labels[static_cast<std::size_t>(far_idx)])];
            out.y.labels[static_cast<std::size_t>(far_idx)] = k;
            ++counts[static_cast<std::size_t>(k)];
            changed = true;
        }
        for (int k = 0; k < c; ++k) centers.row(k).setZero();
        for (int i = 0; i < n; ++i)
            centers.row(out.y.labels[static_cast<std::size_t>(i)]) += points.row(i);
        for (int k = 0; k < c; ++k)
            centers.row(k) /= static_cast<double>(counts[static_cast<std::size_t>(k)]);
        if (!changed) break;
    }

    out.wcss = 0.0;
    for (int i = 0; i < n; ++i)
        out.wcss += (points.row(i) - centers.row(out.y.labels[static_cast<std::size_t>(i)])).squaredNorm();
    return out;
}

KmOutput km_best_of(const Matrix& points, int c, std::uint64_t seed, int restarts, int max_iters) {
    if (static_cast<int>(points.rows()) < c)
        throw InvalidInputError("km: fewer rows than clusters");
    if (c < 1)
        throw InvalidInputError("km: cluster count must be positive");
    if (restarts < 1 || max_iters < 1)
        throw InvalidInputError("km: restarts and max_iters must be >= 1");
    std::mt19937_64 gen(seed);
    KmOutput best;
    bool have = false;
    for (int r = 0; r < restarts; ++r) {
        KmOutput run = km_single_run(points, c, gen, max_iters);
        if (!have || run.wcss < best.wcss) {
            best = std::move(run);
            have = true;
        }
    }
    return best;
}

Matrix normalize_rows(const Matrix& m) {
    Matrix out = m;
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        double norm = out.row(i).norm();
        if (norm >= 1e-12) out.row(i) /= norm;
    }
    return out;
}

struct SrOutput {
    Assignment y;
    int sweeps = 0;
    std::vector<double> trace;
};

SrOutput sr_engine(const RelaxedSolution& rs, const Graph& g, std::uint64_t seed, int max_sweeps) {
    if (max_sweeps < 1)
        throw InvalidInputError("sr: max_sweeps must be >= 1");
    const int n = g.size();
    const int c = rs.clusters();
    std::mt19937_64 gen(seed);
    Assignment y = random_assignment(gen, n, c);

    SrOutput out;
    Matrix indicator = Matrix::Zero(n, c);
    for (int s = 1; s <= max_sweeps; ++s) {
        out.sweeps = s;
        indicator.setZero();
        for (int i = 0; i < n; ++i)
            indicator(i, y.labels[static_cast<std::size_t>(i)]) = 1.0;
        Matrix r = procrustes(rs.basis.transpose() * indicator);
        Matrix scores = rs.basis * r;

        Assignment next;
        next.num_clusters = c;
        next.labels.resize(static_cast<std::size_t>(n));
        std::vector<int> counts(static_cast<std::size_t>(c), 0);
        for (int i = 0; i < n; ++i) {
            int best_j = 0;
            double best_v = scores(i, 0);
            for (int j = 1; j < c; ++j) {
                if (scores(i, j) > best_v) {
                    best_v = scores(i, j);
                    best_j = j;
                }
            }
            next.labels[static_cast<std::size_t>(i)] = best_j;
            ++counts[static_cast<std::size_t>(best_j)];
        }
        for (int j = 0; j < c; ++j) {
            if (counts[static_cast<std::size_t>(j)] > 0) continue;
            int steal = -1;
            double steal_v = -std::numeric_limits<double>::infinity();
            for (int i = 0; i < n; ++i) {
                int ci = next.labels[static_cast<std::size_t>(i)];
                if (counts[static_cast<std::size_t>(ci)] < 2) continue;
                if (scores(i, j) > steal_v) {
                    steal_v = scores(i, j);
                    steal = i;
                }
            }
            --counts[static_cast<std::size_t>(next.labels[static_cast<std::size_t>(steal)])];
            next.labels[static_cast<std::size_t>(steal)] = j;
            ++counts[static_cast<std::size_t>(j)];
        }
        out.trace.push_back((scores - indicator).squaredNorm());
        bool same = next.labels == y.labels;
        y = std::move(next);
        if (same) break;
    }
    out.y = std::move(y);
    return out;
}

} // namespace

Assignment km_discretize(const Matrix& basis, int c, std::uint64_t seed,
                         int restarts, int max_iters) {
    return km_best_of(basis, c, seed, restarts, max_iters).y;
}

Assignment km_norm_discretize(const Matrix& basis, int c, std::uint64_t seed,
                              int restarts, int max_iters) {
    return km_best_of(normalize_rows(basis), c, seed, restarts, max_iters).y;
}

Assignment sr_discretize(const RelaxedSolution& rs, const Graph& g,
                         std::uint64_t seed, int max_sweeps) {
    return sr_engine(rs, g, seed, max_sweeps).y;
}

Assignment isr_discretize(const RelaxedSolution& rs, const Graph& g,
                          std::uint64_t seed, int max_sweeps) {
    return rotation_engine(rs, g, 0.0, seed, max_sweeps).y;
}

Assignment first_order_discretize(const RelaxedSolution& rs, const Graph& g,
                                  double eta, std::uint64_t seed, int max_sweeps) {
    if (eta < 0.0)
        throw InvalidInputError("first_order: eta must be nonnegative");
    return rotation_engine(rs, g, eta, seed, max_sweeps).y;
}

DiscretizeResult discretize(const RelaxedSolution& rs, const Graph& g,
                            const DiscretizerConfig& cfg) {
    if (rs.basis.rows() != g.laplacian.rows())
        throw InvalidInputError("discretize: basis and graph sizes differ");
    if (rs.clusters() < 2)
        throw InvalidInputError("discretize: need at least 2 clusters");
    if (cfg.eta < 0.0)
        throw InvalidInputError("discretize: eta must be nonnegative");

    DiscretizeResult out;
    switch (cfg.method) {
        case Method::km: {
            KmOutput run = km_best_of(rs.basis, rs.clusters(), cfg.seed,
                                      cfg.km_restarts, cfg.km_max_iters);
            out.assignment = std::move(run.y);
            out.report.iterations = run.iterations;
            break;
        }
        case Method::km_norm: {
            KmOutput run = km_best_of(normalize_rows(rs.basis), rs.clusters(), cfg.seed,
                                      cfg.km_restarts, cfg.km_max_iters);
            out.assignment = std::move(run.y);
            out.report.iterations = run.iterations;
            break;
        }
        case Method::sr: {
            SrOutput run = sr_engine(rs, g, cfg.seed, cfg.max_sweeps);
            out.assignment = std::move(run.y);
            out.report.iterations = run.sweeps;
            out.report.objective_trace = std::move(run.trace);
            break;
        }
        case Method::isr: {
            EngineOutput run = rotation_engine(rs, g, 0.0, cfg.seed, cfg.max_sweeps);
            out.assignment = std::move(run.y);
            out.report.iterations = run.sweeps;
            out.report.objective_trace = std::move(run.trace);
            out.report.loop_ms = run.loop_ms;
            break;
        }
        case Method::first_order: {
            EngineOutput run = rotation_engine(rs, g, cfg.eta, cfg.seed, cfg.max_sweeps);
            out.assignment = std::move(run.y);
            out.report.iterations = run.sweeps;
            out.report.objective_trace = std::move(run.trace);
            out.report.loop_ms = run.loop_ms;
            break;
        }
    }
    out.assignment.validate();
    out.report.final_objective = cut_objective(out.assignment, g);
    return out;
}

} // namespace scd
