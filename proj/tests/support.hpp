#pragma once

#include <random>

#include "scd/discretize.hpp"
#include "scd/graph.hpp"
#include "scd/numerics.hpp"
#include "scd/rng.hpp"

namespace scd::test {

// The 4-vertex worked instance used across suites.
inline Matrix small_weights() {
    Matrix s(4, 4);
    s << 0.0, 0.5, 0.1, 0.8,
         0.5, 0.0, 0.4, 0.2,
         0.1, 0.4, 0.0, 0.5,
         0.8, 0.2, 0.5, 0.0;
    return s;
}

inline Matrix random_orthonormal(std::mt19937_64& gen, int n, int c) {
    Matrix a(n, c);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < c; ++j) a(i, j) = normal01(gen);
    Eigen::HouseholderQR<Matrix> qr(a);
    return qr.householderQ() * Matrix::Identity(n, c);
}

inline Matrix random_matrix(std::mt19937_64& gen, int n, int m) {
    Matrix a(n, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) a(i, j) = normal01(gen);
    return a;
}

// Two clean blocks joined by no edges: weight w inside each block.
inline Matrix two_block_weights(int n1, int n2, double w = 1.0) {
    int n = n1 + n2;
    Matrix s = Matrix::Zero(n, n);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j)
            if (i != j) s(i, j) = w;
    for (int i = n1; i < n; ++i)
        for (int j = n1; j < n; ++j)
            if (i != j) s(i, j) = w;
    return s;
}

inline Assignment make_assignment(std::vector<int> labels, int c) {
    Assignment y;
    y.labels = std::move(labels);
    y.num_clusters = c;
    return y;
}

} // namespace scd::test
