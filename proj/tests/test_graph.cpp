#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "scd/dataset.hpp"
#include "scd/errors.hpp"
#include "scd/graph.hpp"
#include "scd/numerics.hpp"
#include "support.hpp"

using namespace scd;
using test::random_matrix;
using test::small_weights;
using test::two_block_weights;

TEST_SUITE("graph") {

TEST_CASE("cut names round-trip") {
    CHECK(cut_from_name("ratio") == Cut::ratio);
    CHECK(cut_from_name("normalized") == Cut::normalized);
    CHECK(std::string(cut_name(Cut::ratio)) == "ratio");
    CHECK(std::string(cut_name(Cut::normalized)) == "normalized");
    CHECK_THROWS_AS(cut_from_name("Ratio"), InvalidInputError);
    CHECK_THROWS_AS(cut_from_name(""), InvalidInputError);
}

TEST_CASE("pairwise_sq_dists matches hand values and a naive loop") {
    Matrix x(2, 1);
    x << 0.0, 3.0;
    Matrix d = pairwise_sq_dists(x);
    CHECK(d(0, 0) == 0.0);
    CHECK(d(1, 1) == 0.0);
    CHECK(d(0, 1) == doctest::Approx(9.0).epsilon(1e-14));
    CHECK(d(1, 0) == d(0, 1));

    std::mt19937_64 gen(5);
    Matrix y = random_matrix(gen, 12, 4);
    Matrix dy = pairwise_sq_dists(y);
    for (int i = 0; i < 12; ++i) {
        CHECK(dy(i, i) == 0.0);
        for (int j = 0; j < 12; ++j) {
            double naive = (y.row(i) - y.row(j)).squaredNorm();
            CHECK(std::abs(dy(i, j) - naive) < 1e-12 * std::max(1.0, naive));
            CHECK(dy(i, j) >= 0.0);
            CHECK(dy(i, j) == dy(j, i));
        }
    }

    Matrix dup(3, 2);
    dup << 1.0, 2.0, 1.0, 2.0, 5.0, 5.0;
    Matrix dd = pairwise_sq_dists(dup);
    CHECK(dd(0, 1) == 0.0);

    CHECK_THROWS_AS(pairwise_sq_dists(Matrix::Zero(1, 3)), InvalidInputError);
}

TEST_CASE("can_weights reproduces a hand-computed row") {
    // 1-D points 0, 1, sqrt(2), 2: squared distances from the first point are
    // 1, 2, 4. With k = 2 the cutoff is 4, so its weights are 3/5 and 2/5.
    Matrix x(4, 1);
    x << 0.0, 1.0, std::sqrt(2.0), 2.0;
    Matrix w = can_weights(pairwise_sq_dists(x), 2);
    CHECK(w(0, 1) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(w(0, 2) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(w(0, 3) == 0.0);
    CHECK(w(0, 0) == 0.0);
}

TEST_CASE("can_weights rows sum to one with k positive entries") {
    std::mt19937_64 gen(6);
    Matrix x = random_matrix(gen, 20, 3);
    for (int k : {1, 5, 18}) {
        Matrix w = can_weights(pairwise_sq_dists(x), k);
        for (int i = 0; i < 20; ++i) {
            CHECK(w(i, i) == 0.0);
            CHECK(w.row(i).sum() == doctest::Approx(1.0).epsilon(1e-10));
            int positive = 0;
            for (int j = 0; j < 20; ++j) {
                CHECK(w(i, j) >= 0.0);
                if (w(i, j) > 0.0) ++positive;
            }
            CHECK(positive == k); // generic data: no exact distance ties
        }
    }
}

TEST_CASE("can_weights breaks distance ties toward the smaller index") {
    // Distances from row 0: 1 (row 1), 1 (row 2), 1 (row 3), 9 (row 4).
    // With k = 2 rows 1 and 2 win the tie and share the weight equally.
    Matrix d(5, 5);
    d << 0, 1, 1, 1, 9,
         1, 0, 2, 3, 4,
         1, 2, 0, 5, 6,
         1, 3, 5, 0, 7,
         9, 4, 6, 7, 0;
    Matrix w = can_weights(d, 3);
    CHECK(w(0, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(w(0, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(w(0, 3) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(w(0, 4) == 0.0);
}

TEST_CASE("can_weights rejects degenerate neighborhoods naming the row") {
    Matrix d(4, 4);
    d << 0, 1, 1, 1,
         1, 0, 2, 3,
         1, 2, 0, 4,
         1, 3, 4, 0;
    try {
        can_weights(d, 2);
        FAIL("expected a degenerate-neighborhood error");
    } catch (const InvalidInputError& e) {
        CHECK(std::string(e.what()).find("row 0") != std::string::npos);
    }
}

TEST_CASE("can_weights validates k and the matrix shape") {
    Matrix d = pairwise_sq_dists(Matrix::Random(5, 2));
    CHECK_THROWS_AS(can_weights(d, 0), InvalidInputError);
    CHECK_THROWS_AS(can_weights(d, 4), InvalidInputError);
    CHECK_THROWS_AS(can_weights(Matrix::Zero(3, 4), 1), InvalidInputError);
}

TEST_CASE("ratio-cut graph stores unit masses and degree Laplacian") {
    Graph g = build_graph_from_weights(small_weights(), Cut::ratio);
    REQUIRE(g.size() == 4);
    CHECK(g.cut == Cut::ratio);
    CHECK(g.neighbor_k == 0);
    CHECK(g.degrees == Vector::Ones(4));
    CHECK(g.laplacian(0, 0) == doctest::Approx(1.4).epsilon(1e-14));
    CHECK(g.laplacian(1, 1) == doctest::Approx(1.1).epsilon(1e-14));
    CHECK(g.laplacian(2, 2) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g.laplacian(3, 3) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(g.laplacian(0, 1) == doctest::Approx(-0.5).epsilon(1e-14));
    // Constant vector is in the null space.
    CHECK((g.laplacian * Vector::Ones(4)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("normalized-cut graph stores degrees and a unit-diagonal Laplacian") {
    Graph g = build_graph_from_weights(small_weights(), Cut::normalized);
    Vector expected(4);
    expected << 1.4, 1.1, 1.0, 1.5;
    CHECK((g.degrees - expected).cwiseAbs().maxCoeff() < 1e-14);
    for (int i = 0; i < 4; ++i)
        CHECK(g.laplacian(i, i) == doctest::Approx(1.0).epsilon(1e-12));
    // D^{1/2} 1 is in the null space.
    Vector null_vec = g.degrees.array().sqrt();
    CHECK((g.laplacian * null_vec).cwiseAbs().maxCoeff() < 1e-12);

    EigenDecomposition eig = sym_eig(g.laplacian);
    CHECK(std::abs(eig.eigenvalues(0)) < 1e-12);
    CHECK(eig.eigenvalues(1) == doctest::Approx(1.0552006298690169).epsilon(1e-9));
    CHECK(eig.eigenvalues(2) == doctest::Approx(1.1792767699136457).epsilon(1e-9));
    CHECK(eig.eigenvalues(3) == doctest::Approx(1.7655226002173383).epsilon(1e-9));
}

TEST_CASE("weight-matrix validation rejects malformed input") {
    CHECK_THROWS_AS(build_graph_from_weights(Matrix::Zero(3, 4), Cut::ratio),
                    InvalidInputError);

    Matrix neg = small_weights();
    neg(0, 1) = neg(1, 0) = -0.1;
    CHECK_THROWS_AS(build_graph_from_weights(neg, Cut::ratio), InvalidInputError);

    Matrix asym = small_weights();
    asym(0, 1) += 1e-6;
    CHECK_THROWS_AS(build_graph_from_weights(asym, Cut::ratio), InvalidInputError);

    Matrix diag = small_weights();
    diag(2, 2) = 0.3;
    CHECK_THROWS_AS(build_graph_from_weights(diag, Cut::ratio), InvalidInputError);
}

TEST_CASE("zero-degree vertices pass ratio cut but fail normalized cut") {
    Matrix s = Matrix::Zero(3, 3);
    s(0, 1) = s(1, 0) = 1.0;
    Graph g = build_graph_from_weights(s, Cut::ratio);
    CHECK(g.degrees == Vector::Ones(3));
    try {
        build_graph_from_weights(s, Cut::normalized);
        FAIL("expected a zero-degree error");
    } catch (const InvalidInputError& e) {
        CHECK(std::string(e.what()).find("vertex 2") != std::string::npos);
    }
}

TEST_CASE("Laplacians of random graphs are positive semidefinite") {
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
        Matrix s = gen_random_graph(8, seed);
        for (Cut cut : {Cut::ratio, Cut::normalized}) {
            Graph g = build_graph_from_weights(s, cut);
            EigenDecomposition eig = sym_eig(g.laplacian);
            CHECK(eig.eigenvalues(0) > -1e-10);
        }
    }
}

TEST_CASE("two disconnected blocks give a two-dimensional null space") {
    Matrix s = two_block_weights(4, 3);
    for (Cut cut : {Cut::ratio, Cut::normalized}) {
        Graph g = build_graph_from_weights(s, cut);
        EigenDecomposition eig = sym_eig(g.laplacian);
        CHECK(std::abs(eig.eigenvalues(0)) < 1e-10);
        CHECK(std::abs(eig.eigenvalues(1)) < 1e-10);
        CHECK(eig.eigenvalues(2) > 0.1);
    }
}

TEST_CASE("build_graph chains distances, neighbor weights and symmetrization") {
    DataMatrix d = gen_blobs(24, 3, 2, 0.3, 11);
    Graph g = build_graph(d.features, 5, Cut::normalized);
    CHECK(g.neighbor_k == 5);
    REQUIRE(g.size() == 24);

    Matrix w = can_weights(pairwise_sq_dists(d.features), 5);
    Matrix s = 0.5 * (w + w.transpose());
    CHECK(g.weights == s);
    CHECK((g.weights - g.weights.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(g.weights.diagonal().cwiseAbs().maxCoeff() == 0.0);

    // Well-separated blobs keep all neighbor weight inside the true clusters.
    for (int i = 0; i < 24; ++i)
        for (int j = 0; j < 24; ++j)
            if (g.weights(i, j) > 0.0) CHECK(d.labels[i] == d.labels[j]);
}

} // TEST_SUITE
