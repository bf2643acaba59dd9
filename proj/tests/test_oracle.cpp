#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "scd/dataset.hpp"
#include "scd/errors.hpp"
#include "scd/graph.hpp"
#include "scd/oracle.hpp"
#include "scd/relaxed.hpp"
#include "support.hpp"

using namespace scd;
using test::make_assignment;
using test::random_orthonormal;
using test::small_weights;
using test::two_block_weights;

TEST_SUITE("oracle") {

TEST_CASE("enumerate_assignments visits each partition once, in order") {
    std::vector<std::vector<int>> seen;
    std::uint64_t count = enumerate_assignments(4, 2, [&](const Assignment& a) {
        CHECK(a.num_clusters == 2);
        CHECK_NOTHROW(a.validate());
        CHECK(a.labels == canonical_labels(a.labels)); // canonical form only
        seen.push_back(a.labels);
    });
    CHECK(count == 7);
    REQUIRE(seen.size() == 7);
    CHECK(seen.front() == std::vector<int>{0, 0, 0, 1});
    CHECK(seen.back() == std::vector<int>{0, 1, 1, 1});
    for (std::size_t i = 1; i < seen.size(); ++i)
        CHECK(seen[i - 1] < seen[i]); // strictly ascending: no duplicates
}

TEST_CASE("enumerate_assignments counts match the partition numbers") {
    auto count_only = [](int n, int c) {
        return enumerate_assignments(n, c, [](const Assignment&) {});
    };
    CHECK(count_only(3, 3) == 1);
    CHECK(count_only(5, 2) == 15);
    CHECK(count_only(6, 3) == 90);
    CHECK(count_only(16, 1) == 1);
    CHECK(count_only(2, 2) == 1);
}

TEST_CASE("enumerate_assignments enforces the exhaustive-size guard") {
    auto nop = [](const Assignment&) {};
    CHECK_THROWS_AS(enumerate_assignments(17, 2, nop), InvalidInputError);
    CHECK_THROWS_AS(enumerate_assignments(0, 1, nop), InvalidInputError);
    CHECK_THROWS_AS(enumerate_assignments(3, 4, nop), InvalidInputError);
    CHECK_THROWS_AS(enumerate_assignments(3, 0, nop), InvalidInputError);
}

TEST_CASE("brute_force_optimum solves the worked instance under both cuts") {
    Graph ratio = build_graph_from_weights(small_weights(), Cut::ratio);
    OracleResult r = brute_force_optimum(ratio, 2);
    CHECK(r.feasible_count == 7);
    CHECK(r.best_labels.labels == std::vector<int>{0, 1, 1, 0});
    CHECK(r.best_value == doctest::Approx(1.3).epsilon(1e-12));

    Graph normalized = build_graph_from_weights(small_weights(), Cut::normalized);
    OracleResult n = brute_force_optimum(normalized, 2);
    CHECK(n.best_labels.labels == std::vector<int>{0, 1, 1, 0});
    CHECK(n.best_value == doctest::Approx(1.0673234811165844).epsilon(1e-10));
}

TEST_CASE("brute_force_optimum finds the zero cut of disconnected blocks") {
    Graph g = build_graph_from_weights(two_block_weights(4, 3), Cut::ratio);
    OracleResult r = brute_force_optimum(g, 2);
    CHECK(r.best_value <= 1e-12);
    CHECK(same_partition(r.best_labels.labels, {0, 0, 0, 0, 1, 1, 1}));
}

TEST_CASE("brute_force_optimum breaks exact ties lexicographically") {
    // A 4-cycle: the two opposite-edge splits both cost 2 under the ratio cut.
    Matrix s = Matrix::Zero(4, 4);
    s(0, 1) = s(1, 0) = 1.0;
    s(1, 2) = s(2, 1) = 1.0;
    s(2, 3) = s(3, 2) = 1.0;
    s(3, 0) = s(0, 3) = 1.0;
    Graph g = build_graph_from_weights(s, Cut::ratio);
    OracleResult r = brute_force_optimum(g, 2);
    CHECK(r.best_value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.best_labels.labels == std::vector<int>{0, 0, 1, 1});
}

TEST_CASE("closest_discrete reproduces the worked instance under both cuts") {
    Graph ratio = build_graph_from_weights(small_weights(), Cut::ratio);
    RelaxedSolution rr = solve_relaxed(ratio, 2);
    OracleResult r = closest_discrete(rr, ratio, 2);
    CHECK(r.feasible_count == 7);
    CHECK(r.closest_labels.labels == std::vector<int>{0, 0, 1, 0});
    CHECK(r.closest_distance == doctest::Approx(0.13565963631684763).epsilon(1e-9));
    CHECK(r.closest_value == doctest::Approx(4.0 / 3.0).epsilon(1e-12));

    Graph normalized = build_graph_from_weights(small_weights(), Cut::normalized);
    RelaxedSolution rn = solve_relaxed(normalized, 2);
    OracleResult n = closest_discrete(rn, normalized, 2);
    CHECK(n.closest_labels.labels == std::vector<int>{0, 1, 1, 0});
    CHECK(n.closest_distance == doctest::Approx(0.09932858004866851).epsilon(1e-9));
    CHECK(n.closest_value == doctest::Approx(1.0673234811165844).epsilon(1e-10));
}

TEST_CASE("the best split of the worked instance is not the rotation-closest one") {
    // Under the ratio cut the exhaustive optimum {0,3}|{1,2} sits farther from
    // the relaxed basis (0.511) than the fixed point {0,1,3}|{2} (0.136).
    Graph g = build_graph_from_weights(small_weights(), Cut::ratio);
    RelaxedSolution rs = solve_relaxed(g, 2);
    OracleResult best = brute_force_optimum(g, 2);
    OracleResult closest = closest_discrete(rs, g, 2);
    CHECK_FALSE(same_partition(best.best_labels.labels, closest.closest_labels.labels));

    auto distance_of = [&](const std::vector<int>& labels) {
        Matrix cross = rs.basis.transpose() *
                       scaled_indicator(make_assignment(labels, 2), g);
        return rs.basis.squaredNorm() + 2.0 - 2.0 * thin_svd(cross).singular_values.sum();
    };
    CHECK(distance_of({0, 1, 1, 0}) == doctest::Approx(0.51126758100629877).epsilon(1e-9));
    CHECK(distance_of({0, 1, 1, 0}) > closest.closest_distance);
}

TEST_CASE("closest_discrete is invariant to rotating the basis") {
    Graph g = build_graph_from_weights(gen_random_graph(8, 14), Cut::normalized);
    RelaxedSolution rs = solve_relaxed(g, 3);
    OracleResult base = closest_discrete(rs, g, 3);

    std::mt19937_64 gen(15);
    RelaxedSolution rotated = rs;
    rotated.basis = rs.basis * random_orthonormal(gen, 3, 3);
    OracleResult turned = closest_discrete(rotated, g, 3);
    CHECK(turned.closest_labels.labels == base.closest_labels.labels);
    CHECK(turned.closest_distance ==
          doctest::Approx(base.closest_distance).epsilon(1e-9));
}

TEST_CASE("a basis that is itself a scaled indicator has distance zero") {
    Graph g = build_graph_from_weights(gen_random_graph(8, 20), Cut::normalized);
    Assignment planted = make_assignment({0, 0, 1, 1, 1, 2, 2, 2}, 3);
    RelaxedSolution rs;
    rs.basis = scaled_indicator(planted, g);
    rs.eigenvalues = Vector::Zero(8);
    rs.cut = g.cut;

    OracleResult r = closest_discrete(rs, g, 3);
    CHECK(r.closest_distance <= 1e-9);
    CHECK(same_partition(r.closest_labels.labels, planted.labels));
}

TEST_CASE("oracle values bracket the relaxation and each other") {
    for (std::uint64_t seed : {40, 41, 42}) {
        Graph g = build_graph_from_weights(gen_random_graph(7, seed), Cut::ratio);
        for (int c : {2, 3}) {
            RelaxedSolution rs = solve_relaxed(g, c);
            OracleResult best = brute_force_optimum(g, c);
            OracleResult closest = closest_discrete(rs, g, c);
            CHECK(best.best_value <= closest.closest_value + 1e-12);
            CHECK(best.best_value >= rs.lower_bound() - 1e-9);
            CHECK(closest.closest_distance >= -1e-12);
        }
    }
}

TEST_CASE("closest_discrete rejects a basis of the wrong width") {
    Graph g = build_graph_from_weights(small_weights(), Cut::ratio);
    RelaxedSolution rs = solve_relaxed(g, 2);
    CHECK_THROWS_AS(closest_discrete(rs, g, 3), InvalidInputError);
}

TEST_CASE("mismatch_study is deterministic with proportions in range") {
    std::vector<MismatchStudyRow> a = mismatch_study({3, 4, 5}, 25, 2, 7);
    std::vector<MismatchStudyRow> b = mismatch_study({3, 4, 5}, 25, 2, 7);
    REQUIRE(a.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(a[i].n == static_cast<int>(i) + 3);
        CHECK(a[i].trials == 25);
        CHECK(a[i].mismatch_proportion >= 0.0);
        CHECK(a[i].mismatch_proportion <= 1.0);
        CHECK(a[i].mismatch_proportion == b[i].mismatch_proportion);
    }
    // With three vertices the two notions have agreed on every sampled
    // instance; pin that so a regression in either oracle shows up here.
    CHECK(a[0].mismatch_proportion == 0.0);
}

TEST_CASE("mismatch_study validates its parameters") {
    CHECK_THROWS_AS(mismatch_study({4}, 0, 2, 1), InvalidInputError);
    CHECK_THROWS_AS(mismatch_study({}, 10, 2, 1), InvalidInputError);
    CHECK_THROWS_AS(mismatch_study({2}, 10, 2, 1), InvalidInputError);
    CHECK_THROWS_AS(mismatch_study({17}, 10, 2, 1), InvalidInputError);
}

} // TEST_SUITE
