#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "hrcp/solver.hpp"
#include "test_util.hpp"

using namespace hrcp;
using testutil::line_instance;
using testutil::random_instance;

TEST_CASE("two separated pairs split exactly") {
    const Instance line = line_instance({0, 1, 10, 11});
    const SolveOutcome outcome = solve(line, 2);
    REQUIRE(outcome.status == SolveStatus::Optimal);
    REQUIRE(outcome.best.has_value());
    CHECK(outcome.upper_bound == 2.0);
    CHECK(outcome.lower_bound <= outcome.upper_bound);

    // Membership is {0,1} and {10,11} up to cluster labels.
    std::vector<std::vector<int>> clusters;
    for (const auto& m : outcome.best->members)
        if (!m.empty()) {
            auto sorted = m;
            std::sort(sorted.begin(), sorted.end());
            clusters.push_back(sorted);
        }
    std::sort(clusters.begin(), clusters.end());
    CHECK(clusters == std::vector<std::vector<int>>{{0, 1}, {2, 3}});
}

TEST_CASE("closed forms: p=1 bounding box and p>=n singletons") {
    for (int round = 0; round < 10; ++round) {
        const int n = 5 + round;
        const int d = 1 + round % 3;
        const Instance inst = random_instance(500 + round, n, d);

        const SolveOutcome whole = solve(inst, 1);
        double bbox = 0.0;
        for (int t = 0; t < d; ++t) bbox += inst.hi[t] - inst.lo[t];
        CHECK(whole.upper_bound == bbox);
        CHECK(whole.status == SolveStatus::Optimal);

        const SolveOutcome split = solve(inst, n + 2);
        CHECK(split.upper_bound == 0.0);
        CHECK(split.lower_bound == 0.0);
    }
}

TEST_CASE("solve matches the brute-force oracle on small instances") {
    for (int round = 0; round < 25; ++round) {
        const int n = 6 + round % 5;
        const int d = 1 + round % 3;
        const int p = 1 + round % 3;
        const Instance inst = random_instance(9000 + round, n, d);

        const SolveOutcome fast = solve(inst, p);
        const SolveOutcome oracle = brute_force(inst, p);
        REQUIRE(fast.status == SolveStatus::Optimal);
        REQUIRE(oracle.status == SolveStatus::Optimal);
        CHECK(std::abs(fast.upper_bound - oracle.upper_bound) <= 1e-9);
        CHECK(fast.lower_bound >= fast.upper_bound - 1e-9);

        REQUIRE(fast.best.has_value());
        CHECK(validate_clustering(*fast.best, inst, p).ok());
        CHECK(std::abs(total_span(*fast.best) - fast.upper_bound) == 0.0);
    }
}

TEST_CASE("optimal span is invariant under point permutation") {
    std::mt19937_64 rng(77);
    for (int round = 0; round < 8; ++round) {
        const int n = 9;
        const int d = 2;
        const Instance inst = random_instance(7000 + round, n, d);
        const double reference = solve(inst, 2).upper_bound;

        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<double> coords(static_cast<size_t>(n) * d);
        for (int i = 0; i < n; ++i)
            for (int t = 0; t < d; ++t) coords[static_cast<size_t>(i) * d + t] = inst.coord(perm[i], t);
        const Instance shuffled = Instance::from_flat(n, d, std::move(coords));
        CHECK(std::abs(solve(shuffled, 2).upper_bound - reference) <= 1e-9);
    }
}

TEST_CASE("incumbent stream improves strictly and stays valid") {
    const Instance inst = random_instance(321, 12, 2);
    std::vector<double> spans;
    const IncumbentSink sink = [&](const Clustering& c, double span) {
        CHECK(validate_clustering(c, inst, 3).ok());
        CHECK(total_span(c) == span);
        spans.push_back(span);
    };
    const SolveOutcome outcome = solve(inst, 3, {}, sink);
    REQUIRE(!spans.empty());
    for (size_t i = 1; i < spans.size(); ++i) CHECK(spans[i] < spans[i - 1]);
    CHECK(spans.back() == outcome.upper_bound);
}

TEST_CASE("partial_span_lb matches prefixes and bounds completions") {
    const Instance line = line_instance({0, 1, 10, 11});
    const std::vector<int> order{0, 1, 2, 3};

    CHECK(partial_span_lb(line, order, {}) == 0.0);

    const std::vector<int> prefix{0, 0};
    CHECK(partial_span_lb(line, order, prefix) == 1.0);

    // Every completion of {0,1} -> cluster 0 costs at least the prefix span.
    for (int c2 = 0; c2 < 2; ++c2)
        for (int c3 = 0; c3 < 2; ++c3) {
            const std::vector<int> full{0, 0, c2, c3};
            const double complete = partial_span_lb(line, order, full);
            CHECK(complete >= 1.0);
            const Clustering clustering = clustering_from_assignment(line, 2, full);
            CHECK(total_span(clustering) == complete);
        }
}

TEST_CASE("node budget truncation keeps bounds valid") {
    const Instance inst = random_instance(654, 12, 2);
    const SolveOutcome oracle = brute_force(inst, 3);

    SolveLimits limits;
    limits.node_limit = 5;
    const SolveOutcome truncated = solve(inst, 3, limits);
    CHECK(truncated.status == SolveStatus::NodeLimit);
    CHECK(truncated.lower_bound <= oracle.upper_bound + 1e-12);
    if (truncated.best) CHECK(truncated.upper_bound >= oracle.upper_bound - 1e-9);
    CHECK(truncated.lower_bound <= truncated.upper_bound + 1e-12);
}

TEST_CASE("warm starts bound the search and survive no-improvement runs") {
    const Instance inst = random_instance(987, 10, 2);
    const SolveOutcome cold = solve(inst, 2);
    REQUIRE(cold.best.has_value());

    const SolveOutcome warm = solve(inst, 2, {}, {}, &*cold.best);
    CHECK(warm.status == SolveStatus::Optimal);
    CHECK(std::abs(warm.upper_bound - cold.upper_bound) <= 1e-9);
    REQUIRE(warm.best.has_value());
    CHECK(validate_clustering(*warm.best, inst, 2).ok());

    Clustering wrong_p = *cold.best;
    wrong_p.p = 3;
    wrong_p.members.resize(3);
    wrong_p.boxes.resize(3);
    CHECK_THROWS_AS(solve(inst, 2, {}, {}, &wrong_p), std::invalid_argument);
}

TEST_CASE("brute force guards its input size") {
    const Instance big = random_instance(1, 17, 1);
    CHECK_THROWS_AS(brute_force(big, 2), std::invalid_argument);

    const Instance line = line_instance({0, 1, 10, 11});
    CHECK(brute_force(line, 4).upper_bound == 0.0);
    CHECK(brute_force(line, 1).upper_bound == 11.0);
}

TEST_CASE("branching order is a deterministic permutation starting far out") {
    const Instance inst = random_instance(42, 20, 3);
    const std::vector<int> order = branching_order(inst);
    CHECK(order.size() == 20);
    std::vector<int> sorted(order);
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 20; ++i) CHECK(sorted[i] == i);
    CHECK(order == branching_order(inst));

    // The first point maximizes the distance to the centroid.
    std::vector<double> centroid(inst.d, 0.0);
    for (int i = 0; i < inst.n; ++i)
        for (int t = 0; t < inst.d; ++t) centroid[t] += inst.coord(i, t) / inst.n;
    auto dist = [&](int i) {
        double s = 0.0;
        for (int t = 0; t < inst.d; ++t) {
            const double diff = inst.coord(i, t) - centroid[t];
            s += diff * diff;
        }
        return s;
    };
    for (int i = 0; i < inst.n; ++i) CHECK(dist(order[0]) >= dist(i) - 1e-9);
}

TEST_CASE("time budget returns promptly with a valid bound pair") {
    const Instance inst = random_instance(2024, 16, 3);
    SolveLimits limits;
    limits.time_limit_s = 1e-6;
    const SolveOutcome outcome = solve(inst, 3, limits);
    CHECK(outcome.lower_bound <= outcome.upper_bound + 1e-12);
    const SolveOutcome oracle = brute_force(inst, 3);
    CHECK(outcome.lower_bound <= oracle.upper_bound + 1e-12);
}
