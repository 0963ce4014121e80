#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hrcp/metrics.hpp"
#include "test_util.hpp"

using namespace hrcp;
using testutil::line_instance;
using testutil::random_instance;

TEST_CASE("neighbourhoods use an inclusive euclidean ball") {
    const Instance line = line_instance({0, 0.5, 2});
    const NeighbourhoodTable table = build_neighbourhoods(line, 1.0);
    CHECK(table.neighbors[0] == std::vector<int>{1});
    CHECK(table.neighbors[1] == std::vector<int>{0});
    CHECK(table.neighbors[2].empty());

    // Distance exactly delta counts as a neighbour.
    const Instance pair = line_instance({0, 1});
    CHECK(build_neighbourhoods(pair, 1.0).count(0) == 1);

    CHECK_THROWS_AS(build_neighbourhoods(line, 0.0), std::invalid_argument);
}

TEST_CASE("coincident points are mutual neighbours on the lower side") {
    const Instance pair = line_instance({3.0, 3.0});
    const NeighbourhoodTable table = build_neighbourhoods(pair, 0.5);
    CHECK(table.count(0) == 1);
    CHECK(table.count(1) == 1);
    CHECK(table.lower_count[0] == 1);
    CHECK(table.upper_count[0] == 0);
    CHECK(table.lower_count[1] == 1);
    CHECK(table.upper_count[1] == 0);
}

TEST_CASE("neighbourhood symmetry and side-count partition on random data") {
    const Instance inst = random_instance(31, 60, 2, -1.0, 1.0);
    const NeighbourhoodTable table = build_neighbourhoods(inst, 0.6);
    for (int i = 0; i < inst.n; ++i) {
        for (int j : table.neighbors[i]) {
            const auto& back = table.neighbors[j];
            CHECK(std::find(back.begin(), back.end(), i) != back.end());
            CHECK(j != i);
        }
        for (int t = 0; t < inst.d; ++t) {
            const size_t idx = static_cast<size_t>(i) * inst.d + t;
            CHECK(table.lower_count[idx] + table.upper_count[idx] == table.count(i));
        }
    }
}

TEST_CASE("eccentricity reproduces the reference side counts") {
    // 6 lower-side and 5 upper-side neighbours out of 11.
    const Instance big = line_instance({0, -1, -2, -3, -4, -5, -6, 1, 2, 3, 4, 5});
    const ScoreTable e1 = eccentricity(build_neighbourhoods(big, 100.0));
    CHECK(e1.per_coord[0] == 6.0 / 11.0);

    // 4 lower, 2 upper out of 6.
    const Instance mid = line_instance({0, -1, -2, -3, -4, 1, 2});
    const ScoreTable e2 = eccentricity(build_neighbourhoods(mid, 100.0));
    CHECK(e2.per_coord[0] == 4.0 / 6.0);

    // 5 lower, 0 upper: fully one-sided.
    const Instance onesided = line_instance({0, -1, -2, -3, -4, -5});
    const ScoreTable e3 = eccentricity(build_neighbourhoods(onesided, 100.0));
    CHECK(e3.per_coord[0] == 1.0);
    CHECK(e3.global[0] == 1.0);
}

TEST_CASE("isolated points are maximally eccentric with zero distance-eccentricity") {
    const Instance apart = line_instance({0, 100});
    const NeighbourhoodTable table = build_neighbourhoods(apart, 1.0);
    const ScoreTable ecc = eccentricity(table);
    CHECK(ecc.per_coord[0] == 1.0);
    CHECK(ecc.global[0] == 1.0);
    const ScoreTable decc = distance_eccentricity(apart, table);
    CHECK(decc.per_coord[0] == 0.0);
    CHECK(decc.global[1] == 0.0);
}

TEST_CASE("eccentricity stays within [0.5, 1] whenever neighbours exist") {
    const Instance inst = random_instance(77, 300, 3, -1.0, 1.0);
    const NeighbourhoodTable table = build_neighbourhoods(inst, 0.8);
    const ScoreTable ecc = eccentricity(table);
    for (int i = 0; i < inst.n; ++i) {
        if (table.count(i) == 0) continue;
        for (int t = 0; t < inst.d; ++t) {
            const double value = ecc.per_coord[static_cast<size_t>(i) * inst.d + t];
            CHECK(value >= 0.5);
            CHECK(value <= 1.0);
        }
    }
}

TEST_CASE("distance eccentricity follows its closed forms") {
    // Symmetric neighbours at distance 1 on both sides.
    const Instance symmetric = line_instance({0, -1, 1});
    const NeighbourhoodTable t1 = build_neighbourhoods(symmetric, 2.0);
    CHECK(distance_eccentricity(symmetric, t1).per_coord[0] == 0.0);

    // All neighbours on the lower side at mean distance 1.
    const Instance lower = line_instance({0, -0.5, -1.5});
    const NeighbourhoodTable t2 = build_neighbourhoods(lower, 5.0);
    CHECK(distance_eccentricity(lower, t2).per_coord[0] == 1.0);
    CHECK(distance_eccentricity(lower, t2).global[0] == 1.0);
}

TEST_CASE("scaling coordinates and delta together preserves order statistics") {
    const Instance base = random_instance(5, 40, 2, -1.0, 1.0);
    const double lambda = 3.75;
    std::vector<double> scaled(base.coords);
    for (double& v : scaled) v *= lambda;
    const Instance stretched = Instance::from_flat(base.n, base.d, std::move(scaled));

    const double delta = 0.7;
    const NeighbourhoodTable t1 = build_neighbourhoods(base, delta);
    const NeighbourhoodTable t2 = build_neighbourhoods(stretched, lambda * delta);
    CHECK(t1.neighbors == t2.neighbors);
    CHECK(t1.lower_count == t2.lower_count);

    const ScoreTable e1 = eccentricity(t1);
    const ScoreTable e2 = eccentricity(t2);
    CHECK(e1.per_coord == e2.per_coord);

    const ScoreTable d1 = distance_eccentricity(base, t1);
    const ScoreTable d2 = distance_eccentricity(stretched, t2);
    for (size_t i = 0; i < d1.global.size(); ++i)
        CHECK(d2.global[i] == doctest::Approx(lambda * d1.global[i]).epsilon(1e-12));
}

TEST_CASE("default delta doubles the mean nearest-neighbour distance") {
    const Instance line = line_instance({0, 1, 3});
    // Nearest-neighbour distances: 1, 1, 2.
    CHECK(default_delta(line) == 2.0 * 4.0 / 3.0);

    const Instance coincident = line_instance({5, 5, 5});
    CHECK(default_delta(coincident) > 0.0);

    const Instance single = line_instance({42});
    CHECK(default_delta(single) > 0.0);
}

namespace {

MetricTable synthetic_table(std::vector<int> ncount, std::vector<double> e, std::vector<double> d) {
    MetricTable table;
    table.delta = 1.0;
    table.ncount = std::move(ncount);
    table.ecc.global = std::move(e);
    table.decc.global = std::move(d);
    table.ecc.per_coord = table.ecc.global;  // one coordinate
    table.decc.per_coord = table.decc.global;
    return table;
}

}  // namespace

TEST_CASE("initial sample thresholds follow the metric rules") {
    // Neighbourhood rule: min count 1, alpha 2 -> keep counts <= 2.
    const MetricTable nm = synthetic_table({2, 5, 5, 1, 2, 9}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0});
    MetricParams params;
    params.alpha = 2.0;
    CHECK(initial_sample(Metric::Neighbourhood, nm, params, 1) == std::vector<int>{0, 3, 4});

    // beta = 0 keeps everything under EM.
    const MetricTable em = synthetic_table({1, 1, 1}, {0.2, 0.9, 0.5}, {0, 0, 0});
    params = MetricParams{};
    params.beta = 0.0;
    CHECK(initial_sample(Metric::Eccentricity, em, params, 1) == std::vector<int>{0, 1, 2});

    // beta = 1 keeps exactly the argmax set, padding ranks the rest.
    const MetricTable dm = synthetic_table({1, 1, 1, 1}, {0, 0, 0, 0}, {0.1, 0.9, 0.9, 0.4});
    params = MetricParams{};
    params.beta = 1.0;
    CHECK(initial_sample(Metric::DistanceEccentricity, dm, params, 1) == std::vector<int>{1, 2, 3});
}

TEST_CASE("initial sample pads to three points per cluster") {
    const MetricTable nm = synthetic_table({1, 8, 9, 7, 6, 5, 4}, {0, 0, 0, 0, 0, 0, 0},
                                           {0, 0, 0, 0, 0, 0, 0});
    MetricParams params;
    params.alpha = 1.0;  // keeps only index 0
    const std::vector<int> sample = initial_sample(Metric::Neighbourhood, nm, params, 2);
    // Pads with the five lowest remaining counts (4,5,6,7,8 at indices
    // 6,5,4,3,1), then reports ascending indices.
    CHECK(sample == std::vector<int>{0, 1, 3, 4, 5, 6});
}

TEST_CASE("increment sample ranks uncovered points by metric with index ties") {
    const MetricTable nm = synthetic_table({7, 2, 5}, {0, 0, 0}, {0, 0, 0});
    CHECK(increment_sample(Metric::Neighbourhood, nm, {0, 1, 2}, 2) == std::vector<int>{1, 2});
    CHECK(increment_sample(Metric::Neighbourhood, nm, {0, 1, 2}, 10) == std::vector<int>{1, 2, 0});

    const MetricTable em = synthetic_table({1, 1, 1}, {0.5, 0.9, 0.9}, {0, 0, 0});
    CHECK(increment_sample(Metric::Eccentricity, em, {0, 1, 2}, 1) == std::vector<int>{1});
    CHECK(increment_sample(Metric::Eccentricity, em, {2, 1}, 2) == std::vector<int>{1, 2});

    CHECK_THROWS_AS(increment_sample(Metric::Eccentricity, em, {}, 3), std::logic_error);
}

TEST_CASE("metric tables ignore the sample and depend only on instance and delta") {
    const Instance inst = random_instance(13, 50, 2, -1.0, 1.0);
    MetricParams params;
    params.delta = 0.5;
    const MetricTable once = build_metric_table(inst, params);
    const MetricTable twice = build_metric_table(inst, params);
    CHECK(once.ncount == twice.ncount);
    CHECK(once.ecc.global == twice.ecc.global);
    CHECK(once.decc.global == twice.decc.global);
}

TEST_CASE("metric csv has the documented shape") {
    const Instance line = line_instance({0, 0.5, 2});
    MetricParams params;
    params.delta = 1.0;
    const MetricTable table = build_metric_table(line, params);
    std::ostringstream out;
    write_metric_csv(table, line.d, out);

    std::istringstream in(out.str());
    std::string header, first_row;
    std::getline(in, header);
    CHECK(header == "index,ncount,E,D,E_1,D_1");
    std::getline(in, first_row);
    CHECK(first_row.substr(0, 4) == "0,1,");  // index 0 has one neighbour
    std::string row;
    int rows = 1;
    while (std::getline(in, row)) ++rows;
    CHECK(rows == 3);
}

TEST_CASE("batch cap defaults to max(10, 5% of n)") {
    CHECK(default_batch_cap(50) == 10);
    CHECK(default_batch_cap(200) == 10);
    CHECK(default_batch_cap(201) == 11);
    CHECK(default_batch_cap(1000) == 50);
    MetricParams params;
    params.k = 3;
    CHECK(effective_batch_cap(params, 1000) == 3);
    params.k = 0;
    CHECK_THROWS_AS(effective_batch_cap(params, 10), std::invalid_argument);
}
