#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hrcp/geometry.hpp"

namespace hrcp {

enum class Metric { Neighbourhood, Eccentricity, DistanceEccentricity };

const char* to_string(Metric metric);
std::optional<Metric> metric_from_string(const std::string& name);

/// Euclidean-ball neighbourhoods of radius delta (inclusive), split per
/// coordinate into the lower side (y_t <= x_t) and upper side (y_t > x_t).
struct NeighbourhoodTable {
    double delta = 0.0;
    std::vector<std::vector<int>> neighbors;  // per point, ascending, self excluded
    std::vector<int> lower_count;             // |N^-_t(i)|, flat n*d
    std::vector<int> upper_count;             // |N^+_t(i)|, flat n*d

    int count(int i) const { return static_cast<int>(neighbors[i].size()); }
};

/// Per-coordinate and global values of one eccentricity-style score.
struct ScoreTable {
    std::vector<double> per_coord;  // flat n*d
    std::vector<double> global;     // size n, max over coordinates
};

struct MetricTable {
    double delta = 0.0;
    std::vector<int> ncount;  // |N(i)|
    ScoreTable ecc;           // E_t, E
    ScoreTable decc;          // D_t, D
};

struct MetricParams {
    std::optional<double> delta;  // neighbourhood radius; auto when absent
    double alpha = 1.2;           // neighbourhood-metric init threshold, >= 1
    double beta = 0.9;            // eccentricity init threshold, in [0,1]
    std::optional<int> k;         // increment batch cap; max(10, ceil(0.05 n)) when absent
};

/// Twice the mean nearest-neighbor distance, with a small positive fallback
/// when the points are too degenerate for that to be positive.
double default_delta(const Instance& instance);

int default_batch_cap(int n);
int effective_batch_cap(const MetricParams& params, int n);

/// O(n^2) pairwise construction; the reference contract for N(i).
NeighbourhoodTable build_neighbourhoods(const Instance& instance, double delta);

/// E_t(i) = max(|N^-_t|, |N^+_t|)/|N|, or 1 when |N| = 0; E = max over t.
ScoreTable eccentricity(const NeighbourhoodTable& table);

/// D_t(i) = |mean lower-side coordinate distance - mean upper-side one|,
/// an empty side contributing 0; D = max over t.
ScoreTable distance_eccentricity(const Instance& instance, const NeighbourhoodTable& table);

/// Convenience: neighbourhoods plus both score tables in one pass.
MetricTable build_metric_table(const Instance& instance, const MetricParams& params);

/// Initialization step. NM keeps {i : |N(i)| <= alpha * min |N|}; EM keeps
/// {i : E(i) >= beta * max E}; DM likewise on D. The result is padded with
/// best-ranked remaining points to at least min(n, 3p). Ascending indices.
std::vector<int> initial_sample(Metric metric, const MetricTable& table, const MetricParams& params, int p);

/// Increment step: the uncovered points ranked by the metric (NM ascending
/// |N|, EM/DM descending score, ties by ascending index), truncated to k and
/// returned in rank order. Throws std::logic_error on an empty uncovered list.
std::vector<int> increment_sample(Metric metric, const MetricTable& table,
                                  const std::vector<int>& uncovered, int k);

/// CSV dump: header index,ncount,E,D plus per-coordinate E_t/D_t columns.
void write_metric_csv(const MetricTable& table, int d, std::ostream& out);

}  // namespace hrcp
