#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "hrcp/geometry.hpp"

namespace hrcp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct SolveLimits {
    std::optional<double> time_limit_s;   // wall-clock budget
    std::optional<long long> node_limit;  // explored-node budget
    double tolerance = 1e-9;              // absolute span gap for optimality
};

enum class SolveStatus { Optimal, FeasibleTimeLimit, NodeLimit };

const char* to_string(SolveStatus status);

struct SolveOutcome {
    SolveStatus status = SolveStatus::Optimal;
    std::optional<Clustering> best;
    double lower_bound = 0.0;
    double upper_bound = kInfinity;
    long long nodes = 0;
};

/// Called for each strictly improving full assignment found during search.
/// Runs on the solver's own thread; keep it fast and non-blocking.
using IncumbentSink = std::function<void(const Clustering&, double span)>;

/// Depth-first branch and bound over an assignment vector in farthest-point
/// order. At each node the next point goes to each currently used cluster or
/// to the lowest-index unused one, which enumerates each clustering under a
/// single labeling. Node bound = span of the partial assignment; subtrees
/// with bound >= UB - tolerance are pruned. The returned lower bound is valid
/// for the instance under any budget. An optional warm start (a complete
/// p-clustering of the same instance) seeds the upper bound.
SolveOutcome solve(const Instance& instance, int p, const SolveLimits& limits = {},
                   const IncumbentSink& sink = {}, const Clustering* warm_start = nullptr);

/// Exhaustive oracle: enumerates set partitions into at most p nonempty parts
/// via canonical restricted-growth strings, one labeling per partition.
/// Guarded to n <= 16.
SolveOutcome brute_force(const Instance& instance, int p);

/// Farthest-point order: start at the point farthest from the centroid, then
/// repeatedly append the point maximizing the minimum distance to the points
/// already ordered. Ties break to the lowest index.
std::vector<int> branching_order(const Instance& instance);

/// Span of the partial clustering that assigns order[k] to cluster
/// prefix_clusters[k]. Never exceeds the span of any completion.
double partial_span_lb(const Instance& instance, std::span<const int> order,
                       std::span<const int> prefix_clusters);

}  // namespace hrcp
