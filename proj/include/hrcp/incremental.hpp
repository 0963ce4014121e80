#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "hrcp/geometry.hpp"
#include "hrcp/metrics.hpp"
#include "hrcp/solver.hpp"

namespace hrcp {

enum class IncrementalStatus { Optimal, Feasible, NoSolution };

const char* to_string(IncrementalStatus status);

struct IncrementalConfig {
    Metric metric = Metric::Eccentricity;
    MetricParams metric_params;
    SolveLimits sub_limits;                // per-iteration subproblem budget
    std::optional<double> time_budget_s;   // global wall-clock budget
    double tolerance = 1e-9;               // absolute gap for LB >= UB checks
};

struct TraceRecord {
    int iter = 0;
    int sample_size = 0;
    SolveStatus sub_status = SolveStatus::Optimal;
    double sub_lb = 0.0;
    double global_lb = 0.0;
    double global_ub = 0.0;
    int uncovered = 0;
    double elapsed_ms = 0.0;
};

struct IncrementalResult {
    IncrementalStatus status = IncrementalStatus::NoSolution;
    std::optional<Clustering> best;  // full-instance clustering when present
    double lower_bound = 0.0;
    double upper_bound = kInfinity;
    int iterations = 0;
    int points_used = 0;  // sample size when the loop stopped
    long long nodes = 0;  // summed over subproblem solves
    std::vector<TraceRecord> trace;
};

/// Instance restricted to the given point indices; row i of the result is
/// point sample[i] of the original.
Instance subinstance(const Instance& instance, const std::vector<int>& sample);

/// Re-indexes a clustering of subinstance(instance, sample) back to full
/// point ids. Boxes are kept verbatim; nothing is absorbed.
Clustering lift_clustering(const Clustering& candidate, const std::vector<int>& sample, int n);

struct IncumbentUpdate {
    Clustering clustering;  // all points assigned
    double span = 0.0;
};

/// Screens a subproblem clustering as a global incumbent: if its boxes cover
/// every instance point and its span beats current_ub by more than tolerance,
/// returns the lifted-and-absorbed full clustering. Otherwise nothing.
std::optional<IncumbentUpdate> check_and_update_incumbent(const Clustering& candidate,
                                                          const std::vector<int>& sample,
                                                          const Instance& instance, double current_ub,
                                                          double tolerance = 1e-9);

/// The incremental outer loop: grow a sample chosen by the configured metric,
/// solve each subproblem exactly, screen covering solutions as incumbents,
/// inherit subproblem lower bounds, and stop when a subproblem optimum covers
/// the instance, the gap closes, or the budget runs out.
IncrementalResult run(const Instance& instance, int p, const IncrementalConfig& config);

/// CSV: iter,sample_size,sub_status,sub_lb,global_lb,global_ub,uncovered,elapsed_ms.
void write_trace_csv(const std::vector<TraceRecord>& trace, std::ostream& out);

}  // namespace hrcp
