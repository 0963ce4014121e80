#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hrcp/metrics.hpp"

namespace hrcp {

/// Experiment grid. Every combination of n x d x p x s x seed is generated
/// and handed to every listed method.
struct BenchSpec {
    std::vector<int> n, d, p;
    std::vector<double> s;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> methods;         // exact, nm, em, dm
    std::optional<double> time_limit_s;       // per-cell wall-clock budget
    std::optional<double> iter_time_limit_s;  // per-iteration budget (incremental methods)
    MetricParams metric_params;
    double tolerance = 1e-9;
};

/// JSON spec: {"n": [...], "d": [...], "p": [...], "s": [...], "seeds":
/// [...], "methods": [...]} plus optional time_limit_s, iter_time_limit_s,
/// delta, alpha, beta, k. Scalars are accepted wherever a list is expected.
BenchSpec parse_bench_spec(std::istream& in);
BenchSpec parse_bench_spec_file(const std::string& path);

struct BenchRow {
    std::string instance;
    int n = 0, d = 0, p = 0;
    double s = 0.0;
    std::uint64_t seed = 0;
    std::string method;
    double time_ms = 0.0;
    double span = 0.0;
    double lb = 0.0;
    double gap = 0.0;
    int iterations = 0;
    int points_used = 0;
    std::string status;
};

struct BenchResult {
    std::vector<BenchRow> rows;       // grid order, methods innermost
    std::vector<std::string> errors;  // diagnostics behind any Error rows
};

/// Runs every cell, in a worker pool capped by the HRCP_THREADS environment
/// variable (hardware concurrency when unset). Per-cell failures become rows
/// with status Error; the row order never depends on scheduling.
BenchResult run_bench(const BenchSpec& spec);

/// Header: instance,n,d,p,s,seed,method,time_ms,span,lb,gap,iterations,points_used,status
void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out);

}  // namespace hrcp
