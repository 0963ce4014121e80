#include "hrcp/incremental.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <stdexcept>

#include "hrcp/format.hpp"

namespace hrcp {

const char* to_string(IncrementalStatus status) {
    switch (status) {
        case IncrementalStatus::Optimal: return "Optimal";
        case IncrementalStatus::Feasible: return "Feasible";
        case IncrementalStatus::NoSolution: return "NoSolution";
    }
    return "?";
}

Instance subinstance(const Instance& instance, const std::vector<int>& sample) {
    if (sample.empty()) throw std::invalid_argument("subinstance needs at least one point");
    std::vector<double> coords;
    coords.reserve(sample.size() * static_cast<size_t>(instance.d));
    for (int i : sample) {
        if (i < 0 || i >= instance.n) throw std::invalid_argument("sample index out of range");
        for (int t = 0; t < instance.d; ++t) coords.push_back(instance.coord(i, t));
    }
    return Instance::from_flat(static_cast<int>(sample.size()), instance.d, std::move(coords));
}

Clustering lift_clustering(const Clustering& candidate, const std::vector<int>& sample, int n) {
    Clustering lifted = candidate;
    for (auto& members : lifted.members)
        for (int& i : members) {
            if (i < 0 || i >= static_cast<int>(sample.size()))
                throw std::invalid_argument("clustering references a point outside the sample");
            i = sample[i];
            if (i < 0 || i >= n) throw std::invalid_argument("sample index out of range");
        }
    return lifted;
}

std::optional<IncumbentUpdate> check_and_update_incumbent(const Clustering& candidate,
                                                          const std::vector<int>& sample,
                                                          const Instance& instance, double current_ub,
                                                          double tolerance) {
    const Clustering lifted = lift_clustering(candidate, sample, instance.n);
    const double span = total_span(lifted);
    if (span >= current_ub - tolerance) return std::nullopt;
    if (!clustering_covers(lifted, instance).covered) return std::nullopt;
    return IncumbentUpdate{absorb_covered(lifted, instance), span};
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Restriction of a full-instance clustering to the sample, re-indexed to the
// subinstance and with boxes rebuilt from the surviving members.
std::optional<Clustering> restrict_to_sample(const Clustering& full, const std::vector<int>& pos_in_sample,
                                             const Instance& sub, int p) {
    std::vector<std::vector<int>> members(p);
    for (int c = 0; c < full.p && c < p; ++c)
        for (int i : full.members[c]) {
            const int pos = pos_in_sample[i];
            if (pos >= 0) members[c].push_back(pos);
        }
    int assigned = 0;
    for (const auto& m : members) assigned += static_cast<int>(m.size());
    if (assigned != sub.n) return std::nullopt;  // sample has points the clustering misses
    return clustering_from_members(sub, p, std::move(members));
}

// Extends the previous subproblem solution (already lifted to full indices)
// to the grown sample: new points join the cluster whose box they stretch the
// least, empty clusters counting as free singleton homes.
Clustering extend_to_sample(const Clustering& prev_full, const std::vector<int>& sample,
                            const std::vector<int>& pos_in_sample, const Instance& sub, int p) {
    std::vector<std::vector<int>> members(p);
    std::vector<char> placed(sub.n, 0);
    for (int c = 0; c < prev_full.p && c < p; ++c)
        for (int i : prev_full.members[c]) {
            const int pos = pos_in_sample[i];
            if (pos < 0) throw std::logic_error("previous sample must stay inside the grown sample");
            members[c].push_back(pos);
            placed[pos] = 1;
        }

    const int d = sub.d;
    std::vector<double> lo(static_cast<size_t>(p) * d), hi(static_cast<size_t>(p) * d);
    std::vector<char> used(p, 0);
    for (int c = 0; c < p; ++c) {
        if (members[c].empty()) continue;
        used[c] = 1;
        for (int t = 0; t < d; ++t) {
            double mn = sub.coord(members[c].front(), t), mx = mn;
            for (int i : members[c]) {
                mn = std::min(mn, sub.coord(i, t));
                mx = std::max(mx, sub.coord(i, t));
            }
            lo[static_cast<size_t>(c) * d + t] = mn;
            hi[static_cast<size_t>(c) * d + t] = mx;
        }
    }

    for (int pos = 0; pos < sub.n; ++pos) {
        if (placed[pos]) continue;
        int best_c = -1;
        double best_delta = kInfinity;
        for (int c = 0; c < p; ++c) {
            double delta = 0.0;
            if (used[c]) {
                for (int t = 0; t < d; ++t) {
                    const double v = sub.coord(pos, t);
                    const size_t idx = static_cast<size_t>(c) * d + t;
                    if (v < lo[idx]) delta += lo[idx] - v;
                    if (v > hi[idx]) delta += v - hi[idx];
                }
            }
            if (delta < best_delta) {
                best_delta = delta;
                best_c = c;
            }
            if (best_delta == 0.0) break;  // cannot improve on a free fit
        }
        members[best_c].push_back(pos);
        for (int t = 0; t < d; ++t) {
            const double v = sub.coord(pos, t);
            const size_t idx = static_cast<size_t>(best_c) * d + t;
            if (!used[best_c]) {
                lo[idx] = hi[idx] = v;
            } else {
                lo[idx] = std::min(lo[idx], v);
                hi[idx] = std::max(hi[idx], v);
            }
        }
        used[best_c] = 1;
    }
    return clustering_from_members(sub, p, std::move(members));
}

}  // namespace

IncrementalResult run(const Instance& instance, int p, const IncrementalConfig& config) {
    if (p < 1) throw std::invalid_argument("cluster budget must be positive");
    if (config.time_budget_s && *config.time_budget_s <= 0.0)
        throw std::invalid_argument("time budget must be positive");

    const auto started = Clock::now();
    const MetricTable table = build_metric_table(instance, config.metric_params);
    const int batch = effective_batch_cap(config.metric_params, instance.n);

    std::vector<int> sample = initial_sample(config.metric, table, config.metric_params, p);
    std::sort(sample.begin(), sample.end());
    std::vector<int> pos_in_sample(instance.n, -1);
    for (size_t k = 0; k < sample.size(); ++k) pos_in_sample[sample[k]] = static_cast<int>(k);

    IncrementalResult result;
    std::optional<Clustering> incumbent;       // full instance, all points assigned
    std::optional<Clustering> prev_solution;   // previous subproblem best, full indices

    for (int iter = 1;; ++iter) {
        const bool full_sample = static_cast<int>(sample.size()) == instance.n;
        SolveLimits limits = config.sub_limits;
        limits.tolerance = config.tolerance;
        if (full_sample) {
            // The subproblem now IS the instance; per-iteration caps would
            // only force a premature non-optimal exit, so the closing solve
            // runs under the global budget alone.
            limits.time_limit_s.reset();
            limits.node_limit.reset();
        }
        if (config.time_budget_s) {
            const double remaining = *config.time_budget_s - seconds_since(started);
            if (remaining <= 0.0) break;
            limits.time_limit_s = limits.time_limit_s ? std::min(*limits.time_limit_s, remaining)
                                                      : remaining;
        }

        const Instance sub = subinstance(instance, sample);

        std::optional<Clustering> warm;
        if (incumbent) warm = restrict_to_sample(*incumbent, pos_in_sample, sub, p);
        if (prev_solution) {
            Clustering extended = extend_to_sample(*prev_solution, sample, pos_in_sample, sub, p);
            if (!warm || total_span(extended) < total_span(*warm)) warm = std::move(extended);
        }

        const auto sink = [&](const Clustering& candidate, double) {
            auto update = check_and_update_incumbent(candidate, sample, instance,
                                                     result.upper_bound, config.tolerance);
            if (update) {
                result.upper_bound = update->span;
                incumbent = std::move(update->clustering);
            }
        };

        const SolveOutcome outcome = solve(sub, p, limits, sink, warm ? &*warm : nullptr);
        result.nodes += outcome.nodes;
        result.iterations = iter;
        result.points_used = static_cast<int>(sample.size());
        result.lower_bound = std::max(result.lower_bound, outcome.lower_bound);

        // The warm start never passes through the sink, so screen the final
        // best explicitly; a repeat screening of a streamed incumbent is a
        // no-op thanks to the strict-improvement test.
        if (outcome.best) {
            auto update = check_and_update_incumbent(*outcome.best, sample, instance,
                                                     result.upper_bound, config.tolerance);
            if (update) {
                result.upper_bound = update->span;
                incumbent = std::move(update->clustering);
            }
        }

        std::vector<int> uncovered;
        if (outcome.best) {
            Clustering lifted = lift_clustering(*outcome.best, sample, instance.n);
            uncovered = clustering_covers(lifted, instance).uncovered;
            prev_solution = std::move(lifted);
        } else {
            for (int i = 0; i < instance.n; ++i)
                if (pos_in_sample[i] < 0) uncovered.push_back(i);
        }

        const bool sub_optimal = outcome.status == SolveStatus::Optimal;
        if (sub_optimal && uncovered.empty() && outcome.best) {
            // An optimal subproblem solution covering every point is a global
            // optimum: restricting any better full clustering to the sample
            // would beat it on its own ground.
            const double span = outcome.upper_bound;
            result.lower_bound = std::max(result.lower_bound, span);
            if (span < result.upper_bound) {
                result.upper_bound = span;
                incumbent = absorb_covered(lift_clustering(*outcome.best, sample, instance.n), instance);
            }
            result.trace.push_back({iter, static_cast<int>(sample.size()), outcome.status,
                                    outcome.lower_bound, result.lower_bound, result.upper_bound, 0,
                                    seconds_since(started) * 1000.0});
            result.status = IncrementalStatus::Optimal;
            result.best = std::move(incumbent);
            return result;
        }

        result.trace.push_back({iter, static_cast<int>(sample.size()), outcome.status,
                                outcome.lower_bound, result.lower_bound, result.upper_bound,
                                static_cast<int>(uncovered.size()),
                                seconds_since(started) * 1000.0});

        if (result.lower_bound >= result.upper_bound - config.tolerance && incumbent) {
            result.status = IncrementalStatus::Optimal;
            result.best = std::move(incumbent);
            return result;
        }

        if (config.time_budget_s && seconds_since(started) >= *config.time_budget_s) break;
        if (full_sample) break;  // nothing left to add; the closing solve already ran

        // Grow the sample. Covered-but-unproven subproblems leave no natural
        // uncovered set, so fall back to the metric's global ranking over the
        // points still outside the sample.
        std::vector<int> addition;
        if (!uncovered.empty()) {
            addition = increment_sample(config.metric, table, uncovered, batch);
        } else {
            std::vector<int> outside;
            for (int i = 0; i < instance.n; ++i)
                if (pos_in_sample[i] < 0) outside.push_back(i);
            addition = increment_sample(config.metric, table, outside, batch);
        }
        for (int i : addition) sample.push_back(i);
        std::sort(sample.begin(), sample.end());
        std::fill(pos_in_sample.begin(), pos_in_sample.end(), -1);
        for (size_t k = 0; k < sample.size(); ++k) pos_in_sample[sample[k]] = static_cast<int>(k);
    }

    result.status = incumbent ? IncrementalStatus::Feasible : IncrementalStatus::NoSolution;
    result.best = std::move(incumbent);
    return result;
}

void write_trace_csv(const std::vector<TraceRecord>& trace, std::ostream& out) {
    out << "iter,sample_size,sub_status,sub_lb,global_lb,global_ub,uncovered,elapsed_ms\n";
    for (const auto& row : trace) {
        out << row.iter << ',' << row.sample_size << ',' << to_string(row.sub_status) << ','
            << format_double(row.sub_lb) << ',' << format_double(row.global_lb) << ','
            << format_double(row.global_ub) << ',' << row.uncovered << ','
            << format_fixed(row.elapsed_ms, 3) << '\n';
    }
}

}  // namespace hrcp
