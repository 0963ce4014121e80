#include "hrcp/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace hrcp {

const char* to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::Optimal: return "Optimal";
        case SolveStatus::FeasibleTimeLimit: return "FeasibleTimeLimit";
        case SolveStatus::NodeLimit: return "NodeLimit";
    }
    return "Unknown";
}

std::vector<int> branching_order(const Instance& instance) {
    const int n = instance.n, d = instance.d;
    std::vector<double> centroid(d, 0.0);
    for (int i = 0; i < n; ++i)
        for (int t = 0; t < d; ++t) centroid[t] += instance.coord(i, t);
    for (double& v : centroid) v /= n;

    auto sq_dist_to_centroid = [&](int i) {
        double s = 0.0;
        for (int t = 0; t < d; ++t) {
            const double diff = instance.coord(i, t) - centroid[t];
            s += diff * diff;
        }
        return s;
    };

    int first = 0;
    double best = sq_dist_to_centroid(0);
    for (int i = 1; i < n; ++i) {
        const double s = sq_dist_to_centroid(i);
        if (s > best) {
            best = s;
            first = i;
        }
    }

    std::vector<int> order;
    order.reserve(n);
    order.push_back(first);
    std::vector<double> min_sq(n, kInfinity);
    std::vector<char> taken(n, 0);
    taken[first] = 1;
    for (int step = 1; step < n; ++step) {
        const int last = order.back();
        int next = -1;
        double next_score = -1.0;
        for (int i = 0; i < n; ++i) {
            if (taken[i]) continue;
            double s = 0.0;
            for (int t = 0; t < d; ++t) {
                const double diff = instance.coord(i, t) - instance.coord(last, t);
                s += diff * diff;
            }
            min_sq[i] = std::min(min_sq[i], s);
            if (min_sq[i] > next_score) {
                next_score = min_sq[i];
                next = i;
            }
        }
        order.push_back(next);
        taken[next] = 1;
    }
    return order;
}

double partial_span_lb(const Instance& instance, std::span<const int> order,
                       std::span<const int> prefix_clusters) {
    if (prefix_clusters.size() > order.size())
        throw std::invalid_argument("prefix longer than point order");
    const int d = instance.d;
    int max_cluster = -1;
    for (int c : prefix_clusters) max_cluster = std::max(max_cluster, c);
    std::vector<double> lo(static_cast<std::size_t>(max_cluster + 1) * d, kInfinity);
    std::vector<double> hi(static_cast<std::size_t>(max_cluster + 1) * d, -kInfinity);
    for (std::size_t k = 0; k < prefix_clusters.size(); ++k) {
        const int i = order[k], c = prefix_clusters[k];
        if (c < 0) throw std::invalid_argument("prefix assignment must be complete");
        for (int t = 0; t < d; ++t) {
            const double v = instance.coord(i, t);
            lo[static_cast<std::size_t>(c) * d + t] = std::min(lo[static_cast<std::size_t>(c) * d + t], v);
            hi[static_cast<std::size_t>(c) * d + t] = std::max(hi[static_cast<std::size_t>(c) * d + t], v);
        }
    }
    double span = 0.0;
    for (int c = 0; c <= max_cluster; ++c)
        for (int t = 0; t < d; ++t) {
            const std::size_t idx = static_cast<std::size_t>(c) * d + t;
            if (hi[idx] >= lo[idx]) span += hi[idx] - lo[idx];
        }
    return span;
}

namespace {

using Clock = std::chrono::steady_clock;

class BranchAndBound {
public:
    BranchAndBound(const Instance& instance, int p, const SolveLimits& limits,
                   const IncumbentSink& sink, const Clustering* warm_start)
        : inst_(instance),
          p_(p),
          tol_(limits.tolerance),
          sink_(sink),
          order_(branching_order(instance)) {
        if (p < 1) throw std::invalid_argument("p must be at least 1");
        const int n = inst_.n, d = inst_.d;
        lo_.assign(static_cast<std::size_t>(p) * d, 0.0);
        hi_.assign(static_cast<std::size_t>(p) * d, 0.0);
        count_.assign(p, 0);
        assign_.assign(n, -1);
        best_assign_.assign(n, -1);
        undo_lo_.assign(static_cast<std::size_t>(n) * d, 0.0);
        undo_hi_.assign(static_cast<std::size_t>(n) * d, 0.0);
        child_buf_.resize(static_cast<std::size_t>(n + 1) * (p + 1));

        if (limits.node_limit) node_limit_ = *limits.node_limit;
        if (limits.time_limit_s) deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                                 std::chrono::duration<double>(*limits.time_limit_s));

        if (warm_start) {
            if (warm_start->p != p || warm_start->assigned_count() != n)
                throw std::invalid_argument("warm start must be a complete p-clustering of the instance");
            ub_ = total_span(*warm_start);
            warm_ = warm_start;
        }
    }

    SolveOutcome run() {
        dfs(0, 0.0);

        SolveOutcome outcome;
        outcome.nodes = nodes_;
        if (have_best_) {
            std::vector<int> cluster_of(inst_.n, -1);
            for (int k = 0; k < inst_.n; ++k) cluster_of[order_[k]] = best_assign_[k];
            outcome.best = clustering_from_assignment(inst_, p_, cluster_of);
        } else if (warm_) {
            outcome.best = *warm_;
        }
        outcome.upper_bound = outcome.best ? ub_ : kInfinity;
        if (!aborted_) {
            outcome.status = SolveStatus::Optimal;
            outcome.lower_bound = std::min({ub_, pruned_min_, frontier_min_});
        } else {
            outcome.status = hit_time_ ? SolveStatus::FeasibleTimeLimit : SolveStatus::NodeLimit;
            outcome.lower_bound = std::min({ub_, pruned_min_, frontier_min_});
        }
        if (std::isinf(outcome.lower_bound)) outcome.lower_bound = 0.0;
        return outcome;
    }

private:
    struct Child {
        double delta;
        int cluster;
        bool operator<(const Child& other) const {
            return delta != other.delta ? delta < other.delta : cluster < other.cluster;
        }
    };

    bool over_budget() {
        if (nodes_ > node_limit_) return true;
        if (deadline_ && (nodes_ & 1023) == 0 && Clock::now() >= *deadline_) {
            hit_time_ = true;
            return true;
        }
        return false;
    }

    double extension_delta(int c, int point) const {
        const int d = inst_.d;
        const std::size_t base = static_cast<std::size_t>(c) * d;
        double delta = 0.0;
        for (int t = 0; t < d; ++t) {
            const double v = inst_.coord(point, t);
            const double lo = lo_[base + t], hi = hi_[base + t];
            delta += std::max(hi, v) - std::min(lo, v) - (hi - lo);
        }
        return delta;
    }

    void apply(int depth, int c, int point) {
        const int d = inst_.d;
        const std::size_t base = static_cast<std::size_t>(c) * d;
        const std::size_t save = static_cast<std::size_t>(depth) * d;
        for (int t = 0; t < d; ++t) {
            undo_lo_[save + t] = lo_[base + t];
            undo_hi_[save + t] = hi_[base + t];
        }
        if (count_[c] == 0) {
            for (int t = 0; t < d; ++t) {
                lo_[base + t] = inst_.coord(point, t);
                hi_[base + t] = inst_.coord(point, t);
            }
            ++used_;
        } else {
            for (int t = 0; t < d; ++t) {
                const double v = inst_.coord(point, t);
                lo_[base + t] = std::min(lo_[base + t], v);
                hi_[base + t] = std::max(hi_[base + t], v);
            }
        }
        ++count_[c];
        assign_[depth] = c;
    }

    void revert(int depth, int c) {
        const int d = inst_.d;
        const std::size_t base = static_cast<std::size_t>(c) * d;
        const std::size_t save = static_cast<std::size_t>(depth) * d;
        for (int t = 0; t < d; ++t) {
            lo_[base + t] = undo_lo_[save + t];
            hi_[base + t] = undo_hi_[save + t];
        }
        if (--count_[c] == 0) --used_;
        assign_[depth] = -1;
    }

    void record_leaf() {
        // Recompute the span from the boxes instead of trusting the
        // accumulated deltas: the telescoped sum can drift by an ulp, and the
        // reported value must match total_span of the returned clustering.
        double span = 0.0;
        for (int c = 0; c < used_; ++c) {
            const std::size_t base = static_cast<std::size_t>(c) * inst_.d;
            for (int t = 0; t < inst_.d; ++t) span += hi_[base + t] - lo_[base + t];
        }
        ub_ = span;
        have_best_ = true;
        best_assign_ = assign_;
        if (sink_) {
            std::vector<int> cluster_of(inst_.n, -1);
            for (int k = 0; k < inst_.n; ++k) cluster_of[order_[k]] = assign_[k];
            sink_(clustering_from_assignment(inst_, p_, cluster_of), span);
        }
    }

    void dfs(int depth, double span) {
        ++nodes_;
        if (over_budget()) {
            aborted_ = true;
            frontier_min_ = std::min(frontier_min_, span);
            return;
        }
        if (depth == inst_.n) {
            record_leaf();
            return;
        }

        const int point = order_[depth];
        Child* children = child_buf_.data() + static_cast<std::size_t>(depth) * (p_ + 1);
        int num_children = 0;

        // A used cluster whose box already contains the point dominates every
        // other choice: moving the point there never grows any box.
        int containing = -1;
        for (int c = 0; c < p_; ++c) {
            if (count_[c] == 0) break;  // clusters are used in index order
            const double delta = extension_delta(c, point);
            if (delta == 0.0) {
                containing = c;
                break;
            }
            children[num_children++] = {delta, c};
        }
        if (containing >= 0) {
            num_children = 0;
            children[num_children++] = {0.0, containing};
        } else {
            if (used_ < p_) children[num_children++] = {0.0, used_};
            std::sort(children, children + num_children);
        }

        for (int k = 0; k < num_children; ++k) {
            if (aborted_) {
                frontier_min_ = std::min(frontier_min_, span + children[k].delta);
                continue;
            }
            const double bound = span + children[k].delta;
            if (bound >= ub_ - tol_) {
                // Children are sorted by delta, so everything after this one
                // is pruned by the same test.
                pruned_min_ = std::min(pruned_min_, bound);
                break;
            }
            const int c = children[k].cluster;
            apply(depth, c, point);
            dfs(depth + 1, bound);
            revert(depth, c);
        }
    }

    const Instance& inst_;
    const int p_;
    const double tol_;
    const IncumbentSink& sink_;
    const Clustering* warm_ = nullptr;
    std::vector<int> order_;

    std::vector<double> lo_, hi_;
    std::vector<int> count_;
    int used_ = 0;
    std::vector<int> assign_, best_assign_;
    std::vector<double> undo_lo_, undo_hi_;
    std::vector<Child> child_buf_;

    double ub_ = kInfinity;
    bool have_best_ = false;
    double pruned_min_ = kInfinity;
    double frontier_min_ = kInfinity;
    long long nodes_ = 0;
    long long node_limit_ = std::numeric_limits<long long>::max();
    std::optional<Clock::time_point> deadline_;
    bool aborted_ = false;
    bool hit_time_ = false;
};

}  // namespace

SolveOutcome solve(const Instance& instance, int p, const SolveLimits& limits,
                   const IncumbentSink& sink, const Clustering* warm_start) {
    BranchAndBound engine(instance, p, limits, sink, warm_start);
    return engine.run();
}

namespace {

// Leaf evaluation for the brute-force oracle: per-cluster extremes recomputed
// from scratch, span accumulated in long double so the result does not depend
// on cluster labeling order.
class PartitionEnumerator {
public:
    PartitionEnumerator(const Instance& instance, int p)
        : inst_(instance), parts_(std::min(p, instance.n)) {
        assign_.assign(inst_.n, 0);
        lo_.assign(static_cast<std::size_t>(parts_) * inst_.d, 0.0);
        hi_.assign(static_cast<std::size_t>(parts_) * inst_.d, 0.0);
        seen_.assign(parts_, 0);
    }

    void enumerate() { recurse(1, 0); }

    double best_span() const { return best_span_; }
    const std::vector<int>& best_assign() const { return best_assign_; }
    long long leaves() const { return leaves_; }

private:
    void recurse(int i, int max_used) {
        if (i == inst_.n) {
            evaluate();
            return;
        }
        const int limit = std::min(max_used + 1, parts_ - 1);
        for (int c = 0; c <= limit; ++c) {
            assign_[i] = c;
            recurse(i + 1, std::max(max_used, c));
        }
    }

    void evaluate() {
        ++leaves_;
        const int d = inst_.d;
        std::fill(seen_.begin(), seen_.end(), 0);
        for (int i = 0; i < inst_.n; ++i) {
            const int c = assign_[i];
            const std::size_t base = static_cast<std::size_t>(c) * d;
            if (!seen_[c]) {
                seen_[c] = 1;
                for (int t = 0; t < d; ++t) {
                    lo_[base + t] = inst_.coord(i, t);
                    hi_[base + t] = inst_.coord(i, t);
                }
            } else {
                for (int t = 0; t < d; ++t) {
                    const double v = inst_.coord(i, t);
                    lo_[base + t] = std::min(lo_[base + t], v);
                    hi_[base + t] = std::max(hi_[base + t], v);
                }
            }
        }
        long double acc = 0.0L;
        for (int c = 0; c < parts_; ++c) {
            if (!seen_[c]) continue;
            const std::size_t base = static_cast<std::size_t>(c) * d;
            for (int t = 0; t < d; ++t) acc += static_cast<long double>(hi_[base + t] - lo_[base + t]);
        }
        const double span = static_cast<double>(acc);
        if (span < best_span_) {
            best_span_ = span;
            best_assign_ = assign_;
        }
    }

    const Instance& inst_;
    const int parts_;
    std::vector<int> assign_, best_assign_;
    std::vector<double> lo_, hi_;
    std::vector<char> seen_;
    double best_span_ = kInfinity;
    long long leaves_ = 0;
};

}  // namespace

SolveOutcome brute_force(const Instance& instance, int p) {
    if (p < 1) throw std::invalid_argument("p must be at least 1");
    if (instance.n > 16) throw std::invalid_argument("brute_force is limited to n <= 16 points");

    PartitionEnumerator enumerator(instance, p);
    enumerator.enumerate();

    SolveOutcome outcome;
    outcome.status = SolveStatus::Optimal;
    outcome.nodes = enumerator.leaves();
    outcome.lower_bound = enumerator.best_span();
    outcome.upper_bound = enumerator.best_span();
    outcome.best = clustering_from_assignment(instance, p, enumerator.best_assign());
    return outcome;
}

}  // namespace hrcp
