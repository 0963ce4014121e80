#include "hrcp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "hrcp/format.hpp"

namespace hrcp {

const char* to_string(Metric metric) {
    switch (metric) {
        case Metric::Neighbourhood: return "nm";
        case Metric::Eccentricity: return "em";
        case Metric::DistanceEccentricity: return "dm";
    }
    return "?";
}

std::optional<Metric> metric_from_string(const std::string& name) {
    if (name == "nm") return Metric::Neighbourhood;
    if (name == "em") return Metric::Eccentricity;
    if (name == "dm") return Metric::DistanceEccentricity;
    return std::nullopt;
}

namespace {

double squared_distance(const Instance& inst, int i, int j) {
    double acc = 0.0;
    for (int t = 0; t < inst.d; ++t) {
        const double diff = inst.coord(i, t) - inst.coord(j, t);
        acc += diff * diff;
    }
    return acc;
}

double bounding_box_diagonal(const Instance& inst) {
    double acc = 0.0;
    for (int t = 0; t < inst.d; ++t) {
        const double side = inst.hi[t] - inst.lo[t];
        acc += side * side;
    }
    return std::sqrt(acc);
}

}  // namespace

double default_delta(const Instance& instance) {
    const int n = instance.n;
    double sum_nn = 0.0;
    if (n > 1) {
        for (int i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                best = std::min(best, squared_distance(instance, i, j));
            }
            sum_nn += std::sqrt(best);
        }
    }
    const double delta = n > 1 ? 2.0 * sum_nn / n : 0.0;
    if (delta > 0.0) return delta;
    // Degenerate geometry (all-coincident points, or n = 1): fall back to the
    // bounding-box diagonal so every point is a neighbour, then to 1.
    const double diag = bounding_box_diagonal(instance);
    return diag > 0.0 ? diag : 1.0;
}

int default_batch_cap(int n) {
    const int frac = static_cast<int>((n + 19) / 20);  // ceil(0.05 n)
    return std::max(10, frac);
}

int effective_batch_cap(const MetricParams& params, int n) {
    if (params.k) {
        if (*params.k < 1) throw std::invalid_argument("batch cap must be positive");
        return *params.k;
    }
    return default_batch_cap(n);
}

NeighbourhoodTable build_neighbourhoods(const Instance& instance, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("neighbourhood radius must be positive");
    const int n = instance.n;
    const int d = instance.d;
    NeighbourhoodTable table;
    table.delta = delta;
    table.neighbors.assign(n, {});
    table.lower_count.assign(static_cast<size_t>(n) * d, 0);
    table.upper_count.assign(static_cast<size_t>(n) * d, 0);
    const double delta_sq = delta * delta;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (squared_distance(instance, i, j) > delta_sq) continue;
            table.neighbors[i].push_back(j);
            table.neighbors[j].push_back(i);
            for (int t = 0; t < d; ++t) {
                const double xi = instance.coord(i, t);
                const double xj = instance.coord(j, t);
                // y is a lower-side neighbour of x along t when y_t <= x_t.
                if (xj <= xi)
                    ++table.lower_count[static_cast<size_t>(i) * d + t];
                else
                    ++table.upper_count[static_cast<size_t>(i) * d + t];
                if (xi <= xj)
                    ++table.lower_count[static_cast<size_t>(j) * d + t];
                else
                    ++table.upper_count[static_cast<size_t>(j) * d + t];
            }
        }
    }
    return table;
}

ScoreTable eccentricity(const NeighbourhoodTable& table) {
    const int n = static_cast<int>(table.neighbors.size());
    const int d = n > 0 ? static_cast<int>(table.lower_count.size()) / n : 0;
    ScoreTable scores;
    scores.per_coord.assign(static_cast<size_t>(n) * d, 1.0);
    scores.global.assign(n, 1.0);
    for (int i = 0; i < n; ++i) {
        const int count = table.count(i);
        if (count == 0) continue;  // isolated points are maximally eccentric
        double worst = 0.0;
        for (int t = 0; t < d; ++t) {
            const size_t idx = static_cast<size_t>(i) * d + t;
            const int side = std::max(table.lower_count[idx], table.upper_count[idx]);
            const double value = static_cast<double>(side) / count;
            scores.per_coord[idx] = value;
            worst = std::max(worst, value);
        }
        scores.global[i] = worst;
    }
    return scores;
}

ScoreTable distance_eccentricity(const Instance& instance, const NeighbourhoodTable& table) {
    const int n = instance.n;
    const int d = instance.d;
    ScoreTable scores;
    scores.per_coord.assign(static_cast<size_t>(n) * d, 0.0);
    scores.global.assign(n, 0.0);
    std::vector<double> lower_sum(d), upper_sum(d);
    std::vector<int> lower_cnt(d), upper_cnt(d);
    for (int i = 0; i < n; ++i) {
        std::fill(lower_sum.begin(), lower_sum.end(), 0.0);
        std::fill(upper_sum.begin(), upper_sum.end(), 0.0);
        std::fill(lower_cnt.begin(), lower_cnt.end(), 0);
        std::fill(upper_cnt.begin(), upper_cnt.end(), 0);
        for (int j : table.neighbors[i]) {
            for (int t = 0; t < d; ++t) {
                const double xi = instance.coord(i, t);
                const double xj = instance.coord(j, t);
                if (xj <= xi) {
                    lower_sum[t] += xi - xj;
                    ++lower_cnt[t];
                } else {
                    upper_sum[t] += xj - xi;
                    ++upper_cnt[t];
                }
            }
        }
        double worst = 0.0;
        for (int t = 0; t < d; ++t) {
            const double lower = lower_cnt[t] > 0 ? lower_sum[t] / lower_cnt[t] : 0.0;
            const double upper = upper_cnt[t] > 0 ? upper_sum[t] / upper_cnt[t] : 0.0;
            const double value = std::abs(lower - upper);
            scores.per_coord[static_cast<size_t>(i) * d + t] = value;
            worst = std::max(worst, value);
        }
        scores.global[i] = worst;
    }
    return scores;
}

MetricTable build_metric_table(const Instance& instance, const MetricParams& params) {
    const double delta = params.delta ? *params.delta : default_delta(instance);
    const NeighbourhoodTable neigh = build_neighbourhoods(instance, delta);
    MetricTable table;
    table.delta = delta;
    table.ncount.resize(instance.n);
    for (int i = 0; i < instance.n; ++i) table.ncount[i] = neigh.count(i);
    table.ecc = eccentricity(neigh);
    table.decc = distance_eccentricity(instance, neigh);
    return table;
}

namespace {

// Rank comparator: true when i should be sampled before j under the metric.
bool ranks_before(Metric metric, const MetricTable& table, int i, int j) {
    switch (metric) {
        case Metric::Neighbourhood:
            if (table.ncount[i] != table.ncount[j]) return table.ncount[i] < table.ncount[j];
            break;
        case Metric::Eccentricity:
            if (table.ecc.global[i] != table.ecc.global[j]) return table.ecc.global[i] > table.ecc.global[j];
            break;
        case Metric::DistanceEccentricity:
            if (table.decc.global[i] != table.decc.global[j]) return table.decc.global[i] > table.decc.global[j];
            break;
    }
    return i < j;
}

}  // namespace

std::vector<int> initial_sample(Metric metric, const MetricTable& table, const MetricParams& params, int p) {
    const int n = static_cast<int>(table.ncount.size());
    if (n == 0) return {};
    if (p < 1) throw std::invalid_argument("cluster budget must be positive");

    std::vector<char> keep(n, 0);
    switch (metric) {
        case Metric::Neighbourhood: {
            if (params.alpha < 1.0) throw std::invalid_argument("alpha must be at least 1");
            const int lowest = *std::min_element(table.ncount.begin(), table.ncount.end());
            const double cutoff = params.alpha * lowest;
            for (int i = 0; i < n; ++i) keep[i] = table.ncount[i] <= cutoff;
            break;
        }
        case Metric::Eccentricity:
        case Metric::DistanceEccentricity: {
            if (params.beta < 0.0 || params.beta > 1.0)
                throw std::invalid_argument("beta must lie in [0,1]");
            const auto& score =
                metric == Metric::Eccentricity ? table.ecc.global : table.decc.global;
            const double peak = *std::max_element(score.begin(), score.end());
            const double cutoff = params.beta * peak;
            for (int i = 0; i < n; ++i) keep[i] = score[i] >= cutoff;
            break;
        }
    }

    std::vector<int> sample;
    for (int i = 0; i < n; ++i)
        if (keep[i]) sample.push_back(i);

    // Pad with the best-ranked leftovers so the first subproblem has at least
    // a few points per allowed cluster.
    const int target = std::min(n, 3 * p);
    if (static_cast<int>(sample.size()) < target) {
        std::vector<int> rest;
        for (int i = 0; i < n; ++i)
            if (!keep[i]) rest.push_back(i);
        std::sort(rest.begin(), rest.end(),
                  [&](int a, int b) { return ranks_before(metric, table, a, b); });
        for (int i : rest) {
            if (static_cast<int>(sample.size()) >= target) break;
            sample.push_back(i);
        }
        std::sort(sample.begin(), sample.end());
    }
    return sample;
}

std::vector<int> increment_sample(Metric metric, const MetricTable& table,
                                  const std::vector<int>& uncovered, int k) {
    if (uncovered.empty()) throw std::logic_error("increment requested with no uncovered points");
    if (k < 1) throw std::invalid_argument("batch cap must be positive");
    std::vector<int> ranked = uncovered;
    std::sort(ranked.begin(), ranked.end(),
              [&](int a, int b) { return ranks_before(metric, table, a, b); });
    if (static_cast<int>(ranked.size()) > k) ranked.resize(k);
    return ranked;
}

void write_metric_csv(const MetricTable& table, int d, std::ostream& out) {
    out << "index,ncount,E,D";
    for (int t = 0; t < d; ++t) out << ",E_" << (t + 1);
    for (int t = 0; t < d; ++t) out << ",D_" << (t + 1);
    out << '\n';
    const int n = static_cast<int>(table.ncount.size());
    for (int i = 0; i < n; ++i) {
        out << i << ',' << table.ncount[i] << ',' << format_double(table.ecc.global[i]) << ','
            << format_double(table.decc.global[i]);
        for (int t = 0; t < d; ++t)
            out << ',' << format_double(table.ecc.per_coord[static_cast<size_t>(i) * d + t]);
        for (int t = 0; t < d; ++t)
            out << ',' << format_double(table.decc.per_coord[static_cast<size_t>(i) * d + t]);
        out << '\n';
    }
}

}  // namespace hrcp
