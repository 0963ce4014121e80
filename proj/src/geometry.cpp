#include "hrcp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hrcp {

Instance Instance::from_points(const std::vector<std::vector<double>>& points) {
    if (points.empty()) throw std::invalid_argument("instance needs at least one point");
    const int d = static_cast<int>(points.front().size());
    if (d < 1) throw std::invalid_argument("instance dimension must be at least 1");
    std::vector<double> flat;
    flat.reserve(points.size() * static_cast<std::size_t>(d));
    for (const auto& pt : points) {
        if (static_cast<int>(pt.size()) != d)
            throw std::invalid_argument("mixed point dimensions in instance");
        for (double v : pt) flat.push_back(v);
    }
    return from_flat(static_cast<int>(points.size()), d, std::move(flat));
}

Instance Instance::from_flat(int n, int d, std::vector<double> coords) {
    if (n < 1 || d < 1) throw std::invalid_argument("instance needs n >= 1 and d >= 1");
    if (coords.size() != static_cast<std::size_t>(n) * d)
        throw std::invalid_argument("coordinate buffer size does not match n*d");
    for (double v : coords)
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite coordinate in instance");
    Instance inst;
    inst.n = n;
    inst.d = d;
    inst.coords = std::move(coords);
    inst.lo.assign(d, 0.0);
    inst.hi.assign(d, 0.0);
    for (int t = 0; t < d; ++t) {
        double lo = inst.coord(0, t), hi = lo;
        for (int i = 1; i < n; ++i) {
            const double v = inst.coord(i, t);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        inst.lo[t] = lo;
        inst.hi[t] = hi;
    }
    return inst;
}

double ClusterBox::span() const {
    double total = 0.0;
    for (std::size_t t = 0; t < l.size(); ++t) total += r[t] - l[t];
    return total;
}

int Clustering::assigned_count() const {
    int count = 0;
    for (const auto& m : members) count += static_cast<int>(m.size());
    return count;
}

std::vector<double> span_per_coord(int d, const std::vector<std::vector<double>>& cluster_points) {
    std::vector<double> spans(d, 0.0);
    if (cluster_points.empty()) return spans;
    for (const auto& pt : cluster_points)
        if (static_cast<int>(pt.size()) != d)
            throw std::invalid_argument("mixed point dimensions in cluster");
    for (int t = 0; t < d; ++t) {
        double lo = cluster_points.front()[t], hi = lo;
        for (const auto& pt : cluster_points) {
            lo = std::min(lo, pt[t]);
            hi = std::max(hi, pt[t]);
        }
        spans[t] = hi - lo;
    }
    return spans;
}

double total_span(const Clustering& clustering) {
    double total = 0.0;
    for (const auto& box : clustering.boxes) {
        if (!box) continue;
        for (std::size_t t = 0; t < box->l.size(); ++t) total += box->r[t] - box->l[t];
    }
    return total;
}

bool covers_point(const ClusterBox& box, std::span<const double> x) {
    if (box.l.size() != x.size()) throw std::invalid_argument("box/point dimension mismatch");
    for (std::size_t t = 0; t < x.size(); ++t)
        if (x[t] < box.l[t] - kCoverEps || x[t] > box.r[t] + kCoverEps) return false;
    return true;
}

CoverReport clustering_covers(const Clustering& clustering, const Instance& instance) {
    CoverReport report;
    for (int i = 0; i < instance.n; ++i) {
        bool inside = false;
        for (const auto& box : clustering.boxes) {
            if (box && covers_point(*box, instance.point(i))) {
                inside = true;
                break;
            }
        }
        if (!inside) report.uncovered.push_back(i);
    }
    report.covered = report.uncovered.empty();
    return report;
}

Clustering absorb_covered(const Clustering& clustering, const Instance& instance) {
    std::vector<int> cluster_of(instance.n, -1);
    for (int c = 0; c < clustering.p; ++c)
        for (int i : clustering.members[c]) cluster_of[i] = c;

    Clustering result = clustering;
    for (auto& m : result.members) m.clear();
    for (int i = 0; i < instance.n; ++i) {
        int c = cluster_of[i];
        if (c < 0) {
            for (int cand = 0; cand < clustering.p; ++cand) {
                const auto& box = clustering.boxes[cand];
                if (box && covers_point(*box, instance.point(i))) {
                    c = cand;
                    break;
                }
            }
            if (c < 0)
                throw std::logic_error("absorb_covered called on a clustering that does not cover the instance");
        }
        result.members[c].push_back(i);
    }
    return result;
}

ValidationReport validate_clustering(const Clustering& clustering, const Instance& instance, int p) {
    ValidationReport report;
    auto complain = [&report](std::string msg) { report.problems.push_back(std::move(msg)); };

    if (clustering.p > p)
        complain("cluster count " + std::to_string(clustering.p) + " exceeds p=" + std::to_string(p));
    if (clustering.boxes.size() != clustering.members.size())
        complain("boxes/members size mismatch");

    std::vector<int> seen(instance.n, 0);
    for (std::size_t c = 0; c < clustering.members.size(); ++c) {
        for (int i : clustering.members[c]) {
            if (i < 0 || i >= instance.n) {
                complain("cluster " + std::to_string(c) + " references point " + std::to_string(i) +
                         " outside the instance");
                continue;
            }
            if (++seen[i] == 2)
                complain("partition violation: point " + std::to_string(i) + " assigned more than once");
        }
    }

    for (std::size_t c = 0; c < clustering.members.size() && c < clustering.boxes.size(); ++c) {
        const auto& members = clustering.members[c];
        const auto& box = clustering.boxes[c];
        if (members.empty()) {
            if (box) complain("empty cluster " + std::to_string(c) + " carries a box");
            continue;
        }
        if (!box) {
            complain("nonempty cluster " + std::to_string(c) + " has no box");
            continue;
        }
        for (int t = 0; t < instance.d; ++t) {
            double lo = instance.coord(members.front(), t), hi = lo;
            for (int i : members) {
                lo = std::min(lo, instance.coord(i, t));
                hi = std::max(hi, instance.coord(i, t));
            }
            // Absorbing an epsilon-covered point may leave the members'
            // extremes up to kCoverEps outside the box, so compare with the
            // same tolerance used for covering.
            if (std::abs(box->l[t] - lo) > kCoverEps || std::abs(box->r[t] - hi) > kCoverEps) {
                complain("box of cluster " + std::to_string(c) +
                         " does not equal the members' extremes in coordinate " + std::to_string(t));
                break;
            }
        }
    }
    return report;
}

Clustering clustering_from_assignment(const Instance& instance, int p, std::span<const int> cluster_of) {
    if (cluster_of.size() != static_cast<std::size_t>(instance.n))
        throw std::invalid_argument("assignment size does not match instance");
    std::vector<std::vector<int>> members(p);
    for (int i = 0; i < instance.n; ++i) {
        const int c = cluster_of[i];
        if (c < 0) continue;
        if (c >= p) throw std::invalid_argument("cluster id out of range");
        members[c].push_back(i);
    }
    return clustering_from_members(instance, p, std::move(members));
}

Clustering clustering_from_members(const Instance& instance, int p, std::vector<std::vector<int>> members) {
    if (static_cast<int>(members.size()) > p)
        throw std::invalid_argument("more member lists than clusters");
    members.resize(p);
    Clustering clustering;
    clustering.p = p;
    clustering.boxes.resize(p);
    for (int c = 0; c < p; ++c) {
        if (members[c].empty()) continue;
        ClusterBox box;
        box.l.assign(instance.d, 0.0);
        box.r.assign(instance.d, 0.0);
        for (int t = 0; t < instance.d; ++t) {
            double lo = instance.coord(members[c].front(), t), hi = lo;
            for (int i : members[c]) {
                const double v = instance.coord(i, t);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            box.l[t] = lo;
            box.r[t] = hi;
        }
        clustering.boxes[c] = std::move(box);
    }
    clustering.members = std::move(members);
    return clustering;
}

}  // namespace hrcp
