#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hrcp {

/// Absolute tolerance for box-cover tests. Spans are exact arithmetic on the
/// input coordinates; only containment queries get this slack.
inline constexpr double kCoverEps = 1e-9;

/// A finite point set in R^d with cached per-coordinate extremes.
struct Instance {
    int n = 0;
    int d = 0;
    std::vector<double> coords;  // row-major, n*d
    std::vector<double> lo;      // per-coordinate minimum over all points
    std::vector<double> hi;      // per-coordinate maximum over all points

    std::span<const double> point(int i) const {
        return {coords.data() + static_cast<std::size_t>(i) * d, static_cast<std::size_t>(d)};
    }
    double coord(int i, int t) const { return coords[static_cast<std::size_t>(i) * d + t]; }

    /// Builds an instance, caching extremes. Throws std::invalid_argument on
    /// empty input, mixed dimensions or non-finite coordinates.
    static Instance from_points(const std::vector<std::vector<double>>& points);
    static Instance from_flat(int n, int d, std::vector<double> coords);
};

/// Axis-parallel box: l[t] <= r[t] for every coordinate t.
struct ClusterBox {
    std::vector<double> l;
    std::vector<double> r;

    /// Sum over coordinates of r[t] - l[t].
    double span() const;
};

/// Assignment of (a subset of) point indices to at most p clusters, plus the
/// box induced by each nonempty cluster. Treated as an immutable value.
struct Clustering {
    int p = 0;
    std::vector<std::vector<int>> members;         // size p; ascending indices
    std::vector<std::optional<ClusterBox>> boxes;  // size p; nullopt when empty

    int assigned_count() const;
};

struct CoverReport {
    bool covered = false;
    std::vector<int> uncovered;  // ascending point indices
};

struct ValidationReport {
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
};

/// Per-coordinate max - min over the given points; all zeros for the empty
/// set. Throws std::invalid_argument on a dimension mismatch.
std::vector<double> span_per_coord(int d, const std::vector<std::vector<double>>& cluster_points);

/// Sum of per-cluster per-coordinate spans, clusters in index order.
double total_span(const Clustering& clustering);

/// Inclusive containment with kCoverEps slack on both sides.
bool covers_point(const ClusterBox& box, std::span<const double> x);

/// A point is covered iff some nonempty cluster's box covers it. Empty
/// clusters cover nothing.
CoverReport clustering_covers(const Clustering& clustering, const Instance& instance);

/// Assigns every unassigned instance point to the lowest-indexed cluster
/// whose box covers it. Boxes and total span are unchanged. Throws
/// std::logic_error if the clustering does not cover the instance.
Clustering absorb_covered(const Clustering& clustering, const Instance& instance);

/// Checks partition well-formedness, box consistency and cluster count <= p.
/// Violations are reported as data, not thrown.
ValidationReport validate_clustering(const Clustering& clustering, const Instance& instance, int p);

/// Builds a clustering from a per-point cluster id vector (-1 = unassigned).
Clustering clustering_from_assignment(const Instance& instance, int p, std::span<const int> cluster_of);

/// Builds a clustering from member lists, computing each box from members.
Clustering clustering_from_members(const Instance& instance, int p, std::vector<std::vector<int>> members);

}  // namespace hrcp
