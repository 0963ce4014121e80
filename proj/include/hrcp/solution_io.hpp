#pragma once

#include <iosfwd>
#include <string>

#include "hrcp/geometry.hpp"

namespace hrcp {

struct SolutionFile {
    int p = 0;
    double span = 0.0;
    Clustering clustering;  // boxes taken verbatim from the file
};

/// JSON with keys p, span, clusters (arrays of 0-based point indices, empty
/// clusters dropped), boxes (one {l, r} per listed cluster), in that order.
void write_solution(const Clustering& clustering, std::ostream& out);
void write_solution(const Clustering& clustering, const std::string& path);

SolutionFile read_solution(std::istream& in);
SolutionFile read_solution(const std::string& path);

}  // namespace hrcp
