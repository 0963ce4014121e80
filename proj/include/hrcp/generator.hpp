#pragma once

#include <cstdint>
#include <vector>

#include "hrcp/geometry.hpp"

namespace hrcp {

struct GenParams {
    int d = 2;
    int n = 100;
    int p = 3;
    double s = 0.1;  // dispersion in [0, 1]
    std::uint64_t seed = 0;
};

struct GeneratedInstance {
    Instance instance;
    std::vector<int> labels;                  // originating point index per point
    std::vector<std::vector<double>> origins; // the p originating points
};

/// Draws p originating points uniformly from [-1,1]^d, then n points by
/// repeatedly picking an origin uniformly and sampling uniformly from
/// origin + [-s/2, s/2]^d. Deterministic for a fixed seed.
GeneratedInstance generate(const GenParams& params);

}  // namespace hrcp
