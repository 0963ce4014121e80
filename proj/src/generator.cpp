#include "hrcp/generator.hpp"

#include <random>
#include <stdexcept>

namespace hrcp {

namespace {

// mt19937_64 output mapped to [0,1) by hand so that streams do not depend on
// the standard library's distribution internals.
double next_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double next_uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + next_unit(rng) * (hi - lo);
}

}  // namespace

GeneratedInstance generate(const GenParams& params) {
    if (params.d < 1 || params.n < 1 || params.p < 1)
        throw std::invalid_argument("generator needs d >= 1, n >= 1, p >= 1");
    if (params.s < 0.0 || params.s > 1.0)
        throw std::invalid_argument("dispersion s must lie in [0, 1]");

    std::mt19937_64 rng(params.seed);

    GeneratedInstance result;
    result.origins.resize(params.p);
    for (auto& origin : result.origins) {
        origin.resize(params.d);
        for (double& v : origin) v = next_uniform(rng, -1.0, 1.0);
    }

    std::vector<double> coords;
    coords.reserve(static_cast<std::size_t>(params.n) * params.d);
    result.labels.reserve(params.n);
    const double half = params.s / 2.0;
    for (int i = 0; i < params.n; ++i) {
        const int which = static_cast<int>(rng() % static_cast<std::uint64_t>(params.p));
        result.labels.push_back(which);
        for (int t = 0; t < params.d; ++t)
            coords.push_back(result.origins[which][t] + next_uniform(rng, -half, half));
    }
    result.instance = Instance::from_flat(params.n, params.d, std::move(coords));
    return result;
}

}  // namespace hrcp
