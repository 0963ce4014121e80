#pragma once

#include <iosfwd>

#include "hrcp/geometry.hpp"

namespace hrcp {

/// Scatter plot of a 2-D instance, with one rectangle per nonempty cluster
/// when a clustering is given. Viewport pads the data extremes by 5% per
/// side; output bytes are deterministic for fixed input. Throws
/// std::invalid_argument when instance.d != 2.
void plot_svg(const Instance& instance, const Clustering* clustering, std::ostream& out);

}  // namespace hrcp
