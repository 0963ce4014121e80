#pragma once

#include <iosfwd>
#include <string>

#include "hrcp/geometry.hpp"

namespace hrcp {

/// Writes the compact assignment formulation in LP text format: minimize the
/// sum of per-cluster per-coordinate spans subject to one-cluster-per-point
/// rows, box binding rows with min/max coefficients, and non-crossing rows
/// for empty clusters. Names are 1-based: variables z_i_c, l_t_c, r_t_c and
/// rows assign_i, lo_i_c_t, hi_i_c_t, cross_c_t. The model has
/// n + 2*n*p*d + p*d rows and n*p + 2*p*d variables.
void export_compact_model(const Instance& instance, int p, std::ostream& out);
void export_compact_model(const Instance& instance, int p, const std::string& path);

}  // namespace hrcp
