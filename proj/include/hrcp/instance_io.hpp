#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hrcp/geometry.hpp"

namespace hrcp {

// Instance file (UTF-8 text):
//   line 1: "hrcp 1"
//   line 2: "<n> <d>"
//   then n lines of d space-separated coordinates, shortest round-trip form.
// Lines starting with '#' are ignored. Labels files carry the header
// "hrcp-labels 1" followed by n lines of one 0-based integer.

void write_instance(const Instance& instance, std::ostream& out);
void write_instance(const Instance& instance, const std::string& path);

/// Throws std::runtime_error naming the offending line on malformed input.
Instance read_instance(std::istream& in);
Instance read_instance(const std::string& path);

void write_labels(const std::vector<int>& labels, std::ostream& out);
void write_labels(const std::vector<int>& labels, const std::string& path);
std::vector<int> read_labels(std::istream& in);
std::vector<int> read_labels(const std::string& path);

}  // namespace hrcp
