#pragma once

#include "ghx/metric_space.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace ghx {

// Distance-matrix text format: first non-comment line is the point count
// n, followed by n lines of n whitespace-separated entries. Entries are
// integers, exact decimals, or "p/q". '#' starts a comment until end of
// line. Parse errors report the 1-based source line.
FiniteMetricSpace read_distance_matrix(std::istream& in);
FiniteMetricSpace load_distance_matrix_file(const std::string& path);

// Canonical form: count line, then one row per line with lowest-terms
// entries. Reading it back reproduces the space exactly.
std::string write_distance_matrix(const FiniteMetricSpace& x);

// FNV-1a 64-bit digest, lowercase hex. Used to fingerprint input files in
// reports.
std::string fnv1a_hex(std::string_view bytes);

// Reads a whole file; throws Error(io_error) when it cannot be opened.
std::string slurp_file(const std::string& path);

}  // namespace ghx
