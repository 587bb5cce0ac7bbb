#pragma once

#include <string>

#include "bures/quadrature.hpp"

namespace bures {

// 17 significant digits, '.' decimal point regardless of locale.
std::string format_double(double v);

// Header field,ff2,f2f2,trf2,f3f3_23,f4f4_12,stderr_ff2,...; rows bures, asd,
// sd, diff.  Standard-error cells are empty for the lattice method.
std::string table_csv(const InvariantTable& table);

// grid_n^2 rows of zeta1,zeta2,A,B on the inclusive grid over the spectral box,
// zeta1 outer.  Degenerate nodes are kept: A and B are polynomials.
std::string ab_scan_csv(int grid_n);

// Throws Error(io_error) naming the path.
void write_file(const std::string& path, const std::string& contents);

}  // namespace bures
