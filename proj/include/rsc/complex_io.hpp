#pragma once

#include <iosfwd>
#include <string>

#include "rsc/complex.hpp"

namespace rsc {

/*
 * Plain-text complex files:
 *
 *   # optional comments
 *   n 30
 *   d 2
 *   simplex 0 1 2
 *   simplex 0 1 3
 *
 * `n` and `d` must both appear before the first simplex line; each simplex
 * line carries d+1 strictly increasing vertex ids in [0, n). Parse errors
 * throw std::runtime_error naming the 1-based line.
 */

Complex read_complex(std::istream& in);
Complex read_complex_file(const std::string& path);

// Simplices are written in lexicographic order regardless of input order.
void write_complex(std::ostream& out, const Complex& y);
void write_complex_file(const std::string& path, const Complex& y);

}  // namespace rsc
