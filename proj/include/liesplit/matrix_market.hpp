#pragma once

#include <iosfwd>
#include <string>

#include "liesplit/matrix.hpp"

namespace liesplit::mm {

// Reads a Matrix Market file. Accepted headers:
//   %%MatrixMarket matrix coordinate real general
//   %%MatrixMarket matrix coordinate real symmetric
//   %%MatrixMarket matrix coordinate real skew-symmetric
//   %%MatrixMarket matrix array real general
// Other fields (complex, pattern, integer) are rejected with
// UnsupportedField. Structural problems raise ParseError carrying the
// offending line number: bad counts, indices out of range, duplicate
// entries, trailing text on a data line, upper-triangle entries in
// symmetric/skew files (the format stores one triangle), a nonzero
// diagonal in a skew-symmetric file. An unreadable file is ParseError
// with line 0.
Matrix read_matrix(std::istream& in);
Matrix read_matrix_file(const std::string& path);

// A vector is an n-by-1 matrix; column vectors stored as 1-by-n are
// transposed on read.
std::vector<double> read_vector_file(const std::string& path);

// Writes array real general, column-major, %.17g. Reading the result back
// reproduces the values bit for bit.
void write_matrix(std::ostream& out, const Matrix& a);
void write_matrix_file(const std::string& path, const Matrix& a);
void write_vector_file(const std::string& path, const std::vector<double>& v);

}  // namespace liesplit::mm
