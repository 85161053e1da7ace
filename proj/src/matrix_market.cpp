#include "liesplit/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "liesplit/errors.hpp"

namespace liesplit::mm {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

[[noreturn]] void fail(long lineno, const std::string& msg) {
  throw ParseError(lineno, msg + " (line " + std::to_string(lineno) + ")");
}

bool blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '%') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

struct Header {
  bool coordinate = false;
  std::string field;
  std::string symmetry;
};

Header parse_header(const std::string& line, long lineno) {
  std::istringstream ss(line);
  std::string banner, object, format, field, symmetry;
  ss >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || ss.fail())
    fail(lineno, "not a MatrixMarket header");
  object = lower(object);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix")
    fail(lineno, "unsupported object '" + object + "'");

  Header h;
  if (format == "coordinate") {
    h.coordinate = true;
  } else if (format == "array") {
    h.coordinate = false;
  } else {
    fail(lineno, "unsupported format '" + format + "'");
  }
  if (field == "real") {
    h.field = field;
  } else {
    throw UnsupportedField("field '" + field + "' is not supported, only real matrices are");
  }
  if (h.coordinate) {
    if (symmetry != "general" && symmetry != "symmetric" && symmetry != "skew-symmetric")
      throw UnsupportedField("symmetry '" + symmetry + "' is not supported");
  } else {
    if (symmetry != "general")
      throw UnsupportedField("array files must be general, got '" + symmetry + "'");
  }
  h.symmetry = symmetry;
  return h;
}

// Pulls the next line that carries data, tracking the line counter.
bool next_data_line(std::istream& in, std::string& line, long& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (!blank_or_comment(line)) return true;
  }
  return false;
}

void require_line_end(std::istringstream& ss, long lineno) {
  std::string rest;
  if (ss >> rest) fail(lineno, "unexpected trailing text '" + rest + "'");
}

}  // namespace

Matrix read_matrix(std::istream& in) {
  long lineno = 0;
  std::string line;
  if (!std::getline(in, line)) fail(1, "empty file");
  ++lineno;
  Header h = parse_header(line, lineno);

  if (!next_data_line(in, line, lineno))
    fail(lineno + 1, "missing size line");

  if (h.coordinate) {
    long rows = 0, cols = 0, nnz = 0;
    {
      std::istringstream ss(line);
      ss >> rows >> cols >> nnz;
      if (ss.fail() || rows <= 0 || cols <= 0 || nnz < 0)
        fail(lineno, "bad coordinate size line");
      require_line_end(ss, lineno);
    }
    Matrix a(static_cast<int>(rows), static_cast<int>(cols));
    std::vector<char> seen(static_cast<size_t>(rows * cols), 0);
    for (long k = 0; k < nnz; ++k) {
      if (!next_data_line(in, line, lineno))
        fail(lineno + 1, "expected " + std::to_string(nnz) + " entries, file ended after " +
                             std::to_string(k));
      std::istringstream ss(line);
      long i = 0, j = 0;
      double v = 0.0;
      ss >> i >> j >> v;
      if (ss.fail()) fail(lineno, "bad coordinate entry");
      require_line_end(ss, lineno);
      if (i < 1 || i > rows || j < 1 || j > cols)
        fail(lineno, "entry index out of range");
      // the format stores one triangle when a symmetry is declared
      if (h.symmetry != "general" && i < j)
        fail(lineno, h.symmetry + " storage expects lower-triangle entries");
      if (h.symmetry == "skew-symmetric" && i == j && v != 0.0)
        fail(lineno, "skew-symmetric file has a nonzero diagonal entry");
      char& mark = seen[static_cast<size_t>((i - 1) * cols + (j - 1))];
      if (mark) fail(lineno, "duplicate entry for position " + std::to_string(i) +
                                 " " + std::to_string(j));
      mark = 1;
      a(static_cast<int>(i - 1), static_cast<int>(j - 1)) = v;
      if (i != j) {
        if (h.symmetry == "symmetric")
          a(static_cast<int>(j - 1), static_cast<int>(i - 1)) = v;
        else if (h.symmetry == "skew-symmetric")
          a(static_cast<int>(j - 1), static_cast<int>(i - 1)) = -v;
      }
    }
    return a;
  }

  long rows = 0, cols = 0;
  {
    std::istringstream ss(line);
    ss >> rows >> cols;
    if (ss.fail() || rows <= 0 || cols <= 0)
      fail(lineno, "bad array size line");
    require_line_end(ss, lineno);
  }
  Matrix a(static_cast<int>(rows), static_cast<int>(cols));
  // Array storage is column-major.
  for (long j = 0; j < cols; ++j) {
    for (long i = 0; i < rows; ++i) {
      if (!next_data_line(in, line, lineno))
        fail(lineno + 1, "array data ended early");
      std::istringstream ss(line);
      double v = 0.0;
      ss >> v;
      if (ss.fail()) fail(lineno, "bad array entry");
      require_line_end(ss, lineno);
      a(static_cast<int>(i), static_cast<int>(j)) = v;
    }
  }
  return a;
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "' for reading");
  try {
    return read_matrix(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + e.what());
  }
}

std::vector<double> read_vector_file(const std::string& path) {
  Matrix a = read_matrix_file(path);
  if (a.cols() == 1) {
    std::vector<double> v(static_cast<size_t>(a.rows()));
    for (int i = 0; i < a.rows(); ++i) v[static_cast<size_t>(i)] = a(i, 0);
    return v;
  }
  if (a.rows() == 1) {
    std::vector<double> v(static_cast<size_t>(a.cols()));
    for (int j = 0; j < a.cols(); ++j) v[static_cast<size_t>(j)] = a(0, j);
    return v;
  }
  throw ParseError(0, "'" + path + "' is " + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + ", expected a vector");
}

void write_matrix(std::ostream& out, const Matrix& a) {
  out << "%%MatrixMarket matrix array real general\n";
  out << a.rows() << " " << a.cols() << "\n";
  char buf[64];
  for (int j = 0; j < a.cols(); ++j) {
    for (int i = 0; i < a.rows(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", a(i, j));
      out << buf << "\n";
    }
  }
}

void write_matrix_file(const std::string& path, const Matrix& a) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_matrix(out, a);
  out.flush();
  if (!out) throw Error("write to '" + path + "' failed");
}

void write_vector_file(const std::string& path, const std::vector<double>& v) {
  Matrix a(static_cast<int>(v.size()), 1);
  for (size_t i = 0; i < v.size(); ++i) a(static_cast<int>(i), 0) = v[i];
  write_matrix_file(path, a);
}

}  // namespace liesplit::mm
