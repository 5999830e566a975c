#pragma once

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rsvd/errors.hpp"
#include "rsvd/matrix.hpp"

namespace rsvd {

namespace detail {

inline std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

inline double parse_double(const std::string& tok, std::size_t line) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError("matrix market: bad numeric value '" + tok + "'", line);
  }
}

inline long long parse_index(const std::string& tok, std::size_t line) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError("matrix market: bad integer '" + tok + "'", line);
  }
}

}  // namespace detail

// Read a Matrix Market file in "coordinate real general" or "array real
// general" form into a dense matrix. Indices are 1-based in the file;
// coordinate entries that are absent stay zero.
inline DenseMatrix read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");

  std::string line;
  std::size_t lineno = 0;

  if (!std::getline(in, line))
    throw ParseError("matrix market: empty file", 1);
  ++lineno;
  std::istringstream hdr(line);
  std::string banner, object, format, field, symmetry;
  hdr >> banner >> object >> format >> field >> symmetry;
  if (detail::lower(banner) != "%%matrixmarket" ||
      detail::lower(object) != "matrix")
    throw ParseError("matrix market: bad banner", lineno);
  format = detail::lower(format);
  field = detail::lower(field);
  symmetry = detail::lower(symmetry);
  if (format != "coordinate" && format != "array")
    throw UnsupportedFormatError("matrix market: format '" + format +
                                 "' not supported");
  if (field != "real")
    throw UnsupportedFormatError("matrix market: field '" + field +
                                 "' not supported");
  if (symmetry != "general")
    throw UnsupportedFormatError("matrix market: symmetry '" + symmetry +
                                 "' not supported");

  // Size line: first non-comment, non-blank line.
  std::vector<std::string> toks;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] == '%') continue;
    std::istringstream ss(line);
    std::string t;
    toks.clear();
    while (ss >> t) toks.push_back(t);
    if (!toks.empty()) break;
  }
  if (toks.empty()) throw ParseError("matrix market: missing size line", lineno);

  const std::size_t expected_size_fields = (format == "coordinate") ? 3 : 2;
  if (toks.size() != expected_size_fields)
    throw ParseError("matrix market: malformed size line", lineno);
  const long long mll = detail::parse_index(toks[0], lineno);
  const long long nll = detail::parse_index(toks[1], lineno);
  if (mll <= 0 || nll <= 0)
    throw ParseError("matrix market: dimensions must be positive", lineno);
  const std::size_t m = static_cast<std::size_t>(mll);
  const std::size_t n = static_cast<std::size_t>(nll);
  DenseMatrix M(m, n);

  if (format == "coordinate") {
    const long long nnz = detail::parse_index(toks[2], lineno);
    if (nnz < 0)
      throw ParseError("matrix market: negative entry count", lineno);
    long long seen = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line[0] == '%') continue;
      std::istringstream ss(line);
      std::string t;
      toks.clear();
      while (ss >> t) toks.push_back(t);
      if (toks.empty()) continue;
      if (toks.size() != 3)
        throw ParseError("matrix market: coordinate entry needs i j value",
                         lineno);
      const long long i = detail::parse_index(toks[0], lineno);
      const long long j = detail::parse_index(toks[1], lineno);
      if (i < 1 || j < 1 || i > mll || j > nll)
        throw ParseError("matrix market: index out of range", lineno);
      M(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) =
          detail::parse_double(toks[2], lineno);
      ++seen;
    }
    if (seen != nnz)
      throw ParseError("matrix market: expected " + std::to_string(nnz) +
                           " entries, found " + std::to_string(seen),
                       lineno);
  } else {
    // Array format: m*n values in column-major order.
    std::size_t filled = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line[0] == '%') continue;
      std::istringstream ss(line);
      std::string t;
      while (ss >> t) {
        if (filled >= m * n)
          throw ParseError("matrix market: more values than m*n", lineno);
        M.data()[filled++] = detail::parse_double(t, lineno);
      }
    }
    if (filled != m * n)
      throw ParseError("matrix market: expected " + std::to_string(m * n) +
                           " values, found " + std::to_string(filled),
                       lineno);
  }
  return M;
}

// Write a dense matrix in "array real general" form with full double
// precision.
inline void write_matrix_market(const std::string& path,
                                const DenseMatrix& M) {
  if (M.empty()) throw DimensionError("write_matrix_market: empty matrix");
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "%%MatrixMarket matrix array real general\n";
  out << M.rows() << " " << M.cols() << "\n";
  char buf[40];
  for (std::size_t j = 0; j < M.cols(); ++j) {
    for (std::size_t i = 0; i < M.rows(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", M(i, j));
      out << buf << "\n";
    }
  }
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace rsvd
