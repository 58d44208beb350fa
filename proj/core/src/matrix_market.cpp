#include "epsolve/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "epsolve/errors.hpp"

namespace epsolve {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

[[noreturn]] void parse_fail(const std::string& path, std::size_t line_no,
                             const std::string& what) {
  throw io_error(path + ":" + std::to_string(line_no) + ": " + what);
}

bool parse_double(const std::string& tok, double& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;  // from_chars rejects a leading +
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

bool parse_index(const std::string& tok, std::size_t& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

std::string format_shortest(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

SparseMatrix read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open matrix file: " + path);

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) parse_fail(path, 1, "empty file");
  ++line_no;

  const auto header = split_ws(lower(line));
  if (header.size() < 5 || header[0] != "%%matrixmarket" || header[1] != "matrix")
    parse_fail(path, line_no, "not a Matrix Market matrix header");
  if (header[2] != "coordinate")
    throw format_error(path + ": only coordinate format is supported");
  if (header[3] != "real")
    throw format_error(path + ": unsupported field '" + header[3] +
                       "' (only real is supported)");
  const bool symmetric = header[4] == "symmetric";
  if (!symmetric && header[4] != "general")
    throw format_error(path + ": unsupported symmetry '" + header[4] +
                       "' (only general or symmetric)");

  std::size_t rows = 0, cols = 0, declared_nnz = 0;
  bool have_sizes = false;
  std::vector<SparseMatrix::Triplet> entries;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '%') continue;
    const auto toks = split_ws(line);
    if (!have_sizes) {
      if (toks.size() != 3 || !parse_index(toks[0], rows) ||
          !parse_index(toks[1], cols) || !parse_index(toks[2], declared_nnz))
        parse_fail(path, line_no, "malformed size line");
      if (rows != cols)
        throw shape_error(path + ": matrix is " + std::to_string(rows) + "x" +
                          std::to_string(cols) + ", only square operators are supported");
      if (rows == 0) parse_fail(path, line_no, "zero-dimensional matrix");
      have_sizes = true;
      entries.reserve(symmetric ? 2 * declared_nnz : declared_nnz);
      continue;
    }
    std::size_t i = 0, j = 0;
    double v = 0.0;
    if (toks.size() != 3 || !parse_index(toks[0], i) || !parse_index(toks[1], j) ||
        !parse_double(toks[2], v))
      parse_fail(path, line_no, "malformed entry line");
    if (i < 1 || i > rows || j < 1 || j > cols)
      parse_fail(path, line_no, "index out of range");
    entries.push_back({i - 1, j - 1, v});
    if (symmetric && i != j) entries.push_back({j - 1, i - 1, v});
  }
  if (!have_sizes) parse_fail(path, line_no, "missing size line");
  if (!in.eof() && in.bad()) throw io_error("read failure on " + path);

  return SparseMatrix::from_triplets(rows, std::move(entries));
}

void write_matrix_market(const std::string& path, const SparseMatrix& a) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open output file: " + path);
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.n() << " " << a.n() << " " << a.nnz() << "\n";
  const auto& offs = a.row_offsets();
  const auto& cols = a.col_indices();
  const auto& vals = a.values();
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t p = offs[i]; p < offs[i + 1]; ++p)
      out << i + 1 << " " << cols[p] + 1 << " " << format_shortest(vals[p]) << "\n";
  if (!out) throw io_error("write failure on " + path);
}

Vector read_rhs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open rhs file: " + path);
  std::string line;
  std::size_t line_no = 0;
  Vector values;
  bool mm_array = false;
  std::size_t declared = 0;
  bool have_sizes = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.rfind("%%", 0) == 0) {
      const auto header = split_ws(lower(line));
      if (header.size() < 5 || header[2] != "array" || header[3] != "real")
        throw format_error(path + ": rhs must be a real dense array or a plain list");
      mm_array = true;
      continue;
    }
    if (line.empty() || line[0] == '%' || line[0] == '#') continue;
    const auto toks = split_ws(line);
    if (mm_array && !have_sizes) {
      std::size_t r = 0, c = 0;
      if (toks.size() != 2 || !parse_index(toks[0], r) || !parse_index(toks[1], c))
        parse_fail(path, line_no, "malformed array size line");
      if (c != 1) throw shape_error(path + ": rhs array must have one column");
      declared = r;
      have_sizes = true;
      values.reserve(declared);
      continue;
    }
    for (const auto& tok : toks) {
      double v = 0.0;
      if (!parse_double(tok, v)) parse_fail(path, line_no, "malformed number");
      values.push_back(v);
    }
  }
  if (values.empty()) throw io_error(path + ": rhs file holds no values");
  if (mm_array && have_sizes && values.size() != declared)
    throw io_error(path + ": rhs array size does not match declared length");
  return values;
}

}  // namespace epsolve
