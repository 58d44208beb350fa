#ifndef EPSOLVE_MATRIX_MARKET_HPP
#define EPSOLVE_MATRIX_MARKET_HPP

#include <string>

#include "epsolve/sparse.hpp"
#include "epsolve/vec.hpp"

namespace epsolve {

/// Reads a Matrix Market file (coordinate, real, general or symmetric;
/// 1-based indices, % comments). Symmetric storage is expanded to full CSR
/// and duplicate entries are summed. Throws format_error for unsupported
/// headers, shape_error for non-square matrices, io_error (with line
/// number) for parse failures.
SparseMatrix read_matrix_market(const std::string& path);

/// Writes coordinate/real/general with shortest round-trip formatting, so
/// reading the file back reproduces the CSR arrays bit-identically.
void write_matrix_market(const std::string& path, const SparseMatrix& a);

/// Reads a right-hand-side vector: either a Matrix Market dense array
/// (array real general, n x 1) or a plain list of numbers, one per line,
/// with % or # comments.
Vector read_rhs_file(const std::string& path);

}  // namespace epsolve

#endif  // EPSOLVE_MATRIX_MARKET_HPP
