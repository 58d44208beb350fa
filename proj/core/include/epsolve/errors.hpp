#ifndef EPSOLVE_ERRORS_HPP
#define EPSOLVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace epsolve {

/// Violated precondition: dimension mismatch, invalid configuration, or a
/// call that the current state forbids (e.g. stepping past a breakdown).
class contract_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Floating-point failure: overflow to non-finite values or an iteration
/// that did not converge within its sweep budget.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Back substitution hit a zero diagonal entry.
class singular_triangular_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

/// Input declares something this toolkit does not handle (complex or
/// pattern Matrix Market fields, unknown solver names, ...).
class format_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operator has the wrong shape (only square matrices are supported).
class shape_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Filesystem or parse failure; the message carries path and line number
/// where applicable.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace epsolve

#endif  // EPSOLVE_ERRORS_HPP
