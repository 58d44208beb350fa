#ifndef EPSOLVE_HISTORY_IO_HPP
#define EPSOLVE_HISTORY_IO_HPP

#include <string>

#include "epsolve/diagnostics.hpp"

namespace epsolve {

/// Fixed column set of the per-iteration CSV emitted for every solver.
inline constexpr const char* kCsvHeader =
    "k,res_norm,atr_ratio,sig_k_ratio,sig_k1_ratio,sig_k2_ratio,sig_k3_ratio,"
    "h_ratio,h_min_ratio,truncation_count,givens_s";

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

/// CSV with the kCsvHeader schema; absent fields are empty cells. Output
/// is byte-deterministic for identical histories.
void write_history_csv(const std::string& path, const ConvergenceHistory& history);

/// JSON mirror of the CSV: same field names, absent fields are null, plus
/// the echoed solver configuration and problem tag.
void write_history_json(const std::string& path, const ConvergenceHistory& history);

}  // namespace epsolve

#endif  // EPSOLVE_HISTORY_IO_HPP
