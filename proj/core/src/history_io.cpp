#include "epsolve/history_io.hpp"

#include <charconv>
#include <fstream>

#include <json.hpp>

#include "epsolve/errors.hpp"

namespace epsolve {

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

namespace {

std::string cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

nlohmann::json json_or_null(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json config_json(const SolveConfig& cfg) {
  nlohmann::json j;
  j["method"] = to_string(cfg.method);
  j["max_iter"] = cfg.max_iter;
  j["reorth"] = cfg.reorth;
  if (cfg.tol_policy.kind == TolPolicy::Kind::default_numerical_rank)
    j["tol"] = "default";
  else
    j["tol"] = cfg.tol_policy.fixed_value;
  if (cfg.stop_rule.kind == StopRule::Kind::run_to_max)
    j["stop"] = "run_to_max";
  else
    j["stop"] = cfg.stop_rule.threshold;
  j["record_svd_every"] = cfg.record_svd_every;
  return j;
}

}  // namespace

void write_history_csv(const std::string& path, const ConvergenceHistory& history) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open output file: " + path);
  out << kCsvHeader << "\n";
  for (const IterationRecord& r : history.records) {
    out << r.k << ',' << format_double(r.res_norm) << ',' << format_double(r.atr_ratio);
    for (int i = 0; i < 4; ++i) {
      out << ',';
      if (r.sig_ratios) out << format_double((*r.sig_ratios)[i]);
    }
    out << ',' << cell(r.h_ratio) << ',' << cell(r.h_min_ratio) << ',';
    if (r.truncation_count) out << *r.truncation_count;
    out << ',' << format_double(r.givens_s) << "\n";
  }
  if (!out) throw io_error("write failure on " + path);
}

void write_history_json(const std::string& path, const ConvergenceHistory& history) {
  nlohmann::json j;
  j["problem"] = history.problem_tag;
  j["config"] = config_json(history.config_echo);
  nlohmann::json records = nlohmann::json::array();
  for (const IterationRecord& r : history.records) {
    nlohmann::json rec;
    rec["k"] = r.k;
    rec["res_norm"] = r.res_norm;
    rec["atr_ratio"] = r.atr_ratio;
    static const char* sig_names[4] = {"sig_k_ratio", "sig_k1_ratio", "sig_k2_ratio",
                                       "sig_k3_ratio"};
    for (int i = 0; i < 4; ++i)
      rec[sig_names[i]] =
          r.sig_ratios ? nlohmann::json((*r.sig_ratios)[i]) : nlohmann::json(nullptr);
    rec["h_ratio"] = json_or_null(r.h_ratio);
    rec["h_min_ratio"] = json_or_null(r.h_min_ratio);
    rec["truncation_count"] =
        r.truncation_count ? nlohmann::json(*r.truncation_count) : nlohmann::json(nullptr);
    rec["givens_s"] = r.givens_s;
    records.push_back(std::move(rec));
  }
  j["records"] = std::move(records);

  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open output file: " + path);
  out << j.dump(2) << "\n";
  if (!out) throw io_error("write failure on " + path);
}

}  // namespace epsolve
