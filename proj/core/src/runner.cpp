#include "epsolve/runner.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include "epsolve/errors.hpp"
#include "epsolve/history_io.hpp"
#include "epsolve/matrix_market.hpp"
#include "epsolve/plot.hpp"
#include "epsolve/solvers.hpp"

namespace epsolve {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw format_error("manifest: boolean expected for '" + key + "', got '" + v + "'");
}

double parse_real(const std::string& v, const std::string& key) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw format_error("manifest: number expected for '" + key + "', got '" + v + "'");
  return out;
}

std::uint64_t parse_count(const std::string& v, const std::string& key) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw format_error("manifest: integer expected for '" + key + "', got '" + v + "'");
  return out;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string problem_tag(const RunManifest& m) {
  if (m.problem == RunManifest::ProblemKind::generated_convdiff) {
    std::string tag = "convdiff_m" + std::to_string(m.convdiff.m) + "_d" +
                      format_double(m.convdiff.d);
    return tag;
  }
  return std::filesystem::path(m.matrix_path).stem().string();
}

}  // namespace

RunManifest parse_manifest_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open manifest: " + path);

  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw io_error(path + ":" + std::to_string(line_no) + ": malformed section");
      continue;  // sections group keys but do not scope them
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw io_error(path + ":" + std::to_string(line_no) + ": expected key = value");
    kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }

  RunManifest m;
  SolveConfig base;
  std::vector<std::string> methods;
  for (const auto& [key, value] : kv) {
    if (key == "problem") {
      if (value == "convdiff")
        m.problem = RunManifest::ProblemKind::generated_convdiff;
      else if (value == "matrix-market")
        m.problem = RunManifest::ProblemKind::matrix_market;
      else if (value == "matrix-market-rhs")
        m.problem = RunManifest::ProblemKind::matrix_market_with_rhs;
      else
        throw format_error("manifest: unknown problem '" + value + "'");
    } else if (key == "m") {
      m.convdiff.m = parse_count(value, key);
    } else if (key == "d") {
      m.convdiff.d = parse_real(value, key);
    } else if (key == "matrix") {
      m.matrix_path = value;
    } else if (key == "rhs") {
      m.rhs_path = value;
    } else if (key == "perturbation") {
      m.perturbation = parse_real(value, key);
    } else if (key == "method") {
      methods = split_list(value);
    } else if (key == "max-iter") {
      base.max_iter = parse_count(value, key);
    } else if (key == "reorth") {
      base.reorth = parse_bool(value, key);
    } else if (key == "tol") {
      base.tol_policy = value == "default" ? TolPolicy::numerical_rank()
                                           : TolPolicy::fixed(parse_real(value, key));
    } else if (key == "svd-every") {
      base.record_svd_every = parse_count(value, key);
    } else if (key == "atr-stop") {
      base.stop_rule = StopRule::atr_threshold(parse_real(value, key));
    } else if (key == "out") {
      m.output_dir = value;
    } else if (key == "export-matrix") {
      m.export_matrix_path = value;
    } else if (key == "plots") {
      m.emit_plots = parse_bool(value, key);
    } else if (key == "seed") {
      m.seed = parse_count(value, key);
    } else {
      throw format_error("manifest: unknown key '" + key + "'");
    }
  }
  for (const std::string& name : methods) {
    SolveConfig cfg = base;
    cfg.method = parse_method(name);
    m.solvers.push_back(cfg);
  }
  return m;
}

int run(const RunManifest& manifest) {
  try {
    if (manifest.solvers.empty())
      throw format_error("run: at least one solver method is required");

    SparseMatrix a = [&] {
      switch (manifest.problem) {
        case RunManifest::ProblemKind::generated_convdiff:
          return gen_periodic_convdiff(manifest.convdiff);
        default:
          return read_matrix_market(manifest.matrix_path);
      }
    }();
    Vector b;
    switch (manifest.problem) {
      case RunManifest::ProblemKind::generated_convdiff:
        b = gen_rhs_convdiff(manifest.convdiff);
        break;
      case RunManifest::ProblemKind::matrix_market: {
        InconsistentRhsSpec spec;
        spec.perturbation_scale = manifest.perturbation;
        spec.seed = manifest.seed;
        b = build_inconsistent_rhs(a, spec);
        break;
      }
      case RunManifest::ProblemKind::matrix_market_with_rhs:
        b = read_rhs_file(manifest.rhs_path);
        if (b.size() != a.n())
          throw shape_error("rhs length " + std::to_string(b.size()) +
                            " does not match matrix dimension " + std::to_string(a.n()));
        break;
    }

    const std::string tag = problem_tag(manifest);
    std::filesystem::create_directories(manifest.output_dir);
    const std::filesystem::path out_dir(manifest.output_dir);
    if (!manifest.export_matrix_path.empty())
      write_matrix_market(manifest.export_matrix_path, a);

    std::vector<PlotSeries> atr_comparison;
    for (const SolveConfig& cfg : manifest.solvers) {
      SolveResult result = solve(a, b, cfg);
      result.history.problem_tag = tag;
      const std::string stem = tag + "__" + to_string(cfg.method);
      write_history_csv((out_dir / (stem + ".csv")).string(), result.history);
      write_history_json((out_dir / (stem + ".json")).string(), result.history);

      double min_atr = std::numeric_limits<double>::quiet_NaN();
      PlotSeries atr_series{to_string(cfg.method), {}};
      for (const IterationRecord& r : result.history.records) {
        atr_series.y.push_back(r.atr_ratio);
        if (std::isnan(min_atr) || r.atr_ratio < min_atr) min_atr = r.atr_ratio;
      }
      if (manifest.emit_plots) {
        PlotSeries sig{"sigma_k/sigma_1", {}};
        PlotSeries hr{"h_{k+1,k}/||H_kk||_F", {}};
        for (const IterationRecord& r : result.history.records) {
          sig.y.push_back(r.sig_ratios ? (*r.sig_ratios)[0] : 0.0);
          hr.y.push_back(r.h_ratio ? *r.h_ratio : 0.0);
        }
        PlotSeries atr_named = atr_series;
        atr_named.label = "||A^T r||/||A^T b||";
        write_log_plot_svg((out_dir / (stem + "_diagnostics.svg")).string(),
                           tag + " " + to_string(cfg.method) + " diagnostics",
                           {atr_named, sig, hr});
      }
      atr_comparison.push_back(std::move(atr_series));

      std::cout << to_string(cfg.method) << ": " << result.history.records.size()
                << " iterations, termination " << to_string(result.termination)
                << ", min ||A^T r||/||A^T b|| = " << format_double(min_atr) << "\n";
    }
    if (manifest.emit_plots) {
      write_log_plot_svg((out_dir / (tag + "__atr_comparison.svg")).string(),
                         tag + " ||A^T r||/||A^T b||", atr_comparison);
    }
    return 0;
  } catch (const numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace epsolve
