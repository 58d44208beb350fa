#include <doctest.h>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "epsolve/errors.hpp"
#include "epsolve/history_io.hpp"
#include "epsolve/matrix_market.hpp"
#include "epsolve/problems.hpp"
#include "epsolve/runner.hpp"
#include "epsolve/solvers.hpp"
#include "oracles.hpp"

using namespace epsolve;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ConvergenceHistory sample_history() {
  PeriodicConvDiffSpec spec{6, 1.0};
  auto a = gen_periodic_convdiff(spec);
  SolveConfig cfg;
  cfg.method = Method::gmres_pinv;
  cfg.max_iter = 12;
  cfg.reorth = true;
  auto res = solve(a, gen_rhs_convdiff(spec), cfg);
  res.history.problem_tag = "sample";
  return res.history;
}

}  // namespace

TEST_CASE("format_double: shortest representation round-trips bit-exactly") {
  auto rng = oracles::make_rng(12);
  std::vector<double> values = {0.0,    1.0,     -1.0,       0.1,  1e300,
                                1e-300, 5e-324,  1.0 / 3.0,  -0.0, 123456789.123456789};
  for (int i = 0; i < 200; ++i)
    values.push_back(oracles::uniform(rng, -1e6, 1e6) *
                     std::pow(10.0, static_cast<int>(oracles::uniform(rng, -30, 30))));
  for (const double v : values) {
    const std::string s = format_double(v);
    double back = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), back);
    REQUIRE(ec == std::errc{});
    CHECK(back == v);
  }
}

TEST_CASE("csv: schema header and absent cells") {
  const auto history = sample_history();
  const std::string path = "/tmp/epsolve_test_hist.csv";
  write_history_csv(path, history);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == kCsvHeader);
  std::string row1;
  std::getline(in, row1);
  // k = 1: four sigma-ratio cells are empty
  CHECK(row1.find(",,,,") != std::string::npos);
  std::size_t rows = 1;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == history.records.size());
  std::remove(path.c_str());
}

TEST_CASE("csv and json mirrors carry identical values") {
  const auto history = sample_history();
  const std::string csv_path = "/tmp/epsolve_test_hist2.csv";
  const std::string json_path = "/tmp/epsolve_test_hist2.json";
  write_history_csv(csv_path, history);
  write_history_json(json_path, history);

  const auto j = nlohmann::json::parse(slurp(json_path));
  CHECK(j["problem"] == "sample");
  CHECK(j["config"]["method"] == "gmres_pinv");
  CHECK(j["config"]["reorth"] == true);

  std::ifstream in(csv_path);
  std::string line;
  std::getline(in, line);  // header
  std::size_t idx = 0;
  while (std::getline(in, line)) {
    REQUIRE(idx < j["records"].size());
    const auto& rec = j["records"][idx];
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 11);

    auto parse = [](const std::string& s) {
      double v = 0.0;
      std::from_chars(s.data(), s.data() + s.size(), v);
      return v;
    };
    CHECK(std::stoi(cells[0]) == rec["k"].get<int>());
    CHECK(parse(cells[1]) == rec["res_norm"].get<double>());
    CHECK(parse(cells[2]) == rec["atr_ratio"].get<double>());
    const char* sig_names[4] = {"sig_k_ratio", "sig_k1_ratio", "sig_k2_ratio",
                                "sig_k3_ratio"};
    for (int i = 0; i < 4; ++i) {
      if (cells[3 + i].empty())
        CHECK(rec[sig_names[i]].is_null());
      else
        CHECK(parse(cells[3 + i]) == rec[sig_names[i]].get<double>());
    }
    CHECK(parse(cells[10]) == rec["givens_s"].get<double>());
    ++idx;
  }
  CHECK(idx == j["records"].size());
  std::remove(csv_path.c_str());
  std::remove(json_path.c_str());
}

TEST_CASE("matrix market: write/read round-trip is bit-exact") {
  const auto a = gen_periodic_convdiff({6, 1.3});
  const std::string path = "/tmp/epsolve_test_rt.mtx";
  write_matrix_market(path, a);
  const auto back = read_matrix_market(path);
  CHECK(back.n() == a.n());
  CHECK(back.row_offsets() == a.row_offsets());
  CHECK(back.col_indices() == a.col_indices());
  CHECK(back.values() == a.values());
  std::remove(path.c_str());
}

TEST_CASE("rhs file: plain list and matrix market array forms") {
  {
    std::ofstream out("/tmp/epsolve_test_rhs1.txt");
    out << "# comment\n1.5\n-2\n0.25\n";
  }
  CHECK(read_rhs_file("/tmp/epsolve_test_rhs1.txt") == Vector{1.5, -2.0, 0.25});
  std::remove("/tmp/epsolve_test_rhs1.txt");

  {
    std::ofstream out("/tmp/epsolve_test_rhs2.mtx");
    out << "%%MatrixMarket matrix array real general\n3 1\n1\n2\n3\n";
  }
  CHECK(read_rhs_file("/tmp/epsolve_test_rhs2.mtx") == Vector{1.0, 2.0, 3.0});
  std::remove("/tmp/epsolve_test_rhs2.mtx");

  CHECK_THROWS_AS(read_rhs_file("/nonexistent/rhs.txt"), io_error);
}

TEST_CASE("manifest: sections, overrides of defaults, and errors") {
  const std::string path = "/tmp/epsolve_test_manifest.ini";
  {
    std::ofstream out(path);
    out << "# run configuration\n"
        << "[problem]\n"
        << "problem = convdiff\n"
        << "m = 12\n"
        << "d = 0.5\n"
        << "[solve]\n"
        << "method = gmres, gmres_pinv\n"
        << "max-iter = 30\n"
        << "reorth = true\n"
        << "tol = default\n"
        << "[output]\n"
        << "out = /tmp/epsolve_run\n"
        << "plots = false\n"
        << "seed = 7\n";
  }
  const auto m = parse_manifest_file(path);
  CHECK(m.problem == RunManifest::ProblemKind::generated_convdiff);
  CHECK(m.convdiff.m == 12);
  CHECK(m.convdiff.d == 0.5);
  REQUIRE(m.solvers.size() == 2);
  CHECK(m.solvers[0].method == Method::gmres);
  CHECK(m.solvers[1].method == Method::gmres_pinv);
  CHECK(m.solvers[0].max_iter == 30);
  CHECK(m.solvers[0].reorth);
  CHECK(m.output_dir == "/tmp/epsolve_run");
  CHECK(m.seed == 7);
  std::remove(path.c_str());

  {
    std::ofstream out(path);
    out << "unknown-key = 3\n";
  }
  CHECK_THROWS_AS(parse_manifest_file(path), format_error);
  std::remove(path.c_str());
  CHECK_THROWS_AS(parse_manifest_file("/nonexistent/manifest.ini"), io_error);
}

TEST_CASE("run: emits per-solver files deterministically") {
  RunManifest m;
  m.problem = RunManifest::ProblemKind::generated_convdiff;
  m.convdiff = {6, 1.0};
  SolveConfig cfg;
  cfg.max_iter = 10;
  for (const Method method : {Method::gmres, Method::gmres_pinv}) {
    cfg.method = method;
    m.solvers.push_back(cfg);
  }
  m.emit_plots = true;
  m.export_matrix_path = "/tmp/epsolve_run_a/matrix.mtx";

  const std::string dir1 = "/tmp/epsolve_run_a";
  const std::string dir2 = "/tmp/epsolve_run_b";
  std::filesystem::remove_all(dir1);
  std::filesystem::remove_all(dir2);
  m.output_dir = dir1;
  CHECK(run(m) == 0);
  m.output_dir = dir2;
  CHECK(run(m) == 0);

  for (const std::string stem :
       {std::string("convdiff_m6_d1__gmres"), std::string("convdiff_m6_d1__gmres_pinv")}) {
    for (const std::string ext : {std::string(".csv"), std::string(".json")}) {
      const auto f1 = dir1 + "/" + stem + ext;
      const auto f2 = dir2 + "/" + stem + ext;
      REQUIRE(std::filesystem::exists(f1));
      CHECK(slurp(f1) == slurp(f2));
    }
  }
  const auto exported = read_matrix_market("/tmp/epsolve_run_a/matrix.mtx");
  const auto generated = gen_periodic_convdiff(m.convdiff);
  CHECK(exported.values() == generated.values());

  const std::string svg = dir1 + "/convdiff_m6_d1__atr_comparison.svg";
  REQUIRE(std::filesystem::exists(svg));
  const std::string content = slurp(svg);
  CHECK(content.rfind("<svg", 0) == 0);
  CHECK(content.find("</svg>") != std::string::npos);
  CHECK(slurp(svg) == slurp(dir2 + "/convdiff_m6_d1__atr_comparison.svg"));

  std::filesystem::remove_all(dir1);
  std::filesystem::remove_all(dir2);
}

TEST_CASE("run: missing matrix file fails with status 2") {
  RunManifest m;
  m.problem = RunManifest::ProblemKind::matrix_market;
  m.matrix_path = "/nonexistent/matrix.mtx";
  SolveConfig cfg;
  m.solvers.push_back(cfg);
  m.output_dir = "/tmp/epsolve_run_err";
  CHECK(run(m) == 2);
}
