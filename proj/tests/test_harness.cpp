#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "bullen/errors.hpp"
#include "bullen/harness.hpp"
#include "oracles.hpp"

using namespace bullen;

namespace {

std::string json_text(const Report& r) {
  std::ostringstream out;
  write_json(r, out);
  return out.str();
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("config errors are raised before any computation") {
  RunConfig cfg;
  cfg.props = {"prop2"};
  cfg.k_values = {1};
  CHECK_THROWS_AS(run_suite(cfg), ConfigError);

  cfg = RunConfig{};
  cfg.props = {"prop99"};
  CHECK_THROWS_AS(run_suite(cfg), ConfigError);

  cfg = RunConfig{};
  cfg.corpus_filter = {"tanh"};
  CHECK_THROWS_AS(run_suite(cfg), ConfigError);

  cfg = RunConfig{};
  cfg.n_values = {0};
  CHECK_THROWS_AS(run_suite(cfg), ConfigError);

  cfg = RunConfig{};
  cfg.tol = 0.0;
  CHECK_THROWS_AS(run_suite(cfg), ConfigError);

  CHECK_THROWS_AS(parse_format("xml"), ConfigError);
  CHECK(parse_format("csv") == ReportFormat::csv);
}

TEST_CASE("class routing produces a skipped entry") {
  RunConfig cfg;
  cfg.interval = Interval(0.0, std::numbers::pi);
  cfg.props = {"thmA"};
  cfg.corpus_filter = {"sin"};
  const auto r = run_suite(cfg);
  REQUIRE(r.verdicts.size() == 1);
  CHECK(r.verdicts[0].skipped());
  CHECK(r.verdicts[0].skip_reason.find("class") != std::string::npos);
  CHECK(r.summary.skipped == 1);
  CHECK(exit_code(r) == 0);
}

TEST_CASE("every function and group pair appears in the report") {
  RunConfig cfg;
  cfg.k_values = {2};
  cfg.n_values = {1, 2};
  cfg.random_partitions = 2;
  cfg.grid_n = 512;
  const auto r = run_suite(cfg);
  const auto corpus = resolve_corpus(cfg);
  for (const auto& f : corpus) {
    for (const auto& g : prop_ids()) {
      const bool present = std::any_of(r.verdicts.begin(), r.verdicts.end(), [&](const auto& v) {
        return v.function_id == f.id() && v.prop_id.rfind(g, 0) == 0;
      });
      CAPTURE(f.id());
      CAPTURE(g);
      CHECK(present);
    }
  }
  CHECK(r.summary.fails_normal_confidence == 0);
}

TEST_CASE("empty report") {
  Report r;
  const auto j = nlohmann::json::parse(json_text(r));
  CHECK(j.at("verdicts").is_array());
  CHECK(j.at("verdicts").empty());
  for (const auto& [key, value] : j.at("summary").items()) CHECK(value.get<int>() == 0);
  CHECK(j.at("tool_version") == kToolVersion);
}

TEST_CASE("one-verdict csv has a header and one row") {
  Report r;
  r.verdicts.push_back(make_verdict("prop2", "square", 1.0 / 12, 0.5, {{"k", 4.0}}, 1e-8));
  r.summary = summarize(r.verdicts);
  std::ostringstream out;
  write_csv(r, out);
  CHECK(count_lines(out.str()) == 2);
  CHECK(out.str().rfind("prop_id,function_id,lhs,rhs,margin,holds,confidence", 0) == 0);
  CHECK(out.str().find("param_k") != std::string::npos);
}

TEST_CASE("full-suite report round trip") {
  RunConfig cfg;
  const auto r = run_suite(cfg);
  CHECK(exit_code(r) == 0);
  const auto j = nlohmann::json::parse(json_text(r));
  const auto t = oracle::recount(j);
  const auto& s = j.at("summary");
  CHECK(t.total == s.at("total").get<std::size_t>());
  CHECK(t.holds == s.at("holds").get<std::size_t>());
  CHECK(t.fails == s.at("fails").get<std::size_t>());
  CHECK(t.fails_normal == s.at("fails_normal_confidence").get<std::size_t>());
  CHECK(t.low == s.at("low_confidence").get<std::size_t>());
  CHECK(t.skipped == s.at("skipped").get<std::size_t>());
  CHECK(t.total == r.verdicts.size());
}

TEST_CASE("reports are deterministic apart from wall time") {
  RunConfig cfg;
  cfg.props = {"prop5", "prop6"};
  cfg.grid_n = 1024;
  auto a = run_suite(cfg);
  auto b = run_suite(cfg);
  a.wall_time = b.wall_time = 0.0;
  CHECK(json_text(a) == json_text(b));
}

TEST_CASE("emit_report writes files and names the path on failure") {
  Report r;
  const std::string path = "harness_emit_test.csv";
  emit_report(r, ReportFormat::csv, path);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("prop_id,", 0) == 0);
  std::remove(path.c_str());
  CHECK_THROWS_WITH(emit_report(r, ReportFormat::json, "/nonexistent/dir/r.json"),
                    doctest::Contains("/nonexistent/dir/r.json"));
}

TEST_CASE("corpus file drives the run") {
  const std::string path = "harness_corpus_test.json";
  {
    std::ofstream out(path);
    out << R"([{"id":"wide_square","a":-2,"b":3,"expr":"square"}])";
  }
  RunConfig cfg;
  cfg.corpus_file = path;
  cfg.props = {"eq1", "prop2"};
  const auto r = run_suite(cfg);
  std::remove(path.c_str());
  CHECK(r.summary.total == 2 + 4);
  for (const auto& v : r.verdicts) CHECK(v.function_id == "wide_square");
  CHECK(exit_code(r) == 0);
}

}
