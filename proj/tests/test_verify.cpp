#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "verlab/errors.hpp"
#include "verlab/verify.hpp"
#include "verlab/verlinde.hpp"

using namespace verlab;

namespace {

// Elapsed fields are excluded from determinism comparisons.
nlohmann::json strip_elapsed(const std::string& report_json) {
  nlohmann::json doc = nlohmann::json::parse(report_json);
  for (auto& r : doc["results"]) r.erase("elapsed_ms");
  return doc;
}

}  // namespace

TEST_CASE("an empty suite yields the empty report") {
  const VerificationReport report = run_suite({});
  CHECK(report.results.empty());
  CHECK(emit_report(report, ReportFormat::kJson) ==
        "{\"schema\":1,\"results\":[],\"summary\":{\"passed\":0,\"failed\":0}}");
}

TEST_CASE("be_equivalence over a small grid") {
  VerifyConfig cfg;
  cfg.primes = {2};
  cfg.max_i = 4;
  const VerificationReport report = run_suite({"be_equivalence"}, cfg);
  REQUIRE(report.results.size() == 4);
  for (const auto& r : report.results) {
    CHECK(r.check_id == "be_equivalence");
    CHECK(r.passed);
    CHECK(r.witness.is_null());
  }
  CHECK(report.passed_count() == 4);
  CHECK(report.failed_count() == 0);
  CHECK(report.all_passed());
}

TEST_CASE("ring axioms at (3, 2)") {
  VerifyConfig cfg;
  cfg.primes = {3};
  cfg.max_n = 2;
  const VerificationReport report = run_suite({"ring_axioms"}, cfg);
  REQUIRE(report.results.size() == 2);  // n = 1 and n = 2
  for (const auto& r : report.results) CHECK(r.passed);
}

TEST_CASE("unknown check ids are rejected") {
  CHECK_THROWS_AS(run_suite({"no_such_check"}), UnknownCheckId);
}

TEST_CASE("the registry names every check with a statement") {
  const auto checks = registered_checks();
  CHECK(checks.size() == 12);
  for (const auto& info : checks) {
    CHECK_FALSE(info.id.empty());
    CHECK_FALSE(info.statement.empty());
  }
}

TEST_CASE("reports are deterministic for a fixed configuration") {
  VerifyConfig cfg;
  cfg.primes = {2};
  cfg.max_i = 2;
  cfg.max_n = 3;
  cfg.max_weight = 10;
  std::vector<std::string> all;
  for (const auto& info : registered_checks()) all.push_back(info.id);

  TableStore::instance().reset();
  const std::string first = emit_report(run_suite(all, cfg), ReportFormat::kJson);
  TableStore::instance().reset();
  const std::string second = emit_report(run_suite(all, cfg), ReportFormat::kJson);
  CHECK(strip_elapsed(first) == strip_elapsed(second));

  // results are ordered by check id, then params
  const VerificationReport report = run_suite(all, cfg);
  for (std::size_t k = 1; k < report.results.size(); ++k) {
    const auto& prev = report.results[k - 1];
    const auto& cur = report.results[k];
    const bool ordered = prev.check_id < cur.check_id ||
                         (prev.check_id == cur.check_id && prev.params <= cur.params);
    CHECK(ordered);
  }
  CHECK(report.all_passed());
}

TEST_CASE("failing results carry a witness and round-trip through JSON") {
  VerificationReport report;
  CheckResult fail;
  fail.check_id = "demo";
  fail.params = {{"p", "2"}};
  fail.passed = false;
  fail.witness = nlohmann::ordered_json{{"a", 3}};
  fail.elapsed_ms = 1;
  CheckResult pass;
  pass.check_id = "demo";
  pass.params = {{"p", "3"}};
  pass.passed = true;
  pass.elapsed_ms = 2;
  report.results = {fail, pass};

  CHECK(report.passed_count() == 1);
  CHECK(report.failed_count() == 1);
  CHECK_FALSE(report.all_passed());

  const std::string json = emit_report(report, ReportFormat::kJson);
  const nlohmann::json doc = nlohmann::json::parse(json);
  CHECK(doc["summary"]["passed"] == 1);
  CHECK(doc["summary"]["failed"] == 1);
  REQUIRE(doc["results"].size() == 2);
  CHECK(doc["results"][0].contains("witness"));
  CHECK_FALSE(doc["results"][1].contains("witness"));

  const VerificationReport parsed = parse_report(json);
  REQUIRE(parsed.results.size() == 2);
  CHECK(parsed.results[0].check_id == "demo");
  CHECK(parsed.results[0].params.at("p") == "2");
  CHECK_FALSE(parsed.results[0].passed);
  CHECK(parsed.results[0].witness["a"] == 3);
  CHECK(parsed.results[1].passed);
  CHECK(emit_report(parsed, ReportFormat::kJson) == json);
}

TEST_CASE("markdown emission") {
  VerifyConfig cfg;
  cfg.primes = {2};
  cfg.max_i = 1;
  const VerificationReport report = run_suite({"frobenius_limit"}, cfg);
  const std::string md = emit_report(report, ReportFormat::kMarkdown);
  CHECK(md.find("| check |") != std::string::npos);
  CHECK(md.find("frobenius_limit") != std::string::npos);
  CHECK(md.find("passed: 1, failed: 0") != std::string::npos);
}

TEST_CASE("parse_report rejects bad input") {
  CHECK_THROWS_AS(parse_report("not json"), ParseError);
  CHECK_THROWS_AS(parse_report("{\"schema\":2,\"results\":[]}"), ParseError);
}
