#include <gtest/gtest.h>

#include <json.hpp>

#include "mythforge/cq.hpp"
#include "mythforge/error.hpp"
#include "support.hpp"

using namespace mythforge;
using namespace mythforge::cq;

namespace {

const rdf::Dataset& didone() {
  static const auto f = testsupport::build_fixture("didone");
  return f.result.dataset;
}

}  // namespace

TEST(Suite, LoadsQueryFiles) {
  auto suite = load_suite(testsupport::data_dir() / "cq-suite.json");
  ASSERT_GE(suite.size(), 1u);
  EXPECT_NE(suite[0].query.find("SELECT DISTINCT ?work ?type"), std::string::npos);
  ASSERT_TRUE(suite[0].expect.rows);
  EXPECT_EQ(suite[0].expect.rows->size(), 7u);
}

TEST(Suite, ShippedSuitePassesOnFixture) {
  auto report = run_suite(load_suite(testsupport::data_dir() / "cq-suite.json"), didone());
  for (const auto& r : report.results) EXPECT_EQ(r.status, Status::pass) << r.name << ": " << r.message;
  EXPECT_TRUE(report.all_passed());
}

TEST(Suite, ExpectedRowOnEmptyDatasetFailsWithDiff) {
  std::vector<CompetencyQuestion> suite{
      {"one row", "SELECT ?s WHERE { ?s ?p ?o }", {std::vector<std::vector<std::string>>{{"<urn:x:s>"}}, {}}}};
  auto report = run_suite(suite, rdf::Dataset());
  ASSERT_EQ(report.results.size(), 1u);
  EXPECT_EQ(report.results[0].status, Status::fail);
  EXPECT_EQ(report.results[0].missing.size(), 1u);
  EXPECT_FALSE(report.all_passed());
}

TEST(Suite, UnexpectedRowsAreReported) {
  auto suite = load_suite(testsupport::data_dir() / "cq-suite.json");
  suite.resize(1);
  suite[0].expect.rows->pop_back();
  auto report = run_suite(suite, didone());
  EXPECT_EQ(report.results[0].status, Status::fail);
  EXPECT_EQ(report.results[0].unexpected.size(), 1u);
  EXPECT_TRUE(report.results[0].missing.empty());
}

TEST(Suite, ParseFailureIsErrorAndSuiteContinues) {
  std::vector<CompetencyQuestion> suite{{"broken", "SELECT ?s WHERE { FILTER(?s) }", {{}, 0}},
                                        {"fine", "SELECT ?s WHERE { ?s ?p ?o }", {{}, 1}}};
  auto report = run_suite(suite, didone());
  ASSERT_EQ(report.results.size(), 2u);
  EXPECT_EQ(report.results[0].status, Status::error);
  EXPECT_EQ(report.results[1].status, Status::pass);
}

TEST(Suite, EmptySuite) {
  auto report = run_suite({}, rdf::Dataset());
  EXPECT_TRUE(report.results.empty());
  EXPECT_TRUE(report.all_passed());
}

TEST(Suite, MinCount) {
  std::vector<CompetencyQuestion> suite{{"many", "SELECT ?s WHERE { ?s ?p ?o }", {{}, 1000000}}};
  EXPECT_EQ(run_suite(suite, didone()).results[0].status, Status::fail);
}

TEST(Suite, RejectsExpectationless) {
  EXPECT_THROW(suite_from_json_text(R"([{"name":"x","query":"SELECT ?s {?s ?p ?o}","expect":{}}])", "."),
               ConfigError);
  EXPECT_THROW(suite_from_json_text(R"({"name":"x"})", "."), ConfigError);
}

TEST(Report, JsonAndText) {
  auto report = run_suite(load_suite(testsupport::data_dir() / "cq-suite.json"), didone());
  auto j = nlohmann::json::parse(report.to_json());
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["results"].size(), report.results.size());
  EXPECT_EQ(j["results"][0]["status"], "PASS");
  EXPECT_NE(report.to_text().find("PASS"), std::string::npos);
}
