#pragma once

// Competency-question suites: named queries with expected results.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mythforge/query.hpp"
#include "mythforge/rdf.hpp"

namespace mythforge::cq {

struct Expectation {
  // Cells in prefixed (`myth:work/virgil-aeneis`), `<iri>` or N-Triples
  // literal form. Compared as a set of rows.
  std::optional<std::vector<std::vector<std::string>>> rows;
  std::optional<std::size_t> min_count;
};

struct CompetencyQuestion {
  std::string name;
  std::string query;
  Expectation expect;
};

enum class Status { pass, fail, error };
std::string_view to_string(Status s);

struct Result {
  std::string name;
  Status status = Status::error;
  std::size_t row_count = 0;
  std::vector<std::string> missing;     // expected rows not returned
  std::vector<std::string> unexpected;  // returned rows not expected
  std::string message;
};

struct Report {
  std::vector<Result> results;

  bool all_passed() const;
  std::string to_json() const;
  std::string to_text() const;
};

// JSON array of {name, query, expect: {rows | min_count}}. `query` is read
// from a file when it names one relative to the suite file.
std::vector<CompetencyQuestion> load_suite(const std::filesystem::path& path);
std::vector<CompetencyQuestion> suite_from_json_text(std::string_view text,
                                                     const std::filesystem::path& base_dir);

Report run_suite(const std::vector<CompetencyQuestion>& suite, const rdf::Dataset& dataset);

}  // namespace mythforge::cq
