#include "mythforge/cq.hpp"

#include <json.hpp>
#include <set>

#include "mythforge/error.hpp"
#include "mythforge/serialize.hpp"
#include "mythforge/text.hpp"

namespace mythforge::cq {

using nlohmann::json;

std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::error: return "ERROR";
  }
  return "ERROR";
}

std::vector<CompetencyQuestion> suite_from_json_text(std::string_view text,
                                                     const std::filesystem::path& base_dir) {
  json j = json::parse(text);
  if (!j.is_array()) throw ConfigError("CQ suite must be a JSON array");
  std::vector<CompetencyQuestion> out;
  for (const auto& e : j) {
    CompetencyQuestion q;
    q.name = e.at("name").get<std::string>();
    q.query = e.at("query").get<std::string>();
    if (q.query.find('{') == std::string::npos) {
      auto file = base_dir / q.query;
      if (std::filesystem::is_regular_file(file)) q.query = text::read_file(file.string());
    }
    const auto& ex = e.at("expect");
    if (ex.contains("rows")) q.expect.rows = ex["rows"].get<std::vector<std::vector<std::string>>>();
    if (ex.contains("min_count")) q.expect.min_count = ex["min_count"].get<std::size_t>();
    if (!q.expect.rows && !q.expect.min_count)
      throw ConfigError("CQ '" + q.name + "' has no expectation");
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<CompetencyQuestion> load_suite(const std::filesystem::path& path) {
  return suite_from_json_text(text::read_file(path.string()), path.parent_path());
}

namespace {

rdf::Term cell_term(const std::string& raw, const rdf::PrefixMap& primary,
                    const rdf::PrefixMap& fallback) {
  std::string cell(text::trim(raw));
  if (cell.starts_with("<") && cell.ends_with(">")) return rdf::Iri(cell.substr(1, cell.size() - 2));
  if (cell.starts_with("\"")) {
    auto ds = rdf::parse_nquads("<urn:x:s> <urn:x:p> " + cell + " .");
    return ds.quads().begin()->object;
  }
  auto colon = cell.find(':');
  if (colon != std::string::npos && primary.contains(cell.substr(0, colon))) return primary.expand(cell);
  return fallback.expand(cell);
}

std::string render_row(const std::vector<rdf::Term>& row, const rdf::PrefixMap& a,
                       const rdf::PrefixMap& b) {
  std::vector<std::string> cells;
  for (const auto& t : row) {
    if (rdf::is_iri(t)) {
      std::string c = rdf::compress(rdf::as_iri(t), a, rdf::CompressStyle::display);
      if (c.starts_with("<")) c = rdf::compress(rdf::as_iri(t), b, rdf::CompressStyle::display);
      cells.push_back(c);
    } else {
      cells.push_back(rdf::to_ntriples(t));
    }
  }
  return "(" + text::join(cells, ", ") + ")";
}

}  // namespace

Report run_suite(const std::vector<CompetencyQuestion>& suite, const rdf::Dataset& dataset) {
  Report report;
  for (const auto& cq : suite) {
    Result r;
    r.name = cq.name;
    try {
      auto q = query::parse_query(cq.query);
      auto table = query::evaluate(q, dataset);
      r.row_count = table.rows.size();
      bool ok = true;
      if (cq.expect.rows) {
        std::set<std::vector<rdf::Term>> expected, actual(table.rows.begin(), table.rows.end());
        for (const auto& row : *cq.expect.rows) {
          if (row.size() != table.columns.size())
            throw ConfigError("expected row width " + std::to_string(row.size()) +
                              " does not match " + std::to_string(table.columns.size()) + " columns");
          std::vector<rdf::Term> terms;
          for (const auto& c : row) terms.push_back(cell_term(c, q.prefixes, dataset.prefixes()));
          expected.insert(std::move(terms));
        }
        for (const auto& e : expected)
          if (!actual.contains(e)) r.missing.push_back(render_row(e, q.prefixes, dataset.prefixes()));
        for (const auto& a : actual)
          if (!expected.contains(a)) r.unexpected.push_back(render_row(a, q.prefixes, dataset.prefixes()));
        ok = r.missing.empty() && r.unexpected.empty();
      }
      if (cq.expect.min_count && r.row_count < *cq.expect.min_count) {
        ok = false;
        r.message = "expected at least " + std::to_string(*cq.expect.min_count) + " rows, got " +
                    std::to_string(r.row_count);
      }
      r.status = ok ? Status::pass : Status::fail;
    } catch (const std::exception& e) {
      r.status = Status::error;
      r.message = e.what();
    }
    report.results.push_back(std::move(r));
  }
  return report;
}

bool Report::all_passed() const {
  for (const auto& r : results)
    if (r.status != Status::pass) return false;
  return true;
}

std::string Report::to_json() const {
  json arr = json::array();
  std::size_t passed = 0;
  for (const auto& r : results) {
    if (r.status == Status::pass) ++passed;
    json e{{"name", r.name}, {"status", to_string(r.status)}, {"rows", r.row_count}};
    if (!r.missing.empty()) e["missing"] = r.missing;
    if (!r.unexpected.empty()) e["unexpected"] = r.unexpected;
    if (!r.message.empty()) e["message"] = r.message;
    arr.push_back(std::move(e));
  }
  json out{{"schema", 1}, {"total", results.size()}, {"passed", passed}, {"results", arr}};
  return out.dump(2) + "\n";
}

std::string Report::to_text() const {
  std::string out;
  std::size_t passed = 0;
  for (const auto& r : results) {
    if (r.status == Status::pass) ++passed;
    out += std::string(to_string(r.status)) + "  " + r.name + " (" + std::to_string(r.row_count) + " rows)\n";
    for (const auto& m : r.missing) out += "    - missing    " + m + "\n";
    for (const auto& u : r.unexpected) out += "    + unexpected " + u + "\n";
    if (!r.message.empty()) out += "    " + r.message + "\n";
  }
  out += std::to_string(passed) + "/" + std::to_string(results.size()) + " competency questions passed\n";
  return out;
}

}  // namespace mythforge::cq
