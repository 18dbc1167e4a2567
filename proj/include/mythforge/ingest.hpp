#pragma once

// Tabular source ingestion: CSV rows to RawRecord values.

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mythforge::ingest {

// Categories of "other" literary sources attached to a museal object.
enum class SourceType {
  RiscritturaLetteraria,
  FonteClassica,
  FonteMedievaleOModerna,
  RiscritturaCinematografica,
};

std::string_view to_string(SourceType t);
std::optional<SourceType> source_type_from_string(std::string_view s);
inline constexpr SourceType kAllSourceTypes[] = {
    SourceType::RiscritturaLetteraria, SourceType::FonteClassica,
    SourceType::FonteMedievaleOModerna, SourceType::RiscritturaCinematografica};

struct RawRecord {
  std::optional<std::string> item_id;
  std::string title;
  std::string typology_raw;
  std::string theme_raw;
  std::string artwork_author_raw;
  std::string interpreter_raw;
  std::string century_raw;
  std::string year_raw;
  std::string interpretation_date_raw;
  std::string location_raw;
  std::vector<std::string> classical_sources_raw;
  std::vector<std::pair<SourceType, std::string>> other_sources_raw;
  std::string keywords_raw;
  std::string description;
  std::string image_url;
  std::string see_also;

  friend bool operator==(const RawRecord&, const RawRecord&) = default;
};

// Source column headers per RawRecord field. `other_sources` maps each source
// category to its own column; `item_id` is optional.
struct ColumnMapping {
  std::map<std::string, std::string> fields;
  std::map<SourceType, std::string> other_sources;
  std::string delimiter = ";";

  // Loads `{"fields": {...}, "other_sources": {...}, "delimiter": ";"}`.
  static ColumnMapping load(const std::filesystem::path& path);
  static ColumnMapping from_json_text(std::string_view text);
  // Mapping whose headers equal the field names; used by tests and tooling.
  static ColumnMapping identity();
};

// Names of the scalar RawRecord fields accepted in ColumnMapping::fields.
const std::vector<std::string>& scalar_field_names();

// RFC 4180 reader: quoted fields, doubled quotes, CRLF or LF. Blank lines are
// skipped. Returned rows are raw cells (no trimming).
std::vector<std::vector<std::string>> read_csv(std::string_view text);
std::string write_csv(const std::vector<std::vector<std::string>>& rows);

std::vector<RawRecord> parse_table_text(std::string_view csv,
                                        const ColumnMapping& mapping);
std::vector<RawRecord> parse_table(const std::filesystem::path& path,
                                   const ColumnMapping& mapping);
// Inverse of parse_table_text for records whose list cells contain no
// delimiter; header row uses the mapping's column names.
std::string write_table(const std::vector<RawRecord>& records,
                        const ColumnMapping& mapping);

// item_id when present, else the 1-based row index.
std::string assign_item_id(const RawRecord& record, std::size_t row_index);

}  // namespace mythforge::ingest
