#include "mythforge/ingest.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "mythforge/error.hpp"
#include "mythforge/text.hpp"

namespace mythforge::ingest {

using nlohmann::json;

namespace {

constexpr const char* kItemId = "item_id";
constexpr const char* kClassical = "classical_sources_raw";

std::string* scalar_slot(RawRecord& r, const std::string& name) {
  if (name == "title") return &r.title;
  if (name == "typology_raw") return &r.typology_raw;
  if (name == "theme_raw") return &r.theme_raw;
  if (name == "artwork_author_raw") return &r.artwork_author_raw;
  if (name == "interpreter_raw") return &r.interpreter_raw;
  if (name == "century_raw") return &r.century_raw;
  if (name == "year_raw") return &r.year_raw;
  if (name == "interpretation_date_raw") return &r.interpretation_date_raw;
  if (name == "location_raw") return &r.location_raw;
  if (name == "keywords_raw") return &r.keywords_raw;
  if (name == "description") return &r.description;
  if (name == "image_url") return &r.image_url;
  if (name == "see_also") return &r.see_also;
  return nullptr;
}

std::vector<std::string> split_list(std::string_view cell,
                                    const std::string& delimiter) {
  std::vector<std::string> out;
  for (auto& part : text::split(cell, delimiter)) {
    auto t = text::trim(part);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

std::string join_list(const std::vector<std::string>& items,
                      const std::string& delimiter) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += delimiter;
    out += items[i];
  }
  return out;
}

}  // namespace

std::string_view to_string(SourceType t) {
  switch (t) {
    case SourceType::RiscritturaLetteraria: return "RiscritturaLetteraria";
    case SourceType::FonteClassica: return "FonteClassica";
    case SourceType::FonteMedievaleOModerna: return "FonteMedievaleOModerna";
    case SourceType::RiscritturaCinematografica: return "RiscritturaCinematografica";
  }
  return "";
}

std::optional<SourceType> source_type_from_string(std::string_view s) {
  for (auto t : kAllSourceTypes)
    if (to_string(t) == s) return t;
  return std::nullopt;
}

const std::vector<std::string>& scalar_field_names() {
  static const std::vector<std::string> names = {
      "title",          "typology_raw",       "theme_raw",
      "artwork_author_raw", "interpreter_raw", "century_raw",
      "year_raw",       "interpretation_date_raw", "location_raw",
      "keywords_raw",   "description",        "image_url",
      "see_also"};
  return names;
}

ColumnMapping ColumnMapping::from_json_text(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("column mapping is not valid JSON: ") + e.what());
  }
  ColumnMapping m;
  if (!j.contains("fields") || !j["fields"].is_object())
    throw SchemaError("column mapping needs a 'fields' object");
  for (const auto& [field, header] : j["fields"].items()) {
    if (!header.is_string())
      throw SchemaError("column for '" + field + "' must be a string");
    RawRecord probe;
    if (field != kItemId && field != kClassical && !scalar_slot(probe, field))
      throw SchemaError("unknown record field '" + field + "'");
    m.fields[field] = header.get<std::string>();
  }
  for (const auto& name : scalar_field_names())
    if (!m.fields.contains(name))
      throw SchemaError("record field '" + name + "' is not mapped");
  if (!m.fields.contains(kClassical))
    throw SchemaError(std::string("record field '") + kClassical + "' is not mapped");
  if (j.contains("other_sources")) {
    for (const auto& [tag, header] : j["other_sources"].items()) {
      auto type = source_type_from_string(tag);
      if (!type) throw SchemaError("unknown source type '" + tag + "'");
      m.other_sources[*type] = header.get<std::string>();
    }
  }
  if (j.contains("delimiter")) {
    m.delimiter = j["delimiter"].get<std::string>();
    if (m.delimiter.empty()) throw SchemaError("list delimiter must not be empty");
  }
  return m;
}

ColumnMapping ColumnMapping::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot read column mapping " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

ColumnMapping ColumnMapping::identity() {
  ColumnMapping m;
  for (const auto& name : scalar_field_names()) m.fields[name] = name;
  m.fields[kClassical] = kClassical;
  m.fields[kItemId] = kItemId;
  for (auto t : kAllSourceTypes) m.other_sources[t] = std::string(to_string(t));
  return m;
}

std::vector<std::vector<std::string>> read_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool in_quotes = false;
  bool row_has_content = false;
  std::size_t i = 0;
  if (text.starts_with("\xEF\xBB\xBF")) i = 3;  // UTF-8 BOM

  auto end_row = [&] {
    row.push_back(std::move(cell));
    cell.clear();
    if (row_has_content || row.size() > 1) rows.push_back(std::move(row));
    row.clear();
    row_has_content = false;
  };

  for (; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        cell += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        row_has_content = true;
        break;
      case ',':
        row.push_back(std::move(cell));
        cell.clear();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        end_row();
        break;
      case '\n':
        end_row();
        break;
      default:
        cell += c;
        row_has_content = true;
    }
  }
  if (in_quotes) throw SchemaError("unterminated quoted field at end of input");
  if (!cell.empty() || !row.empty() || row_has_content) end_row();
  return rows;
}

std::string write_csv(const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      const auto& c = row[i];
      if (c.find_first_of(",\"\r\n") != std::string::npos ||
          (!c.empty() && (c.front() == ' ' || c.back() == ' '))) {
        out += '"';
        for (char ch : c) {
          if (ch == '"') out += '"';
          out += ch;
        }
        out += '"';
      } else {
        out += c;
      }
    }
    out += '\n';
  }
  return out;
}

std::vector<RawRecord> parse_table_text(std::string_view csv,
                                        const ColumnMapping& mapping) {
  auto rows = read_csv(csv);
  if (rows.empty()) throw SchemaError("missing header row");
  const auto& header = rows.front();
  auto column_of = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (text::trim(header[i]) == name) return i;
    throw SchemaError("mapped column '" + name + "' not found in header");
  };

  std::vector<std::pair<std::string, std::size_t>> scalar_cols;
  for (const auto& [field, col] : mapping.fields)
    if (field != kItemId && field != kClassical)
      scalar_cols.emplace_back(field, column_of(col));
  std::optional<std::size_t> id_col;
  if (auto it = mapping.fields.find(kItemId); it != mapping.fields.end())
    id_col = column_of(it->second);
  std::optional<std::size_t> classical_col;
  if (auto it = mapping.fields.find(kClassical); it != mapping.fields.end())
    classical_col = column_of(it->second);
  std::vector<std::pair<SourceType, std::size_t>> other_cols;
  for (const auto& [type, col] : mapping.other_sources)
    other_cols.emplace_back(type, column_of(col));

  std::vector<RawRecord> records;
  records.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size())
      throw RowError(r, "expected " + std::to_string(header.size()) +
                            " cells, found " + std::to_string(row.size()));
    RawRecord rec;
    for (const auto& [field, col] : scalar_cols)
      *scalar_slot(rec, field) = text::trim(row[col]);
    if (id_col) {
      auto id = text::trim(row[*id_col]);
      if (!id.empty()) rec.item_id = std::string(id);
    }
    if (classical_col)
      rec.classical_sources_raw = split_list(row[*classical_col], mapping.delimiter);
    for (const auto& [type, col] : other_cols)
      for (auto& s : split_list(row[col], mapping.delimiter))
        rec.other_sources_raw.emplace_back(type, std::move(s));
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<RawRecord> parse_table(const std::filesystem::path& path,
                                   const ColumnMapping& mapping) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot read table " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_table_text(buf.str(), mapping);
}

std::string write_table(const std::vector<RawRecord>& records,
                        const ColumnMapping& mapping) {
  std::vector<std::string> header;
  std::vector<std::string> keys;
  for (const auto& [field, col] : mapping.fields) {
    header.push_back(col);
    keys.push_back(field);
  }
  std::vector<SourceType> other_types;
  for (const auto& [type, col] : mapping.other_sources) {
    header.push_back(col);
    other_types.push_back(type);
  }
  std::vector<std::vector<std::string>> rows{header};
  for (auto rec : records) {
    std::vector<std::string> row;
    for (const auto& key : keys) {
      if (key == kItemId) row.push_back(rec.item_id.value_or(""));
      else if (key == kClassical)
        row.push_back(join_list(rec.classical_sources_raw, mapping.delimiter));
      else row.push_back(*scalar_slot(rec, key));
    }
    for (auto type : other_types) {
      std::vector<std::string> items;
      for (const auto& [t, s] : rec.other_sources_raw)
        if (t == type) items.push_back(s);
      row.push_back(join_list(items, mapping.delimiter));
    }
    rows.push_back(std::move(row));
  }
  return write_csv(rows);
}

std::string assign_item_id(const RawRecord& record, std::size_t row_index) {
  if (record.item_id && !record.item_id->empty()) return *record.item_id;
  return std::to_string(row_index);
}

}  // namespace mythforge::ingest
