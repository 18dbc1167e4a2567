#include "mythforge/citeparse.hpp"

#include <json.hpp>
#include <regex>

#include "mythforge/error.hpp"
#include "mythforge/text.hpp"
#include "mythforge/vocab.hpp"

namespace mythforge::citeparse {

using nlohmann::json;

namespace {

std::string registry_key(std::string_view name) {
  return text::to_lower_ascii(text::collapse_spaces(name));
}

struct Range {
  int start;
  std::optional<int> end;
};

// `N`, `N-M`, optionally prefixed by `v.` / `vv.`.
std::optional<Range> parse_range(std::string_view part) {
  static const std::regex re(R"(^(?:vv?\.\s*)?(\d+)(?:\s*(?:-|\xE2\x80\x93)\s*(\d+))?$)");
  std::string s(text::trim(part));
  std::smatch m;
  if (!std::regex_match(s, m, re)) return std::nullopt;
  Range r{std::stoi(m[1].str()), std::nullopt};
  if (m[2].matched) r.end = std::stoi(m[2].str());
  return r;
}

}  // namespace

bool is_cts_base_urn(std::string_view urn) {
  static const std::regex re(R"(^urn:cts:[A-Za-z0-9]+:[A-Za-z0-9]+\.[A-Za-z0-9]+\.[A-Za-z0-9-]+$)");
  return std::regex_match(urn.begin(), urn.end(), re);
}

void WorkRegistry::add(const std::vector<std::string>& names, WorkEntry entry) {
  if (!is_cts_base_urn(entry.cts_base_urn))
    throw CitationError("malformed CTS base URN '" + entry.cts_base_urn + "'");
  if (entry.work_label.empty()) entry.work_label = entry.author_label;
  std::size_t index = entries_.size();
  for (const auto& n : names) {
    auto key = registry_key(n);
    if (by_name_.contains(key))
      throw CitationError("work name registered twice: '" + n + "'");
    by_name_[key] = index;
  }
  entries_.push_back(std::move(entry));
}

const WorkEntry* WorkRegistry::find(std::string_view name) const {
  auto it = by_name_.find(registry_key(name));
  return it == by_name_.end() ? nullptr : &entries_[it->second];
}

const WorkEntry* WorkRegistry::find_by_slug(std::string_view slug) const {
  for (const auto& e : entries_)
    if (e.work_slug == slug) return &e;
  return nullptr;
}

WorkRegistry WorkRegistry::from_json_text(std::string_view text) {
  WorkRegistry reg;
  json j = json::parse(text);
  if (!j.is_array()) throw CitationError("work registry must be a JSON array");
  for (const auto& e : j) {
    WorkEntry w;
    w.cts_base_urn = e.at("cts_base_urn").get<std::string>();
    w.author_label = e.at("author_label").get<std::string>();
    w.author_slug = e.at("author_slug").get<std::string>();
    w.work_slug = e.at("work_slug").get<std::string>();
    w.work_label = e.value("work_label", std::string());
    if (e.contains("viaf_id") && e["viaf_id"].is_string())
      w.viaf_id = e["viaf_id"].get<std::string>();
    reg.add(e.at("names").get<std::vector<std::string>>(), std::move(w));
  }
  return reg;
}

WorkRegistry WorkRegistry::load(const std::filesystem::path& path) {
  return from_json_text(text::read_file(path.string()));
}

ReferenceOverrides overrides_from_json_text(std::string_view text) {
  ReferenceOverrides out;
  json j = json::parse(text);
  for (const auto& [raw, value] : j.items())
    out[raw] = {value.at("author").get<std::string>(),
                value.at("title").get<std::string>()};
  return out;
}

ReferenceOverrides load_overrides(const std::filesystem::path& path) {
  return overrides_from_json_text(text::read_file(path.string()));
}

std::string passage(std::optional<int> book, std::optional<int> line_start,
                    std::optional<int> line_end) {
  std::string prefix = book ? std::to_string(*book) : "";
  if (!line_start) return prefix;
  auto line = [&](int n) {
    return book ? prefix + "." + std::to_string(n) : std::to_string(n);
  };
  if (line_end && *line_end != *line_start)
    return line(*line_start) + "-" + line(*line_end);
  return line(*line_start);
}

std::string content_slug(std::optional<int> book, std::optional<int> line_start,
                         std::optional<int> line_end) {
  std::vector<std::string> parts;
  if (book) parts.push_back(int_to_roman(*book));
  if (line_start) parts.push_back(std::to_string(*line_start));
  if (line_start && line_end && *line_end != *line_start)
    parts.push_back(std::to_string(*line_end));
  return text::join(parts, "-");
}

CanonicalCitationRef parse_canonical_citation(std::string_view raw,
                                              const WorkRegistry& registry) {
  std::string s = text::collapse_spaces(raw);
  if (s.empty()) throw CitationError("empty citation");
  auto parts = text::split(s, ",");
  for (auto& p : parts) p = std::string(text::trim(p));

  // The work name runs up to the first component that is a book numeral or a
  // line range.
  std::size_t k = 1;
  while (k < parts.size() && !is_roman(parts[k]) && !parse_range(parts[k])) ++k;
  std::vector<std::string> name_parts(parts.begin(), parts.begin() + k);
  std::string work_name = text::join(name_parts, ", ");

  CanonicalCitationRef ref;
  ref.raw_label = s;
  if (k < parts.size()) {
    std::optional<Range> range;
    if (is_roman(parts[k])) {
      ref.book = roman_to_int(parts[k]);
      if (k + 1 < parts.size()) {
        range = parse_range(parts[k + 1]);
        if (!range) throw CitationError("malformed line range in '" + s + "'");
        if (k + 2 < parts.size()) throw CitationError("trailing components in '" + s + "'");
      }
    } else {
      range = parse_range(parts[k]);
      if (k + 1 < parts.size()) throw CitationError("trailing components in '" + s + "'");
    }
    if (range) {
      if (range->start < 1 || (range->end && *range->end < range->start))
        throw CitationError("invalid line range in '" + s + "'");
      ref.line_start = range->start;
      ref.line_end = range->end.value_or(range->start);
    }
  }

  const WorkEntry* work = registry.find(work_name);
  if (!work) throw UnknownWork("work not in registry: '" + work_name + "' (" + s + ")");
  ref.work_key = work->work_slug;
  auto pas = passage(ref.book, ref.line_start, ref.line_end);
  ref.urn = pas.empty() ? work->cts_base_urn : work->cts_base_urn + ":" + pas;
  ref.perseus_url = std::string(vocab::kPerseusCitationBase) + ref.urn;
  ref.content_slug = content_slug(ref.book, ref.line_start, ref.line_end);
  return ref;
}

ParsedCitation parse_classical_source(std::string_view raw,
                                      const WorkRegistry& registry,
                                      const ReferenceOverrides& overrides) {
  try {
    return parse_canonical_citation(raw, registry);
  } catch (const UnknownWork&) {
    return parse_general_reference(raw, ingest::SourceType::FonteClassica, overrides);
  }
}

GeneralReference parse_general_reference(std::string_view raw,
                                         ingest::SourceType type_tag,
                                         const ReferenceOverrides& overrides) {
  GeneralReference ref;
  ref.raw = text::collapse_spaces(raw);
  ref.type_tag = type_tag;
  if (auto it = overrides.find(ref.raw); it != overrides.end()) {
    ref.author_raw = it->second.first;
    ref.work_title = it->second.second;
    return ref;
  }
  auto comma = ref.raw.find(',');
  if (comma == std::string::npos) {
    ref.work_title = ref.raw;
    return ref;
  }
  ref.author_raw = std::string(text::trim(std::string_view(ref.raw).substr(0, comma)));
  ref.work_title = std::string(text::trim(std::string_view(ref.raw).substr(comma + 1)));
  return ref;
}

std::string render_citation(std::string_view work_name,
                            const CanonicalCitationRef& ref) {
  std::string out(work_name);
  if (ref.book) out += ", " + int_to_roman(*ref.book);
  if (ref.line_start) {
    out += ", " + std::to_string(*ref.line_start);
    if (ref.line_end && *ref.line_end != *ref.line_start)
      out += "-" + std::to_string(*ref.line_end);
  }
  return out;
}

std::optional<PassageParts> parse_passage(std::string_view pas) {
  static const std::regex book_only(R"(^(\d+)$)");
  static const std::regex book_line(R"(^(\d+)\.(\d+)$)");
  static const std::regex book_range(R"(^(\d+)\.(\d+)-(\d+)\.(\d+)$)");
  static const std::regex line_range(R"(^(\d+)-(\d+)$)");
  std::string s(pas);
  std::smatch m;
  PassageParts p;
  if (s.empty()) return p;
  if (std::regex_match(s, m, book_only)) {
    p.book = std::stoi(m[1].str());
  } else if (std::regex_match(s, m, book_line)) {
    p.book = std::stoi(m[1].str());
    p.line_start = p.line_end = std::stoi(m[2].str());
  } else if (std::regex_match(s, m, book_range)) {
    if (m[1].str() != m[3].str()) return std::nullopt;
    p.book = std::stoi(m[1].str());
    p.line_start = std::stoi(m[2].str());
    p.line_end = std::stoi(m[4].str());
  } else if (std::regex_match(s, m, line_range)) {
    p.line_start = std::stoi(m[1].str());
    p.line_end = std::stoi(m[2].str());
  } else {
    return std::nullopt;
  }
  return p;
}

std::pair<std::string, std::string> split_urn(std::string_view urn) {
  // urn:cts:<ns>:<work>[:<passage>]
  std::size_t colons = 0;
  for (std::size_t i = 0; i < urn.size(); ++i) {
    if (urn[i] == ':' && ++colons == 4)
      return {std::string(urn.substr(0, i)), std::string(urn.substr(i + 1))};
  }
  return {std::string(urn), ""};
}

}  // namespace mythforge::citeparse
