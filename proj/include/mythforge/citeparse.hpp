#pragma once

// Canonical classical citations ("Eneide, IV, 337-396") and general
// "Author, Work" references.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mythforge/ingest.hpp"
#include "mythforge/roman.hpp"

namespace mythforge::citeparse {

struct WorkEntry {
  std::string cts_base_urn;  // urn:cts:<namespace>:<textgroup>.<work>.<version>
  std::string author_label;
  std::string author_slug;
  std::string work_slug;
  std::string work_label;
  std::optional<std::string> viaf_id;
};

bool is_cts_base_urn(std::string_view urn);

// Work names are matched case-insensitively after trimming and whitespace
// collapsing.
class WorkRegistry {
 public:
  // Throws CitationError when the URN is malformed or a name is registered
  // twice.
  void add(const std::vector<std::string>& names, WorkEntry entry);
  const WorkEntry* find(std::string_view name) const;
  // Lookup by work slug, for resolving parsed dataset content.
  const WorkEntry* find_by_slug(std::string_view slug) const;
  std::size_t size() const noexcept { return entries_.size(); }

  // JSON array of {names: [...], cts_base_urn, author_label, author_slug,
  // work_slug, work_label?, viaf_id?}.
  static WorkRegistry load(const std::filesystem::path& path);
  static WorkRegistry from_json_text(std::string_view text);

 private:
  std::vector<WorkEntry> entries_;
  std::map<std::string, std::size_t> by_name_;
};

struct CanonicalCitationRef {
  std::string raw_label;
  std::string work_key;  // slug of the registry work
  std::optional<int> book;
  std::optional<int> line_start;
  std::optional<int> line_end;
  std::string urn;
  std::string perseus_url;
  std::string content_slug;

  friend bool operator==(const CanonicalCitationRef&,
                         const CanonicalCitationRef&) = default;
};

struct GeneralReference {
  std::string raw;
  std::string author_raw;
  std::string work_title;
  ingest::SourceType type_tag = ingest::SourceType::FonteClassica;
};

// Raw string -> (author, title) replacements for references that first-comma
// splitting gets wrong.
using ReferenceOverrides = std::map<std::string, std::pair<std::string, std::string>>;
ReferenceOverrides load_overrides(const std::filesystem::path& path);
ReferenceOverrides overrides_from_json_text(std::string_view text);

// Passage component of the URN: `4.337-4.396`, `4.337`, `4`, or empty.
std::string passage(std::optional<int> book, std::optional<int> line_start,
                    std::optional<int> line_end);
// `IV-337-396`, `IV-337`, `IV`; lines without book render as `337-396`.
std::string content_slug(std::optional<int> book, std::optional<int> line_start,
                         std::optional<int> line_end);

// Throws UnknownWork when the work is not registered and CitationError for
// malformed ranges.
CanonicalCitationRef parse_canonical_citation(std::string_view raw,
                                              const WorkRegistry& registry);

// Canonical citation when the work resolves; otherwise the string is
// downgraded to a FonteClassica general reference.
using ParsedCitation = std::variant<CanonicalCitationRef, GeneralReference>;
ParsedCitation parse_classical_source(std::string_view raw,
                                      const WorkRegistry& registry,
                                      const ReferenceOverrides& overrides);

GeneralReference parse_general_reference(std::string_view raw,
                                         ingest::SourceType type_tag,
                                         const ReferenceOverrides& overrides = {});

// `work_label, <Roman book>, <start>-<end>` using the given work name.
std::string render_citation(std::string_view work_name,
                            const CanonicalCitationRef& ref);

struct PassageParts {
  std::optional<int> book;
  std::optional<int> line_start;
  std::optional<int> line_end;
};
// Inverse of `passage()` applied to the part of a URN after the base.
std::optional<PassageParts> parse_passage(std::string_view passage);
// Splits a full citation URN into (base, passage).
std::pair<std::string, std::string> split_urn(std::string_view urn);

}  // namespace mythforge::citeparse
