#pragma once

// Dataset assembly: the shared factual-data graph plus one nanopublication
// (head / assertion / provenance / publication info) per interpreted object.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mythforge/citeparse.hpp"
#include "mythforge/ingest.hpp"
#include "mythforge/normalize.hpp"
#include "mythforge/rdf.hpp"
#include "mythforge/reconcile.hpp"

namespace mythforge::graph {

enum class ActNamespace { prov, hico };

// IRI layout of the dataset, all relative to one base.
class Scheme {
 public:
  explicit Scheme(rdf::Iri base) : base_(std::move(base)) {}

  const rdf::Iri& base() const noexcept { return base_; }
  rdf::Iri factual_data() const { return mint({"factual_data"}); }
  rdf::Iri head(const std::string& id) const { return mint({"head" + id}); }
  rdf::Iri nanopub(const std::string& id) const { return mint({"np-" + id}); }
  rdf::Iri assertion(const std::string& id) const { return mint({"assertion" + id}); }
  rdf::Iri provenance(const std::string& id) const { return mint({"provenance" + id}); }
  rdf::Iri pubinfo(const std::string& id) const { return mint({"pubInfo" + id}); }
  rdf::Iri int_act(const std::string& id) const { return mint({"int-act", id}); }
  rdf::Iri item(const std::string& id) const { return mint({"item", id}); }
  rdf::Iri expression(const std::string& id) const { return mint({"item", id + "-expression"}); }
  rdf::Iri type(const std::string& slug) const { return mint({"type", slug}); }
  rdf::Iri theme(const std::string& slug) const { return mint({"categ", slug}); }
  rdf::Iri person(const std::string& slug) const { return mint({"person", slug}); }
  rdf::Iri place(const std::string& slug) const { return mint({"place", slug}); }
  rdf::Iri time(const std::string& slug) const { return mint({"time", slug}); }
  rdf::Iri work(const std::string& slug) const { return mint({"work", slug}); }
  rdf::Iri citation(int number) const { return mint({"cit", std::to_string(number)}); }
  rdf::Iri content(const std::string& slug) const { return mint({"str", slug}); }
  rdf::Iri period(const std::string& slug) const { return mint({"period", slug}); }
  rdf::Iri vocabulary(const std::string& slug) const { return mint({slug}); }

  // Local id after `prefix` (e.g. "item/") when `iri` lives there.
  std::optional<std::string> local_id(const rdf::Iri& iri, std::string_view prefix) const;

 private:
  rdf::Iri mint(std::initializer_list<std::string> segments) const {
    return rdf::mint_iri(base_, segments);
  }
  rdf::Iri base_;
};

// Slug of the source-category type node (`fonteClassica`, ...).
std::string category_slug(ingest::SourceType t);
std::string category_label(ingest::SourceType t);
std::optional<ingest::SourceType> category_from_slug(std::string_view slug);

struct Label {
  std::string slug;
  std::string label;
};

enum class PlaceType { collocazione, citta, nazione };

struct PlaceNode {
  reconcile::Entity entity;
  PlaceType type = PlaceType::collocazione;
  std::vector<std::string> within;  // slugs of containing places
};

struct WorkNode {
  reconcile::Entity entity;
  ingest::SourceType category = ingest::SourceType::FonteClassica;
  std::optional<std::string> author_slug;
};

struct CitationNode {
  int number = 0;
  citeparse::CanonicalCitationRef ref;
};

struct TimeSpanNode {
  std::string slug;
  normalize::TimeSpan span;
};

// Every entity referenced by the objects, keyed by slug. The first
// registration of a slug wins.
struct EntityIndex {
  std::map<std::string, std::string> types;  // slug -> label
  std::map<std::string, std::string> themes;
  std::map<std::string, reconcile::Entity> persons;
  std::map<std::string, PlaceNode> places;
  std::map<std::string, WorkNode> works;
  std::map<std::string, TimeSpanNode> timespans;
  std::map<std::string, std::string> periods;
  std::map<int, CitationNode> citations;
  std::map<std::string, std::string> vocabulary;  // interpretation type/criterion
};

struct ObjectRecord {
  std::string item_id;
  std::string title;
  std::string description;
  std::string image_url;
  std::string see_also;
  std::vector<std::string> keywords;
  std::vector<std::string> typologies;  // type slugs
  std::optional<std::string> location;  // place slug
  std::optional<std::string> artwork_author;
  std::vector<std::string> timespans;   // time-span slugs
  std::optional<std::string> period;    // period slug
};

struct Cited {
  enum class Kind { citation, work } kind = Kind::work;
  std::string work_slug;
  int citation_number = 0;

  friend bool operator==(const Cited&, const Cited&) = default;
};

struct InterpretationRecord {
  std::string item_id;
  std::optional<normalize::PersonRef> interpreter;
  std::optional<std::string> generated_at;  // xsd:dateTime lexical
  std::string interpretation_type;          // vocabulary slug
  std::string interpretation_criterion;     // vocabulary slug
  std::optional<normalize::ThemeRef> theme;
  std::vector<Cited> cited;
};

struct Nanopublication {
  rdf::Iri head_graph;
  rdf::Iri assertion_graph;
  rdf::Iri provenance_graph;
  rdf::Iri pubinfo_graph;
  std::string item_id;
};

struct BuildOptions {
  rdf::Iri publisher{"https://purl.org/vpq/mythlod/data/person/dharc"};
  std::string build_time;  // xsd:dateTime lexical
  bool skip_empty_literals = false;
  ActNamespace act_namespace = ActNamespace::prov;
};

// Throws IntegrityError when an object references an entity missing from
// the index.
std::vector<rdf::Quad> build_factual_graph(const std::vector<ObjectRecord>& records,
                                           const EntityIndex& entities,
                                           const Scheme& scheme,
                                           const BuildOptions& options);

// Throws IntegrityError when the interpreter or theme is missing.
std::pair<Nanopublication, std::vector<rdf::Quad>> build_nanopub(
    const InterpretationRecord& interp, const Scheme& scheme, const BuildOptions& options);

struct IntegrityReport {
  std::vector<std::string> partition;    // quads outside the four-level layout
  std::vector<std::string> head_arity;   // malformed head graphs
  std::vector<std::string> dangling;     // IRIs without a factual type/label
  std::size_t nanopublications = 0;

  bool ok() const { return partition.empty() && head_arity.empty() && dangling.empty(); }
};

IntegrityReport check_integrity(const rdf::Dataset& dataset, const Scheme& scheme);
// Throws IntegrityError listing every offender.
void require_integrity(const rdf::Dataset& dataset, const Scheme& scheme);

// Nanopublications found in a dataset through their head graphs.
std::vector<Nanopublication> find_nanopublications(const rdf::Dataset& dataset,
                                                   const Scheme& scheme);

}  // namespace mythforge::graph
