#pragma once

// Static JSON bundles for the catalog and storytelling views, derived from a
// built dataset.

#include <json.hpp>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mythforge/graph.hpp"
#include "mythforge/rdf.hpp"

namespace mythforge::exporter {

inline constexpr int kSchemaVersion = 1;

struct AgentRef {
  std::string label;
  std::optional<std::string> viaf;  // VIAF id
};

struct Collocation {
  std::string institution;
  std::optional<std::string> city;
  std::optional<std::string> country;
  std::string label;  // "Institution, City (Country)"
};

struct Period {
  std::optional<std::string> epoch;
  std::optional<std::string> century;
  std::optional<std::string> years;
  std::string label;  // "Epoch, Century (years)"
};

struct CitationEntry {
  std::string label;
  std::string perseus_url;
};

struct ReferenceEntry {
  std::string label;
  std::string type;
  std::optional<AgentRef> author;
  std::optional<std::string> related_work;
};

struct CatalogCard {
  std::string item_id;
  struct {
    std::string title;
    std::optional<AgentRef> author;
    std::vector<std::string> keywords;
    std::vector<std::string> typology;
    std::optional<Collocation> collocation;
    Period period;
    std::string description;
    std::string image;
    std::string see_also;
  } factual;
  struct {
    std::vector<std::string> categories;
    std::vector<CitationEntry> canonical_citations;
    std::vector<ReferenceEntry> general_references;
  } assertion;
  struct {
    std::string interpretation_type;
    std::string interpretation_criterion;
    std::string performer;
    std::optional<std::string> generated_at;
  } provenance;
};

struct FacetValue {
  std::string value_label;
  std::string value_id;
  std::size_t count = 0;
  std::vector<std::string> item_ids;
};

struct FacetIndex {
  // Model level -> facet names, in display order.
  std::vector<std::pair<std::string, std::vector<std::string>>> levels;
  std::map<std::string, std::vector<FacetValue>> facets;
};

struct Catalog {
  std::vector<CatalogCard> cards;
  FacetIndex facets;
};

Catalog export_catalog(const rdf::Dataset& dataset, const graph::Scheme& scheme);

// Selected value ids per facet name. Values of one facet are alternatives;
// distinct facets must all match.
using FilterState = std::map<std::string, std::set<std::string>>;

// Item ids passing `state`, in card order. Unknown facets or values match
// nothing; an empty selection set for a facet is ignored.
std::vector<std::string> filter_items(const Catalog& catalog, const FilterState& state);

struct TimelineEntry {
  std::string item_id, title, begin, end, image, author;
};
struct MapPoint {
  std::string item_id;
  double lat = 0, lon = 0;
  std::string institution, title;
};
struct Count {
  std::string label;
  std::string id;
  std::size_t count = 0;
};
struct HeatCell {
  int book = 0;
  int bucket_start = 0, bucket_end = 0;
  std::size_t count = 0;
  std::vector<std::string> themes;
};
struct NetworkNode {
  std::string id, label, kind;
};
struct NetworkEdge {
  std::string source, target;
  std::size_t weight = 0;
};
struct Network {
  std::vector<NetworkNode> nodes;
  std::vector<NetworkEdge> edges;
};

struct Omission {
  std::string item_id;
  std::string reason;
};

struct StorytellingBundle {
  std::string work_slug;
  std::string work_label;
  std::vector<TimelineEntry> timeline;
  std::vector<MapPoint> map_points;
  std::vector<Count> themes, keywords, top10_themes, top10_keywords;
  std::vector<HeatCell> heatmap;
  Network work_network, artist_network;
  struct {
    std::vector<Omission> timeline, map, heatmap;
  } omissions;
};

struct StorytellingOptions {
  int bucket_width = 50;
};

// Throws UnknownWork when `work_slug` names no work in the dataset.
StorytellingBundle export_storytelling(const rdf::Dataset& dataset, const graph::Scheme& scheme,
                                       const std::string& work_slug,
                                       const StorytellingOptions& options = {});

// Items per theme over the whole dataset (distinct expression/theme pairs).
std::vector<Count> theme_counts(const rdf::Dataset& dataset, const graph::Scheme& scheme);

// Count-descending, ties by label then id; at most `n`.
std::vector<Count> top_n(std::vector<Count> counts, std::size_t n);

// Buckets [start, end] of width `width`, aligned to 1, overlapping lines a..b.
std::vector<std::pair<int, int>> buckets_for(int a, int b, int width);

nlohmann::json to_json(const CatalogCard& card);
nlohmann::json catalog_json(const Catalog& catalog);
nlohmann::json facets_json(const FacetIndex& facets);
nlohmann::json to_json(const StorytellingBundle& bundle);

}  // namespace mythforge::exporter
