#include "mythforge/pipeline.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <set>

#include "mythforge/error.hpp"
#include "mythforge/normalize.hpp"
#include "mythforge/vocab.hpp"

namespace mythforge::pipeline {

using reconcile::EntityKind;
namespace norm = mythforge::normalize;

Resources load_resources(const config::PipelineConfig& cfg) {
  Resources r;
  r.mapping = ingest::ColumnMapping::load(cfg.column_mapping);
  r.registry = citeparse::WorkRegistry::load(cfg.work_registry);
  r.aliases = reconcile::AliasTable::load(cfg.alias_table);
  r.fixture = reconcile::AuthorityFixture::load(cfg.authority_fixture);
  if (cfg.reference_overrides) r.overrides = citeparse::load_overrides(*cfg.reference_overrides);
  return r;
}

std::unique_ptr<reconcile::Reconciler> make_reconciler(const config::PipelineConfig& cfg,
                                                       const Resources& res) {
  auto rec = std::make_unique<reconcile::Reconciler>(res.aliases, res.fixture);
  if (cfg.mode == reconcile::Mode::online) {
    if (!cfg.endpoints.recon_url.empty())
      rec->add_client(reconcile::make_recon_client(cfg.endpoints.recon_url, cfg.endpoints.timeout));
    if (!cfg.endpoints.viaf_url.empty())
      rec->add_client(reconcile::make_viaf_client(cfg.endpoints.viaf_url, cfg.endpoints.timeout));
    rec->set_limits(cfg.endpoints.max_concurrent, cfg.endpoints.min_interval);
  }
  return rec;
}

graph::Scheme scheme_for(const config::PipelineConfig& cfg) { return graph::Scheme(cfg.base_iri); }

std::map<std::string, std::size_t> BuildReport::errors_by_class() const {
  std::map<std::string, std::size_t> out;
  for (const auto& e : errors) ++out[e.kind];
  return out;
}

nlohmann::json BuildReport::to_json() const {
  nlohmann::json details = nlohmann::json::array();
  for (const auto& e : errors)
    details.push_back({{"row", e.row}, {"item_id", e.item_id}, {"kind", e.kind}, {"message", e.message}});
  return {{"schema", 1},
          {"records", records},
          {"quads", quads},
          {"nanopubs", nanopubs},
          {"citations", citations},
          {"review_candidates", review_candidates},
          {"network_failures", network_failures},
          {"errors", errors_by_class()},
          {"error_details", details}};
}

namespace {

class Builder {
 public:
  Builder(const config::PipelineConfig& cfg, const Resources& res, reconcile::Reconciler& rec)
      : cfg_(cfg), res_(res), rec_(rec), scheme_(cfg.base_iri), next_citation_(cfg.citation_id_start) {
    entities_.vocabulary[cfg.interpretation_type.slug] = cfg.interpretation_type.label;
    entities_.vocabulary[cfg.interpretation_criterion.slug] = cfg.interpretation_criterion.label;
  }

  void add(const ingest::RawRecord& raw, std::size_t row) {
    row_ = row;
    item_ = ingest::assign_item_id(raw, row);
    try {
      scheme_.item(item_);
    } catch (const Error& e) {
      fail(e);
      return;
    }

    graph::ObjectRecord obj;
    obj.item_id = item_;
    obj.title = raw.title;
    obj.description = raw.description;
    obj.image_url = raw.image_url;
    obj.see_also = raw.see_also;
    guard([&] {
      for (const auto& k : norm::split_values(norm::strip_serialization_noise(raw.keywords_raw)))
        obj.keywords.push_back(k);
    });
    guard([&] {
      for (const auto& t : norm::split_values(norm::strip_serialization_noise(raw.typology_raw))) {
        auto slug = norm::slugify(t);
        entities_.types.emplace(slug, t);
        obj.typologies.push_back(slug);
      }
    });
    if (!raw.artwork_author_raw.empty())
      guard([&] {
        obj.artwork_author = person(raw.artwork_author_raw, cfg_.artwork_author_order, true);
      });
    if (!raw.century_raw.empty())
      guard([&] {
        auto [epoch, century] = norm::split_epoch(raw.century_raw);
        obj.timespans.push_back(timespan(century));
        if (epoch) {
          auto slug = norm::slugify(*epoch);
          entities_.periods.emplace(slug, *epoch);
          obj.period = slug;
        }
      });
    if (!raw.year_raw.empty()) guard([&] { obj.timespans.push_back(timespan(raw.year_raw)); });
    if (!raw.location_raw.empty()) guard([&] { obj.location = place(raw.location_raw); });

    graph::InterpretationRecord interp;
    interp.item_id = item_;
    interp.interpretation_type = cfg_.interpretation_type.slug;
    interp.interpretation_criterion = cfg_.interpretation_criterion.slug;
    if (!raw.interpreter_raw.empty())
      guard([&] {
        auto p = norm::normalize_person(raw.interpreter_raw, cfg_.interpreter_order);
        register_person(p.slug, p.display_label, {});
        interp.interpreter = p;
      });
    if (!raw.interpretation_date_raw.empty())
      guard([&] { interp.generated_at = norm::parse_interpretation_datetime(raw.interpretation_date_raw); });
    if (!raw.theme_raw.empty())
      guard([&] { interp.theme = norm::split_theme(norm::strip_serialization_noise(raw.theme_raw)); });

    for (const auto& src : raw.classical_sources_raw) guard([&] { cite_classical(src, interp); });
    for (const auto& [type, src] : raw.other_sources_raw) guard([&] { cite_general(src, type, interp); });

    objects_.push_back(std::move(obj));
    if (!interp.theme) {
      errors_.push_back({row_, item_, "EmptyField", "no mythological theme; object has no interpretation"});
      return;
    }
    entities_.themes.emplace(interp.theme->slug, interp.theme->label);
    interps_.push_back(std::move(interp));
  }

  BuildResult finish() {
    BuildResult out;
    graph::BuildOptions opts;
    opts.publisher = scheme_.person(cfg_.publisher_slug);
    opts.build_time = cfg_.build_time;
    opts.skip_empty_literals = cfg_.skip_empty_literals;
    opts.act_namespace = cfg_.act_namespace;
    // Every interpretation must be attributable before anything is emitted.
    for (const auto& i : interps_)
      if (!i.interpreter)
        throw IntegrityError("interpretation has no interpreter", {scheme_.item(i.item_id).str()});
    register_person(cfg_.publisher_slug, cfg_.publisher_label, {});

    out.dataset = rdf::Dataset(rdf::default_prefixes(cfg_.base_iri));
    out.dataset.insert_all(graph::build_factual_graph(objects_, entities_, scheme_, opts));
    for (const auto& i : interps_) {
      auto [np, quads] = graph::build_nanopub(i, scheme_, opts);
      out.dataset.insert_all(quads);
      out.nanopubs.push_back(std::move(np));
    }
    graph::require_integrity(out.dataset, scheme_);

    out.review = std::move(review_);
    out.report.records = rows_seen_;
    out.report.quads = out.dataset.size();
    out.report.nanopubs = out.nanopubs.size();
    out.report.citations = entities_.citations.size();
    out.report.review_candidates = out.review.size();
    out.report.network_failures = rec_.network_failures();
    out.report.errors = std::move(errors_);
    return out;
  }

  void count_row() { ++rows_seen_; }

 private:
  template <typename F>
  void guard(F&& f) {
    try {
      f();
    } catch (const IntegrityError&) {
      throw;
    } catch (const Error& e) {
      fail(e);
    }
  }

  void fail(const Error& e) {
    spdlog::warn("row {} (item {}): {}", row_, item_, e.what());
    errors_.push_back({row_, item_, e.kind(), e.what()});
  }

  std::vector<reconcile::AuthorityLink> authority(EntityKind kind, const std::string& raw,
                                                  const std::string& key) {
    auto res = rec_.resolve(kind, raw, key, cfg_.mode);
    review_.insert(review_.end(), res.review.begin(), res.review.end());
    return res.accepted;
  }

  void register_person(const std::string& slug, const std::string& label,
                       const std::vector<reconcile::AuthorityLink>& links) {
    if (entities_.persons.contains(slug)) return;
    reconcile::Entity e{EntityKind::person, slug, label, {}, std::nullopt, std::nullopt};
    entities_.persons.emplace(slug, reconcile::apply_links(std::move(e), links));
  }

  std::string person(const std::string& raw, norm::NameOrder order, bool reconcile) {
    auto p = norm::normalize_person(raw, order);
    std::string slug = rec_.canonical_slug(raw, p.slug);
    if (!entities_.persons.contains(slug))
      register_person(slug, p.display_label,
                      reconcile ? authority(EntityKind::person, raw, slug) : std::vector<reconcile::AuthorityLink>{});
    return slug;
  }

  std::string timespan(const std::string& raw) {
    auto span = norm::parse_timespan(raw);
    auto slug = norm::slugify(span.label);
    entities_.timespans.emplace(slug, graph::TimeSpanNode{slug, span});
    return slug;
  }

  std::string place_node(const std::string& label, graph::PlaceType type) {
    std::string slug = rec_.canonical_slug(label, norm::slugify(label));
    if (!entities_.places.contains(slug)) {
      reconcile::Entity e{EntityKind::place, slug, label, {}, std::nullopt, std::nullopt};
      graph::PlaceNode node{reconcile::apply_links(std::move(e), authority(EntityKind::place, label, slug)),
                            type, {}};
      entities_.places.emplace(slug, std::move(node));
    }
    return slug;
  }

  std::string place(const std::string& raw) {
    auto ref = norm::split_location(raw);
    std::string inst = place_node(ref.institution_label, graph::PlaceType::collocazione);
    auto& node = entities_.places.at(inst);
    if (ref.coordinates && !node.entity.coordinates) node.entity.coordinates = ref.coordinates;
    std::optional<std::string> country_label = ref.country_label;
    if (!country_label) country_label = node.entity.country;
    std::optional<std::string> city, country;
    if (ref.city_label) {
      city = place_node(*ref.city_label, graph::PlaceType::citta);
      if (!country_label) country_label = entities_.places.at(*city).entity.country;
    }
    if (country_label) country = place_node(*country_label, graph::PlaceType::nazione);
    auto within = [&](const std::string& at, const std::string& parent) {
      auto& w = entities_.places.at(at).within;
      if (at != parent && std::find(w.begin(), w.end(), parent) == w.end()) w.push_back(parent);
    };
    if (city) within(inst, *city);
    if (country) within(inst, *country);
    if (city && country) within(*city, *country);
    return inst;
  }

  void add_cited(graph::InterpretationRecord& interp, graph::Cited c) {
    if (std::find(interp.cited.begin(), interp.cited.end(), c) == interp.cited.end())
      interp.cited.push_back(std::move(c));
  }

  void registry_work(const citeparse::WorkEntry& w) {
    if (entities_.works.contains(w.work_slug)) return;
    if (!entities_.persons.contains(w.author_slug)) register_person(w.author_slug, w.author_label, {});
    std::vector<reconcile::AuthorityLink> links;
    if (w.viaf_id) links.push_back({reconcile::Source::VIAF, *w.viaf_id, w.work_label, std::nullopt, std::nullopt, 1.0});
    reconcile::Entity e{EntityKind::work, w.work_slug, w.work_label, {}, std::nullopt, std::nullopt};
    e = reconcile::apply_links(std::move(e), links);
    e.label = w.work_label;
    entities_.works.emplace(w.work_slug,
                            graph::WorkNode{std::move(e), ingest::SourceType::FonteClassica, w.author_slug});
  }

  void cite_classical(const std::string& raw, graph::InterpretationRecord& interp) {
    auto parsed = citeparse::parse_classical_source(raw, res_.registry, res_.overrides);
    if (auto* ref = std::get_if<citeparse::CanonicalCitationRef>(&parsed)) {
      const auto* work = res_.registry.find_by_slug(ref->work_key);
      registry_work(*work);
      int n;
      if (auto it = citation_ids_.find(ref->urn); it != citation_ids_.end()) {
        n = it->second;
      } else {
        n = next_citation_++;
        citation_ids_.emplace(ref->urn, n);
        entities_.citations.emplace(n, graph::CitationNode{n, *ref});
      }
      add_cited(interp, {graph::Cited::Kind::citation, ref->work_key, n});
    } else {
      cite_general_ref(std::get<citeparse::GeneralReference>(parsed), interp);
    }
  }

  void cite_general(const std::string& raw, ingest::SourceType type, graph::InterpretationRecord& interp) {
    cite_general_ref(citeparse::parse_general_reference(raw, type, res_.overrides), interp);
  }

  void cite_general_ref(const citeparse::GeneralReference& ref, graph::InterpretationRecord& interp) {
    std::optional<norm::PersonRef> author;
    if (!ref.author_raw.empty()) author = norm::normalize_person(ref.author_raw, cfg_.source_author_order);
    std::string title_slug = norm::slugify(ref.work_title);
    std::string fallback = author ? author->slug + "-" + title_slug : title_slug;
    std::string slug = rec_.canonical_slug(ref.raw, fallback);
    if (!entities_.works.contains(slug)) {
      std::optional<std::string> author_slug;
      if (author) author_slug = person(ref.author_raw, cfg_.source_author_order, true);
      std::string label = author ? author->display_label + ", " + ref.work_title : ref.work_title;
      reconcile::Entity e{EntityKind::work, slug, label, {}, std::nullopt, std::nullopt};
      e = reconcile::apply_links(std::move(e), authority(EntityKind::work, ref.raw, slug));
      entities_.works.emplace(slug, graph::WorkNode{std::move(e), ref.type_tag, author_slug});
    }
    add_cited(interp, {graph::Cited::Kind::work, slug, 0});
  }

  const config::PipelineConfig& cfg_;
  const Resources& res_;
  reconcile::Reconciler& rec_;
  graph::Scheme scheme_;
  graph::EntityIndex entities_;
  std::vector<graph::ObjectRecord> objects_;
  std::vector<graph::InterpretationRecord> interps_;
  std::vector<reconcile::ReviewRow> review_;
  std::vector<RecordError> errors_;
  std::map<std::string, int> citation_ids_;
  int next_citation_;
  std::size_t row_ = 0;
  std::size_t rows_seen_ = 0;
  std::string item_;
};

}  // namespace

BuildResult build(const std::vector<ingest::RawRecord>& records, const config::PipelineConfig& cfg,
                  const Resources& res, reconcile::Reconciler& reconciler) {
  if (cfg.mode == reconcile::Mode::online) {
    std::vector<std::pair<EntityKind, std::string>> queries;
    for (const auto& r : records) {
      if (!r.artwork_author_raw.empty()) queries.emplace_back(EntityKind::person, r.artwork_author_raw);
      if (!r.location_raw.empty()) {
        try {
          auto ref = normalize::split_location(r.location_raw);
          queries.emplace_back(EntityKind::place, ref.institution_label);
          if (ref.city_label) queries.emplace_back(EntityKind::place, *ref.city_label);
        } catch (const Error&) {
        }
      }
      for (const auto& [type, src] : r.other_sources_raw) queries.emplace_back(EntityKind::work, src);
    }
    reconciler.prefetch(queries);
  }

  Builder b(cfg, res, reconciler);
  std::set<std::string> seen_ids;
  for (std::size_t i = 0; i < records.size(); ++i) {
    b.count_row();
    auto id = ingest::assign_item_id(records[i], i + 1);
    if (!seen_ids.insert(id).second)
      throw IntegrityError("duplicate item id", {id});
    b.add(records[i], i + 1);
  }
  return b.finish();
}

}  // namespace mythforge::pipeline
