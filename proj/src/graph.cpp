#include "mythforge/graph.hpp"

#include <algorithm>
#include <set>

#include "mythforge/error.hpp"
#include "mythforge/vocab.hpp"

namespace mythforge::graph {

using rdf::Iri;
using rdf::Literal;
using rdf::Quad;
using rdf::Term;

std::optional<std::string> Scheme::local_id(const Iri& iri, std::string_view prefix) const {
  const std::string& s = iri.str();
  const std::string& b = base_.str();
  if (s.size() <= b.size() + prefix.size()) return std::nullopt;
  if (s.compare(0, b.size(), b) != 0) return std::nullopt;
  if (s.compare(b.size(), prefix.size(), prefix) != 0) return std::nullopt;
  return s.substr(b.size() + prefix.size());
}

std::string category_slug(ingest::SourceType t) {
  switch (t) {
    case ingest::SourceType::FonteClassica: return "fonteClassica";
    case ingest::SourceType::RiscritturaLetteraria: return "riscritturaLetteraria";
    case ingest::SourceType::FonteMedievaleOModerna: return "fonteMedievaleOModerna";
    case ingest::SourceType::RiscritturaCinematografica: return "riscritturaCinematografica";
  }
  return "fonteClassica";
}

std::string category_label(ingest::SourceType t) {
  switch (t) {
    case ingest::SourceType::FonteClassica: return "Fonte classica";
    case ingest::SourceType::RiscritturaLetteraria: return "Riscrittura letteraria";
    case ingest::SourceType::FonteMedievaleOModerna: return "Fonte medievale o moderna";
    case ingest::SourceType::RiscritturaCinematografica: return "Riscrittura cinematografica";
  }
  return "";
}

std::optional<ingest::SourceType> category_from_slug(std::string_view slug) {
  for (auto t : ingest::kAllSourceTypes)
    if (category_slug(t) == slug) return t;
  return std::nullopt;
}

namespace {

std::string_view place_type_slug(PlaceType t) {
  switch (t) {
    case PlaceType::collocazione: return "collocazione";
    case PlaceType::citta: return "citta";
    case PlaceType::nazione: return "nazione";
  }
  return "collocazione";
}

std::string_view place_type_label(PlaceType t) {
  switch (t) {
    case PlaceType::collocazione: return "collocazione";
    case PlaceType::citta: return "città";
    case PlaceType::nazione: return "nazione";
  }
  return "";
}

class Emitter {
 public:
  Emitter(Iri graph, const BuildOptions& options)
      : graph_(std::move(graph)), options_(options) {}

  void add(const Iri& s, const Iri& p, Term o) {
    out_.push_back(Quad{s, p, std::move(o), graph_});
  }
  void type(const Iri& s, const Iri& cls) { add(s, vocab::rdf_type(), cls); }
  void str(const Iri& s, const Iri& p, const std::string& lexical) {
    if (lexical.empty() && options_.skip_empty_literals) return;
    add(s, p, Literal::string(lexical));
  }
  void uri(const Iri& s, const Iri& p, const std::string& lexical) {
    if (lexical.empty() && options_.skip_empty_literals) return;
    add(s, p, Literal(lexical, vocab::xsd_any_uri()));
  }
  void label(const Iri& s, const std::string& text) { str(s, vocab::rdfs_label(), text); }
  void same_as(const Iri& s, const std::vector<reconcile::AuthorityLink>& links) {
    for (const auto& l : links)
      if (auto iri = reconcile::link_iri(l)) add(s, vocab::owl_same_as(), Iri(*iri));
  }

  std::vector<Quad> take() { return std::move(out_); }

 private:
  Iri graph_;
  const BuildOptions& options_;
  std::vector<Quad> out_;
};

// Tracks which type-vocabulary nodes were referenced so each gets a label.
struct TypeUse {
  std::map<std::string, std::string> labels;
  void use(const std::string& slug, std::string label) { labels.emplace(slug, std::move(label)); }
};

template <typename Map>
void require(const Map& map, const typename Map::key_type& key, const std::string& what,
             std::vector<std::string>& missing) {
  if (!map.contains(key)) {
    if constexpr (std::is_same_v<typename Map::key_type, int>)
      missing.push_back(what + " " + std::to_string(key));
    else
      missing.push_back(what + " " + key);
  }
}

}  // namespace

std::vector<Quad> build_factual_graph(const std::vector<ObjectRecord>& records,
                                      const EntityIndex& entities, const Scheme& scheme,
                                      const BuildOptions& options) {
  std::vector<std::string> missing;
  for (const auto& r : records) {
    for (const auto& t : r.typologies) require(entities.types, t, "type", missing);
    if (r.location) require(entities.places, *r.location, "place", missing);
    if (r.artwork_author) require(entities.persons, *r.artwork_author, "person", missing);
    for (const auto& t : r.timespans) require(entities.timespans, t, "time-span", missing);
    if (r.period) require(entities.periods, *r.period, "period", missing);
  }
  for (const auto& [slug, place] : entities.places)
    for (const auto& w : place.within) require(entities.places, w, "place", missing);
  for (const auto& [slug, work] : entities.works)
    if (work.author_slug) require(entities.persons, *work.author_slug, "person", missing);
  for (const auto& [n, cit] : entities.citations)
    require(entities.works, cit.ref.work_key, "work", missing);
  if (!missing.empty()) {
    std::sort(missing.begin(), missing.end());
    missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
    throw IntegrityError("factual graph references unresolved entities", missing);
  }

  Emitter e(scheme.factual_data(), options);
  TypeUse types;

  for (const auto& r : records) {
    Iri item = scheme.item(r.item_id);
    Iri expr = scheme.expression(r.item_id);
    e.type(item, vocab::efrbroo("F4_Manifestation_Singleton"));
    for (const auto& t : r.typologies) e.add(item, vocab::ecrm("P2_has_type"), scheme.type(t));
    if (r.location) e.add(item, vocab::ecrm("P55_has_current_location"), scheme.place(*r.location));
    e.add(item, vocab::efrbroo("R42_is_representative_manifestation_singleton_for"), expr);
    for (const auto& k : r.keywords) e.str(item, vocab::dct("subject"), k);
    e.str(item, vocab::dct("title"), r.title);
    if (!r.description.empty()) e.str(item, vocab::dct("description"), r.description);
    e.uri(item, vocab::schema("image"), r.image_url);
    e.uri(item, vocab::rdfs_see_also(), r.see_also);
    if (r.artwork_author) e.add(item, vocab::dct("creator"), scheme.person(*r.artwork_author));
    for (const auto& t : r.timespans) e.add(item, vocab::ecrm("P4_has_time-span"), scheme.time(t));
    if (r.period) e.add(item, vocab::dct("temporal"), scheme.period(*r.period));
    e.type(expr, vocab::efrbroo("F2_Expression"));
  }

  for (const auto& [slug, label] : entities.types) types.use(slug, label);
  for (const auto& [slug, label] : entities.themes) e.label(scheme.theme(slug), label);

  for (const auto& [slug, p] : entities.persons) {
    Iri node = scheme.person(slug);
    e.type(node, vocab::ecrm("E21_Person"));
    e.label(node, p.label);
    e.same_as(node, p.links);
  }

  for (const auto& [slug, p] : entities.places) {
    Iri node = scheme.place(slug);
    e.type(node, vocab::ecrm("E53_Place"));
    e.label(node, p.entity.label);
    std::string ts(place_type_slug(p.type));
    e.add(node, vocab::ecrm("P2_has_type"), scheme.type(ts));
    types.use(ts, std::string(place_type_label(p.type)));
    for (const auto& w : p.within) e.add(node, vocab::ecrm("P89_falls_within"), scheme.place(w));
    if (p.entity.coordinates) e.str(node, vocab::wdt("P625"), p.entity.coordinates->to_literal());
    e.same_as(node, p.entity.links);
  }

  for (const auto& [slug, t] : entities.timespans) {
    Iri node = scheme.time(slug);
    e.type(node, vocab::ecrm("E52_Time-Span"));
    e.label(node, t.span.label);
    std::string ts(normalize::to_string(t.span.kind));
    e.add(node, vocab::ecrm("P2_has_type"), scheme.type(ts));
    types.use(ts, ts);
    e.add(node, vocab::crm("P82a_begin_of_the_begin"), Literal(t.span.begin, vocab::xsd_date()));
    e.add(node, vocab::crm("P82b_end_of_the_end"), Literal(t.span.end, vocab::xsd_date()));
  }

  for (const auto& [slug, label] : entities.periods) {
    Iri node = scheme.period(slug);
    e.type(node, vocab::ecrm("E4_Period"));
    e.label(node, label);
  }

  for (const auto& [slug, w] : entities.works) {
    Iri node = scheme.work(slug);
    e.type(node, vocab::efrbroo("F1_Work"));
    e.label(node, w.entity.label);
    std::string cs = category_slug(w.category);
    e.add(node, vocab::ecrm("P2_has_type"), scheme.type(cs));
    types.use(cs, category_label(w.category));
    if (w.author_slug) e.add(node, vocab::dct("creator"), scheme.person(*w.author_slug));
    e.same_as(node, w.entity.links);
  }

  for (const auto& [n, c] : entities.citations) {
    Iri node = scheme.citation(n);
    e.type(node, vocab::hucit("CanonicalCitation"));
    e.label(node, c.ref.raw_label);
    std::string cs = category_slug(ingest::SourceType::FonteClassica);
    e.add(node, vocab::ecrm("P2_has_type"), scheme.type(cs));
    types.use(cs, category_label(ingest::SourceType::FonteClassica));
    if (!c.ref.content_slug.empty()) {
      Iri content = scheme.content(c.ref.content_slug);
      e.add(node, vocab::hucit("has_content"), content);
      e.label(content, c.ref.content_slug);
    }
    e.uri(node, vocab::rdfs_see_also(), c.ref.perseus_url);
    e.add(node, vocab::dct("isPartOf"), scheme.work(c.ref.work_key));
  }

  for (const auto& [slug, label] : entities.vocabulary) e.label(scheme.vocabulary(slug), label);
  for (const auto& [slug, label] : types.labels) e.label(scheme.type(slug), label);

  auto quads = e.take();
  std::sort(quads.begin(), quads.end());
  quads.erase(std::unique(quads.begin(), quads.end()), quads.end());
  return quads;
}

std::pair<Nanopublication, std::vector<Quad>> build_nanopub(const InterpretationRecord& interp,
                                                             const Scheme& scheme,
                                                             const BuildOptions& options) {
  const std::string& id = interp.item_id;
  if (!interp.interpreter)
    throw IntegrityError("interpretation has no interpreter", {scheme.item(id).str()});
  if (!interp.theme)
    throw IntegrityError("interpretation has no theme", {scheme.item(id).str()});

  Nanopublication np{scheme.head(id), scheme.assertion(id), scheme.provenance(id),
                     scheme.pubinfo(id), id};
  Iri np_node = scheme.nanopub(id);
  std::vector<Quad> out;

  Emitter head(np.head_graph, options);
  head.type(np_node, vocab::np("Nanopublication"));
  head.add(np_node, vocab::np("hasAssertion"), np.assertion_graph);
  head.add(np_node, vocab::np("hasProvenance"), np.provenance_graph);
  head.add(np_node, vocab::np("hasPublicationInfo"), np.pubinfo_graph);

  Emitter assertion(np.assertion_graph, options);
  Iri theme = scheme.theme(interp.theme->slug);
  Iri refers = vocab::ecrm("P67_refers_to");
  assertion.add(scheme.expression(id), refers, theme);
  for (const auto& c : interp.cited) {
    if (c.kind == Cited::Kind::citation)
      assertion.add(scheme.citation(c.citation_number), refers, theme);
    assertion.add(scheme.work(c.work_slug), refers, theme);
  }

  Emitter prov(np.provenance_graph, options);
  Iri act = scheme.int_act(id);
  if (interp.generated_at)
    prov.add(np.assertion_graph, vocab::prov("wasGeneratedAtTime"),
             Literal(*interp.generated_at, vocab::xsd_date_time()));
  prov.add(np.assertion_graph, vocab::prov("wasGeneratedBy"), act);
  prov.type(act, options.act_namespace == ActNamespace::prov
                     ? vocab::prov("InterpretationAct")
                     : vocab::hico("InterpretationAct"));
  prov.add(act, vocab::hico("hasInterpretationCriterion"),
           scheme.vocabulary(interp.interpretation_criterion));
  prov.add(act, vocab::hico("hasInterpretationType"),
           scheme.vocabulary(interp.interpretation_type));
  prov.add(act, vocab::prov("wasAttributedTo"), scheme.person(interp.interpreter->slug));

  Emitter pub(np.pubinfo_graph, options);
  pub.add(np_node, vocab::prov("wasAttributedTo"), options.publisher);
  pub.add(np_node, vocab::prov("wasGeneratedAtTime"),
          Literal(options.build_time, vocab::xsd_date_time()));

  for (auto* e : {&head, &assertion, &prov, &pub}) {
    auto q = e->take();
    out.insert(out.end(), q.begin(), q.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return {std::move(np), std::move(out)};
}

std::vector<Nanopublication> find_nanopublications(const rdf::Dataset& dataset,
                                                   const Scheme& scheme) {
  std::vector<Nanopublication> out;
  Iri type = vocab::rdf_type();
  Term np_class = vocab::np("Nanopublication");
  for (const auto& q : dataset.quads()) {
    if (q.predicate != type || q.object != np_class) continue;
    Nanopublication np{q.graph, q.graph, q.graph, q.graph, ""};
    bool a = false, p = false, i = false;
    for (const auto& h : dataset.graph(q.graph)) {
      if (h.subject != q.subject || !rdf::is_iri(h.object)) continue;
      if (h.predicate == vocab::np("hasAssertion")) np.assertion_graph = rdf::as_iri(h.object), a = true;
      if (h.predicate == vocab::np("hasProvenance")) np.provenance_graph = rdf::as_iri(h.object), p = true;
      if (h.predicate == vocab::np("hasPublicationInfo")) np.pubinfo_graph = rdf::as_iri(h.object), i = true;
    }
    if (!(a && p && i)) continue;
    np.item_id = scheme.local_id(q.subject, "np-").value_or(q.subject.str());
    out.push_back(std::move(np));
  }
  return out;
}

IntegrityReport check_integrity(const rdf::Dataset& dataset, const Scheme& scheme) {
  IntegrityReport report;
  Iri factual = scheme.factual_data();
  Iri type = vocab::rdf_type();
  Term np_class = vocab::np("Nanopublication");

  // Head graphs are recognized by their np:Nanopublication type quad.
  std::map<Iri, int> owners;  // graph -> number of nanopubs claiming it
  std::set<Iri> present;
  for (const auto& g : dataset.graphs()) present.insert(g);

  for (const auto& g : dataset.graphs()) {
    auto quads = dataset.graph(g);
    std::vector<const Quad*> heads;
    for (const auto& q : quads)
      if (q.predicate == type && q.object == np_class) heads.push_back(&q);
    if (heads.empty()) continue;
    ++report.nanopublications;
    ++owners[g];
    if (heads.size() != 1 || quads.size() != 4) {
      report.head_arity.push_back(g.str() + ": head graph must hold exactly one nanopublication in 4 quads, found " +
                                  std::to_string(quads.size()));
      continue;
    }
    const Iri& np = heads.front()->subject;
    for (const char* pred : {"hasAssertion", "hasProvenance", "hasPublicationInfo"}) {
      int found = 0;
      for (const auto& q : quads) {
        if (q.subject != np || q.predicate != vocab::np(pred)) continue;
        ++found;
        if (!rdf::is_iri(q.object)) continue;
        const Iri& target = rdf::as_iri(q.object);
        ++owners[target];
        if (!present.contains(target))
          report.head_arity.push_back(g.str() + ": np:" + pred + " names missing graph " + target.str());
      }
      if (found != 1)
        report.head_arity.push_back(g.str() + ": expected one np:" + std::string(pred));
    }
  }

  for (const auto& g : dataset.graphs()) {
    if (g == factual) continue;
    auto it = owners.find(g);
    if (it == owners.end())
      report.partition.push_back(g.str() + ": graph belongs to no nanopublication");
    else if (it->second > 1)
      report.partition.push_back(g.str() + ": graph claimed by " + std::to_string(it->second) +
                                 " nanopublications");
  }
  if (owners.contains(factual))
    report.partition.push_back(factual.str() + ": factual graph used as a nanopublication graph");

  std::set<Iri> described;
  for (const auto& q : dataset.graph(factual))
    if (q.predicate == type || q.predicate == vocab::rdfs_label()) described.insert(q.subject);
  std::set<Iri> checked_predicates{
      vocab::ecrm("P67_refers_to"), vocab::ecrm("P2_has_type"),
      vocab::ecrm("P55_has_current_location"), vocab::ecrm("P89_falls_within"),
      vocab::efrbroo("R42_is_representative_manifestation_singleton_for")};
  std::set<std::string> dangling;
  for (const auto& q : dataset.quads()) {
    if (!checked_predicates.contains(q.predicate) || !rdf::is_iri(q.object)) continue;
    if (!described.contains(rdf::as_iri(q.object))) dangling.insert(rdf::as_iri(q.object).str());
  }
  report.dangling.assign(dangling.begin(), dangling.end());
  return report;
}

void require_integrity(const rdf::Dataset& dataset, const Scheme& scheme) {
  auto r = check_integrity(dataset, scheme);
  if (r.ok()) return;
  std::vector<std::string> offenders;
  for (const auto* list : {&r.partition, &r.head_arity, &r.dangling})
    offenders.insert(offenders.end(), list->begin(), list->end());
  throw IntegrityError("dataset violates structural invariants", offenders);
}

}  // namespace mythforge::graph
