#include "mythforge/export.hpp"

#include <algorithm>
#include <set>

#include "mythforge/citeparse.hpp"
#include "mythforge/error.hpp"
#include "mythforge/text.hpp"
#include "mythforge/vocab.hpp"

namespace mythforge::exporter {

using nlohmann::json;
using rdf::Iri;
using rdf::Term;

namespace {

using Props = std::map<Iri, std::vector<Term>>;
using GraphIndex = std::map<Iri, Props>;

bool natural_less(const std::string& a, const std::string& b) {
  auto digits = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (digits(a) && digits(b) && a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

class View {
 public:
  View(const rdf::Dataset& d, const graph::Scheme& scheme) : scheme_(scheme) {
    for (const auto& q : d.quads()) graphs_[q.graph][q.subject][q.predicate].push_back(q.object);
    for (auto& np : graph::find_nanopublications(d, scheme)) {
      std::string id = np.item_id;
      nanopubs_.emplace(std::move(id), std::move(np));
    }
    if (auto it = graphs_.find(scheme.factual_data()); it != graphs_.end()) factual_ = &it->second;
  }

  const graph::Scheme& scheme() const { return scheme_; }

  const std::vector<Term>& objects(const Iri& g, const Iri& s, const Iri& p) const {
    static const std::vector<Term> none;
    auto gi = graphs_.find(g);
    if (gi == graphs_.end()) return none;
    auto si = gi->second.find(s);
    if (si == gi->second.end()) return none;
    auto pi = si->second.find(p);
    return pi == si->second.end() ? none : pi->second;
  }
  const std::vector<Term>& fact(const Iri& s, const Iri& p) const {
    return objects(scheme_.factual_data(), s, p);
  }

  std::vector<Iri> fact_iris(const Iri& s, const Iri& p) const {
    std::vector<Iri> out;
    for (const auto& t : fact(s, p))
      if (rdf::is_iri(t)) out.push_back(rdf::as_iri(t));
    return out;
  }
  std::optional<Iri> fact_iri(const Iri& s, const Iri& p) const {
    auto v = fact_iris(s, p);
    if (v.empty()) return std::nullopt;
    return v.front();
  }
  std::optional<std::string> fact_literal(const Iri& s, const Iri& p) const {
    for (const auto& t : fact(s, p))
      if (!rdf::is_iri(t)) return std::get<rdf::Literal>(t).lexical();
    return std::nullopt;
  }
  std::vector<std::string> fact_literals(const Iri& s, const Iri& p) const {
    std::vector<std::string> out;
    for (const auto& t : fact(s, p))
      if (!rdf::is_iri(t)) out.push_back(std::get<rdf::Literal>(t).lexical());
    return out;
  }

  std::string label(const Iri& s) const {
    if (auto l = fact_literal(s, vocab::rdfs_label())) return *l;
    return s.str();
  }
  bool typed(const Iri& s, const Iri& cls) const {
    const auto& types = fact(s, vocab::rdf_type());
    return std::find(types.begin(), types.end(), Term(cls)) != types.end();
  }
  bool has_type_node(const Iri& s, const std::string& type_slug) const {
    const auto& t = fact(s, vocab::ecrm("P2_has_type"));
    return std::find(t.begin(), t.end(), Term(scheme_.type(type_slug))) != t.end();
  }

  std::vector<Iri> subjects_of_type(const Iri& cls) const {
    std::vector<Iri> out;
    if (!factual_) return out;
    for (const auto& [s, props] : *factual_) {
      auto it = props.find(vocab::rdf_type());
      if (it != props.end() && std::find(it->second.begin(), it->second.end(), Term(cls)) != it->second.end())
        out.push_back(s);
    }
    return out;
  }

  std::optional<AgentRef> agent(const std::optional<Iri>& person) const {
    if (!person) return std::nullopt;
    AgentRef a{label(*person), std::nullopt};
    for (const auto& link : fact_iris(*person, vocab::owl_same_as())) {
      std::string_view s = link.str();
      if (s.starts_with(vocab::kViafBase)) {
        s.remove_prefix(std::string_view(vocab::kViafBase).size());
        if (s.ends_with("/")) s.remove_suffix(1);
        a.viaf = std::string(s);
        break;
      }
    }
    return a;
  }

  const graph::Nanopublication* nanopub(const std::string& item_id) const {
    auto it = nanopubs_.find(item_id);
    return it == nanopubs_.end() ? nullptr : &it->second;
  }

  // Subjects of P67 in an item's assertion graph, with their themes.
  std::map<Iri, std::vector<Iri>> referrers(const std::string& item_id) const {
    std::map<Iri, std::vector<Iri>> out;
    const auto* np = nanopub(item_id);
    if (!np) return out;
    auto gi = graphs_.find(np->assertion_graph);
    if (gi == graphs_.end()) return out;
    for (const auto& [s, props] : gi->second) {
      auto pi = props.find(vocab::ecrm("P67_refers_to"));
      if (pi == props.end()) continue;
      for (const auto& t : pi->second)
        if (rdf::is_iri(t)) out[s].push_back(rdf::as_iri(t));
    }
    return out;
  }

  std::vector<Iri> item_themes(const std::string& item_id) const {
    auto refs = referrers(item_id);
    auto it = refs.find(scheme_.expression(item_id));
    if (it == refs.end()) return {};
    auto v = it->second;
    std::sort(v.begin(), v.end());
    return v;
  }

  std::vector<std::string> item_ids() const {
    std::vector<std::string> out;
    for (const auto& s : subjects_of_type(vocab::efrbroo("F4_Manifestation_Singleton")))
      if (auto id = scheme_.local_id(s, "item/")) out.push_back(*id);
    std::sort(out.begin(), out.end(), natural_less);
    return out;
  }

  // Work a citation node belongs to, or the node itself when it is a work.
  std::optional<Iri> work_of(const Iri& node) const {
    if (typed(node, vocab::hucit("CanonicalCitation"))) return fact_iri(node, vocab::dct("isPartOf"));
    if (typed(node, vocab::efrbroo("F1_Work"))) return node;
    return std::nullopt;
  }

 private:
  const graph::Scheme& scheme_;
  std::map<Iri, GraphIndex> graphs_;
  std::map<std::string, graph::Nanopublication> nanopubs_;
  const GraphIndex* factual_ = nullptr;
};

std::string category_label_of(const View& v, const Iri& work) {
  for (const auto& t : v.fact_iris(work, vocab::ecrm("P2_has_type"))) {
    auto slug = v.scheme().local_id(t, "type/");
    if (slug && graph::category_from_slug(*slug)) return v.label(t);
  }
  return "";
}

std::optional<Iri> category_of(const View& v, const Iri& work) {
  for (const auto& t : v.fact_iris(work, vocab::ecrm("P2_has_type"))) {
    auto slug = v.scheme().local_id(t, "type/");
    if (slug && graph::category_from_slug(*slug)) return t;
  }
  return std::nullopt;
}

struct TimeInfo {
  std::optional<Iri> century, year;
};

TimeInfo time_of(const View& v, const Iri& item) {
  TimeInfo t;
  for (const auto& span : v.fact_iris(item, vocab::ecrm("P4_has_time-span"))) {
    if (v.has_type_node(span, "secolo") && !t.century) t.century = span;
    if (v.has_type_node(span, "anno") && !t.year) t.year = span;
  }
  return t;
}

CatalogCard make_card(const View& v, const std::string& id) {
  const auto& scheme = v.scheme();
  Iri item = scheme.item(id);
  CatalogCard c;
  c.item_id = id;
  auto& f = c.factual;
  f.title = v.fact_literal(item, vocab::dct("title")).value_or("");
  f.author = v.agent(v.fact_iri(item, vocab::dct("creator")));
  f.keywords = v.fact_literals(item, vocab::dct("subject"));
  std::sort(f.keywords.begin(), f.keywords.end());
  for (const auto& t : v.fact_iris(item, vocab::ecrm("P2_has_type"))) f.typology.push_back(v.label(t));
  if (auto place = v.fact_iri(item, vocab::ecrm("P55_has_current_location"))) {
    Collocation col;
    col.institution = v.label(*place);
    for (const auto& w : v.fact_iris(*place, vocab::ecrm("P89_falls_within"))) {
      if (v.has_type_node(w, "citta") && !col.city) col.city = v.label(w);
      if (v.has_type_node(w, "nazione") && !col.country) col.country = v.label(w);
    }
    col.label = col.institution;
    if (col.city) col.label += ", " + *col.city;
    if (col.country) col.label += " (" + *col.country + ")";
    f.collocation = col;
  }
  auto time = time_of(v, item);
  if (auto epoch = v.fact_iri(item, vocab::dct("temporal"))) f.period.epoch = v.label(*epoch);
  if (time.century) f.period.century = v.label(*time.century);
  if (time.year) f.period.years = v.label(*time.year);
  std::vector<std::string> parts;
  if (f.period.epoch) parts.push_back(*f.period.epoch);
  if (f.period.century) parts.push_back(*f.period.century);
  f.period.label = text::join(parts, ", ");
  if (f.period.years)
    f.period.label += (f.period.label.empty() ? "" : " ") + ("(" + *f.period.years + ")");
  f.description = v.fact_literal(item, vocab::dct("description")).value_or("");
  f.image = v.fact_literal(item, vocab::schema("image")).value_or("");
  f.see_also = v.fact_literal(item, vocab::rdfs_see_also()).value_or("");

  auto refs = v.referrers(id);
  for (const auto& t : v.item_themes(id)) c.assertion.categories.push_back(v.label(t));
  std::set<Iri> cited_parents;
  std::optional<std::string> first_classical;
  for (const auto& [node, themes] : refs) {
    if (!v.typed(node, vocab::hucit("CanonicalCitation"))) continue;
    c.assertion.canonical_citations.push_back(
        {v.label(node), v.fact_literal(node, vocab::rdfs_see_also()).value_or("")});
    if (auto w = v.fact_iri(node, vocab::dct("isPartOf"))) {
      cited_parents.insert(*w);
      if (!first_classical) first_classical = v.label(*w);
    }
  }
  for (const auto& [node, themes] : refs) {
    if (!v.typed(node, vocab::efrbroo("F1_Work")) || cited_parents.contains(node)) continue;
    ReferenceEntry r;
    r.label = v.label(node);
    r.type = category_label_of(v, node);
    r.author = v.agent(v.fact_iri(node, vocab::dct("creator")));
    auto cat = category_of(v, node);
    bool classical = cat && *cat == scheme.type(graph::category_slug(ingest::SourceType::FonteClassica));
    if (!classical && first_classical) r.related_work = first_classical;
    if (classical && !first_classical) first_classical = r.label;
    c.assertion.general_references.push_back(std::move(r));
  }

  if (const auto* np = v.nanopub(id)) {
    const auto& gen = v.objects(np->provenance_graph, np->assertion_graph, vocab::prov("wasGeneratedBy"));
    for (const auto& t : v.objects(np->provenance_graph, np->assertion_graph, vocab::prov("wasGeneratedAtTime")))
      if (!rdf::is_iri(t)) c.provenance.generated_at = std::get<rdf::Literal>(t).lexical();
    if (!gen.empty() && rdf::is_iri(gen.front())) {
      const Iri& act = rdf::as_iri(gen.front());
      auto first_label = [&](const Iri& pred) -> std::string {
        const auto& o = v.objects(np->provenance_graph, act, pred);
        return !o.empty() && rdf::is_iri(o.front()) ? v.label(rdf::as_iri(o.front())) : "";
      };
      c.provenance.interpretation_type = first_label(vocab::hico("hasInterpretationType"));
      c.provenance.interpretation_criterion = first_label(vocab::hico("hasInterpretationCriterion"));
      c.provenance.performer = first_label(vocab::prov("wasAttributedTo"));
    }
  }
  return c;
}


struct FacetBuilder {
  struct Acc {
    std::string label;
    std::set<std::string> items;
  };
  std::map<std::string, std::map<std::string, Acc>> facets;

  void add(const std::string& facet, const std::string& id, const std::string& label,
           const std::string& item) {
    auto& acc = facets[facet][id];
    acc.label = label;
    acc.items.insert(item);
  }
};

const std::vector<std::pair<std::string, std::vector<std::string>>>& facet_levels() {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> levels{
      {"Factual Data", {"Typology", "Collection", "Period", "Epoch"}},
      {"Assertion", {"Category", "Source-Type"}},
      {"Provenance", {"Interpreter"}},
  };
  return levels;
}

}  // namespace

Catalog export_catalog(const rdf::Dataset& dataset, const graph::Scheme& scheme) {
  View v(dataset, scheme);
  Catalog out;
  FacetBuilder fb;
  for (const auto& id : v.item_ids()) {
    out.cards.push_back(make_card(v, id));
    Iri item = scheme.item(id);
    for (const auto& t : v.fact_iris(item, vocab::ecrm("P2_has_type")))
      fb.add("Typology", t.str(), v.label(t), id);
    if (auto p = v.fact_iri(item, vocab::ecrm("P55_has_current_location")))
      fb.add("Collection", p->str(), v.label(*p), id);
    auto time = time_of(v, item);
    if (time.century) fb.add("Period", time.century->str(), v.label(*time.century), id);
    if (auto e = v.fact_iri(item, vocab::dct("temporal"))) fb.add("Epoch", e->str(), v.label(*e), id);
    for (const auto& t : v.item_themes(id)) fb.add("Category", t.str(), v.label(t), id);
    for (const auto& [node, themes] : v.referrers(id)) {
      auto work = v.work_of(node);
      if (!work) continue;
      if (auto cat = category_of(v, *work)) fb.add("Source-Type", cat->str(), v.label(*cat), id);
    }
    if (const auto* np = v.nanopub(id)) {
      for (const auto& act : v.objects(np->provenance_graph, np->assertion_graph, vocab::prov("wasGeneratedBy"))) {
        if (!rdf::is_iri(act)) continue;
        for (const auto& who : v.objects(np->provenance_graph, rdf::as_iri(act), vocab::prov("wasAttributedTo")))
          if (rdf::is_iri(who)) fb.add("Interpreter", rdf::as_iri(who).str(), v.label(rdf::as_iri(who)), id);
      }
    }
  }

  out.facets.levels = facet_levels();
  for (const auto& [level, names] : out.facets.levels) {
    for (const auto& name : names) {
      auto& values = out.facets.facets[name];
      for (const auto& [id, acc] : fb.facets[name]) {
        FacetValue fv{acc.label, id, acc.items.size(), {acc.items.begin(), acc.items.end()}};
        std::sort(fv.item_ids.begin(), fv.item_ids.end(), natural_less);
        values.push_back(std::move(fv));
      }
      std::sort(values.begin(), values.end(), [](const FacetValue& a, const FacetValue& b) {
        return std::tie(a.value_label, a.value_id) < std::tie(b.value_label, b.value_id);
      });
    }
  }
  return out;
}

std::vector<std::string> filter_items(const Catalog& catalog, const FilterState& state) {
  std::vector<std::string> out;
  for (const auto& card : catalog.cards) out.push_back(card.item_id);
  for (const auto& [facet, selected] : state) {
    if (selected.empty()) continue;
    std::set<std::string> allowed;
    if (auto it = catalog.facets.facets.find(facet); it != catalog.facets.facets.end())
      for (const auto& v : it->second)
        if (selected.contains(v.value_id)) allowed.insert(v.item_ids.begin(), v.item_ids.end());
    std::erase_if(out, [&](const std::string& id) { return !allowed.contains(id); });
  }
  return out;
}

std::vector<Count> top_n(std::vector<Count> counts, std::size_t n) {
  std::sort(counts.begin(), counts.end(), [](const Count& a, const Count& b) {
    if (a.count != b.count) return a.count > b.count;
    return std::tie(a.label, a.id) < std::tie(b.label, b.id);
  });
  if (counts.size() > n) counts.resize(n);
  return counts;
}

std::vector<std::pair<int, int>> buckets_for(int a, int b, int width) {
  std::vector<std::pair<int, int>> out;
  if (width <= 0 || a < 1 || b < a) return out;
  for (int k = (a - 1) / width; k <= (b - 1) / width; ++k) out.emplace_back(k * width + 1, (k + 1) * width);
  return out;
}

std::vector<Count> theme_counts(const rdf::Dataset& dataset, const graph::Scheme& scheme) {
  View v(dataset, scheme);
  std::map<Iri, std::size_t> counts;
  for (const auto& id : v.item_ids())
    for (const auto& t : v.item_themes(id)) ++counts[t];
  std::vector<Count> out;
  for (const auto& [t, n] : counts) out.push_back({v.label(t), t.str(), n});
  return top_n(std::move(out), out.size());
}

StorytellingBundle export_storytelling(const rdf::Dataset& dataset, const graph::Scheme& scheme,
                                       const std::string& work_slug,
                                       const StorytellingOptions& options) {
  View v(dataset, scheme);
  Iri focus = [&] {
    try {
      return scheme.work(work_slug);
    } catch (const Error&) {
      throw UnknownWork("no work '" + work_slug + "' in the dataset");
    }
  }();
  if (!v.typed(focus, vocab::efrbroo("F1_Work")))
    throw UnknownWork("no work '" + work_slug + "' in the dataset");

  StorytellingBundle b;
  b.work_slug = work_slug;
  b.work_label = v.label(focus);
  const auto ids = v.item_ids();

  // Themes the focus work (directly or through one of its citations) refers to.
  std::set<Iri> focus_themes;
  for (const auto& id : ids)
    for (const auto& [node, themes] : v.referrers(id))
      if (v.work_of(node) == focus) focus_themes.insert(themes.begin(), themes.end());

  std::vector<std::string> selected;
  for (const auto& id : ids) {
    auto themes = v.item_themes(id);
    if (std::any_of(themes.begin(), themes.end(), [&](const Iri& t) { return focus_themes.contains(t); }))
      selected.push_back(id);
  }

  std::map<Iri, std::size_t> theme_n;
  std::map<std::string, std::size_t> keyword_n;
  std::map<std::pair<int, int>, HeatCell> cells;
  std::map<std::pair<Iri, Iri>, std::size_t> work_edges, artist_edges;
  std::map<Iri, std::string> work_nodes, artist_nodes, theme_nodes;

  for (const auto& id : selected) {
    Iri item = scheme.item(id);
    std::string title = v.fact_literal(item, vocab::dct("title")).value_or("");
    auto author = v.agent(v.fact_iri(item, vocab::dct("creator")));
    auto themes = v.item_themes(id);

    auto time = time_of(v, item);
    auto span = time.year ? time.year : time.century;
    if (span) {
      b.timeline.push_back({id, title,
                            v.fact_literal(*span, vocab::crm("P82a_begin_of_the_begin")).value_or(""),
                            v.fact_literal(*span, vocab::crm("P82b_end_of_the_end")).value_or(""),
                            v.fact_literal(item, vocab::schema("image")).value_or(""),
                            author ? author->label : ""});
    } else {
      b.omissions.timeline.push_back({id, "no time-span"});
    }

    auto place = v.fact_iri(item, vocab::ecrm("P55_has_current_location"));
    std::optional<normalize::Coordinates> coords;
    if (place)
      if (auto lit = v.fact_literal(*place, vocab::wdt("P625"))) coords = normalize::parse_coordinates(*lit);
    if (coords) {
      b.map_points.push_back({id, coords->lat_value(), coords->lon_value(), v.label(*place), title});
    } else {
      b.omissions.map.push_back({id, place ? "place has no coordinates" : "no location"});
    }

    for (const auto& t : themes) {
      ++theme_n[t];
      theme_nodes[t] = v.label(t);
    }
    for (const auto& k : v.fact_literals(item, vocab::dct("subject"))) ++keyword_n[k];

    for (const auto& [node, node_themes] : v.referrers(id)) {
      if (v.typed(node, vocab::hucit("CanonicalCitation")) && v.work_of(node) == focus) {
        std::string url = v.fact_literal(node, vocab::rdfs_see_also()).value_or("");
        std::string_view urn = url;
        if (urn.starts_with(vocab::kPerseusCitationBase))
          urn.remove_prefix(std::string_view(vocab::kPerseusCitationBase).size());
        auto pas = citeparse::parse_passage(citeparse::split_urn(urn).second);
        if (!pas || !pas->book || !pas->line_start) {
          b.omissions.heatmap.push_back({id, "citation without book and lines: " + v.label(node)});
        } else {
          for (auto [lo, hi] : buckets_for(*pas->line_start, pas->line_end.value_or(*pas->line_start),
                                           options.bucket_width)) {
            auto& cell = cells[{*pas->book, lo}];
            cell.book = *pas->book;
            cell.bucket_start = lo;
            cell.bucket_end = hi;
            ++cell.count;
            for (const auto& t : themes) cell.themes.push_back(v.label(t));
          }
        }
      }
      auto work = v.work_of(node);
      if (!work) continue;
      for (const auto& t : node_themes) {
        if (!focus_themes.contains(t)) continue;
        ++work_edges[{*work, t}];
        work_nodes[*work] = v.label(*work);
        theme_nodes[t] = v.label(t);
      }
    }

    if (auto who = v.fact_iri(item, vocab::dct("creator"))) {
      for (const auto& t : themes) {
        ++artist_edges[{*who, t}];
        artist_nodes[*who] = v.label(*who);
      }
    }
  }

  std::sort(b.timeline.begin(), b.timeline.end(), [](const TimelineEntry& x, const TimelineEntry& y) {
    return std::tie(x.begin, x.end, x.item_id) < std::tie(y.begin, y.end, y.item_id);
  });
  for (const auto& [t, n] : theme_n) b.themes.push_back({v.label(t), t.str(), n});
  for (const auto& [k, n] : keyword_n) b.keywords.push_back({k, k, n});
  b.top10_themes = top_n(b.themes, 10);
  b.top10_keywords = top_n(b.keywords, 10);
  for (auto& [key, cell] : cells) {
    std::sort(cell.themes.begin(), cell.themes.end());
    cell.themes.erase(std::unique(cell.themes.begin(), cell.themes.end()), cell.themes.end());
    b.heatmap.push_back(std::move(cell));
  }

  auto build_network = [&](const std::map<Iri, std::string>& left, const char* kind,
                           const std::map<std::pair<Iri, Iri>, std::size_t>& edges) {
    Network n;
    std::set<Iri> used_themes;
    for (const auto& [pair, w] : edges) used_themes.insert(pair.second);
    for (const auto& [iri, label] : left) n.nodes.push_back({iri.str(), label, kind});
    for (const auto& t : used_themes) n.nodes.push_back({t.str(), theme_nodes[t], "theme"});
    for (const auto& [pair, w] : edges) n.edges.push_back({pair.first.str(), pair.second.str(), w});
    return n;
  };
  b.work_network = build_network(work_nodes, "work", work_edges);
  b.artist_network = build_network(artist_nodes, "artist", artist_edges);
  return b;
}

namespace {

json agent_json(const std::optional<AgentRef>& a) {
  if (!a) return nullptr;
  json j{{"label", a->label}};
  if (a->viaf) j["viaf"] = *a->viaf;
  return j;
}

template <typename T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json counts_json(const std::vector<Count>& counts, const char* key) {
  json arr = json::array();
  for (const auto& c : counts) arr.push_back({{key, c.label}, {"id", c.id}, {"count", c.count}});
  return arr;
}

json network_json(const Network& n) {
  json nodes = json::array(), edges = json::array();
  for (const auto& x : n.nodes) nodes.push_back({{"id", x.id}, {"label", x.label}, {"kind", x.kind}});
  for (const auto& e : n.edges) edges.push_back({{"source", e.source}, {"target", e.target}, {"weight", e.weight}});
  return {{"nodes", nodes}, {"edges", edges}};
}

json omissions_json(const std::vector<Omission>& list) {
  json arr = json::array();
  for (const auto& o : list) arr.push_back({{"item_id", o.item_id}, {"reason", o.reason}});
  return arr;
}

}  // namespace

json to_json(const CatalogCard& c) {
  const auto& f = c.factual;
  json collocation = nullptr;
  if (f.collocation)
    collocation = {{"institution", f.collocation->institution},
                   {"city", opt(f.collocation->city)},
                   {"country", opt(f.collocation->country)},
                   {"label", f.collocation->label}};
  json citations = json::array(), refs = json::array();
  for (const auto& cit : c.assertion.canonical_citations)
    citations.push_back({{"label", cit.label}, {"perseus_url", cit.perseus_url}});
  for (const auto& r : c.assertion.general_references) {
    json j{{"label", r.label}, {"type", r.type}, {"author", agent_json(r.author)}};
    if (r.related_work) j["related_work"] = *r.related_work;
    refs.push_back(std::move(j));
  }
  return {
      {"item_id", c.item_id},
      {"factual",
       {{"title", f.title},
        {"author", agent_json(f.author)},
        {"keywords", f.keywords},
        {"typology", f.typology},
        {"collocation", collocation},
        {"period",
         {{"label", f.period.label},
          {"epoch", opt(f.period.epoch)},
          {"century", opt(f.period.century)},
          {"years", opt(f.period.years)}}},
        {"description", f.description},
        {"image", f.image},
        {"see_also", f.see_also}}},
      {"assertion",
       {{"categories", c.assertion.categories},
        {"canonical_citations", citations},
        {"general_references", refs}}},
      {"provenance",
       {{"interpretation_type", c.provenance.interpretation_type},
        {"interpretation_criterion", c.provenance.interpretation_criterion},
        {"performer", c.provenance.performer},
        {"generated_at", opt(c.provenance.generated_at)}}},
  };
}

json catalog_json(const Catalog& catalog) {
  json cards = json::array();
  for (const auto& c : catalog.cards) cards.push_back(to_json(c));
  return {{"schema", kSchemaVersion}, {"cards", cards}};
}

json facets_json(const FacetIndex& facets) {
  json levels = json::array();
  for (const auto& [level, names] : facets.levels) levels.push_back({{"level", level}, {"facets", names}});
  json by_name = json::object();
  for (const auto& [name, values] : facets.facets) {
    json arr = json::array();
    for (const auto& fv : values)
      arr.push_back({{"value_label", fv.value_label},
                     {"value_id", fv.value_id},
                     {"count", fv.count},
                     {"item_ids", fv.item_ids}});
    by_name[name] = std::move(arr);
  }
  return {{"schema", kSchemaVersion}, {"levels", levels}, {"facets", by_name}};
}

json to_json(const StorytellingBundle& b) {
  json timeline = json::array(), points = json::array(), heat = json::array();
  for (const auto& t : b.timeline)
    timeline.push_back({{"item_id", t.item_id}, {"title", t.title}, {"begin", t.begin},
                        {"end", t.end}, {"image", t.image}, {"author", t.author}});
  for (const auto& p : b.map_points)
    points.push_back({{"item_id", p.item_id}, {"lat", p.lat}, {"lon", p.lon},
                      {"institution", p.institution}, {"title", p.title}});
  for (const auto& h : b.heatmap)
    heat.push_back({{"book", h.book}, {"bucket_start", h.bucket_start}, {"bucket_end", h.bucket_end},
                    {"count", h.count}, {"themes", h.themes}});
  return {
      {"schema", kSchemaVersion},
      {"work", {{"slug", b.work_slug}, {"label", b.work_label}}},
      {"timeline", timeline},
      {"map_points", points},
      {"themes", counts_json(b.themes, "theme")},
      {"keywords", counts_json(b.keywords, "keyword")},
      {"top10_themes", counts_json(b.top10_themes, "theme")},
      {"top10_keywords", counts_json(b.top10_keywords, "keyword")},
      {"heatmap", heat},
      {"work_network", network_json(b.work_network)},
      {"artist_network", network_json(b.artist_network)},
      {"omissions",
       {{"timeline", omissions_json(b.omissions.timeline)},
        {"map", omissions_json(b.omissions.map)},
        {"heatmap", omissions_json(b.omissions.heatmap)}}},
  };
}

}  // namespace mythforge::exporter
