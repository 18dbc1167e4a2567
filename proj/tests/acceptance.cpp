// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include "generators.hpp"
#include "mythforge/citeparse.hpp"
#include "mythforge/error.hpp"
#include "mythforge/export.hpp"
#include "mythforge/graph.hpp"
#include "mythforge/normalize.hpp"
#include "mythforge/query.hpp"
#include "mythforge/roman.hpp"
#include "support.hpp"

using namespace mythforge;
using namespace testsupport;
using rdf::Literal;

namespace {

using Clock = std::chrono::steady_clock;

// Collects mismatches for one criterion.
struct Check {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  template <typename A, typename B>
  void eq(const A& got, const B& want, const std::string& what) {
    if (!(got == want)) {
      std::ostringstream s;
      s << what << ": got '" << got << "' want '" << want << "'";
      failures.push_back(s.str());
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

rdf::Literal str(const std::string& s) { return Literal::string(s); }

std::string m(const std::string& local) { return kMyth + local; }

void require_quad(Check& c, const rdf::Dataset& d, const rdf::Quad& q) {
  if (!d.contains(q))
    c.failures.push_back("missing " + rdf::to_ntriples(q.subject) + " " + rdf::to_ntriples(q.predicate) + " " +
                         rdf::to_ntriples(q.object) + " " + rdf::to_ntriples(q.graph));
}

// Runs the CLI and returns its exit status.
int cli(const std::string& args) {
  std::string cmd = std::string(MYTHFORGE_CLI) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// --- criteria ---------------------------------------------------------------

void item284_fidelity(Check& c) {
  auto t0 = Clock::now();
  auto f = build_fixture("item284");
  double took = seconds_since(t0);
  const auto& d = f.result.dataset;
  std::string fd = m("factual_data");
  std::string label = kRdfs + "label", p2 = kEcrm + "P2_has_type";

  require_quad(c, d, quad(m("type/pittura-vascolare"), label, str("Pittura vascolare"), fd));
  require_quad(c, d, quad(m("item/284"), p2, iri(m("type/pittura-vascolare")), fd));
  require_quad(c, d, quad(m("categ/medea-figlicida"), label, str("Medea figlicida"), fd));
  require_quad(c, d, quad(m("item/284"), kRdf + "type", iri(kEfrbroo + "F4_Manifestation_Singleton"), fd));
  require_quad(c, d, quad(m("person/gamba-hubert"), label, str("Gamba, Hubert"), fd));
  require_quad(c, d, quad(m("person/allegrini-francesco"), label, str("Allegrini, Francesco, 1729-"), fd));

  require_quad(c, d, quad(m("time/xvii-secolo"), label, str("XVII secolo"), fd));
  require_quad(c, d, quad(m("time/xvii-secolo"), p2, iri(m("type/secolo")), fd));
  require_quad(c, d, quad(m("time/xvii-secolo"), kCrm + "P82a_begin_of_the_begin", typed("1600-01-01", "date"), fd));
  require_quad(c, d, quad(m("time/xvii-secolo"), kCrm + "P82b_end_of_the_end", typed("1699-12-31", "date"), fd));
  require_quad(c, d, quad(m("time/1624-1663"), kRdf + "type", iri(kEcrm + "E52_Time-Span"), fd));
  require_quad(c, d, quad(m("time/1624-1663"), label, str("1624-1663"), fd));
  require_quad(c, d, quad(m("time/1624-1663"), p2, iri(m("type/anno")), fd));
  require_quad(c, d, quad(m("time/1624-1663"), kCrm + "P82a_begin_of_the_begin", typed("1624-01-01", "date"), fd));
  require_quad(c, d, quad(m("time/1624-1663"), kCrm + "P82b_end_of_the_end", typed("1663-12-31", "date"), fd));

  require_quad(c, d, quad(m("assertion284"), kProv + "wasGeneratedAtTime", typed("2019-05-03T07:57:00", "dateTime"),
                          m("provenance284")));

  std::string met = m("place/the-metropolitan-museum-of-art");
  require_quad(c, d, quad(met, kRdf + "type", iri(kEcrm + "E53_Place"), fd));
  require_quad(c, d, quad(met, label, str("The Metropolitan Museum of Art"), fd));
  require_quad(c, d, quad(met, p2, iri(m("type/collocazione")), fd));
  require_quad(c, d, quad(met, kEcrm + "P89_falls_within", iri(m("place/new-york")), fd));
  require_quad(c, d, quad(met, kEcrm + "P89_falls_within", iri(m("place/united-states-of-america")), fd));
  require_quad(c, d, quad(met, kWdt + "P625", str("40.77891,-73.96367"), fd));

  std::string cit = m("cit/90");
  require_quad(c, d, quad(cit, kRdf + "type", iri(kHucit + "CanonicalCitation"), fd));
  require_quad(c, d, quad(cit, label, str("Eneide, IV, 337-396"), fd));
  require_quad(c, d, quad(cit, p2, iri(m("type/fonteClassica")), fd));
  require_quad(c, d, quad(cit, kHucit + "has_content", iri(m("str/IV-337-396")), fd));
  require_quad(c, d, quad(cit, kRdfs + "seeAlso",
                          typed("http://data.perseus.org/citations/urn:cts:latinLit:phi0690.phi003.perseus-eng1:4.337-4.396",
                                "anyURI"),
                          fd));

  std::string dante = m("work/alighieri-dante-divina-commedia");
  require_quad(c, d, quad(dante, kRdf + "type", iri(kEfrbroo + "F1_Work"), fd));
  require_quad(c, d, quad(dante, label, str("Dante, Alighieri (1265-1321) Divina commedia"), fd));
  require_quad(c, d, quad(dante, p2, iri(m("type/fonteMedievaleOModerna")), fd));

  c.expect(took < 1.0, "build took " + std::to_string(took) + " s");
}

void nanopub284_fidelity(Check& c) {
  auto f = build_fixture("didone");
  const auto& d = f.result.dataset;
  std::string head = m("head284"), np = m("np-284"), a = m("assertion284"), prov = m("provenance284"),
              pub = m("pubInfo284"), fd = m("factual_data"), act = m("int-act/284");
  std::vector<rdf::Quad> expected{
      quad(np, kRdf + "type", iri(kNp + "Nanopublication"), head),
      quad(np, kNp + "hasAssertion", iri(a), head),
      quad(np, kNp + "hasProvenance", iri(prov), head),
      quad(np, kNp + "hasPublicationInfo", iri(pub), head),
      quad(m("item/284-expression"), kEcrm + "P67_refers_to", iri(m("categ/enea-abbandona-didone")), a),
      quad(m("cit/90"), kEcrm + "P67_refers_to", iri(m("categ/enea-abbandona-didone")), a),
      quad(m("work/leopardi-giacomo-canti"), kEcrm + "P67_refers_to", iri(m("categ/enea-abbandona-didone")), a),
      quad(a, kProv + "wasGeneratedAtTime", typed("2019-05-03T07:57:00", "dateTime"), prov),
      quad(a, kProv + "wasGeneratedBy", iri(act), prov),
      quad(act, kRdf + "type", iri(kProv + "InterpretationAct"), prov),
      quad(act, kHico + "hasInterpretationCriterion", iri(m("sources-association")), prov),
      quad(act, kHico + "hasInterpretationType", iri(m("iconographic-approach")), prov),
      quad(act, kProv + "wasAttributedTo", iri(m("person/morelli-martina")), prov),
      quad(np, kProv + "wasAttributedTo", iri(m("person/dharc")), pub),
      quad(np, kProv + "wasGeneratedAtTime", typed("2020-08-24T09:00:00", "dateTime"), pub),
      quad(m("item/284"), kRdf + "type", iri(kEfrbroo + "F4_Manifestation_Singleton"), fd),
      quad(m("item/284"), kEcrm + "P2_has_type", iri(m("type/disegno")), fd),
      quad(m("item/284"), kEcrm + "P55_has_current_location", iri(m("place/the-metropolitan-museum-of-art")), fd),
      quad(m("item/284"), kEfrbroo + "R42_is_representative_manifestation_singleton_for",
           iri(m("item/284-expression")), fd),
      quad(m("item/284"), kDct + "title", str("La partenza di Enea annunciata a Didone"), fd),
      quad(m("item/284"), "http://schema.org/image", typed("", "anyURI"), fd),
      quad(m("item/284"), kRdfs + "seeAlso", typed("https://www.metmuseum.org/art/collection/search/338013", "anyURI"),
           fd),
  };
  for (const char* k : {"addio", "didone", "enea", "eneide"})
    expected.push_back(quad(m("item/284"), kDct + "subject", str(k), fd));
  for (const auto& q : expected) require_quad(c, d, q);
  c.eq(d.graph(iri(head)).size(), 4u, "head graph size");
}

void cq_reproduction(Check& c) {
  auto f = build_fixture("didone");
  auto text = text::read_file((data_dir() / "queries" / "didone-works.rq").string());
  auto t0 = Clock::now();
  auto table = query::evaluate(query::parse_query(text), f.result.dataset);
  double took = seconds_since(t0);

  std::set<std::pair<std::string, std::string>> got, want{
      {"work/alighieri-dante-divina-commedia", "type/fonteMedievaleOModerna"},
      {"work/leopardi-giacomo-canti", "type/riscritturaLetteraria"},
      {"work/marmontel-jean-francois-didon", "type/riscritturaLetteraria"},
      {"work/petrarca-francesco-trionfi", "type/fonteMedievaleOModerna"},
      {"work/purcell-henry-dido-and-aeneas", "type/riscritturaLetteraria"},
      {"work/ungaretti-giuseppe-vita-d-un-uomo", "type/riscritturaLetteraria"},
      {"work/virgil-aeneis", "type/fonteClassica"},
  };
  std::set<std::pair<std::string, std::string>> want_full;
  for (const auto& [w, t] : want) want_full.insert({m(w), m(t)});
  for (const auto& row : table.rows) {
    if (row.size() != 2 || !rdf::is_iri(row[0]) || !rdf::is_iri(row[1])) {
      c.expect(false, "malformed row");
      continue;
    }
    got.insert({rdf::as_iri(row[0]).str(), rdf::as_iri(row[1]).str()});
  }
  c.eq(table.rows.size(), want.size(), "row count");
  c.expect(got == want_full, "row set differs");
  c.expect(took < 1.0, "query took " + std::to_string(took) + " s");
}

void query_oracle(Check& c) {
  gen::Rng rng(20200824);
  auto v = gen::query_vocabulary();
  int cases = 0, agree = 0;
  for (; cases < 500; ++cases) {
    auto d = gen::small_dataset(rng, v, 30);
    auto g = gen::random_query(rng, v, 4, 2, &d);
    auto table = query::evaluate(query::parse_query(gen::render(g)), d);
    query::sort_rows(table);
    if (table.rows == gen::oracle(g, d)) ++agree;
    else if (c.failures.size() < 3) c.failures.push_back("disagreement on:\n" + gen::render(g));
  }
  c.eq(agree, cases, "agreeing cases");
}

void serialization_roundtrip(Check& c) {
  std::vector<rdf::Dataset> sets;
  gen::Rng rng(4242);
  for (int i = 0; i < 200; ++i) {
    auto g = gen::rich_dataset(rng);
    rdf::Dataset d(rdf::default_prefixes(iri(kMyth)));
    d.insert_all(std::vector<rdf::Quad>(g.quads().begin(), g.quads().end()));
    sets.push_back(std::move(d));
  }
  sets.push_back(build_fixture("item284").result.dataset);
  sets.push_back(build_fixture("didone").result.dataset);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto& d = sets[i];
    auto back = rdf::parse_nquads(rdf::serialize_nquads(d));
    c.expect(back.quads() == d.quads(), "n-quads round trip differs on dataset " + std::to_string(i));
    c.expect(rdf::serialize_trig(d) == rdf::serialize_trig(d), "trig not deterministic on " + std::to_string(i));
  }
}

void integrity_suite(Check& c) {
  for (const char* name : {"item284", "didone"}) {
    auto f = build_fixture(name);
    auto rep = graph::check_integrity(f.result.dataset, pipeline::scheme_for(f.config));
    c.expect(rep.partition.empty(), std::string(name) + ": partition violations");
    c.expect(rep.head_arity.empty(), std::string(name) + ": head arity violations");
    c.expect(rep.dangling.empty(), std::string(name) + ": dangling references");
    c.eq(rep.nanopublications, f.result.report.nanopubs, std::string(name) + ": nanopublications");
  }

  auto dir = temp_dir("acceptance");
  auto cfg = "--config '" + (fixture_dir("didone") / "config.json").string() + "'";
  c.eq(cli(cfg + " build '" + (fixture_dir("didone") / "records.csv").string() + "' -o '" + dir.string() + "'"), 0,
       "cli build");
  auto suite = "'" + (data_dir() / "cq-suite.json").string() + "'";
  auto nq = "'" + (dir / "dataset.nq").string() + "'";
  c.eq(cli(cfg + " validate " + nq + " " + suite), 0, "validate on clean dataset");
  {
    std::ofstream out(dir / "dataset.nq", std::ios::app);
    out << "<" << m("item/284-expression") << "> <" << kEcrm << "P67_refers_to> <" << m("categ/undeclared-theme")
        << "> <" << m("assertion284") << "> .\n";
  }
  c.eq(cli(cfg + " validate " + nq + " " + suite), 3, "validate with dangling P67");
  fs::remove_all(dir);
}

void normalization_table(Check& c) {
  namespace n = normalize;
  c.eq(n::strip_serialization_noise("a:1:{i:0;s:17:\"Pittura vascolare\";};"), "Pittura vascolare", "noise");
  auto theme = n::split_theme("medea-figlicida:Medea figlicida");
  c.eq(theme.slug, "medea-figlicida", "theme slug");
  c.eq(theme.label, "Medea figlicida", "theme label");
  auto gamba = n::normalize_person("Gamba Hubert", n::NameOrder::surname_first);
  c.eq(gamba.slug, "gamba-hubert", "interpreter slug");
  c.eq(gamba.display_label, "Gamba, Hubert", "interpreter label");
  auto allegrini = n::normalize_person("Francesco Allegrini", n::NameOrder::given_first);
  c.eq(allegrini.slug, "allegrini-francesco", "author slug");
  c.eq(allegrini.display_label, "Allegrini, Francesco", "author label");
  auto place = n::split_location("Metropolitan Museum of Art, New York");
  c.eq(place.institution_label, "Metropolitan Museum of Art", "institution");
  c.eq(place.city_label.value_or(""), "New York", "city");
  auto century = n::parse_timespan("XVII secolo");
  c.eq(century.begin, "1600-01-01", "century begin");
  c.eq(century.end, "1699-12-31", "century end");
  c.expect(century.kind == n::SpanKind::secolo, "century kind");
  auto range = n::parse_timespan("1624-1663");
  c.eq(range.begin, "1624-01-01", "range begin");
  c.eq(range.end, "1663-12-31", "range end");
  c.expect(range.kind == n::SpanKind::anno, "range kind");
  c.eq(n::parse_interpretation_datetime("03/05/2019 07:57"), "2019-05-03T07:57:00", "dateTime");
  c.eq(n::slugify("The Metropolitan Museum of Art"), "the-metropolitan-museum-of-art", "place slug");
}

void citation_parser(Check& c) {
  auto registry = citeparse::WorkRegistry::load(data_dir() / "work-registry.json");
  auto aen = citeparse::parse_canonical_citation("Eneide, IV, 337-396", registry);
  c.eq(aen.urn, "urn:cts:latinLit:phi0690.phi003.perseus-eng1:4.337-4.396", "aeneid urn");
  c.eq(aen.perseus_url, "http://data.perseus.org/citations/urn:cts:latinLit:phi0690.phi003.perseus-eng1:4.337-4.396",
       "aeneid url");
  c.eq(aen.content_slug, "IV-337-396", "content slug");
  auto od = citeparse::parse_canonical_citation("Odissea, XIII, vv. 160-185", registry);
  c.eq(citeparse::split_urn(od.urn).second, "13.160-13.185", "odyssey passage");
  c.eq(od.book.value_or(0), 13, "odyssey book");

  std::mt19937 rng(100);
  const std::vector<std::string> names{"Eneide", "Odissea", "Iliade", "Metamorfosi"};
  for (int i = 0; i < 100; ++i) {
    int book = 1 + rng() % 24, a = 1 + rng() % 900, b = a + 1 + rng() % 120;
    const auto& name = names[rng() % names.size()];
    std::string raw = name + ", " + citeparse::int_to_roman(book) + ", " + std::to_string(a) + "-" + std::to_string(b);
    try {
      auto ref = citeparse::parse_canonical_citation(raw, registry);
      c.eq(citeparse::render_citation(name, ref), raw, "render");
      auto parts = citeparse::parse_passage(citeparse::split_urn(ref.urn).second);
      c.expect(parts && parts->book == book && parts->line_start == a && parts->line_end == b, "urn passage of " + raw);
    } catch (const Error& e) {
      c.failures.push_back(raw + ": " + e.what());
    }
  }
}

void export_properties(Check& c) {
  auto f = build_fixture("didone");
  auto scheme = pipeline::scheme_for(f.config);
  auto cat = exporter::export_catalog(f.result.dataset, scheme);

  auto card_labels = [](const exporter::CatalogCard& card) {
    std::map<std::string, std::set<std::string>> out;
    for (const auto& t : card.factual.typology) out["Typology"].insert(t);
    if (card.factual.collocation) out["Collection"].insert(card.factual.collocation->institution);
    if (card.factual.period.century) out["Period"].insert(*card.factual.period.century);
    if (card.factual.period.epoch) out["Epoch"].insert(*card.factual.period.epoch);
    for (const auto& t : card.assertion.categories) out["Category"].insert(t);
    for (const auto& r : card.assertion.general_references) out["Source-Type"].insert(r.type);
    if (!card.assertion.canonical_citations.empty())
      out["Source-Type"].insert(graph::category_label(ingest::SourceType::FonteClassica));
    if (!card.provenance.performer.empty()) out["Interpreter"].insert(card.provenance.performer);
    return out;
  };

  std::map<std::string, std::map<std::string, std::set<std::string>>> grouped;
  for (const auto& card : cat.cards)
    for (const auto& [facet, labels] : card_labels(card))
      for (const auto& l : labels) grouped[facet][l].insert(card.item_id);
  std::map<std::string, std::map<std::string, std::string>> label_of;
  for (const auto& [name, values] : cat.facets.facets) {
    std::map<std::string, std::set<std::string>> got;
    for (const auto& v : values) {
      c.eq(v.count, v.item_ids.size(), name + "/" + v.value_label + " count");
      got[v.value_label].insert(v.item_ids.begin(), v.item_ids.end());
      label_of[name][v.value_id] = v.value_label;
    }
    c.expect(got == grouped[name], "facet " + name + " differs from group-by");
  }

  auto bundle = exporter::export_storytelling(f.result.dataset, scheme, "virgil-aeneis", {f.config.bucket_width});
  std::regex passage(R"(phi0690\.phi003[^:]*:(\d+)\.(\d+)(?:-\d+\.(\d+))?$)");
  std::size_t expected = 0, total = 0;
  int w = f.config.bucket_width;
  for (const auto& card : cat.cards)
    for (const auto& cit : card.assertion.canonical_citations) {
      std::smatch mm;
      if (!std::regex_search(cit.perseus_url, mm, passage)) continue;
      int lo = std::stoi(mm[2]), hi = mm[3].matched ? std::stoi(mm[3]) : lo;
      expected += static_cast<std::size_t>((hi - 1) / w - (lo - 1) / w + 1);
    }
  for (const auto& cell : bundle.heatmap) total += cell.count;
  c.eq(total, expected, "heatmap total");

  std::mt19937 rng(9);
  for (int i = 0; i < 100; ++i) {
    exporter::FilterState state;
    for (const auto& [name, values] : cat.facets.facets) {
      if (rng() % 2) continue;
      for (const auto& v : values)
        if (rng() % 3 == 0) state[name].insert(v.value_id);
    }
    std::vector<std::string> want;
    for (const auto& card : cat.cards) {
      auto labels = card_labels(card);
      bool ok = true;
      for (const auto& [facet, sel] : state) {
        bool any = false;
        for (const auto& id : sel) any = any || labels[facet].contains(label_of[facet][id]);
        ok = ok && (sel.empty() || any);
      }
      if (ok) want.push_back(card.item_id);
    }
    c.expect(exporter::filter_items(cat, state) == want, "filter state " + std::to_string(i));
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"item 284 conversions", item284_fidelity},
      {"item 284 nanopublication", nanopub284_fidelity},
      {"theme query reproduction", cq_reproduction},
      {"query engine oracle agreement", query_oracle},
      {"serialization round trip", serialization_roundtrip},
      {"integrity suite", integrity_suite},
      {"normalization table", normalization_table},
      {"citation parser", citation_parser},
      {"export properties", export_properties},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Check c;
    try {
      run(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (c.failures.empty() ? "[PASS] " : "[FAIL] ") << name << "\n";
    for (const auto& f : c.failures) std::cout << "       " << f << "\n";
    failed += !c.failures.empty();
  }
  std::cout << (std::size(criteria) - failed) << "/" << std::size(criteria) << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
