#include <gtest/gtest.h>

#include "mythforge/error.hpp"
#include "mythforge/graph.hpp"
#include "mythforge/vocab.hpp"
#include "support.hpp"

using namespace mythforge;
using namespace mythforge::graph;
using namespace testsupport;
using rdf::Literal;

namespace {

Scheme scheme() { return Scheme(rdf::Iri(kMyth)); }

BuildOptions options() {
  BuildOptions o;
  o.publisher = iri(kMyth + "person/dharc");
  o.build_time = "2020-08-24T09:00:00";
  return o;
}

InterpretationRecord interp284() {
  InterpretationRecord r;
  r.item_id = "284";
  r.interpreter = normalize::PersonRef{"Morelli Martina", "Morelli, Martina", "morelli-martina"};
  r.generated_at = "2019-05-03T07:57:00";
  r.interpretation_type = "iconographic-approach";
  r.interpretation_criterion = "sources-association";
  r.theme = normalize::ThemeRef{"enea-abbandona-didone", "Enea abbandona Didone"};
  r.cited = {{Cited::Kind::citation, "virgil-aeneis", 90}, {Cited::Kind::work, "leopardi-giacomo-canti", 0}};
  return r;
}

std::size_t count_in(const std::vector<rdf::Quad>& quads, const rdf::Iri& g) {
  return std::count_if(quads.begin(), quads.end(), [&](const rdf::Quad& q) { return q.graph == g; });
}

bool has(const std::vector<rdf::Quad>& quads, const rdf::Quad& q) {
  return std::find(quads.begin(), quads.end(), q) != quads.end();
}

// A minimal well-formed dataset: one object, one nanopub.
rdf::Dataset minimal_dataset() {
  auto s = scheme();
  EntityIndex idx;
  idx.types["disegno"] = "Disegno";
  idx.themes["enea-abbandona-didone"] = "Enea abbandona Didone";
  idx.persons["morelli-martina"] = {reconcile::EntityKind::person, "morelli-martina", "Morelli, Martina", {}, {}, {}};
  idx.persons["dharc"] = {reconcile::EntityKind::person, "dharc", "DHARC", {}, {}, {}};
  idx.works["leopardi-giacomo-canti"] = {
      {reconcile::EntityKind::work, "leopardi-giacomo-canti", "Canti", {}, {}, {}},
      ingest::SourceType::RiscritturaLetteraria, std::nullopt};
  idx.vocabulary["iconographic-approach"] = "Iconographical Approach";
  idx.vocabulary["sources-association"] = "Associazione di Fonti";
  ObjectRecord o;
  o.item_id = "284";
  o.title = "La partenza di Enea annunciata a Didone";
  o.typologies = {"disegno"};
  auto quads = build_factual_graph({o}, idx, s, options());
  auto i = interp284();
  i.cited = {{Cited::Kind::work, "leopardi-giacomo-canti", 0}};
  auto [np, nq] = build_nanopub(i, s, options());
  rdf::Dataset d(rdf::default_prefixes(s.base()));
  d.insert_all(quads);
  d.insert_all(nq);
  return d;
}

}  // namespace

TEST(Scheme, IdsMatchReferenceLayout) {
  auto s = scheme();
  EXPECT_EQ(s.head("284").str(), kMyth + "head284");
  EXPECT_EQ(s.nanopub("284").str(), kMyth + "np-284");
  EXPECT_EQ(s.assertion("284").str(), kMyth + "assertion284");
  EXPECT_EQ(s.provenance("284").str(), kMyth + "provenance284");
  EXPECT_EQ(s.pubinfo("284").str(), kMyth + "pubInfo284");
  EXPECT_EQ(s.int_act("284").str(), kMyth + "int-act/284");
  EXPECT_EQ(s.expression("284").str(), kMyth + "item/284-expression");
  EXPECT_EQ(s.citation(90).str(), kMyth + "cit/90");
  EXPECT_EQ(s.content("IV-337-396").str(), kMyth + "str/IV-337-396");
  EXPECT_EQ(s.factual_data().str(), kMyth + "factual_data");
  EXPECT_EQ(s.local_id(iri(kMyth + "item/284"), "item/"), "284");
  EXPECT_EQ(s.local_id(iri("urn:x:item/284"), "item/"), std::nullopt);
}

TEST(Categories, SlugsAndLabels) {
  EXPECT_EQ(category_slug(ingest::SourceType::FonteClassica), "fonteClassica");
  EXPECT_EQ(category_slug(ingest::SourceType::FonteMedievaleOModerna), "fonteMedievaleOModerna");
  EXPECT_EQ(category_slug(ingest::SourceType::RiscritturaLetteraria), "riscritturaLetteraria");
  EXPECT_EQ(category_from_slug("riscritturaCinematografica"), ingest::SourceType::RiscritturaCinematografica);
  EXPECT_EQ(category_from_slug("nope"), std::nullopt);
}

TEST(Nanopub, FourGraphsForItem284) {
  auto s = scheme();
  auto [np, quads] = build_nanopub(interp284(), s, options());
  EXPECT_EQ(np.head_graph, s.head("284"));
  EXPECT_EQ(count_in(quads, s.head("284")), 4u);
  auto a = s.assertion("284");
  auto theme = iri(kMyth + "categ/enea-abbandona-didone");
  auto p67 = iri(kEcrm + "P67_refers_to");
  EXPECT_TRUE(has(quads, {s.expression("284"), p67, theme, a}));
  EXPECT_TRUE(has(quads, {s.citation(90), p67, theme, a}));
  EXPECT_TRUE(has(quads, {iri(kMyth + "work/leopardi-giacomo-canti"), p67, theme, a}));
  // Parent work of the cited passage is asserted too.
  EXPECT_TRUE(has(quads, {iri(kMyth + "work/virgil-aeneis"), p67, theme, a}));

  auto p = s.provenance("284");
  EXPECT_TRUE(has(quads, {a, iri(kProv + "wasGeneratedAtTime"), typed("2019-05-03T07:57:00", "dateTime"), p}));
  EXPECT_TRUE(has(quads, {a, iri(kProv + "wasGeneratedBy"), s.int_act("284"), p}));
  EXPECT_TRUE(has(quads, {s.int_act("284"), iri(kRdf + "type"), iri(kProv + "InterpretationAct"), p}));
  EXPECT_TRUE(has(quads, {s.int_act("284"), iri(kProv + "wasAttributedTo"), iri(kMyth + "person/morelli-martina"), p}));
  EXPECT_TRUE(has(quads, {s.nanopub("284"), iri(kProv + "wasGeneratedAtTime"), typed("2020-08-24T09:00:00", "dateTime"),
                          s.pubinfo("284")}));
}

TEST(Nanopub, ZeroCitedSourcesGivesOneAssertion) {
  auto s = scheme();
  auto i = interp284();
  i.cited.clear();
  auto [np, quads] = build_nanopub(i, s, options());
  EXPECT_EQ(count_in(quads, s.assertion("284")), 1u);
}

TEST(Nanopub, HicoSwitch) {
  auto s = scheme();
  auto o = options();
  o.act_namespace = ActNamespace::hico;
  auto [np, quads] = build_nanopub(interp284(), s, o);
  EXPECT_TRUE(has(quads, {s.int_act("284"), iri(kRdf + "type"), iri(kHico + "InterpretationAct"), s.provenance("284")}));
}

TEST(Nanopub, MissingInterpreterOrTheme) {
  auto s = scheme();
  auto i = interp284();
  i.interpreter.reset();
  EXPECT_THROW(build_nanopub(i, s, options()), IntegrityError);
  auto j = interp284();
  j.theme.reset();
  EXPECT_THROW(build_nanopub(j, s, options()), IntegrityError);
}

TEST(Factual, EmptyRecordListGivesEmptyGraph) {
  EXPECT_TRUE(build_factual_graph({}, {}, scheme(), options()).empty());
}

TEST(Factual, TimeSpanQuads) {
  auto s = scheme();
  EntityIndex idx;
  idx.timespans["xvii-secolo"] = {"xvii-secolo", normalize::parse_timespan("XVII secolo")};
  ObjectRecord o;
  o.item_id = "1";
  o.title = "t";
  o.timespans = {"xvii-secolo"};
  auto quads = build_factual_graph({o}, idx, s, options());
  auto t = iri(kMyth + "time/xvii-secolo");
  auto g = s.factual_data();
  EXPECT_TRUE(has(quads, {t, iri(kRdfs + "label"), Literal::string("XVII secolo"), g}));
  EXPECT_TRUE(has(quads, {t, iri(kEcrm + "P2_has_type"), iri(kMyth + "type/secolo"), g}));
  EXPECT_TRUE(has(quads, {t, iri(kCrm + "P82a_begin_of_the_begin"), typed("1600-01-01", "date"), g}));
  EXPECT_TRUE(has(quads, {t, iri(kCrm + "P82b_end_of_the_end"), typed("1699-12-31", "date"), g}));
  EXPECT_TRUE(has(quads, {t, iri(kRdf + "type"), iri(kEcrm + "E52_Time-Span"), g}));
}

TEST(Factual, MissingEntityIsIntegrityError) {
  ObjectRecord o;
  o.item_id = "1";
  o.title = "t";
  o.typologies = {"disegno"};
  o.location = "nowhere";
  try {
    build_factual_graph({o}, {}, scheme(), options());
    FAIL();
  } catch (const IntegrityError& e) {
    EXPECT_EQ(e.offenders().size(), 2u);
  }
}

TEST(Factual, SkipEmptyLiterals) {
  ObjectRecord o;
  o.item_id = "1";
  o.title = "t";
  auto with = build_factual_graph({o}, {}, scheme(), options());
  auto opts = options();
  opts.skip_empty_literals = true;
  auto without = build_factual_graph({o}, {}, scheme(), opts);
  auto image = iri("http://schema.org/image");
  auto count = [&](const auto& qs) {
    return std::count_if(qs.begin(), qs.end(), [&](const rdf::Quad& q) { return q.predicate == image; });
  };
  EXPECT_EQ(count(with), 1);
  EXPECT_EQ(count(without), 0);
}

TEST(Integrity, MinimalDatasetPasses) {
  auto d = minimal_dataset();
  auto r = check_integrity(d, scheme());
  EXPECT_TRUE(r.ok()) << (r.dangling.empty() ? "" : r.dangling[0]);
  EXPECT_EQ(r.nanopublications, 1u);
  EXPECT_EQ(find_nanopublications(d, scheme()).size(), 1u);
}

TEST(Integrity, DanglingP67) {
  auto d = minimal_dataset();
  auto s = scheme();
  d.insert({s.expression("284"), iri(kEcrm + "P67_refers_to"), iri(kMyth + "categ/ghost"), s.assertion("284")});
  auto r = check_integrity(d, s);
  ASSERT_EQ(r.dangling.size(), 1u);
  EXPECT_NE(r.dangling[0].find("categ/ghost"), std::string::npos);
  EXPECT_THROW(require_integrity(d, s), IntegrityError);
}

TEST(Integrity, StrayGraphBreaksPartition) {
  auto d = minimal_dataset();
  d.insert({iri("urn:x:s"), iri("urn:x:p"), iri("urn:x:o"), iri(kMyth + "somewhere")});
  EXPECT_FALSE(check_integrity(d, scheme()).partition.empty());
}

TEST(Integrity, HeadArity) {
  auto d = minimal_dataset();
  auto s = scheme();
  d.insert({s.nanopub("284"), iri(kRdfs + "comment"), Literal::string("extra"), s.head("284")});
  EXPECT_FALSE(check_integrity(d, s).head_arity.empty());

  auto e = minimal_dataset();
  rdf::Dataset pruned(e.prefixes());
  for (const auto& q : e.quads())
    if (q.graph != s.pubinfo("284")) pruned.insert(q);
  EXPECT_FALSE(check_integrity(pruned, s).ok());
}

TEST(Integrity, GraphClaimedTwice) {
  auto d = minimal_dataset();
  auto s = scheme();
  auto np = iri(kMyth + "np-999");
  auto h = s.head("999");
  d.insert({np, iri(kRdf + "type"), iri(kNp + "Nanopublication"), h});
  d.insert({np, iri(kNp + "hasAssertion"), s.assertion("284"), h});
  d.insert({np, iri(kNp + "hasProvenance"), s.provenance("284"), h});
  d.insert({np, iri(kNp + "hasPublicationInfo"), s.pubinfo("284"), h});
  EXPECT_FALSE(check_integrity(d, s).partition.empty());
}
