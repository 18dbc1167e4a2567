#include <gtest/gtest.h>

#include "mythforge/error.hpp"
#include "mythforge/graph.hpp"
#include "support.hpp"

using namespace mythforge;
using namespace testsupport;

namespace {

struct Inputs {
  config::PipelineConfig cfg;
  pipeline::Resources res;
  std::vector<ingest::RawRecord> records;
};

Inputs inputs(const std::string& name) {
  auto cfg = config::load(fixture_dir(name) / "config.json");
  auto res = pipeline::load_resources(cfg);
  auto records = ingest::parse_table(fixture_dir(name) / "records.csv", res.mapping);
  return {std::move(cfg), std::move(res), std::move(records)};
}

pipeline::BuildResult run(const Inputs& in) {
  auto rec = pipeline::make_reconciler(in.cfg, in.res);
  return pipeline::build(in.records, in.cfg, in.res, *rec);
}

}  // namespace

TEST(Pipeline, SingleRecordBuild) {
  auto f = build_fixture("item284");
  const auto& d = f.result.dataset;
  EXPECT_EQ(f.result.report.records, 1u);
  EXPECT_EQ(f.result.report.nanopubs, 1u);
  EXPECT_TRUE(f.result.report.errors.empty());
  EXPECT_EQ(f.result.report.quads, d.size());
  std::string fd = kMyth + "factual_data";
  EXPECT_TRUE(d.contains(quad(kMyth + "item/284", kEcrm + "P2_has_type", iri(kMyth + "type/pittura-vascolare"), fd)));
  EXPECT_TRUE(d.contains(quad(kMyth + "item/284-expression", kEcrm + "P67_refers_to",
                              iri(kMyth + "categ/medea-figlicida"), kMyth + "assertion284")));
  EXPECT_TRUE(d.contains(quad(kMyth + "cit/90", kEcrm + "P67_refers_to", iri(kMyth + "categ/medea-figlicida"),
                              kMyth + "assertion284")));
  EXPECT_TRUE(graph::check_integrity(d, pipeline::scheme_for(f.config)).ok());
}

TEST(Pipeline, Deterministic) {
  auto a = build_fixture("didone");
  auto b = build_fixture("didone");
  EXPECT_EQ(rdf::serialize_nquads(a.result.dataset), rdf::serialize_nquads(b.result.dataset));
  EXPECT_EQ(rdf::serialize_trig(a.result.dataset), rdf::serialize_trig(b.result.dataset));
  EXPECT_EQ(a.result.report.to_json(), b.result.report.to_json());
}

TEST(Pipeline, FixtureCounts) {
  auto f = build_fixture("didone");
  EXPECT_EQ(f.result.report.records, 4u);
  EXPECT_EQ(f.result.report.nanopubs, 4u);
  EXPECT_EQ(f.result.nanopubs.size(), 4u);
  EXPECT_TRUE(f.result.report.errors.empty());
  auto rep = graph::check_integrity(f.result.dataset, pipeline::scheme_for(f.config));
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.nanopublications, 4u);
}

TEST(Pipeline, BadDateIsReportedAndRecordStillEmitted) {
  auto in = inputs("item284");
  in.records[0].interpretation_date_raw = "yesterday";
  auto r = run(in);
  EXPECT_EQ(r.report.errors_by_class()["TimeFormatError"], 1u);
  EXPECT_EQ(r.report.nanopubs, 1u);
  EXPECT_TRUE(r.dataset.contains(quad(kMyth + "item/284", kDct + "title", rdf::Literal::string("Medea uccide i figli"),
                                      kMyth + "factual_data")));
  EXPECT_TRUE(graph::check_integrity(r.dataset, pipeline::scheme_for(in.cfg)).ok());
}

TEST(Pipeline, MissingThemeSkipsNanopub) {
  auto in = inputs("didone");
  in.records[1].theme_raw = "";
  auto r = run(in);
  EXPECT_EQ(r.report.errors_by_class()["EmptyField"], 1u);
  EXPECT_EQ(r.report.nanopubs, 3u);
  EXPECT_TRUE(r.dataset.graph(iri(kMyth + "head301")).empty());
  EXPECT_TRUE(graph::check_integrity(r.dataset, pipeline::scheme_for(in.cfg)).ok());
}

TEST(Pipeline, UnparseableCitationIsReported) {
  auto in = inputs("item284");
  in.records[0].classical_sources_raw = {"Eneide, IV, 337-"};
  auto r = run(in);
  EXPECT_GE(r.report.errors.size(), 1u);
  EXPECT_EQ(r.report.nanopubs, 1u);
  EXPECT_TRUE(graph::check_integrity(r.dataset, pipeline::scheme_for(in.cfg)).ok());
}

TEST(Pipeline, DuplicateItemIdThrows) {
  auto in = inputs("didone");
  in.records[1].item_id = in.records[0].item_id;
  EXPECT_THROW(run(in), IntegrityError);
}

TEST(Pipeline, ReportJson) {
  auto f = build_fixture("didone");
  auto j = f.result.report.to_json();
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["records"], 4);
  EXPECT_TRUE(j["errors"].is_object());
}
