#pragma once

// ingest -> normalize -> citeparse -> reconcile -> graph-build.

#include <json.hpp>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mythforge/citeparse.hpp"
#include "mythforge/config.hpp"
#include "mythforge/graph.hpp"
#include "mythforge/ingest.hpp"
#include "mythforge/rdf.hpp"
#include "mythforge/reconcile.hpp"

namespace mythforge::pipeline {

struct Resources {
  ingest::ColumnMapping mapping;
  citeparse::WorkRegistry registry;
  reconcile::AliasTable aliases;
  reconcile::AuthorityFixture fixture;
  citeparse::ReferenceOverrides overrides;
};

Resources load_resources(const config::PipelineConfig& cfg);

// Reconciler wired with the live clients when the config asks for online mode.
std::unique_ptr<reconcile::Reconciler> make_reconciler(const config::PipelineConfig& cfg,
                                                       const Resources& res);

struct RecordError {
  std::size_t row = 0;
  std::string item_id;
  std::string kind;
  std::string message;
};

struct BuildReport {
  std::size_t records = 0;
  std::size_t quads = 0;
  std::size_t nanopubs = 0;
  std::size_t citations = 0;
  std::size_t review_candidates = 0;
  std::size_t network_failures = 0;
  std::vector<RecordError> errors;

  std::map<std::string, std::size_t> errors_by_class() const;
  nlohmann::json to_json() const;
};

struct BuildResult {
  rdf::Dataset dataset;
  std::vector<graph::Nanopublication> nanopubs;
  std::vector<reconcile::ReviewRow> review;
  BuildReport report;
};

// Record-level failures (bad dates, unparseable citations, missing theme) are
// collected in the report; structural violations throw IntegrityError.
BuildResult build(const std::vector<ingest::RawRecord>& records, const config::PipelineConfig& cfg,
                  const Resources& res, reconcile::Reconciler& reconciler);

graph::Scheme scheme_for(const config::PipelineConfig& cfg);

}  // namespace mythforge::pipeline
