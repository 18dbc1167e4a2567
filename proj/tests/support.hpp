#pragma once

// Shared helpers for the test binaries: fixture loading and small utilities.

#include <unistd.h>

#include <filesystem>
#include <string>
#include <vector>

#include "mythforge/config.hpp"
#include "mythforge/ingest.hpp"
#include "mythforge/pipeline.hpp"
#include "mythforge/rdf.hpp"
#include "mythforge/serialize.hpp"
#include "mythforge/text.hpp"

namespace testsupport {

namespace fs = std::filesystem;

inline fs::path source_dir() { return fs::path(MYTHFORGE_SOURCE_DIR); }
inline fs::path fixture_dir(const std::string& name) { return source_dir() / "fixtures" / name; }
inline fs::path data_dir() { return source_dir() / "data"; }
inline fs::path test_data(const std::string& name) { return source_dir() / "tests" / "data" / name; }

struct Fixture {
  mythforge::config::PipelineConfig config;
  mythforge::pipeline::BuildResult result;
};

// Runs the whole pipeline over fixtures/<name>/records.csv.
inline Fixture build_fixture(const std::string& name) {
  using namespace mythforge;
  auto cfg = config::load(fixture_dir(name) / "config.json");
  auto res = pipeline::load_resources(cfg);
  auto records = ingest::parse_table(fixture_dir(name) / "records.csv", res.mapping);
  auto reconciler = pipeline::make_reconciler(cfg, res);
  auto result = pipeline::build(records, cfg, res, *reconciler);
  return {std::move(cfg), std::move(result)};
}

inline mythforge::rdf::Iri iri(const std::string& s) { return mythforge::rdf::Iri(s); }

inline const std::string kMyth = "https://purl.org/vpq/mythlod/data/";
inline const std::string kEcrm = "http://erlangen-crm.org/current/";
inline const std::string kEfrbroo = "http://erlangen-crm.org/efrbroo/";
inline const std::string kCrm = "http://www.cidoc-crm.org/cidoc-crm/";
inline const std::string kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline const std::string kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline const std::string kXsd = "http://www.w3.org/2001/XMLSchema#";
inline const std::string kProv = "http://www.w3.org/ns/prov#";
inline const std::string kNp = "http://www.nanopub.org/nschema#";
inline const std::string kHico = "http://purl.org/emmedi/hico/";
inline const std::string kHucit = "http://purl.org/net/hucit#";
inline const std::string kDct = "http://purl.org/dc/terms/";
inline const std::string kOwl = "http://www.w3.org/2002/07/owl#";
inline const std::string kWdt = "http://www.wikidata.org/prop/direct/";

inline mythforge::rdf::Quad quad(const std::string& s, const std::string& p,
                                 const mythforge::rdf::Term& o, const std::string& g) {
  return {iri(s), iri(p), o, iri(g)};
}

inline mythforge::rdf::Literal typed(const std::string& lex, const std::string& xsd_local) {
  return mythforge::rdf::Literal(lex, iri(kXsd + xsd_local));
}

inline fs::path temp_dir(const std::string& tag) {
  auto dir = fs::temp_directory_path() / ("mythforge-test-" + tag + "-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace testsupport
