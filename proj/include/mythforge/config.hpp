#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "mythforge/graph.hpp"
#include "mythforge/normalize.hpp"
#include "mythforge/rdf.hpp"
#include "mythforge/reconcile.hpp"

namespace mythforge::config {

struct VocabularyTerm {
  std::string slug;
  std::string label;
};

struct PipelineConfig {
  std::filesystem::path file;  // where the config was read from, if anywhere
  rdf::Iri base_iri{"https://purl.org/vpq/mythlod/data/"};

  // Relative paths are resolved against the config file's directory.
  std::filesystem::path column_mapping;
  std::filesystem::path work_registry;
  std::filesystem::path alias_table;
  std::filesystem::path authority_fixture;
  std::optional<std::filesystem::path> reference_overrides;

  normalize::NameOrder artwork_author_order = normalize::NameOrder::given_first;
  normalize::NameOrder interpreter_order = normalize::NameOrder::surname_first;
  normalize::NameOrder source_author_order = normalize::NameOrder::given_first;

  std::string publisher_slug = "dharc";
  std::string publisher_label = "DHARC";
  std::string build_time = "2020-08-24T09:00:00";
  VocabularyTerm interpretation_type{"iconographic-approach", "Iconographical Approach"};
  VocabularyTerm interpretation_criterion{"sources-association", "Associazione di Fonti"};
  graph::ActNamespace act_namespace = graph::ActNamespace::prov;
  int citation_id_start = 1;

  reconcile::Mode mode = reconcile::Mode::offline;
  reconcile::EndpointSettings endpoints;

  int bucket_width = 50;
  bool skip_empty_literals = false;
  std::string default_work = "virgil-aeneis";
};

// Throws ConfigError for malformed JSON, unknown enum values, or bad IRIs.
PipelineConfig from_json_text(std::string_view text, const std::filesystem::path& base_dir);
PipelineConfig load(const std::filesystem::path& path);

// Every referenced path must exist; online mode needs at least one endpoint.
// Throws ConfigError naming the first offending path or field.
void validate(const PipelineConfig& cfg);

// Environment overrides for the live endpoints.
void apply_env_overrides(PipelineConfig& cfg);

}  // namespace mythforge::config
