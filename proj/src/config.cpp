#include "mythforge/config.hpp"

#include <cstdlib>
#include <json.hpp>

#include "mythforge/error.hpp"
#include "mythforge/text.hpp"

namespace mythforge::config {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

normalize::NameOrder order(const json& j, const char* key, normalize::NameOrder fallback) {
  if (!j.contains(key)) return fallback;
  auto o = normalize::name_order_from_string(j[key].get<std::string>());
  if (!o) throw ConfigError(std::string("name_order.") + key + ": expected surname-first or given-first");
  return *o;
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

PipelineConfig from_json_text(std::string_view text, const fs::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  PipelineConfig c;
  try {
    if (j.contains("base_iri")) c.base_iri = rdf::Iri(j["base_iri"].get<std::string>());
    if (!c.base_iri.str().ends_with("/")) throw ConfigError("base_iri must end with '/'");
    c.column_mapping = resolve(base_dir, j.at("column_mapping").get<std::string>());
    c.work_registry = resolve(base_dir, j.at("work_registry").get<std::string>());
    c.alias_table = resolve(base_dir, j.at("alias_table").get<std::string>());
    c.authority_fixture = resolve(base_dir, j.at("authority_fixture").get<std::string>());
    if (j.contains("reference_overrides"))
      c.reference_overrides = resolve(base_dir, j["reference_overrides"].get<std::string>());
    if (j.contains("name_order")) {
      const auto& n = j["name_order"];
      c.artwork_author_order = order(n, "artwork_author", c.artwork_author_order);
      c.interpreter_order = order(n, "interpreter", c.interpreter_order);
      c.source_author_order = order(n, "source_author", c.source_author_order);
    }
    if (j.contains("publisher")) {
      c.publisher_slug = j["publisher"].value("slug", c.publisher_slug);
      c.publisher_label = j["publisher"].value("label", c.publisher_label);
    }
    c.build_time = j.value("build_time", c.build_time);
    rdf::Literal(c.build_time, rdf::Iri("http://www.w3.org/2001/XMLSchema#dateTime"));
    if (j.contains("interpretation_type"))
      c.interpretation_type = {j["interpretation_type"].at("slug"), j["interpretation_type"].at("label")};
    if (j.contains("interpretation_criterion"))
      c.interpretation_criterion = {j["interpretation_criterion"].at("slug"),
                                    j["interpretation_criterion"].at("label")};
    if (j.contains("act_namespace")) {
      auto ns = j["act_namespace"].get<std::string>();
      if (ns == "prov") c.act_namespace = graph::ActNamespace::prov;
      else if (ns == "hico") c.act_namespace = graph::ActNamespace::hico;
      else throw ConfigError("act_namespace: expected prov or hico");
    }
    c.citation_id_start = j.value("citation_id_start", c.citation_id_start);
    if (j.contains("mode")) {
      auto m = reconcile::mode_from_string(j["mode"].get<std::string>());
      if (!m) throw ConfigError("mode: expected offline or online");
      c.mode = *m;
    }
    if (j.contains("endpoints")) {
      const auto& e = j["endpoints"];
      c.endpoints.recon_url = e.value("recon_url", "");
      c.endpoints.viaf_url = e.value("viaf_url", "");
      c.endpoints.timeout = std::chrono::milliseconds(e.value("timeout_ms", 5000));
      c.endpoints.max_concurrent = e.value("max_concurrent", std::size_t{4});
      c.endpoints.min_interval = std::chrono::milliseconds(e.value("min_interval_ms", 200));
    }
    c.bucket_width = j.value("bucket_width", c.bucket_width);
    if (c.bucket_width <= 0) throw ConfigError("bucket_width must be positive");
    c.skip_empty_literals = j.value("skip_empty_literals", c.skip_empty_literals);
    c.default_work = j.value("default_work", c.default_work);
  } catch (const ConfigError&) {
    throw;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const Error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

PipelineConfig load(const fs::path& path) {
  if (!fs::is_regular_file(path)) throw ConfigError("config file not found: " + path.string());
  auto c = from_json_text(text::read_file(path.string()), path.parent_path());
  c.file = path;
  return c;
}

void validate(const PipelineConfig& c) {
  auto need = [](const fs::path& p, const char* what) {
    if (!fs::is_regular_file(p)) throw ConfigError(std::string(what) + " not found: " + p.string());
  };
  need(c.column_mapping, "column mapping");
  need(c.work_registry, "work registry");
  need(c.alias_table, "alias table");
  need(c.authority_fixture, "authority fixture");
  if (c.reference_overrides) need(*c.reference_overrides, "reference overrides");
  if (c.mode == reconcile::Mode::online && c.endpoints.recon_url.empty() && c.endpoints.viaf_url.empty())
    throw ConfigError("online mode needs endpoints.recon_url or endpoints.viaf_url");
}

void apply_env_overrides(PipelineConfig& c) {
  if (const char* v = std::getenv("MYTHFORGE_RECON_URL")) c.endpoints.recon_url = v;
  if (const char* v = std::getenv("MYTHFORGE_VIAF_URL")) c.endpoints.viaf_url = v;
}

}  // namespace mythforge::config
