#include "mythforge/commands.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <json.hpp>
#include <ostream>

#include "mythforge/cq.hpp"
#include "mythforge/error.hpp"
#include "mythforge/export.hpp"
#include "mythforge/pipeline.hpp"
#include "mythforge/query.hpp"
#include "mythforge/serialize.hpp"
#include "mythforge/text.hpp"

namespace mythforge::commands {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

rdf::Dataset load_dataset(const config::PipelineConfig& cfg, const fs::path& path) {
  if (!fs::is_regular_file(path)) throw ConfigError("dataset not found: " + path.string());
  auto d = rdf::parse_nquads(text::read_file(path.string()));
  d.prefixes() = rdf::default_prefixes(cfg.base_iri);
  return d;
}

void write(const fs::path& path, std::string_view content) { text::write_file(path.string(), content); }

// Maps the error hierarchy onto exit codes.
template <typename F>
int guarded(Streams io, F&& f) {
  try {
    return f();
  } catch (const IntegrityError& e) {
    io.err << "integrity error: " << e.what() << "\n";
    return kIntegrity;
  } catch (const Error& e) {
    io.err << e.kind() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace

int cmd_build(const config::PipelineConfig& cfg, const fs::path& input, const fs::path& out_dir,
              Streams io) {
  return guarded(io, [&] {
    config::validate(cfg);
    if (!fs::is_regular_file(input)) throw ConfigError("input table not found: " + input.string());
    auto res = pipeline::load_resources(cfg);
    auto records = ingest::parse_table(input, res.mapping);
    auto reconciler = pipeline::make_reconciler(cfg, res);
    auto result = pipeline::build(records, cfg, res, *reconciler);

    fs::create_directories(out_dir);
    write(out_dir / "dataset.trig", rdf::serialize_trig(result.dataset));
    write(out_dir / "dataset.nq", rdf::serialize_nquads(result.dataset));
    write(out_dir / "build-report.json", result.report.to_json().dump(2) + "\n");
    if (!result.review.empty()) write(out_dir / "review.csv", reconcile::write_review_csv(result.review));
    else if (fs::exists(out_dir / "review.csv")) fs::remove(out_dir / "review.csv");

    io.out << "records: " << result.report.records << "\n"
           << "quads: " << result.report.quads << "\n"
           << "nanopublications: " << result.report.nanopubs << "\n"
           << "record errors: " << result.report.errors.size() << "\n";
    for (const auto& [kind, n] : result.report.errors_by_class()) io.out << "  " << kind << ": " << n << "\n";
    if (!result.review.empty()) io.out << "review candidates: " << result.review.size() << "\n";
    return static_cast<int>(kOk);
  });
}

int cmd_validate(const config::PipelineConfig& cfg, const fs::path& dataset_path, const fs::path& suite_path,
                 const std::optional<fs::path>& report_dir, Streams io) {
  return guarded(io, [&] {
    auto dataset = load_dataset(cfg, dataset_path);
    if (!fs::is_regular_file(suite_path)) throw ConfigError("CQ suite not found: " + suite_path.string());
    auto suite = cq::load_suite(suite_path);
    auto scheme = pipeline::scheme_for(cfg);
    auto integrity = graph::check_integrity(dataset, scheme);
    auto report = cq::run_suite(suite, dataset);

    json j{{"schema", 1},
           {"integrity",
            {{"ok", integrity.ok()},
             {"nanopublications", integrity.nanopublications},
             {"partition", integrity.partition},
             {"head_arity", integrity.head_arity},
             {"dangling", integrity.dangling}}},
           {"competency_questions", json::parse(report.to_json())}};
    fs::path dir = report_dir ? *report_dir : dataset_path.parent_path();
    if (dir.empty()) dir = ".";
    fs::create_directories(dir);
    write(dir / "validation-report.json", j.dump(2) + "\n");

    io.out << "integrity: " << (integrity.ok() ? "ok" : "FAILED") << " ("
           << integrity.nanopublications << " nanopublications)\n";
    for (const auto* list : {&integrity.partition, &integrity.head_arity})
      for (const auto& m : *list) io.out << "  " << m << "\n";
    for (const auto& d : integrity.dangling) io.out << "  dangling: " << d << "\n";
    io.out << report.to_text();
    return static_cast<int>(integrity.ok() && report.all_passed() ? kOk : kValidation);
  });
}

int cmd_query(const config::PipelineConfig& cfg, const fs::path& dataset_path, const fs::path& query_file,
              Streams io) {
  return guarded(io, [&] {
    auto dataset = load_dataset(cfg, dataset_path);
    if (!fs::is_regular_file(query_file)) throw ConfigError("query file not found: " + query_file.string());
    auto q = query::parse_query(text::read_file(query_file.string()));
    auto table = query::evaluate(q, dataset);
    for (std::size_t i = 0; i < table.columns.size(); ++i)
      io.out << (i ? "\t" : "") << "?" << table.columns[i];
    io.out << "\n";
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) io.out << (i ? "\t" : "") << rdf::to_ntriples(row[i]);
      io.out << "\n";
    }
    return static_cast<int>(kOk);
  });
}

int cmd_export(const config::PipelineConfig& cfg, const fs::path& dataset_path, const fs::path& out_dir,
               const std::string& work_slug, Streams io) {
  return guarded(io, [&] {
    auto dataset = load_dataset(cfg, dataset_path);
    auto scheme = pipeline::scheme_for(cfg);
    auto story = exporter::export_storytelling(dataset, scheme, work_slug, {cfg.bucket_width});
    auto catalog = exporter::export_catalog(dataset, scheme);
    fs::create_directories(out_dir);
    write(out_dir / "catalog.json", exporter::catalog_json(catalog).dump(2) + "\n");
    write(out_dir / "facets.json", exporter::facets_json(catalog.facets).dump(2) + "\n");
    write(out_dir / ("storytelling-" + work_slug + ".json"), exporter::to_json(story).dump(2) + "\n");
    io.out << "cards: " << catalog.cards.size() << "\n"
           << "storytelling items: " << story.timeline.size() + story.omissions.timeline.size() << "\n";
    return static_cast<int>(kOk);
  });
}

int run(int argc, const char* const* argv, Streams io) {
  CLI::App app{"Builds and checks a nanopublication knowledge graph of myth-themed artworks.", "mythforge"};
  app.require_subcommand(1);
  std::string config_path, mode;
  app.add_option("--config", config_path, "pipeline config (JSON); falls back to $MYTHFORGE_CONFIG");
  app.add_option("--mode", mode, "authority reconciliation mode")->check(CLI::IsMember({"offline", "online"}));

  std::string input, out_dir, dataset, suite, report_dir, query_file, work;
  auto* build = app.add_subcommand("build", "convert a table into dataset.trig / dataset.nq");
  build->add_option("input", input, "source table (CSV)")->required();
  build->add_option("-o,--out", out_dir, "output directory")->required();

  auto* validate = app.add_subcommand("validate", "integrity checks and competency questions");
  validate->add_option("dataset", dataset, "dataset (N-Quads)")->required();
  validate->add_option("suite", suite, "competency-question suite (JSON)")->required();
  validate->add_option("-o,--out", report_dir, "directory for validation-report.json");

  auto* query = app.add_subcommand("query", "evaluate a SELECT query and print TSV");
  query->add_option("dataset", dataset, "dataset (N-Quads)")->required();
  query->add_option("query", query_file, "query file")->required();

  auto* exp = app.add_subcommand("export", "write catalog, facets and storytelling JSON");
  exp->add_option("dataset", dataset, "dataset (N-Quads)")->required();
  exp->add_option("-o,--out", out_dir, "output directory")->required();
  exp->add_option("--work", work, "focus work slug for storytelling");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, io.out, io.err);
    return code == 0 ? kOk : kUsage;
  }

  config::PipelineConfig cfg;
  try {
    if (config_path.empty())
      if (const char* env = std::getenv("MYTHFORGE_CONFIG")) config_path = env;
    if (!config_path.empty()) cfg = config::load(config_path);
    else if (build->parsed()) throw ConfigError("build needs --config or MYTHFORGE_CONFIG");
    config::apply_env_overrides(cfg);
    if (!mode.empty()) cfg.mode = *reconcile::mode_from_string(mode);
  } catch (const Error& e) {
    io.err << e.kind() << ": " << e.what() << "\n";
    return kUsage;
  }

  if (build->parsed()) return cmd_build(cfg, input, out_dir, io);
  if (validate->parsed())
    return cmd_validate(cfg, dataset, suite,
                        report_dir.empty() ? std::nullopt : std::optional<fs::path>(report_dir), io);
  if (query->parsed()) return cmd_query(cfg, dataset, query_file, io);
  return cmd_export(cfg, dataset, out_dir, work.empty() ? cfg.default_work : work, io);
}

}  // namespace mythforge::commands
