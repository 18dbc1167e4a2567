#pragma once

// Authority control: alias resolution, offline authority fixtures, and
// optional live lookups against reconciliation / VIAF endpoints.

#include <atomic>
#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mythforge/normalize.hpp"

namespace mythforge::reconcile {

enum class Source { VIAF, Wikidata, HuCitKB };
enum class EntityKind { person, work, place };
enum class Mode { offline, online };

std::string_view to_string(Source s);
std::string_view to_string(EntityKind k);
std::optional<Source> source_from_string(std::string_view s);
std::optional<EntityKind> kind_from_string(std::string_view s);
std::optional<Mode> mode_from_string(std::string_view s);

struct AuthorityLink {
  Source source = Source::VIAF;
  std::string external_id;
  std::string controlled_label;
  std::optional<normalize::Coordinates> coordinates;  // places only
  std::optional<std::string> country;                 // places only
  double score = 1.0;

  friend bool operator==(const AuthorityLink&, const AuthorityLink&) = default;
};

// Dereferenceable IRI for a link (VIAF / Wikidata), or nullopt.
std::optional<std::string> link_iri(const AuthorityLink& link);

// Sort order: score descending, then VIAF > Wikidata > HuCitKB, then id.
void sort_links(std::vector<AuthorityLink>& links);
// Merge by (source, external_id), keeping the highest score.
std::vector<AuthorityLink> merge_links(std::vector<AuthorityLink> links);

class AliasTable {
 public:
  // Registers slugify(variant) -> canonical slug.
  void add(std::string_view variant, std::string canonical_slug);
  std::optional<std::string> resolve(std::string_view raw) const;
  std::size_t size() const noexcept { return entries_.size(); }
  const std::map<std::string, std::string>& entries() const noexcept {
    return entries_;
  }

  // JSON object {variant: canonical_slug}.
  static AliasTable load(const std::filesystem::path& path);
  static AliasTable from_json_text(std::string_view text);

 private:
  std::map<std::string, std::string> entries_;
};

std::optional<std::string> resolve_alias(std::string_view raw, const AliasTable& table);

struct FixtureEntry {
  EntityKind kind = EntityKind::person;
  std::string key;
  AuthorityLink link;
};

class AuthorityFixture {
 public:
  void add(FixtureEntry entry);
  std::vector<AuthorityLink> lookup(EntityKind kind, std::string_view key) const;
  std::size_t size() const noexcept { return size_; }

  // JSON array of {kind, key, source, external_id, controlled_label,
  // coordinates?: "lat,lon", country?, score?}.
  static AuthorityFixture load(const std::filesystem::path& path);
  static AuthorityFixture from_json_text(std::string_view text);

 private:
  std::map<std::pair<EntityKind, std::string>, std::vector<AuthorityLink>> entries_;
  std::size_t size_ = 0;
};

// One live authority service.
class AuthorityClient {
 public:
  virtual ~AuthorityClient() = default;
  virtual std::string host() const = 0;
  // Throws on transport failure.
  virtual std::vector<AuthorityLink> lookup(EntityKind kind, std::string_view label) = 0;
};

struct EndpointSettings {
  std::string recon_url;  // W3C Reconciliation Service API endpoint
  std::string viaf_url;   // VIAF AutoSuggest endpoint
  std::chrono::milliseconds timeout{5000};
  std::size_t max_concurrent = 4;
  std::chrono::milliseconds min_interval{200};  // per host
};

// Parses a Reconciliation Service API batch response for query id `qid`.
std::vector<AuthorityLink> parse_recon_response(std::string_view body,
                                                std::string_view qid);
// Parses a VIAF AutoSuggest response; scores by slug-token overlap with the
// queried label and drops results whose name type does not match `kind`.
std::vector<AuthorityLink> parse_viaf_response(std::string_view body,
                                               EntityKind kind,
                                               std::string_view label);
std::string recon_query_payload(EntityKind kind, std::string_view label,
                                std::string_view qid);

std::unique_ptr<AuthorityClient> make_recon_client(const std::string& url,
                                                   std::chrono::milliseconds timeout);
std::unique_ptr<AuthorityClient> make_viaf_client(const std::string& url,
                                                  std::chrono::milliseconds timeout);

// Minimum spacing between requests to one host.
class RateLimiter {
 public:
  explicit RateLimiter(std::chrono::milliseconds min_interval)
      : min_interval_(min_interval) {}
  void acquire(const std::string& host);

 private:
  std::chrono::milliseconds min_interval_;
  std::mutex mutex_;
  std::map<std::string, std::chrono::steady_clock::time_point> next_;
};

struct ReviewRow {
  EntityKind kind = EntityKind::person;
  std::string raw;
  AuthorityLink candidate;
  bool accepted = false;
};

std::string write_review_csv(const std::vector<ReviewRow>& rows);
std::vector<ReviewRow> read_review_csv(std::string_view text);

inline constexpr double kAutoAcceptScore = 0.9;

struct Resolution {
  std::vector<AuthorityLink> accepted;
  std::vector<ReviewRow> review;
};

class Reconciler {
 public:
  Reconciler(AliasTable aliases, AuthorityFixture fixture)
      : aliases_(std::move(aliases)), fixture_(std::move(fixture)) {}

  void add_client(std::unique_ptr<AuthorityClient> client);
  void set_limits(std::size_t max_concurrent, std::chrono::milliseconds min_interval);

  const AliasTable& aliases() const noexcept { return aliases_; }

  // Canonical slug for a raw variant: alias hit on the raw string, then on
  // the fallback slug, else the fallback slug itself.
  std::string canonical_slug(std::string_view raw, const std::string& fallback_slug) const;

  // Candidate links, best first. Offline reads the fixture keyed by the
  // alias-resolved slug of `label`; online also queries every client and
  // merges. Transport failures degrade to the offline result.
  std::vector<AuthorityLink> reconcile_entity(EntityKind kind, std::string_view label,
                                              Mode mode);
  // Same, with the fixture key supplied by the caller (an entity whose slug
  // was derived from structured fields rather than from `label`).
  std::vector<AuthorityLink> reconcile_entity(EntityKind kind, std::string_view label,
                                              const std::string& key_slug, Mode mode);

  // Issues online lookups for many labels concurrently (bounded by the
  // request cap and per-host rate limit) and caches the answers.
  void prefetch(const std::vector<std::pair<EntityKind, std::string>>& queries);

  // Splits candidates into auto-accepted links (score >= 0.9) and review rows.
  Resolution resolve(EntityKind kind, std::string_view raw, Mode mode);
  Resolution resolve(EntityKind kind, std::string_view raw, const std::string& key_slug,
                     Mode mode);

  std::size_t network_failures() const noexcept { return failures_; }

 private:
  std::vector<AuthorityLink> online_lookup(EntityKind kind, const std::string& label);

  AliasTable aliases_;
  AuthorityFixture fixture_;
  std::vector<std::unique_ptr<AuthorityClient>> clients_;
  std::size_t max_concurrent_ = 4;
  std::unique_ptr<RateLimiter> limiter_ =
      std::make_unique<RateLimiter>(std::chrono::milliseconds(0));
  std::mutex cache_mutex_;
  std::map<std::pair<EntityKind, std::string>, std::vector<AuthorityLink>> cache_;
  std::atomic<std::size_t> failures_{0};
};

// A resolved entity ready for emission. The slug fixes the IRI.
struct Entity {
  EntityKind kind = EntityKind::person;
  std::string slug;
  std::string label;
  std::vector<AuthorityLink> links;
  std::optional<normalize::Coordinates> coordinates;
  std::optional<std::string> country;
};

// Top link's label replaces the display label; coordinates and country come
// from the first link carrying them. The slug is never touched.
Entity apply_links(Entity entity, const std::vector<AuthorityLink>& links);

}  // namespace mythforge::reconcile
