#include "mythforge/reconcile.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <future>
#include <json.hpp>
#include <semaphore>
#include <set>
#include <thread>

#include "mythforge/error.hpp"
#include "mythforge/ingest.hpp"
#include "mythforge/text.hpp"
#include "mythforge/vocab.hpp"

namespace mythforge::reconcile {

using nlohmann::json;

std::string_view to_string(Source s) {
  switch (s) {
    case Source::VIAF: return "VIAF";
    case Source::Wikidata: return "Wikidata";
    case Source::HuCitKB: return "HuCitKB";
  }
  return "";
}

std::string_view to_string(EntityKind k) {
  switch (k) {
    case EntityKind::person: return "person";
    case EntityKind::work: return "work";
    case EntityKind::place: return "place";
  }
  return "";
}

std::optional<Source> source_from_string(std::string_view s) {
  for (auto v : {Source::VIAF, Source::Wikidata, Source::HuCitKB})
    if (to_string(v) == s) return v;
  return std::nullopt;
}

std::optional<EntityKind> kind_from_string(std::string_view s) {
  for (auto v : {EntityKind::person, EntityKind::work, EntityKind::place})
    if (to_string(v) == s) return v;
  return std::nullopt;
}

std::optional<Mode> mode_from_string(std::string_view s) {
  if (s == "offline") return Mode::offline;
  if (s == "online") return Mode::online;
  return std::nullopt;
}

std::optional<std::string> link_iri(const AuthorityLink& link) {
  switch (link.source) {
    case Source::VIAF: return vocab::kViafBase + link.external_id;
    case Source::Wikidata: return vocab::kWikidataEntityBase + link.external_id;
    case Source::HuCitKB:
      if (link.external_id.starts_with("http://") || link.external_id.starts_with("https://"))
        return link.external_id;
      return std::nullopt;
  }
  return std::nullopt;
}

void sort_links(std::vector<AuthorityLink>& links) {
  std::stable_sort(links.begin(), links.end(), [](const auto& a, const auto& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.source != b.source) return a.source < b.source;
    return a.external_id < b.external_id;
  });
}

std::vector<AuthorityLink> merge_links(std::vector<AuthorityLink> links) {
  std::vector<AuthorityLink> out;
  for (auto& l : links) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& o) {
      return o.source == l.source && o.external_id == l.external_id;
    });
    if (it == out.end()) {
      out.push_back(std::move(l));
    } else {
      if (l.score > it->score) it->score = l.score;
      if (!it->coordinates) it->coordinates = l.coordinates;
      if (!it->country) it->country = l.country;
    }
  }
  sort_links(out);
  return out;
}

void AliasTable::add(std::string_view variant, std::string canonical_slug) {
  entries_[normalize::slugify(variant)] = std::move(canonical_slug);
}

std::optional<std::string> AliasTable::resolve(std::string_view raw) const {
  std::string key;
  try {
    key = normalize::slugify(raw);
  } catch (const EmptySlug&) {
    return std::nullopt;
  }
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

AliasTable AliasTable::from_json_text(std::string_view text) {
  AliasTable t;
  json j = json::parse(text);
  if (!j.is_object()) throw ConfigError("alias table must be a JSON object");
  for (const auto& [variant, slug] : j.items()) {
    auto s = slug.get<std::string>();
    if (!normalize::is_slug(s))
      throw ConfigError("alias target is not a slug: '" + s + "'");
    t.add(variant, std::move(s));
  }
  return t;
}

AliasTable AliasTable::load(const std::filesystem::path& path) {
  return from_json_text(text::read_file(path.string()));
}

std::optional<std::string> resolve_alias(std::string_view raw, const AliasTable& table) {
  return table.resolve(raw);
}

void AuthorityFixture::add(FixtureEntry entry) {
  if (entry.link.external_id.empty())
    throw ConfigError("authority entry for '" + entry.key + "' has an empty id");
  if (entry.link.coordinates && entry.kind != EntityKind::place)
    throw ConfigError("coordinates on a non-place authority entry: '" + entry.key + "'");
  entries_[{entry.kind, entry.key}].push_back(std::move(entry.link));
  ++size_;
}

std::vector<AuthorityLink> AuthorityFixture::lookup(EntityKind kind,
                                                    std::string_view key) const {
  auto it = entries_.find({kind, std::string(key)});
  if (it == entries_.end()) return {};
  return it->second;
}

AuthorityFixture AuthorityFixture::from_json_text(std::string_view text) {
  AuthorityFixture f;
  json j = json::parse(text);
  if (!j.is_array()) throw ConfigError("authority fixture must be a JSON array");
  for (const auto& e : j) {
    FixtureEntry entry;
    auto kind = kind_from_string(e.at("kind").get<std::string>());
    auto source = source_from_string(e.at("source").get<std::string>());
    if (!kind || !source) throw ConfigError("bad kind/source in authority fixture: " + e.dump());
    entry.kind = *kind;
    entry.key = normalize::slugify(e.at("key").get<std::string>());
    entry.link.source = *source;
    entry.link.external_id = e.at("external_id").get<std::string>();
    entry.link.controlled_label = e.at("controlled_label").get<std::string>();
    if (e.contains("coordinates")) {
      auto c = normalize::parse_coordinates(e["coordinates"].get<std::string>());
      if (!c) throw ConfigError("invalid coordinates in authority fixture: " + e.dump());
      entry.link.coordinates = c;
    }
    if (e.contains("country")) entry.link.country = e["country"].get<std::string>();
    entry.link.score = e.value("score", 1.0);
    f.add(std::move(entry));
  }
  return f;
}

AuthorityFixture AuthorityFixture::load(const std::filesystem::path& path) {
  return from_json_text(text::read_file(path.string()));
}

namespace {

std::vector<std::string> slug_tokens(std::string_view s) {
  try {
    return text::split(normalize::slugify(s), "-");
  } catch (const EmptySlug&) {
    return {};
  }
}

double token_overlap(std::string_view a, std::string_view b) {
  auto ta = slug_tokens(a), tb = slug_tokens(b);
  std::set<std::string> sa(ta.begin(), ta.end()), sb(tb.begin(), tb.end());
  if (sa.empty() || sb.empty()) return 0.0;
  std::size_t common = 0;
  for (const auto& t : sa) common += sb.count(t);
  return static_cast<double>(common) / static_cast<double>(std::max(sa.size(), sb.size()));
}

std::string_view viaf_name_type(EntityKind kind) {
  switch (kind) {
    case EntityKind::person: return "personal";
    case EntityKind::work: return "uniformtitlework";
    case EntityKind::place: return "geographic";
  }
  return "";
}

std::string_view wikidata_type(EntityKind kind) {
  switch (kind) {
    case EntityKind::person: return "Q5";
    case EntityKind::work: return "Q7725634";
    case EntityKind::place: return "Q2221906";
  }
  return "";
}

}  // namespace

std::vector<AuthorityLink> parse_recon_response(std::string_view body, std::string_view qid) {
  std::vector<AuthorityLink> out;
  json j = json::parse(body);
  if (!j.contains(std::string(qid))) return out;
  const auto& result = j[std::string(qid)]["result"];
  if (!result.is_array()) return out;
  for (const auto& r : result) {
    AuthorityLink link;
    link.source = Source::Wikidata;
    link.external_id = r.at("id").get<std::string>();
    link.controlled_label = r.value("name", std::string());
    double score = r.value("score", 0.0);
    if (score > 1.0) score /= 100.0;
    link.score = std::clamp(score, 0.0, 1.0);
    if (!link.external_id.empty()) out.push_back(std::move(link));
  }
  return merge_links(std::move(out));
}

std::vector<AuthorityLink> parse_viaf_response(std::string_view body, EntityKind kind,
                                               std::string_view label) {
  std::vector<AuthorityLink> out;
  json j = json::parse(body);
  if (!j.contains("result") || !j["result"].is_array()) return out;
  for (const auto& r : j["result"]) {
    if (r.value("nametype", std::string()) != viaf_name_type(kind)) continue;
    AuthorityLink link;
    link.source = Source::VIAF;
    link.external_id = r.value("viafid", std::string());
    link.controlled_label = r.value("displayForm", r.value("term", std::string()));
    link.score = token_overlap(label, link.controlled_label);
    if (!link.external_id.empty()) out.push_back(std::move(link));
  }
  return merge_links(std::move(out));
}

std::string recon_query_payload(EntityKind kind, std::string_view label, std::string_view qid) {
  json q;
  q[std::string(qid)] = {{"query", std::string(label)},
                         {"type", std::string(wikidata_type(kind))},
                         {"limit", 5}};
  return q.dump();
}

void RateLimiter::acquire(const std::string& host) {
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard lock(mutex_);
    auto now = std::chrono::steady_clock::now();
    auto& next = next_[host];
    slot = std::max(now, next);
    next = slot + min_interval_;
  }
  std::this_thread::sleep_until(slot);
}

std::string write_review_csv(const std::vector<ReviewRow>& rows) {
  std::vector<std::vector<std::string>> table{
      {"kind", "raw", "candidate_source", "candidate_id", "candidate_label", "score",
       "accepted"}};
  for (const auto& r : rows) {
    char score[32];
    std::snprintf(score, sizeof score, "%.3f", r.candidate.score);
    table.push_back({std::string(to_string(r.kind)), r.raw,
                     std::string(to_string(r.candidate.source)), r.candidate.external_id,
                     r.candidate.controlled_label, score, r.accepted ? "true" : "false"});
  }
  return ingest::write_csv(table);
}

std::vector<ReviewRow> read_review_csv(std::string_view text) {
  auto rows = ingest::read_csv(text);
  std::vector<ReviewRow> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != 7) throw RowError(i, "review rows need 7 cells");
    auto kind = kind_from_string(r[0]);
    auto source = source_from_string(r[2]);
    if (!kind || !source) throw RowError(i, "bad kind or source");
    ReviewRow row;
    row.kind = *kind;
    row.raw = r[1];
    row.candidate.source = *source;
    row.candidate.external_id = r[3];
    row.candidate.controlled_label = r[4];
    row.candidate.score = std::stod(r[5]);
    auto acc = text::to_lower_ascii(text::trim(r[6]));
    row.accepted = acc == "true" || acc == "yes" || acc == "1";
    out.push_back(std::move(row));
  }
  return out;
}

void Reconciler::add_client(std::unique_ptr<AuthorityClient> client) {
  clients_.push_back(std::move(client));
}

void Reconciler::set_limits(std::size_t max_concurrent,
                            std::chrono::milliseconds min_interval) {
  max_concurrent_ = std::max<std::size_t>(1, max_concurrent);
  limiter_ = std::make_unique<RateLimiter>(min_interval);
}

std::string Reconciler::canonical_slug(std::string_view raw,
                                       const std::string& fallback_slug) const {
  if (auto hit = aliases_.resolve(raw)) return *hit;
  if (auto hit = aliases_.resolve(fallback_slug)) return *hit;
  return fallback_slug;
}

std::vector<AuthorityLink> Reconciler::online_lookup(EntityKind kind,
                                                     const std::string& label) {
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = cache_.find({kind, label}); it != cache_.end()) return it->second;
  }
  std::vector<AuthorityLink> found;
  for (auto& client : clients_) {
    try {
      limiter_->acquire(client->host());
      auto links = client->lookup(kind, label);
      found.insert(found.end(), links.begin(), links.end());
    } catch (const std::exception& e) {
      ++failures_;
      spdlog::warn("authority lookup on {} failed for '{}': {}; using offline result",
                   client->host(), label, e.what());
    }
  }
  std::lock_guard lock(cache_mutex_);
  cache_[{kind, label}] = found;
  return found;
}

void Reconciler::prefetch(const std::vector<std::pair<EntityKind, std::string>>& queries) {
  if (clients_.empty()) return;
  std::counting_semaphore<> slots(static_cast<std::ptrdiff_t>(max_concurrent_));
  std::vector<std::future<void>> pending;
  std::set<std::pair<EntityKind, std::string>> unique(queries.begin(), queries.end());
  for (const auto& [kind, label] : unique) {
    slots.acquire();
    pending.push_back(std::async(std::launch::async, [&, kind = kind, label = label] {
      online_lookup(kind, label);
      slots.release();
    }));
  }
  for (auto& f : pending) f.get();
}

std::vector<AuthorityLink> Reconciler::reconcile_entity(EntityKind kind,
                                                        std::string_view label,
                                                        Mode mode) {
  std::string key;
  try {
    key = canonical_slug(label, normalize::slugify(label));
  } catch (const EmptySlug&) {
    return {};
  }
  return reconcile_entity(kind, label, key, mode);
}

std::vector<AuthorityLink> Reconciler::reconcile_entity(EntityKind kind,
                                                        std::string_view label,
                                                        const std::string& key_slug,
                                                        Mode mode) {
  auto links = fixture_.lookup(kind, key_slug);
  if (mode == Mode::online && !clients_.empty()) {
    auto remote = online_lookup(kind, std::string(label));
    links.insert(links.end(), remote.begin(), remote.end());
  }
  return merge_links(std::move(links));
}

Resolution Reconciler::resolve(EntityKind kind, std::string_view raw, Mode mode) {
  std::string key;
  try {
    key = canonical_slug(raw, normalize::slugify(raw));
  } catch (const EmptySlug&) {
    return {};
  }
  return resolve(kind, raw, key, mode);
}

Resolution Reconciler::resolve(EntityKind kind, std::string_view raw,
                               const std::string& key_slug, Mode mode) {
  Resolution res;
  for (auto& link : reconcile_entity(kind, raw, key_slug, mode)) {
    if (link.score >= kAutoAcceptScore) {
      res.accepted.push_back(std::move(link));
    } else {
      res.review.push_back(ReviewRow{kind, std::string(raw), std::move(link), false});
    }
  }
  return res;
}

Entity apply_links(Entity entity, const std::vector<AuthorityLink>& links) {
  if (links.empty()) return entity;
  entity.label = links.front().controlled_label;
  for (const auto& l : links) {
    if (!entity.coordinates && l.coordinates) entity.coordinates = l.coordinates;
    if (!entity.country && l.country) entity.country = l.country;
  }
  entity.links = links;
  return entity;
}

}  // namespace mythforge::reconcile
