// HTTP transport for the live authority services.

#include <httplib.h>

#include <regex>
#include <stdexcept>

#include "mythforge/reconcile.hpp"

namespace mythforge::reconcile {

namespace {

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Endpoint split_url(const std::string& url) {
  static const std::regex re(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, re)) throw std::invalid_argument("bad endpoint URL: " + url);
  return {m[1].str(), m[2].matched ? m[2].str() : "/"};
}

httplib::Client make_client(const Endpoint& ep, std::chrono::milliseconds timeout) {
  httplib::Client cli(ep.origin);
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
  cli.set_connection_timeout(secs.count(), usecs.count());
  cli.set_read_timeout(secs.count(), usecs.count());
  cli.set_follow_location(true);
  return cli;
}

class ReconServiceClient final : public AuthorityClient {
 public:
  ReconServiceClient(const std::string& url, std::chrono::milliseconds timeout)
      : endpoint_(split_url(url)), timeout_(timeout) {}

  std::string host() const override { return endpoint_.origin; }

  std::vector<AuthorityLink> lookup(EntityKind kind, std::string_view label) override {
    auto cli = make_client(endpoint_, timeout_);
    httplib::Params params{{"queries", recon_query_payload(kind, label, "q0")}};
    auto res = cli.Post(endpoint_.path, params);
    if (!res) throw std::runtime_error("request failed: " + httplib::to_string(res.error()));
    if (res->status != 200)
      throw std::runtime_error("HTTP status " + std::to_string(res->status));
    return parse_recon_response(res->body, "q0");
  }

 private:
  Endpoint endpoint_;
  std::chrono::milliseconds timeout_;
};

class ViafClient final : public AuthorityClient {
 public:
  ViafClient(const std::string& url, std::chrono::milliseconds timeout)
      : endpoint_(split_url(url)), timeout_(timeout) {}

  std::string host() const override { return endpoint_.origin; }

  std::vector<AuthorityLink> lookup(EntityKind kind, std::string_view label) override {
    auto cli = make_client(endpoint_, timeout_);
    httplib::Params params{{"query", std::string(label)}};
    auto res = cli.Get(endpoint_.path, params, httplib::Headers{});
    if (!res) throw std::runtime_error("request failed: " + httplib::to_string(res.error()));
    if (res->status != 200)
      throw std::runtime_error("HTTP status " + std::to_string(res->status));
    return parse_viaf_response(res->body, kind, label);
  }

 private:
  Endpoint endpoint_;
  std::chrono::milliseconds timeout_;
};

}  // namespace

std::unique_ptr<AuthorityClient> make_recon_client(const std::string& url,
                                                   std::chrono::milliseconds timeout) {
  return std::make_unique<ReconServiceClient>(url, timeout);
}

std::unique_ptr<AuthorityClient> make_viaf_client(const std::string& url,
                                                  std::chrono::milliseconds timeout) {
  return std::make_unique<ViafClient>(url, timeout);
}

}  // namespace mythforge::reconcile
