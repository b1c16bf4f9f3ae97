#include <httplib.h>

#include <json.hpp>

#include "htkgh/error.hpp"
#include "htkgh/provider.hpp"

namespace htkgh {

namespace {

class HttpProvider final : public CompletionProvider {
 public:
  explicit HttpProvider(HttpProviderConfig config) : config_(std::move(config)) {
    const auto scheme_end = config_.url.find("://");
    if (scheme_end == std::string::npos) {
      throw Error(Errc::ConfigInvalid, "provider url needs a scheme: '" + config_.url + "'");
    }
    const auto path_start = config_.url.find('/', scheme_end + 3);
    origin_ = config_.url.substr(0, path_start);
    path_ = path_start == std::string::npos ? "/" : config_.url.substr(path_start);
  }

  std::string complete(const CompletionRequest& request) override {
    // One client per call keeps concurrent workers independent.
    httplib::Client client(origin_);
    const auto secs = static_cast<time_t>(config_.timeout_seconds);
    const auto usecs = static_cast<time_t>((config_.timeout_seconds - static_cast<double>(secs)) * 1e6);
    client.set_connection_timeout(secs, usecs);
    client.set_read_timeout(secs, usecs);
    client.set_write_timeout(secs, usecs);
    httplib::Headers headers;
    if (!config_.token.empty()) headers.emplace("Authorization", "Bearer " + config_.token);

    const nlohmann::json body = {{"prompt", request.prompt}, {"max_tokens", request.max_tokens}};
    const auto res = client.Post(path_, headers, body.dump(), "application/json");
    if (!res) throw ProviderError("request failed: " + httplib::to_string(res.error()));
    if (res->status != 200) throw ProviderError("HTTP status " + std::to_string(res->status));
    const auto reply = nlohmann::json::parse(res->body, nullptr, false);
    if (reply.is_discarded() || !reply.is_object() || !reply.contains("text") || !reply["text"].is_string()) {
      throw ProviderError("response body lacks a string 'text' field");
    }
    return reply["text"].get<std::string>();
  }

 private:
  HttpProviderConfig config_;
  std::string origin_;
  std::string path_;
};

}  // namespace

std::unique_ptr<CompletionProvider> make_http_provider(const HttpProviderConfig& config) {
  return std::make_unique<HttpProvider>(config);
}

}  // namespace htkgh
