#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace htkgh {

struct CompletionRequest {
  std::uint64_t qid = 0;
  std::string prompt;
  std::size_t max_tokens = 0;
};

// Thrown by a provider for a failed call the harness may retry.
class ProviderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Minimal completion contract: {prompt, max_tokens} in, text out.
// Implementations must tolerate concurrent calls.
class CompletionProvider {
 public:
  virtual ~CompletionProvider() = default;
  virtual std::string complete(const CompletionRequest& request) = 0;
};

// Answers every query with its gold label.
class EchoGoldProvider final : public CompletionProvider {
 public:
  explicit EchoGoldProvider(std::unordered_map<std::uint64_t, std::string> gold_by_qid)
      : gold_(std::move(gold_by_qid)) {}
  std::string complete(const CompletionRequest& request) override;

 private:
  std::unordered_map<std::uint64_t, std::string> gold_;
};

// Answers every query with the same text.
class ConstantProvider final : public CompletionProvider {
 public:
  explicit ConstantProvider(std::string text) : text_(std::move(text)) {}
  std::string complete(const CompletionRequest&) override { return text_; }

 private:
  std::string text_;
};

// Reads the rendered history lines back out of the prompt and answers with
// the most frequent relation, ties going to the one seen last. An empty
// history yields an empty answer.
class FrequencyStubProvider final : public CompletionProvider {
 public:
  std::string complete(const CompletionRequest& request) override;
};

struct HttpProviderConfig {
  std::string url;  // http://host[:port]/path or https://...
  std::string token;
  double timeout_seconds = 120.0;
};

// POSTs {"prompt", "max_tokens"} as JSON and expects {"text"} back.
std::unique_ptr<CompletionProvider> make_http_provider(const HttpProviderConfig& config);

}  // namespace htkgh
