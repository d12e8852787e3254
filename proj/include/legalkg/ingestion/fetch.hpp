#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

#include "legalkg/ingestion/corpus.hpp"

namespace legalkg::ingestion {

class FetchError : public std::runtime_error {
 public:
  enum class Kind { Network, Status, Io, InvalidUrl };

  FetchError(Kind kind, const std::string& message, int status = 0)
      : std::runtime_error(message), kind_(kind), status_(status) {}

  Kind kind() const noexcept { return kind_; }
  int status() const noexcept { return status_; }
  // Network failures, 408, 429 and 5xx responses are worth retrying.
  bool retryable() const noexcept {
    return kind_ == Kind::Network ||
           (kind_ == Kind::Status && (status_ == 408 || status_ == 429 || status_ >= 500));
  }

 private:
  Kind kind_;
  int status_;
};

struct UrlParts {
  std::string origin;  // scheme://host[:port]
  std::string host;
  std::string path;    // always starts with '/', fragment removed
};

// Throws FetchError(InvalidUrl) unless `url` is http or https.
UrlParts split_url(const std::string& url);

struct FetchOptions {
  std::chrono::seconds timeout{30};
  bool use_cache = true;  // an existing destination file is not downloaded again

  // Reads LEGALKG_FETCH_TIMEOUT (seconds) when set.
  static FetchOptions from_env();
};

struct FetchResult {
  std::filesystem::path path;
  bool from_cache = false;
  std::uintmax_t bytes = 0;
};

// Plain HTTP(S) GET downloader. Requests to the same host are serialised.
class DocumentFetcher {
 public:
  explicit DocumentFetcher(FetchOptions opts = FetchOptions::from_env()) : opts_(opts) {}

  FetchResult fetch(const std::string& url, const std::filesystem::path& destination);

  // Downloads `url` into `dir` and records the entry in `manifest`.
  FetchResult fetch_into(CorpusManifest& manifest, const std::string& case_id, const std::string& url,
                         const std::filesystem::path& destination);

 private:
  std::mutex& host_lock(const std::string& host);

  FetchOptions opts_;
  std::mutex locks_mutex_;
  std::map<std::string, std::unique_ptr<std::mutex>> host_locks_;
};

inline FetchResult fetch_document(const std::string& url, const std::filesystem::path& destination) {
  DocumentFetcher fetcher;
  return fetcher.fetch(url, destination);
}

}  // namespace legalkg::ingestion
