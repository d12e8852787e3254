#include "legalkg/ingestion/fetch.hpp"

#include <cstdlib>
#include <fstream>
#include <regex>

#include <httplib.h>

namespace legalkg::ingestion {

namespace fs = std::filesystem;

UrlParts split_url(const std::string& url) {
  static const std::regex re(R"(^(https?)://([^/?#:]+)(:\d+)?([/?#].*)?$)", std::regex::icase);
  std::smatch m;
  if (!std::regex_match(url, m, re)) throw FetchError(FetchError::Kind::InvalidUrl, "not an http(s) URL: " + url);
  UrlParts parts;
  parts.host = m[2].str();
  parts.origin = m[1].str() + "://" + parts.host + m[3].str();
  parts.path = m[4].matched ? m[4].str() : "/";
  if (const auto hash = parts.path.find('#'); hash != std::string::npos) parts.path.resize(hash);
  if (parts.path.empty() || parts.path[0] != '/') parts.path.insert(0, "/");
  return parts;
}

FetchOptions FetchOptions::from_env() {
  FetchOptions opts;
  if (const char* raw = std::getenv("LEGALKG_FETCH_TIMEOUT"); raw != nullptr && *raw != '\0') {
    char* end = nullptr;
    const long secs = std::strtol(raw, &end, 10);
    if (end != nullptr && *end == '\0' && secs > 0) opts.timeout = std::chrono::seconds(secs);
  }
  return opts;
}

std::mutex& DocumentFetcher::host_lock(const std::string& host) {
  std::lock_guard guard(locks_mutex_);
  auto& slot = host_locks_[host];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

FetchResult DocumentFetcher::fetch(const std::string& url, const fs::path& destination) {
  const UrlParts parts = split_url(url);

  std::error_code ec;
  if (opts_.use_cache && fs::is_regular_file(destination, ec)) {
    return {destination, true, fs::file_size(destination, ec)};
  }

  std::lock_guard guard(host_lock(parts.host));
  httplib::Client client(parts.origin);
  client.set_connection_timeout(opts_.timeout);
  client.set_read_timeout(opts_.timeout);
  client.set_follow_location(true);

  const fs::path partial = destination.string() + ".part";
  if (destination.has_parent_path()) fs::create_directories(destination.parent_path());
  std::ofstream out(partial, std::ios::binary | std::ios::trunc);
  if (!out) throw FetchError(FetchError::Kind::Io, "cannot write '" + partial.string() + "'");

  int status = 0;
  std::uintmax_t bytes = 0;
  auto res = client.Get(
      parts.path,
      [&](const httplib::Response& r) {
        status = r.status;
        return r.status >= 200 && r.status < 300;
      },
      [&](const char* data, std::size_t len) {
        out.write(data, static_cast<std::streamsize>(len));
        bytes += len;
        return static_cast<bool>(out);
      });
  out.close();

  if (status != 0 && (status < 200 || status >= 300)) {
    fs::remove(partial, ec);
    throw FetchError(FetchError::Kind::Status, "GET " + url + " returned HTTP " + std::to_string(status), status);
  }
  if (!res) {
    fs::remove(partial, ec);
    if (!out) throw FetchError(FetchError::Kind::Io, "write failed for '" + partial.string() + "'");
    throw FetchError(FetchError::Kind::Network, "GET " + url + " failed: " + httplib::to_string(res.error()));
  }
  fs::rename(partial, destination, ec);
  if (ec) throw FetchError(FetchError::Kind::Io, "cannot move download into '" + destination.string() + "': " + ec.message());
  return {destination, false, bytes};
}

FetchResult DocumentFetcher::fetch_into(CorpusManifest& manifest, const std::string& case_id,
                                        const std::string& url, const fs::path& destination) {
  FetchResult r = fetch(url, destination);
  fs::path recorded = destination;
  if (!manifest.base_dir().empty()) {
    std::error_code ec;
    auto rel = fs::relative(destination, manifest.base_dir(), ec);
    if (!ec && !rel.empty() && *rel.begin() != "..") recorded = rel;
  }
  manifest.upsert({case_id, url, recorded});
  return r;
}

}  // namespace legalkg::ingestion
