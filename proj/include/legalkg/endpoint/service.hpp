#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <thread>

#include "legalkg/rdf/graph.hpp"

namespace httplib {
class Server;
}

namespace legalkg::endpoint {

inline constexpr std::string_view kTurtleType = "text/turtle; charset=utf-8";
inline constexpr std::string_view kNTriplesType = "application/n-triples";

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path graph_path;
  std::filesystem::path console_dir;  // static bundle; a built-in form is served when it has no index.html
  std::size_t max_query_length = 64 * 1024;
  std::chrono::milliseconds request_timeout{10'000};

  // LEGALKG_BIND (host:port or :port), LEGALKG_GRAPH, LEGALKG_CONSOLE_DIR.
  static ServiceConfig from_env();
  // Throws mapping::ConfigError for "host:port" strings that do not parse.
  void set_bind(std::string_view bind);
};

struct Reply {
  int status = 200;
  std::string content_type;
  std::string body;
};

// Request handling over one immutable graph, independent of the HTTP layer.
class QueryService {
 public:
  QueryService(rdf::Graph graph, ServiceConfig config);

  Reply query(std::string_view text, std::string_view accept) const;
  Reply graph(std::string_view format) const;
  Reply stats() const { return stats_; }
  Reply home() const;

  const rdf::Graph& snapshot() const noexcept { return graph_; }
  const ServiceConfig& config() const noexcept { return config_; }
  bool has_console() const;

 private:
  rdf::Graph graph_;
  ServiceConfig config_;
  std::string turtle_;
  std::string ntriples_;
  Reply stats_;
};

// Error body used by every non-2xx reply: {"error": kind, "message": ...}.
std::string error_json(std::string_view kind, std::string_view message);

// The built-in query form; it posts to /query.
std::string fallback_console_html();

class Server {
 public:
  explicit Server(std::shared_ptr<const QueryService> service);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds the configured address, or any free port when port == 0. Returns the port.
  int bind();
  // Blocks until stop().
  void listen();
  // bind() plus listen() on a background thread; returns once ready.
  int start();
  void stop();

 private:
  std::shared_ptr<const QueryService> service_;
  std::unique_ptr<httplib::Server> http_;
  std::thread thread_;
};

// Loads the graph named by the config; failures propagate so startup aborts.
std::shared_ptr<const QueryService> load_service(const ServiceConfig& config);

}  // namespace legalkg::endpoint
