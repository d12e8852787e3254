#include "legalkg/endpoint/service.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

#include "legalkg/data.hpp"
#include "legalkg/ingestion/corpus.hpp"
#include "legalkg/mapping/mapping.hpp"
#include "legalkg/rdf/turtle.hpp"
#include "legalkg/sparql/eval.hpp"
#include "legalkg/sparql/parser.hpp"
#include "legalkg/sparql/results.hpp"

namespace legalkg::endpoint {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr std::string_view kJsonType = "application/json";
constexpr std::string_view kHtmlType = "text/html; charset=utf-8";

enum class Format { Json, Csv, None };

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  return std::string(s.substr(b, s.find_last_not_of(" \t") - b + 1));
}

// Highest q-value the Accept header gives each result format.
Format negotiate(std::string_view accept) {
  if (trim(accept).empty()) return Format::Json;
  double json_q = 0.0, csv_q = 0.0;
  std::size_t pos = 0;
  while (pos <= accept.size()) {
    auto comma = accept.find(',', pos);
    if (comma == std::string_view::npos) comma = accept.size();
    const auto range = accept.substr(pos, comma - pos);
    pos = comma + 1;

    const auto semi = range.find(';');
    const auto type = lower(trim(range.substr(0, semi)));
    double q = 1.0;
    if (semi != std::string_view::npos) {
      const auto params = lower(range.substr(semi + 1));
      if (auto at = params.find("q="); at != std::string::npos) q = std::strtod(params.c_str() + at + 2, nullptr);
    }
    if (type == "*/*" || type == "application/*" || type == "application/sparql-results+json" ||
        type == "application/json") {
      json_q = std::max(json_q, q);
    }
    if (type == "*/*" || type == "text/*" || type == "text/csv") csv_q = std::max(csv_q, q);
  }
  if (json_q == 0.0 && csv_q == 0.0) return Format::None;
  return csv_q > json_q ? Format::Csv : Format::Json;
}

Reply error_reply(int status, std::string body) { return {status, std::string(kJsonType), std::move(body)}; }

std::string position_json(std::string_view kind, const std::string& message, std::size_t line, std::size_t column,
                          std::size_t offset, const std::string* feature = nullptr) {
  ordered_json j{{"error", kind}, {"message", message}};
  if (feature) j["feature"] = *feature;
  j["line"] = line;
  j["column"] = column;
  j["offset"] = offset;
  return j.dump();
}

}  // namespace

std::string error_json(std::string_view kind, std::string_view message) {
  return ordered_json{{"error", kind}, {"message", message}}.dump();
}

void ServiceConfig::set_bind(std::string_view bind) {
  const auto colon = bind.rfind(':');
  if (colon == std::string_view::npos) throw mapping::ConfigError("bind address '" + std::string(bind) + "' lacks a port");
  int p = -1;
  const auto digits = bind.substr(colon + 1);
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || p < 0 || p > 65535) {
    throw mapping::ConfigError("bad port in bind address '" + std::string(bind) + "'");
  }
  if (colon > 0) host = std::string(bind.substr(0, colon));
  port = p;
}

ServiceConfig ServiceConfig::from_env() {
  ServiceConfig c;
  if (const char* b = std::getenv("LEGALKG_BIND"); b && *b) c.set_bind(b);
  if (const char* g = std::getenv("LEGALKG_GRAPH"); g && *g) c.graph_path = g;
  if (const char* d = std::getenv("LEGALKG_CONSOLE_DIR"); d && *d) {
    c.console_dir = d;
  } else {
    c.console_dir = data_path("console");
  }
  return c;
}

QueryService::QueryService(rdf::Graph graph, ServiceConfig config)
    : graph_(std::move(graph)), config_(std::move(config)) {
  if (config_.max_query_length == 0) throw mapping::ConfigError("max query length must be positive");
  turtle_ = rdf::serialize_turtle(graph_);
  ntriples_ = rdf::serialize_ntriples(graph_);
  stats_ = {200, std::string(kJsonType), mapping::kg_stats_json(mapping::kg_stats(graph_))};
}

bool QueryService::has_console() const {
  std::error_code ec;
  return !config_.console_dir.empty() && fs::is_regular_file(config_.console_dir / "index.html", ec);
}

Reply QueryService::query(std::string_view text, std::string_view accept) const {
  if (text.size() > config_.max_query_length) {
    return error_reply(413, error_json("too_large", "query is " + std::to_string(text.size()) +
                                                        " bytes; the limit is " +
                                                        std::to_string(config_.max_query_length)));
  }
  const auto format = negotiate(accept);
  if (format == Format::None) {
    return error_reply(406, error_json("not_acceptable", "supported result types: " +
                                                             std::string(sparql::kResultsJsonType) + ", " +
                                                             std::string(sparql::kResultsCsvType)));
  }
  try {
    const auto q = sparql::parse_query(text);
    if (format == Format::Csv && q.form == sparql::Query::Form::Ask) {
      return error_reply(406, error_json("not_acceptable", "ASK results have no CSV form"));
    }
    sparql::EvalOptions opts;
    opts.deadline = std::chrono::steady_clock::now() + config_.request_timeout;
    const auto result = sparql::evaluate(q, graph_, opts);
    if (format == Format::Csv) return {200, std::string(sparql::kResultsCsvType), sparql::serialize_results_csv(result)};
    return {200, std::string(sparql::kResultsJsonType), sparql::serialize_results_json(result)};
  } catch (const sparql::SyntaxError& e) {
    return error_reply(400, position_json("syntax", e.detail(), e.line(), e.column(), e.offset()));
  } catch (const sparql::UnsupportedFeatureError& e) {
    return error_reply(400, position_json("unsupported", e.what(), e.line(), e.column(), e.offset(), &e.feature()));
  } catch (const sparql::TimeoutError&) {
    return error_reply(504, error_json("timeout", "query exceeded " + std::to_string(config_.request_timeout.count()) +
                                                      " ms"));
  } catch (const sparql::QueryError& e) {
    return error_reply(400, error_json("query", e.what()));
  }
}

Reply QueryService::graph(std::string_view format) const {
  if (format.empty() || format == "ttl") return {200, std::string(kTurtleType), turtle_};
  if (format == "nt") return {200, std::string(kNTriplesType), ntriples_};
  return error_reply(400, error_json("bad_format", "format must be ttl or nt, not '" + std::string(format) + "'"));
}

Reply QueryService::home() const {
  if (has_console()) return {200, std::string(kHtmlType), ingestion::read_file(config_.console_dir / "index.html")};
  return {200, std::string(kHtmlType), fallback_console_html()};
}

std::string fallback_console_html() {
  return R"(<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>SPARQL endpoint</title>
<style>
body { font-family: sans-serif; max-width: 60rem; margin: 2rem auto; }
textarea { width: 100%; font-family: monospace; }
</style>
</head>
<body>
<h1>SPARQL endpoint</h1>
<form method="post" action="/query" enctype="application/x-www-form-urlencoded">
<textarea name="query" rows="14">PREFIX dcterms: &lt;http://purl.org/dc/terms/&gt;
SELECT ?case ?date WHERE { ?case dcterms:date ?date } ORDER BY ?date LIMIT 20</textarea>
<p>
<label>Result format
<select name="format" disabled><option>application/sparql-results+json</option></select>
</label>
<button type="submit">Run query</button>
</p>
</form>
<p><a href="/stats">Statistics</a> | <a href="/graph?format=ttl">Download Turtle</a> |
<a href="/graph?format=nt">Download N-Triples</a></p>
</body>
</html>
)";
}

Server::Server(std::shared_ptr<const QueryService> service)
    : service_(std::move(service)), http_(std::make_unique<httplib::Server>()) {
  auto svc = service_;
  auto send = [](httplib::Response& res, const Reply& r) {
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };

  http_->set_payload_max_length(svc->config().max_query_length * 4 + 4096);

  http_->Get("/query", [svc, send](const httplib::Request& req, httplib::Response& res) {
    if (!req.has_param("query")) {
      return send(res, error_reply(400, error_json("missing_query", "the 'query' parameter is required")));
    }
    send(res, svc->query(req.get_param_value("query"), req.get_header_value("Accept")));
  });
  http_->Post("/query", [svc, send](const httplib::Request& req, httplib::Response& res) {
    const auto type = lower(req.get_header_value("Content-Type"));
    if (type.starts_with("application/sparql-query")) {
      return send(res, svc->query(req.body, req.get_header_value("Accept")));
    }
    if (!req.has_param("query")) {
      return send(res, error_reply(400, error_json("missing_query", "the 'query' form field is required")));
    }
    send(res, svc->query(req.get_param_value("query"), req.get_header_value("Accept")));
  });
  http_->Get("/graph", [svc, send](const httplib::Request& req, httplib::Response& res) {
    send(res, svc->graph(req.has_param("format") ? req.get_param_value("format") : "ttl"));
  });
  http_->Get("/stats", [svc, send](const httplib::Request&, httplib::Response& res) { send(res, svc->stats()); });

  if (svc->has_console()) {
    http_->set_mount_point("/", svc->config().console_dir.string());
  } else {
    http_->Get("/", [svc, send](const httplib::Request&, httplib::Response& res) { send(res, svc->home()); });
  }

  http_->set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return;
    const auto kind = res.status == 404 ? "not_found" : res.status == 413 ? "too_large" : "http_error";
    res.set_content(error_json(kind, req.method + " " + req.path + " failed with status " + std::to_string(res.status)),
                    std::string(kJsonType));
  });
}

Server::~Server() { stop(); }

int Server::bind() {
  const auto& c = service_->config();
  if (c.port == 0) {
    const int port = http_->bind_to_any_port(c.host);
    if (port < 0) throw std::runtime_error("cannot bind " + c.host);
    return port;
  }
  if (!http_->bind_to_port(c.host, c.port)) {
    throw std::runtime_error("cannot bind " + c.host + ":" + std::to_string(c.port));
  }
  return c.port;
}

void Server::listen() { http_->listen_after_bind(); }

int Server::start() {
  const int port = bind();
  thread_ = std::thread([this] { http_->listen_after_bind(); });
  http_->wait_until_ready();
  return port;
}

void Server::stop() {
  if (http_) http_->stop();
  if (thread_.joinable()) thread_.join();
}

std::shared_ptr<const QueryService> load_service(const ServiceConfig& config) {
  if (config.graph_path.empty()) throw mapping::ConfigError("no graph to serve (set LEGALKG_GRAPH or pass --graph)");
  return std::make_shared<const QueryService>(rdf::load_graph(config.graph_path), config);
}

}  // namespace legalkg::endpoint
