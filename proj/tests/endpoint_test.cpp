#include <gtest/gtest.h>

#include <httplib.h>
#include <unistd.h>

#include <fstream>
#include <thread>

#include <json.hpp>

#include "legalkg/data.hpp"
#include "legalkg/endpoint/service.hpp"
#include "legalkg/ingestion/corpus.hpp"
#include "legalkg/mapping/mapping.hpp"
#include "legalkg/rdf/turtle.hpp"
#include "legalkg/sparql/eval.hpp"
#include "legalkg/sparql/results.hpp"
#include "support/sparql_oracle.hpp"

using namespace legalkg;
using namespace legalkg::endpoint;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

rdf::Graph fixture_kg() {
  return mapping::build_kg(ingestion::load_corpus(ingestion::CorpusManifest::load(data_path("corpus/manifest.csv"))));
}

ServiceConfig test_config() {
  ServiceConfig c;
  c.port = 0;
  c.console_dir = fs::temp_directory_path() / "legalkg_no_console";
  return c;
}

class RunningServer {
 public:
  explicit RunningServer(rdf::Graph g, ServiceConfig c = test_config())
      : service(std::make_shared<const QueryService>(std::move(g), std::move(c))), server(service) {
    port = server.start();
  }
  httplib::Client client() const {
    httplib::Client cli("127.0.0.1", port);
    cli.set_read_timeout(std::chrono::seconds(30));
    return cli;
  }

  std::shared_ptr<const QueryService> service;
  Server server;
  int port = 0;
};

const std::string kCaseQuery =
    "PREFIX dcterms: <http://purl.org/dc/terms/>\n"
    "SELECT ?case ?date WHERE { ?case dcterms:date ?date } ORDER BY ?date";

}  // namespace

TEST(Service, QueryMatchesLibrary) {
  const auto g = fixture_kg();
  QueryService svc(g, test_config());
  const auto r = svc.query(kCaseQuery, "");
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.content_type, sparql::kResultsJsonType);
  EXPECT_EQ(r.body, sparql::serialize_results_json(sparql::run_query(kCaseQuery, g)));
  EXPECT_EQ(json::parse(r.body)["results"]["bindings"].size(), 12u);

  const auto csv = svc.query(kCaseQuery, "text/csv");
  EXPECT_EQ(csv.content_type, sparql::kResultsCsvType);
  EXPECT_EQ(csv.body, sparql::serialize_results_csv(sparql::run_query(kCaseQuery, g)));
  EXPECT_EQ(svc.query(kCaseQuery, "text/csv;q=0.5, application/sparql-results+json").content_type,
            sparql::kResultsJsonType);
  EXPECT_EQ(svc.query(kCaseQuery, "application/json;q=0.2, text/*").content_type, sparql::kResultsCsvType);
  EXPECT_EQ(svc.query(kCaseQuery, "image/png").status, 406);
  EXPECT_EQ(svc.query("ASK {}", "text/csv").status, 406);
}

TEST(Service, TrivialAsk) {
  QueryService svc(rdf::Graph{}, test_config());
  EXPECT_EQ(svc.query("ASK {}", "").body, R"({"head":{},"boolean":true})");
  EXPECT_EQ(svc.query("ASK { ?s ?p ?o }", "").body, R"({"head":{},"boolean":false})");
}

TEST(Service, ErrorContract) {
  auto cfg = test_config();
  cfg.max_query_length = 200;
  QueryService svc(fixture_kg(), cfg);

  auto r = svc.query("SELECT ?s\nWHERE { ?s ?p }", "");
  EXPECT_EQ(r.status, 400);
  auto body = json::parse(r.body);
  EXPECT_EQ(body["error"], "syntax");
  EXPECT_EQ(body["line"], 2);
  EXPECT_TRUE(body.contains("column") && body.contains("offset") && body.contains("message"));

  r = svc.query("SELECT ?s WHERE { { ?s ?p ?o } UNION { ?o ?p ?s } }", "");
  EXPECT_EQ(r.status, 400);
  body = json::parse(r.body);
  EXPECT_EQ(body["error"], "unsupported");
  EXPECT_EQ(body["feature"], "UNION");

  r = svc.query(std::string(201, ' ') + "ASK {}", "");
  EXPECT_EQ(r.status, 413);
  EXPECT_EQ(json::parse(r.body)["error"], "too_large");
}

TEST(Service, Timeout) {
  rdf::Graph g;
  for (int i = 0; i < 300; ++i) {
    g.insert(rdf::Triple(rdf::Iri("http://ex.org/s" + std::to_string(i)), rdf::Iri("http://ex.org/p"),
                         rdf::Literal(std::to_string(i))));
  }
  auto cfg = test_config();
  cfg.request_timeout = std::chrono::milliseconds(20);
  QueryService svc(g, cfg);
  const auto r = svc.query("SELECT * WHERE { ?a ?p ?x . ?b ?p ?y . ?c ?p ?z }", "");
  EXPECT_EQ(r.status, 504);
  EXPECT_EQ(json::parse(r.body)["error"], "timeout");
}

TEST(Service, GraphDownloadsAndStats) {
  const auto g = fixture_kg();
  QueryService svc(g, test_config());
  const auto nt = svc.graph("nt");
  EXPECT_EQ(nt.content_type, kNTriplesType);
  EXPECT_EQ(rdf::parse_ntriples(nt.body), g);
  EXPECT_EQ(rdf::parse_turtle(svc.graph("ttl").body), g);
  EXPECT_EQ(svc.graph("xml").status, 400);
  EXPECT_EQ(svc.stats().body, mapping::kg_stats_json(mapping::kg_stats(g)));
}

TEST(Service, BindParsing) {
  ServiceConfig c;
  c.set_bind("0.0.0.0:9000");
  EXPECT_EQ(c.host, "0.0.0.0");
  EXPECT_EQ(c.port, 9000);
  c.set_bind(":7000");
  EXPECT_EQ(c.host, "0.0.0.0");
  EXPECT_EQ(c.port, 7000);
  EXPECT_THROW(c.set_bind("localhost"), mapping::ConfigError);
  EXPECT_THROW(c.set_bind("localhost:http"), mapping::ConfigError);
  EXPECT_THROW(c.set_bind("localhost:70000"), mapping::ConfigError);
  auto bad = test_config();
  bad.max_query_length = 0;
  EXPECT_THROW(QueryService(rdf::Graph{}, bad), mapping::ConfigError);
  EXPECT_THROW(load_service(test_config()), mapping::ConfigError);
  auto missing = test_config();
  missing.graph_path = "/nonexistent/kg.ttl";
  EXPECT_THROW(load_service(missing), std::runtime_error);
}

TEST(Http, RoutesAndFallbackForm) {
  RunningServer s(fixture_kg());
  auto cli = s.client();

  auto home = cli.Get("/");
  ASSERT_TRUE(home);
  EXPECT_EQ(home->status, 200);
  EXPECT_TRUE(home->get_header_value("Content-Type").starts_with("text/html"));
  EXPECT_NE(home->body.find(R"(<form method="post" action="/query")"), std::string::npos);
  EXPECT_NE(home->body.find(R"(name="query")"), std::string::npos);

  auto missing = cli.Get("/missing");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  EXPECT_EQ(json::parse(missing->body)["error"], "not_found");

  auto ask = cli.Get("/query?query=ASK%7B%7D");
  ASSERT_TRUE(ask);
  EXPECT_EQ(ask->body, R"({"head":{},"boolean":true})");

  auto no_query = cli.Get("/query");
  ASSERT_TRUE(no_query);
  EXPECT_EQ(no_query->status, 400);

  auto form = cli.Post("/query", httplib::Params{{"query", "SELECT ?s WHERE { ?s ?p }"}});
  ASSERT_TRUE(form);
  EXPECT_EQ(form->status, 400);
  EXPECT_EQ(json::parse(form->body)["error"], "syntax");

  auto xml = cli.Get("/graph?format=xml");
  ASSERT_TRUE(xml);
  EXPECT_EQ(xml->status, 400);
  auto nt = cli.Get("/graph?format=nt");
  ASSERT_TRUE(nt);
  EXPECT_EQ(rdf::parse_ntriples(nt->body), s.service->snapshot());
  auto ttl = cli.Get("/graph");
  ASSERT_TRUE(ttl);
  EXPECT_TRUE(ttl->get_header_value("Content-Type").starts_with("text/turtle"));
}

TEST(Http, StatsConstantAndEqualToLibrary) {
  RunningServer s(fixture_kg());
  auto cli = s.client();
  const auto expected = mapping::kg_stats_json(mapping::kg_stats(s.service->snapshot()));
  for (int i = 0; i < 3; ++i) {
    auto r = cli.Get("/stats");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->body, expected);
    cli.Post("/query", kCaseQuery, "application/sparql-query");
  }
}

TEST(Http, RandomQueriesBitIdenticalToLibrary) {
  legalkg::testing::QueryGenerator gen(7);
  const auto g = gen.graph(80);
  RunningServer s(g);
  auto cli = s.client();
  for (int i = 0; i < 50; ++i) {
    const auto text = legalkg::testing::render(gen.query());
    const auto direct = sparql::serialize_results_json(sparql::run_query(text, g));
    httplib::Result r;
    switch (i % 3) {
      case 0: r = cli.Get("/query", httplib::Params{{"query", text}}, httplib::Headers{}); break;
      case 1: r = cli.Post("/query", httplib::Params{{"query", text}}); break;
      default: r = cli.Post("/query", text, "application/sparql-query"); break;
    }
    ASSERT_TRUE(r) << text;
    EXPECT_EQ(r->status, 200) << text;
    EXPECT_EQ(r->body, direct) << text;
  }
}

TEST(Http, ConcurrentIdenticalRequests) {
  RunningServer s(fixture_kg());
  std::vector<std::string> bodies(8);
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    threads.emplace_back([&, i] {
      auto cli = s.client();
      if (auto r = cli.Post("/query", kCaseQuery, "application/sparql-query")) bodies[i] = r->body;
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& b : bodies) EXPECT_EQ(b, bodies.front());
  EXPECT_FALSE(bodies.front().empty());
}

TEST(Http, ServesConsoleBundle) {
  const auto dir = fs::temp_directory_path() / ("legalkg_console_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::ofstream(dir / "index.html") << "<!DOCTYPE html><title>console</title>";
  std::ofstream(dir / "app.js") << "console.log(1);";
  {
    auto cfg = test_config();
    cfg.console_dir = dir;
    RunningServer s(fixture_kg(), cfg);
    auto cli = s.client();
    auto home = cli.Get("/");
    ASSERT_TRUE(home);
    EXPECT_EQ(home->body, "<!DOCTYPE html><title>console</title>");
    EXPECT_TRUE(home->get_header_value("Content-Type").starts_with("text/html"));
    auto js = cli.Get("/app.js");
    ASSERT_TRUE(js);
    EXPECT_EQ(js->status, 200);
    auto q = cli.Get("/query?query=ASK%7B%7D");
    ASSERT_TRUE(q);
    EXPECT_EQ(q->status, 200);
    EXPECT_EQ(cli.Get("/nothing-here")->status, 404);
  }
  fs::remove_all(dir);
}
