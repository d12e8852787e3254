#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <set>
#include <sstream>

#include <json.hpp>

#include "legalkg/cli/cli.hpp"
#include "legalkg/data.hpp"
#include "legalkg/ingestion/corpus.hpp"
#include "legalkg/io_error.hpp"
#include "legalkg/llm/scores.hpp"
#include "legalkg/mapping/vocabulary.hpp"
#include "legalkg/rdf/turtle.hpp"
#include "legalkg/sparql/parser.hpp"

namespace legalkg {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("legalkg_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(CliTest, BuildThenStatsMatchesCountedGraph) {
  const auto kg = dir_ / "kg.ttl";
  ASSERT_EQ(cli({"build", "--out", kg.string()}).code, 0);
  const auto g = rdf::load_graph(kg);

  // Count by hand rather than through kg_stats.
  std::set<std::string> preds, entities;
  for (const auto& t : g.triples()) {
    preds.insert(rdf::to_ntriples(t.predicate));
    if (!rdf::is_literal(t.subject)) entities.insert(rdf::to_ntriples(t.subject));
    if (!rdf::is_literal(t.object)) entities.insert(rdf::to_ntriples(t.object));
  }
  const auto r = cli({"stats", kg.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["triples"], g.size());
  EXPECT_EQ(j["distinct_predicates"], preds.size());
  EXPECT_EQ(j["distinct_entities"], entities.size());
}

TEST_F(CliTest, BuildFormatsDescribeTheSameGraph) {
  const auto ttl = dir_ / "kg.ttl";
  const auto nt = dir_ / "kg.nt";
  ASSERT_EQ(cli({"build", "--out", ttl.string()}).code, 0);
  ASSERT_EQ(cli({"build", "--format", "nt", "--out", nt.string()}).code, 0);
  EXPECT_EQ(rdf::load_graph(ttl), rdf::load_graph(nt));
  EXPECT_EQ(ingestion::read_file(ttl), cli({"build"}).out);
}

TEST_F(CliTest, QueryJsonAndCsv) {
  const auto kg = dir_ / "kg.ttl";
  ASSERT_EQ(cli({"build", "--out", kg.string()}).code, 0);
  const std::string q = "SELECT ?s ?p ?o WHERE { ?s ?p ?o }";
  const auto json_run = cli({"query", kg.string(), "-q", q});
  ASSERT_EQ(json_run.code, 0) << json_run.err;
  const auto j = nlohmann::json::parse(json_run.out);
  EXPECT_EQ(j["results"]["bindings"].size(), rdf::load_graph(kg).size());

  const auto csv_run = cli({"query", kg.string(), "-q", q, "--format", "csv"});
  ASSERT_EQ(csv_run.code, 0);
  EXPECT_EQ(csv_run.out.substr(0, 7), "s,p,o\r\n");
  EXPECT_EQ(std::count(csv_run.out.begin(), csv_run.out.end(), '\n'), static_cast<long>(rdf::load_graph(kg).size()) + 1);
}

TEST_F(CliTest, MalformedQueryExitsOneWithPosition) {
  const auto kg = dir_ / "kg.ttl";
  ASSERT_EQ(cli({"build", "--out", kg.string()}).code, 0);
  const auto r = cli({"query", kg.string(), "-q", "SELECT ?s WHERE {\n ?s ?p }"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("error [query]"), std::string::npos);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
}

TEST_F(CliTest, CqValidatePassesOnBundledCorpus) {
  const auto r = cli({"cq-validate"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST_F(CliTest, IngestWritesOneRecordPerCase) {
  const auto r = cli({"ingest", "--out", (dir_ / "records").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto cases = ingestion::load_corpus(ingestion::CorpusManifest::load(data_path("corpus/manifest.csv")));
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir_ / "records")) files += e.path().extension() == ".json";
  EXPECT_EQ(files, cases.size());
  EXPECT_NE(r.out.find(std::to_string(cases.size()) + " cases loaded"), std::string::npos);
}

TEST_F(CliTest, NlpRunWritesGraph) {
  const auto in = dir_ / "in.txt";
  ingestion::write_file(in, "The courts dismissed the appeal.");
  const auto out = dir_ / "svo.nt";
  const auto r = cli({"nlp-run", in.string(), "--out", out.string(), "--format", "nt"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("court\tdismiss\tappeal"), std::string::npos);
  EXPECT_EQ(rdf::load_graph(out).size(), 1u);
}

TEST_F(CliTest, LlmRunWithMockProvider) {
  const auto r = cli({"llm-run", "--provider", "mock", "--out", (dir_ / "llm").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"kg.ttl", "ontology.ttl", "rejects.jsonl", "answers.jsonl", "scores.csv", "report.txt"}) {
    EXPECT_TRUE(fs::exists(dir_ / "llm" / f)) << f;
  }
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(cli({}).code, 3);
  EXPECT_EQ(cli({"frobnicate"}).code, 3);
  EXPECT_EQ(cli({"build", "--format", "xml"}).code, 3);
  EXPECT_EQ(cli({"stats", (dir_ / "missing.ttl").string()}).code, 2);
  EXPECT_EQ(cli({"build", "--manifest", (dir_ / "missing.csv").string()}).code, 2);

  const auto bad = dir_ / "bad.ttl";
  ingestion::write_file(bad, "<a> <b> .");
  EXPECT_EQ(cli({"stats", bad.string()}).code, 1);

  const auto cfg = dir_ / "cfg.json";
  ingestion::write_file(cfg, R"({"vocabulary": {"bogus": 1}})");
  EXPECT_EQ(cli({"build", "--config", cfg.string()}).code, 3);
  EXPECT_EQ(cli({"build", "--config", (dir_ / "cfg.toml").string()}).code, 3);
  EXPECT_EQ(cli({"llm-run", "--scores", (dir_ / "none.csv").string(), "--out", (dir_ / "o").string()}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST_F(CliTest, ConfigOverridesCustomNamespace) {
  const auto cfg = dir_ / "cfg.json";
  ingestion::write_file(cfg, R"({"vocabulary": {"custom_ns": "http://example.org/x#"}})");
  const auto r = cli({"build", "--config", cfg.string(), "--format", "nt"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("<http://example.org/x#respondentState>"), std::string::npos);
  EXPECT_EQ(r.out.find("prejust4woman/ontology#"), std::string::npos);
}

TEST(CliExitCode, InnermostCauseDecides) {
  try {
    try {
      throw IoError("disk gone");
    } catch (...) {
      std::throw_with_nested(mapping::ConfigError("loading vocabulary"));
    }
  } catch (const std::exception& e) {
    EXPECT_EQ(cli::exit_code_for(e), 2);
    EXPECT_EQ(cli::cause_chain(e), "loading vocabulary\n  caused by: disk gone");
  }
  EXPECT_EQ(cli::exit_code_for(llm::ScoreSheetError("x")), 1);
  EXPECT_EQ(cli::exit_code_for(std::runtime_error("x")), 2);
}

}  // namespace
}  // namespace legalkg
