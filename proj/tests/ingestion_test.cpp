#include <gtest/gtest.h>

#include <httplib.h>

#include <filesystem>
#include <thread>

#include <unistd.h>

#include "legalkg/data.hpp"
#include "legalkg/ingestion/corpus.hpp"
#include "legalkg/ingestion/fetch.hpp"
#include "legalkg/ingestion/parsers.hpp"

using namespace legalkg;
using namespace legalkg::ingestion;
namespace fs = std::filesystem;

namespace {

std::string details(const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::string out = "<dl>\n";
  for (const auto& [k, v] : pairs) out += "<dt>" + k + "</dt><dd>" + v + "</dd>\n";
  return out + "</dl>\n";
}

std::vector<std::pair<std::string, std::string>> reference_pairs() {
  return {{"Title", "CASE OF X v. ITALY"},
          {"ECLI", "ECLI:CE:ECHR:2022:0210JUD007397516"},
          {"Document Type", "JUD"},
          {"Judgment Date", "2022-02-10"},
          {"Importance Level", "Key cases"},
          {"Respondent State(s)", "Italy"},
          {"Article(s)", "3"},
          {"Language", "ENG"},
          {"Document URL", "https://hudoc.echr.coe.int/eng?i=001-215001"}};
}

fs::path scratch_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("legalkg_ingest_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(HtmlParser, ReferenceCaseDate) {
  auto rec = parse_case_details_html(details(reference_pairs()));
  EXPECT_EQ(identifiers::format_date(rec.date), "2022-02-10");
  EXPECT_EQ(rec.doc_type.code(), "JUD");
  ASSERT_EQ(rec.application_numbers.size(), 1u);
  EXPECT_EQ(rec.application_numbers[0].display(), "73975/16");
  ASSERT_TRUE(rec.importance.has_value());
  EXPECT_EQ(rec.importance->canonical, 1);
  EXPECT_FALSE(rec.unanimous.has_value());
}

TEST(HtmlParser, RepeatedStatesKeepOrder) {
  auto pairs = reference_pairs();
  pairs.emplace_back("Respondent State(s)", "Russian Federation");
  auto rec = parse_case_details_html(details(pairs));
  ASSERT_EQ(rec.respondent_states.size(), 2u);
  EXPECT_EQ(rec.respondent_states[0].name, "Italy");
  EXPECT_EQ(rec.respondent_states[1].name, "Russian Federation");
  EXPECT_EQ(rec.respondent_states[1].iri->value(), "http://www.wikidata.org/entity/Q159");
}

TEST(HtmlParser, MissingEcliNamesField) {
  auto pairs = reference_pairs();
  pairs.erase(pairs.begin() + 1);
  try {
    parse_case_details_html(details(pairs));
    FAIL() << "expected MissingFieldError";
  } catch (const MissingFieldError& e) {
    EXPECT_EQ(e.field(), "ECLI");
    EXPECT_NE(std::string(e.what()).find("ECLI"), std::string::npos);
  }
}

TEST(HtmlParser, MissingDateAndTypeAreMandatory) {
  for (const char* field : {"Document Type", "Judgment Date"}) {
    auto pairs = reference_pairs();
    std::erase_if(pairs, [&](const auto& p) { return p.first == field; });
    EXPECT_THROW(parse_case_details_html(details(pairs)), MissingFieldError) << field;
  }
}

TEST(HtmlParser, UnparseableEcli) {
  auto pairs = reference_pairs();
  pairs[1].second = "ECLI:CE:ECHR:2022:nonsense";
  EXPECT_THROW(parse_case_details_html(details(pairs)), identifiers::EcliError);
}

TEST(HtmlParser, UnknownFieldWarnsOnly) {
  auto pairs = reference_pairs();
  pairs.emplace_back("Originating Body", "Second Section");
  std::vector<std::string> warnings;
  ParseOptions opts;
  opts.warnings = &warnings;
  EXPECT_NO_THROW(parse_case_details_html(details(pairs), opts));
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("Originating Body"), std::string::npos);
}

TEST(HtmlParser, AliasesEntitiesAndMarkup) {
  auto rec = parse_case_details_html(
      "<DL><DT class=\"k\"> respondent   STATE </DT><DD><b>Italy</b></DD>"
      "<dt>ecli:</dt><dd>ECLI:EC:ECHR:2022:0210JUD007397516</dd>"
      "<dt>Type</dt><dd>judgment</dd><dt>Date</dt><dd>10.02.2022</dd>"
      "<dt>Case Title</dt><dd>A &amp; B v. Italy &#8211; &quot;x&quot;</dd>"
      "<dt>language</dt><dd>FRE</dd><dt>url</dt><dd>https://example.org/d/1</dd></DL>");
  EXPECT_EQ(rec.title, "A & B v. Italy \xE2\x80\x93 \"x\"");
  EXPECT_EQ(rec.respondent_states.at(0).name, "Italy");
  EXPECT_EQ(identifiers::format_ecli(rec.ecli), "ECLI:CE:ECHR:2022:0210JUD007397516");
  EXPECT_EQ(identifiers::format_date(rec.date), "2022-02-10");
}

TEST(HtmlParser, ValidationRejectsYearMismatch) {
  auto pairs = reference_pairs();
  pairs[3].second = "2021-02-10";
  EXPECT_THROW(parse_case_details_html(details(pairs)), ValidationError);
}

TEST(HtmlParser, UrlFallsBackOrFails) {
  auto pairs = reference_pairs();
  pairs.pop_back();
  EXPECT_THROW(parse_case_details_html(details(pairs)), MissingFieldError);
  ParseOptions opts;
  opts.fallback_url = rdf::Iri("https://hudoc.echr.coe.int/eng?i=001-1");
  EXPECT_EQ(parse_case_details_html(details(pairs), opts).document_url.value(),
            "https://hudoc.echr.coe.int/eng?i=001-1");
}

TEST(JsonParser, BogusEcli) {
  EXPECT_THROW(parse_case_record_json(R"({"ecli": "bogus"})"), identifiers::EcliError);
}

TEST(JsonParser, UnanimousTrue) {
  auto rec = parse_case_record_json(R"({"ecli":"ECLI:CE:ECHR:2022:0210JUD007397516","doc_type":"JUD",
    "date":"2022-02-10","language":"ENG","unanimous":true,"document_url":"https://example.org/c"})");
  ASSERT_TRUE(rec.unanimous.has_value());
  EXPECT_TRUE(*rec.unanimous);
}

TEST(JsonParser, SchemaErrorsCarryPointer) {
  const std::string base = R"({"ecli":"ECLI:CE:ECHR:2022:0210JUD007397516","doc_type":"JUD","date":"2022-02-10",
    "language":"ENG","document_url":"https://example.org/c", )";
  auto pointer_of = [&](const std::string& extra) {
    try {
      parse_case_record_json(base + extra + "}");
    } catch (const SchemaError& e) {
      return e.pointer();
    }
    return std::string("<no error>");
  };
  EXPECT_EQ(pointer_of(R"("unanimous":"yes")"), "/unanimous");
  EXPECT_EQ(pointer_of(R"("respondent_states":"Italy")"), "/respondent_states");
  EXPECT_EQ(pointer_of(R"("convention_articles":["3", 8])"), "/convention_articles/1");
  EXPECT_EQ(pointer_of(R"("title":5)"), "/title");
  EXPECT_THROW(parse_case_record_json("[1,2]"), SchemaError);
  EXPECT_THROW(parse_case_record_json("{"), SchemaError);
}

TEST(JsonParser, RoundTripsThroughSerializer) {
  auto rec = parse_case_details_html(details(reference_pairs()));
  EXPECT_EQ(parse_case_record_json(case_record_to_json(rec)), rec);
}

TEST(StateTable, ItalyResolvesFromBundledTable) {
  // Independent read of the shipped CSV rather than going through StateTable.
  const auto rows = parse_csv(read_file(data_path("states/wikidata_states.csv")));
  std::string qid;
  for (const auto& r : rows) {
    if (r.at(0) == "Italy") qid = r.at(1);
  }
  ASSERT_FALSE(qid.empty());
  EXPECT_EQ(map_state_to_wikidata("Italy").value(), "http://www.wikidata.org/entity/" + qid);
}

TEST(StateTable, NormalisesCaseAndWhitespace) {
  const auto expected = map_state_to_wikidata("Italy");
  EXPECT_EQ(map_state_to_wikidata("italy "), expected);
  EXPECT_EQ(map_state_to_wikidata("  ITALY"), expected);
  EXPECT_EQ(map_state_to_wikidata("the Republic  of Moldova"), map_state_to_wikidata("Moldova"));
}

TEST(StateTable, UnknownStateIsUnresolved) {
  EXPECT_THROW(map_state_to_wikidata("Atlantis"), UnresolvedStateError);
  auto pairs = reference_pairs();
  pairs[5].second = "Atlantis";
  std::vector<std::string> warnings;
  ParseOptions opts;
  opts.warnings = &warnings;
  auto rec = parse_case_details_html(details(pairs), opts);
  ASSERT_EQ(rec.respondent_states.size(), 1u);
  EXPECT_FALSE(rec.respondent_states[0].iri.has_value());
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(StateTable, RejectsMalformedTables) {
  EXPECT_THROW(StateTable::parse("state,id\nItaly,Q38\n"), IngestError);
  EXPECT_THROW(StateTable::parse("name,qid\nItaly,38\n"), IngestError);
  EXPECT_EQ(StateTable::parse("name,qid\nItaly,Q38\nItalia,Q38\n").size(), 2u);
}

TEST(Csv, QuotingRoundTrip) {
  const std::vector<std::string> row = {"a,b", "say \"hi\"", "line\nbreak", "plain", ""};
  std::string line;
  for (std::size_t i = 0; i < row.size(); ++i) line += (i ? "," : "") + csv_escape(row[i]);
  auto rows = parse_csv(line + "\r\n");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0], row);
  EXPECT_THROW(parse_csv("\"open"), IngestError);
}

TEST(Manifest, ValidatesHeaderAndIds) {
  EXPECT_THROW(CorpusManifest::parse("id,url,path\n"), IngestError);
  EXPECT_THROW(CorpusManifest::parse("case_id,url,local_path\na,u,x.html\na,u,y.html\n"), IngestError);
  EXPECT_THROW(CorpusManifest::parse("case_id,url,local_path\na,u\n"), IngestError);
  auto m = CorpusManifest::parse("case_id,url,local_path\na,https://x/1,a.html\n", "/base");
  m.upsert({"a", "https://x/2", "a.json"});
  m.upsert({"b", "https://x/3", "b.json"});
  EXPECT_EQ(m.to_csv(), "case_id,url,local_path\na,https://x/2,a.json\nb,https://x/3,b.json\n");
  EXPECT_EQ(m.resolve(m.entries()[0]), fs::path("/base/a.json"));
}

TEST(Corpus, BundledCorpusLoadsEveryEntry) {
  auto manifest = CorpusManifest::load(data_path("corpus/manifest.csv"));
  const auto raw_rows = parse_csv(read_file(data_path("corpus/manifest.csv")));
  ASSERT_GE(manifest.entries().size(), 10u);
  EXPECT_EQ(manifest.entries().size(), raw_rows.size() - 1);
  auto cases = load_corpus(manifest);
  ASSERT_EQ(cases.size(), manifest.entries().size());
  for (std::size_t i = 0; i < cases.size(); ++i) {
    EXPECT_EQ(cases[i].case_id, manifest.entries()[i].case_id);
    const auto& r = cases[i].record;
    EXPECT_NO_THROW(validate(r));
    EXPECT_EQ(static_cast<int>(r.date.year()), r.ecli.year());
    EXPECT_FALSE(r.language.empty());
  }
  auto again = load_corpus(manifest);
  for (std::size_t i = 0; i < cases.size(); ++i) EXPECT_EQ(again[i].record, cases[i].record);
}

TEST(Corpus, HtmlAndJsonFixturesAgree) {
  auto manifest = CorpusManifest::load(data_path("corpus/manifest.csv"));
  int pairs = 0;
  for (const auto& e : manifest.entries()) {
    const auto html_path = data_path("corpus/html/" + e.case_id + ".html");
    const auto json_path = data_path("corpus/json/" + e.case_id + ".json");
    if (!fs::exists(html_path) || !fs::exists(json_path)) continue;
    ParseOptions opts;
    opts.fallback_url = rdf::Iri(e.url);
    EXPECT_EQ(parse_case_details_html(read_file(html_path), opts), parse_case_record_json(read_file(json_path), opts))
        << e.case_id;
    ++pairs;
  }
  EXPECT_EQ(pairs, static_cast<int>(manifest.entries().size()));
}

TEST(Corpus, ErrorNamesCaseId) {
  auto dir = scratch_dir("bad");
  write_file(dir / "bad.json", R"({"ecli":"bogus"})");
  auto m = CorpusManifest::parse("case_id,url,local_path\nbroken-7,,bad.json\n", dir);
  try {
    load_corpus(m);
    FAIL();
  } catch (const IngestError& e) {
    EXPECT_NE(std::string(e.what()).find("broken-7"), std::string::npos);
    EXPECT_THROW(std::rethrow_if_nested(e), identifiers::EcliError);
  }
  fs::remove_all(dir);
}

class FetchTest : public ::testing::Test {
 protected:
  void SetUp() override {
    server_.Get("/doc", [this](const httplib::Request&, httplib::Response& res) {
      ++hits_;
      res.set_content(payload_, "text/html");
    });
    server_.Get("/flaky", [](const httplib::Request&, httplib::Response& res) { res.status = 503; });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
    dir_ = scratch_dir("fetch");
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
    fs::remove_all(dir_);
  }
  std::string url(const std::string& path) const { return "http://127.0.0.1:" + std::to_string(port_) + path; }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  int hits_ = 0;
  fs::path dir_;
  std::string payload_ = std::string(5000, 'x') + "<dl><dt>ECLI</dt></dl>";
};

TEST_F(FetchTest, WritesBodyVerbatim) {
  DocumentFetcher fetcher;
  auto r = fetcher.fetch(url("/doc"), dir_ / "a.html");
  EXPECT_FALSE(r.from_cache);
  EXPECT_EQ(r.bytes, payload_.size());
  EXPECT_EQ(fs::file_size(dir_ / "a.html"), payload_.size());
  EXPECT_EQ(read_file(dir_ / "a.html"), payload_);
}

TEST_F(FetchTest, NotFoundCarriesStatus) {
  DocumentFetcher fetcher;
  try {
    fetcher.fetch(url("/missing"), dir_ / "m.html");
    FAIL();
  } catch (const FetchError& e) {
    EXPECT_EQ(e.kind(), FetchError::Kind::Status);
    EXPECT_EQ(e.status(), 404);
    EXPECT_FALSE(e.retryable());
  }
  EXPECT_FALSE(fs::exists(dir_ / "m.html"));
}

TEST_F(FetchTest, ServerErrorIsRetryable) {
  DocumentFetcher fetcher;
  try {
    fetcher.fetch(url("/flaky"), dir_ / "f.html");
    FAIL();
  } catch (const FetchError& e) {
    EXPECT_EQ(e.status(), 503);
    EXPECT_TRUE(e.retryable());
  }
}

TEST_F(FetchTest, CachedSecondCallIsNoOp) {
  DocumentFetcher fetcher;
  fetcher.fetch(url("/doc"), dir_ / "c.html");
  auto second = fetcher.fetch(url("/doc"), dir_ / "c.html");
  EXPECT_TRUE(second.from_cache);
  EXPECT_EQ(hits_, 1);
}

TEST_F(FetchTest, FetchIntoUpdatesManifest) {
  auto manifest = CorpusManifest::parse("case_id,url,local_path\n", dir_);
  DocumentFetcher fetcher;
  fetcher.fetch_into(manifest, "c42", url("/doc"), dir_ / "raw" / "c42.html");
  ASSERT_EQ(manifest.entries().size(), 1u);
  EXPECT_EQ(manifest.entries()[0].local_path, fs::path("raw/c42.html"));
  EXPECT_EQ(manifest.entries()[0].url, url("/doc"));
}

TEST(Fetch, NetworkAndUrlErrors) {
  FetchOptions opts;
  opts.timeout = std::chrono::seconds(2);
  DocumentFetcher fetcher(opts);
  auto dir = scratch_dir("neterr");
  try {
    fetcher.fetch("http://127.0.0.1:1/x", dir / "x");
    FAIL();
  } catch (const FetchError& e) {
    EXPECT_EQ(e.kind(), FetchError::Kind::Network);
    EXPECT_TRUE(e.retryable());
  }
  try {
    fetcher.fetch("ftp://example.org/x", dir / "y");
    FAIL();
  } catch (const FetchError& e) {
    EXPECT_EQ(e.kind(), FetchError::Kind::InvalidUrl);
  }
  fs::remove_all(dir);
}

TEST(Fetch, TimeoutFromEnvironment) {
  ::setenv("LEGALKG_FETCH_TIMEOUT", "7", 1);
  EXPECT_EQ(FetchOptions::from_env().timeout, std::chrono::seconds(7));
  ::setenv("LEGALKG_FETCH_TIMEOUT", "junk", 1);
  EXPECT_EQ(FetchOptions::from_env().timeout, std::chrono::seconds(30));
  ::unsetenv("LEGALKG_FETCH_TIMEOUT");
}
