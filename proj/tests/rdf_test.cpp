#include <gtest/gtest.h>

#include <set>

#include "legalkg/rdf/turtle.hpp"
#include "support/generators.hpp"

using namespace legalkg::rdf;
using legalkg::testing::RdfGenerator;

namespace {

Iri iri(const std::string& s) { return Iri(s); }

Triple spo(const std::string& s, const std::string& p, Term o) {
  return Triple(iri(s), iri(p), std::move(o));
}

}  // namespace

TEST(TermTest, IriInvariants) {
  EXPECT_NO_THROW(iri("urn:x"));
  EXPECT_NO_THROW(iri("http://example.org/a?b=c#d"));
  EXPECT_THROW(iri(""), StructuralError);
  EXPECT_THROW(iri("relative/path"), StructuralError);
  EXPECT_THROW(iri("http://exa mple.org"), StructuralError);
  EXPECT_THROW(iri("http://x/<y>"), StructuralError);
  EXPECT_THROW(iri("1http://x"), StructuralError);
}

TEST(TermTest, LiteralInvariants) {
  Literal plain("a");
  EXPECT_EQ(plain.datatype().value(), xsd::kString);
  EXPECT_FALSE(plain.langtag());

  auto tagged = Literal::with_lang("a", "en-GB");
  EXPECT_EQ(tagged.datatype().value(), vocab::kLangString);
  EXPECT_THROW(Literal::with_lang("a", "en_GB"), StructuralError);
  EXPECT_THROW(Literal("a", iri(std::string(vocab::kLangString))), StructuralError);
}

TEST(TermTest, BlankLabels) {
  EXPECT_NO_THROW(BlankNode("b_1"));
  EXPECT_THROW(BlankNode(""), StructuralError);
  EXPECT_THROW(BlankNode("a-b"), StructuralError);
}

TEST(TermTest, StructuralErrorNamesComponent) {
  try {
    Triple(Literal("x"), iri("urn:p"), iri("urn:o"));
    FAIL() << "expected StructuralError";
  } catch (const StructuralError& e) {
    EXPECT_EQ(e.component(), "subject");
  }
}

TEST(TermTest, OrderingIrisThenBlanksThenLiterals) {
  std::vector<Term> terms = {Literal("a"), BlankNode("z"), iri("urn:z"), BlankNode("a"), iri("urn:a")};
  std::sort(terms.begin(), terms.end());
  EXPECT_EQ(terms[0], Term(iri("urn:a")));
  EXPECT_EQ(terms[1], Term(iri("urn:z")));
  EXPECT_EQ(terms[2], Term(BlankNode("a")));
  EXPECT_EQ(terms[3], Term(BlankNode("z")));
  EXPECT_EQ(terms[4], Term(Literal("a")));
}

TEST(GraphTest, InsertIsIdempotent) {
  Graph g;
  auto t = spo("urn:s", "urn:p", Literal("a"));
  EXPECT_TRUE(g.insert(t));
  EXPECT_FALSE(g.insert(t));
  EXPECT_EQ(g.size(), 1u);
  EXPECT_EQ(graph_insert(graph_insert(Graph{}, t), t), graph_insert(Graph{}, t));
}

TEST(GraphTest, LanguageTaggedLiteralIsDistinct) {
  Graph g;
  g.insert(spo("urn:s", "urn:p", Literal("a")));
  g.insert(spo("urn:s", "urn:p", Literal::with_lang("a", "en")));
  EXPECT_EQ(g.size(), 2u);
}

TEST(GraphTest, DuplicatesCollapse) {
  Graph g;
  for (auto o : {"1", "2", "3", "1", "3"}) g.insert(spo("urn:s", "urn:p", Literal(o)));
  EXPECT_EQ(g.size(), 3u);
}

TEST(GraphTest, NoValueSpaceCanonicalisation) {
  Graph g;
  const Iri integer(std::string(xsd::kInteger));
  g.insert(spo("urn:s", "urn:p", Literal("1", integer)));
  g.insert(spo("urn:s", "urn:p", Literal("01", integer)));
  EXPECT_EQ(g.size(), 2u);
}

TEST(GraphTest, MatchUsesBoundPositions) {
  Graph g;
  g.insert(spo("urn:a", "urn:p", iri("urn:x")));
  g.insert(spo("urn:a", "urn:q", iri("urn:x")));
  g.insert(spo("urn:b", "urn:p", iri("urn:y")));
  Term a = iri("urn:a");
  Iri p = iri("urn:p");
  Term x = iri("urn:x");
  EXPECT_EQ(g.match(&a, nullptr, nullptr).size(), 2u);
  EXPECT_EQ(g.match(&a, &p, nullptr).size(), 1u);
  EXPECT_EQ(g.match(nullptr, &p, nullptr).size(), 2u);
  EXPECT_EQ(g.match(nullptr, nullptr, &x).size(), 2u);
  EXPECT_EQ(g.match(nullptr, nullptr, nullptr).size(), 3u);
}

TEST(GraphTest, MergeIdentityAndPrefixPrecedence) {
  Graph a;
  a.insert(spo("urn:s", "urn:p", Literal("a")));
  a.bind_prefix("ex", "http://example.org/a#");
  Graph b;
  b.bind_prefix("ex", "http://example.org/b#");
  b.bind_prefix("other", "http://example.org/o#");
  EXPECT_EQ(merge(a, Graph{}), a);
  EXPECT_EQ(merge(a, a), a);
  auto m = merge(a, b);
  EXPECT_EQ(m.prefixes().at("ex"), "http://example.org/a#");
  EXPECT_EQ(m.prefixes().at("other"), "http://example.org/o#");
}

TEST(GraphTest, MergeSizeMatchesSetUnionOracle) {
  RdfGenerator gen(7);
  for (int round = 0; round < 200; ++round) {
    Graph a = gen.graph(15);
    Graph b = gen.graph(15);
    // Oracle: explicit set union over N-Triples strings.
    std::set<std::string> lines;
    for (const auto* g : {&a, &b}) {
      for (const auto& t : *g) {
        lines.insert(to_ntriples(t.subject) + to_ntriples(t.predicate) + to_ntriples(t.object));
      }
    }
    std::size_t common = 0;
    for (const auto& t : a) common += b.contains(t) ? 1 : 0;
    auto m = merge(a, b);
    ASSERT_EQ(m.size(), lines.size());
    ASSERT_EQ(m.size(), a.size() + b.size() - common);
    ASSERT_EQ(merge(a, b), merge(b, a));
    Graph c = gen.graph(10);
    ASSERT_EQ(merge(merge(a, b), c), merge(a, merge(b, c)));
  }
}

TEST(TurtleTest, ParsesSingleTriple) {
  auto g = parse_turtle("<s:a> <p:b> <o:c> .");
  ASSERT_EQ(g.size(), 1u);
  EXPECT_TRUE(g.contains(Triple(iri("s:a"), iri("p:b"), iri("o:c"))));
}

TEST(TurtleTest, ExpandsPrefixedPredicate) {
  auto g = parse_turtle("@prefix d: <http://purl.org/dc/terms/> . <u:x> d:type \"JUD\" .");
  ASSERT_EQ(g.size(), 1u);
  EXPECT_TRUE(g.contains(Triple(iri("u:x"), iri("http://purl.org/dc/terms/type"), Literal("JUD"))));
  EXPECT_EQ(g.prefixes().at("d"), "http://purl.org/dc/terms/");
}

TEST(TurtleTest, MissingObjectIsSyntaxError) {
  try {
    parse_turtle("<a> <b> .");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
}

TEST(TurtleTest, UndefinedPrefix) {
  try {
    parse_turtle("<u:x>\n  nope:type \"a\" .");
    FAIL() << "expected UndefinedPrefixError";
  } catch (const UndefinedPrefixError& e) {
    EXPECT_EQ(e.prefix(), "nope");
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
  }
}

TEST(TurtleTest, ShorthandForms) {
  const char* text = R"(
    PREFIX ex: <http://example.org/>
    @prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
    # comment
    ex:case a ex:StrasbourgCaseLaw ;
        ex:count 3, -4 ;
        ex:ratio 0.5 ;
        ex:big 1.5e3 ;
        ex:flag true ;
        ex:date "2022-02-10"^^xsd:date ;
        ex:title "Case"@en, 'single', """multi
line""" ;
        ex:node _:b1 .
    _:b1 ex:name "n" .
  )";
  auto g = parse_turtle(text);
  EXPECT_EQ(g.size(), 12u);
  const Iri s("http://example.org/case");
  auto has = [&](const std::string& p, Term o) {
    return g.contains(Triple(s, Iri("http://example.org/" + p), std::move(o)));
  };
  EXPECT_TRUE(g.contains(Triple(s, Iri(std::string(vocab::kRdfType)), Iri("http://example.org/StrasbourgCaseLaw"))));
  EXPECT_TRUE(has("count", Literal("3", Iri(std::string(xsd::kInteger)))));
  EXPECT_TRUE(has("count", Literal("-4", Iri(std::string(xsd::kInteger)))));
  EXPECT_TRUE(has("ratio", Literal("0.5", Iri(std::string(xsd::kDecimal)))));
  EXPECT_TRUE(has("big", Literal("1.5e3", Iri(std::string(xsd::kDouble)))));
  EXPECT_TRUE(has("flag", Literal("true", Iri(std::string(xsd::kBoolean)))));
  EXPECT_TRUE(has("date", Literal("2022-02-10", Iri(std::string(xsd::kDate)))));
  EXPECT_TRUE(has("title", Literal::with_lang("Case", "en")));
  EXPECT_TRUE(has("title", Literal("single")));
  EXPECT_TRUE(has("title", Literal("multi\nline")));
  EXPECT_TRUE(has("node", BlankNode("b1")));
}

TEST(TurtleTest, IntegerBeforeTerminator) {
  auto g = parse_turtle("<u:s> <u:p> 5.");
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(std::get<Literal>(g.begin()->object).lexical(), "5");
}

TEST(TurtleTest, PrefixedNameBeforeTerminator) {
  auto g = parse_turtle("@prefix e: <urn:e:> . e:s e:p e:o.");
  EXPECT_TRUE(g.contains(Triple(iri("urn:e:s"), iri("urn:e:p"), iri("urn:e:o"))));
}

TEST(TurtleTest, StringEscapes) {
  auto g = parse_turtle(R"(<u:s> <u:p> "a\tbé\U0001F600\"q\\" .)");
  EXPECT_EQ(std::get<Literal>(g.begin()->object).lexical(), "a\tb\xC3\xA9\xF0\x9F\x98\x80\"q\\");
}

TEST(TurtleTest, SerializesEmptyGraph) {
  EXPECT_EQ(serialize_turtle(Graph{}), "");
  Graph g;
  g.bind_prefix("dcterms", "http://purl.org/dc/terms/");
  EXPECT_EQ(serialize_turtle(g), "@prefix dcterms: <http://purl.org/dc/terms/> .\n");
}

TEST(TurtleTest, SerializesAbbreviatedStatement) {
  Graph g;
  g.bind_prefix("dcterms", "http://purl.org/dc/terms/");
  g.insert(Triple(iri("http://hudoc.example/doc1"), iri("http://purl.org/dc/terms/type"), Literal("JUD")));
  EXPECT_EQ(serialize_turtle(g),
            "@prefix dcterms: <http://purl.org/dc/terms/> .\n"
            "\n"
            "<http://hudoc.example/doc1> dcterms:type \"JUD\" .\n");
}

TEST(TurtleTest, GroupsPredicatesAndObjects) {
  Graph g;
  g.insert(Triple(iri("urn:s"), iri("urn:p"), Literal("a")));
  g.insert(Triple(iri("urn:s"), iri("urn:p"), Literal("b")));
  g.insert(Triple(iri("urn:s"), iri("urn:q"), iri("urn:o")));
  g.insert(Triple(iri("urn:t"), iri(std::string(vocab::kRdfType)), iri("urn:C")));
  EXPECT_EQ(serialize_turtle(g),
            "<urn:s> <urn:p> \"a\", \"b\" ;\n"
            "    <urn:q> <urn:o> .\n"
            "\n"
            "<urn:t> a <urn:C> .\n");
}

TEST(TurtleTest, RoundTripAndDeterminism) {
  RdfGenerator gen(11);
  for (int i = 0; i < 300; ++i) {
    Graph g = gen.graph(40);
    const std::string text = serialize_turtle(g);
    ASSERT_EQ(text, serialize_turtle(g));
    Graph back = parse_turtle(text);
    ASSERT_EQ(back, g) << text;
    ASSERT_EQ(back.prefixes(), g.prefixes());
  }
}

TEST(NTriplesTest, ParsesOneLine) {
  auto g = parse_ntriples("<http://a/s> <http://a/p> \"x\"@en .\n");
  ASSERT_EQ(g.size(), 1u);
}

TEST(NTriplesTest, MissingDotReportsLine) {
  try {
    parse_ntriples("<urn:a> <urn:b> <urn:c> .\n# comment\n<urn:a> <urn:b> <urn:d>\n");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(NTriplesTest, RejectsPrefixedNames) {
  EXPECT_THROW(parse_ntriples("<urn:a> ex:b <urn:c> ."), SyntaxError);
}

TEST(NTriplesTest, RoundTripHundredTriples) {
  RdfGenerator gen(3);
  Graph g;
  while (g.size() < 100) g.insert(gen.triple());
  EXPECT_EQ(parse_ntriples(serialize_ntriples(g)), g);
}

TEST(GraphTest, FingerprintTracksContent) {
  RdfGenerator gen(5);
  Graph g = gen.graph(30);
  const auto before = fingerprint(g);
  Graph copy = g;
  EXPECT_EQ(fingerprint(copy), before);
  copy.insert(Triple(iri("urn:new"), iri("urn:p"), Literal("z")));
  EXPECT_NE(fingerprint(copy), before);
}
