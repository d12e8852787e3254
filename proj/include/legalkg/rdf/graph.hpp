#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "legalkg/rdf/term.hpp"

namespace legalkg::rdf {

// Lookup key matching every triple with the given subject (and predicate, when set).
struct SubjectKey {
  const Term* subject;
  const Iri* predicate = nullptr;
};

struct TripleOrder {
  using is_transparent = void;

  bool operator()(const Triple& a, const Triple& b) const { return a < b; }
  bool operator()(const Triple& a, const SubjectKey& k) const { return compare(a, k) < 0; }
  bool operator()(const SubjectKey& k, const Triple& a) const { return compare(a, k) > 0; }

 private:
  static int compare(const Triple& t, const SubjectKey& k) {
    if (auto c = t.subject <=> *k.subject; c != 0) return c < 0 ? -1 : 1;
    if (k.predicate == nullptr) return 0;
    if (auto c = t.predicate <=> *k.predicate; c != 0) return c < 0 ? -1 : 1;
    return 0;
  }
};

// Deduplicating triple set with a prefix map. Iteration is in term order
// (subject, predicate, object).
class Graph {
 public:
  using TripleSet = std::set<Triple, TripleOrder>;
  using PrefixMap = std::map<std::string, std::string>;
  using const_iterator = TripleSet::const_iterator;

  Graph() = default;

  // Returns true when the triple was not already present.
  bool insert(Triple t) { return triples_.insert(std::move(t)).second; }
  bool contains(const Triple& t) const { return triples_.contains(t); }
  bool erase(const Triple& t) { return triples_.erase(t) > 0; }

  std::size_t size() const noexcept { return triples_.size(); }
  bool empty() const noexcept { return triples_.empty(); }
  const_iterator begin() const noexcept { return triples_.begin(); }
  const_iterator end() const noexcept { return triples_.end(); }
  const TripleSet& triples() const noexcept { return triples_; }

  // Binds `prefix` to `ns`; an existing binding for the same prefix is replaced.
  void bind_prefix(std::string prefix, std::string ns);
  const PrefixMap& prefixes() const noexcept { return prefixes_; }

  // Calls f(const Triple&) for each triple matching the bound positions (nullptr = wildcard).
  template <class F>
  void match(const Term* s, const Iri* p, const Term* o, F&& f) const {
    auto check = [&](const Triple& t) {
      if (p != nullptr && t.predicate != *p) return;
      if (o != nullptr && t.object != *o) return;
      f(t);
    };
    if (s != nullptr) {
      auto [lo, hi] = triples_.equal_range(SubjectKey{s, p});
      for (auto it = lo; it != hi; ++it) check(*it);
    } else {
      for (const auto& t : triples_) check(t);
    }
  }

  std::vector<Triple> match(const Term* s, const Iri* p, const Term* o) const;

  // Triple-set equality; prefix maps are not compared.
  friend bool operator==(const Graph& a, const Graph& b) { return a.triples_ == b.triples_; }

 private:
  TripleSet triples_;
  PrefixMap prefixes_;
};

// Pure insertion: returns a copy of `g` containing `t`.
Graph graph_insert(Graph g, Triple t);

// Set union of triples; g1's prefix binding wins when both bind the same prefix.
Graph merge(const Graph& g1, const Graph& g2);

// Order-independent fingerprint of the triple set (FNV-1a over N-Triples lines).
std::uint64_t fingerprint(const Graph& g);

}  // namespace legalkg::rdf
