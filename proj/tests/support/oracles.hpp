// Test-side generators and independent reference implementations.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "elproof/proofs.hpp"
#include "elproof/syntax.hpp"

namespace oracle {

using elproof::Axiom;
using elproof::Concept;
using elproof::TBox;

inline constexpr const char* kExample =
    "SubClassOf(A B)\n"
    "SubClassOf(B ObjectSomeValuesFrom(r C))\n"
    "SubClassOf(C D)\n"
    "SubClassOf(ObjectSomeValuesFrom(t D) E)\n"
    "SubObjectPropertyOf(r s)\n"
    "SubObjectPropertyOf(s t)\n";

// Platform-independent draws: the standard distributions are not portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
  bool chance(unsigned percent) { return below(100) < percent; }

 private:
  std::mt19937_64 gen_;
};

struct TBoxShape {
  std::size_t max_axioms = 15;
  std::size_t max_names = 8;
  std::size_t max_roles = 3;
  bool role_inclusions = true;
};

class TBoxGenerator {
 public:
  TBoxGenerator(Rng& rng, TBoxShape shape) : rng_(rng), shape_(shape) {
    names_ = 2 + rng_.below(shape_.max_names - 1);
    roles_ = 1 + rng_.below(shape_.max_roles);
  }

  Concept name() { return Concept::named("A" + std::to_string(rng_.below(names_))); }
  std::string role() { return "r" + std::to_string(rng_.below(roles_)); }

  Concept concept_of(int depth) {
    const auto pick = rng_.below(100);
    if (depth <= 0 || pick < 50) {
      if (pick % 20 == 0) return Concept::top();
      if (pick % 20 == 1) return Concept::bottom();
      return name();
    }
    if (pick < 75) return Concept::existential(role(), concept_of(depth - 1));
    std::vector<Concept> ops{concept_of(depth - 1), concept_of(depth - 1)};
    if (rng_.chance(25)) ops.push_back(concept_of(depth - 1));
    return Concept::conjunction(std::move(ops));
  }

  Axiom axiom() {
    const auto pick = rng_.below(100);
    if (shape_.role_inclusions && roles_ > 1 && pick < 15) {
      auto r = role(), s = role();
      if (r != s) return Axiom::subrole(r, s);
    }
    if (pick >= 15 && pick < 25) return Axiom::equivalence(name(), concept_of(2));
    if (pick >= 25 && pick < 30) return Axiom::domain(role(), concept_of(1));
    return Axiom::subclass(concept_of(2), concept_of(2));
  }

  TBox tbox() {
    TBox t;
    const auto n = 1 + rng_.below(shape_.max_axioms);
    for (std::size_t i = 0; i < n; ++i) t.add(axiom());
    return t;
  }

 private:
  Rng& rng_;
  TBoxShape shape_;
  std::size_t names_;
  std::size_t roles_;
};

inline std::vector<TBox> random_tboxes(std::uint64_t seed, std::size_t count,
                                       TBoxShape shape = {}) {
  Rng rng(seed);
  std::vector<TBox> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(TBoxGenerator(rng, shape).tbox());
  return out;
}

using Shape = std::vector<std::vector<std::size_t>>;

// Random rooted tree on n vertices: vertex i > 0 hangs below a smaller vertex.
inline Shape random_tree(Rng& rng, std::size_t n) {
  Shape children(n);
  for (std::size_t v = 1; v < n; ++v) children[rng.below(v)].push_back(v);
  return children;
}

inline Shape full_binary_tree(int levels) {
  const std::size_t n = (std::size_t{1} << levels) - 1;
  Shape children(n);
  for (std::size_t v = 0; 2 * v + 2 < n; ++v) children[v] = {2 * v + 1, 2 * v + 2};
  return children;
}

inline Shape path(std::size_t n) {
  Shape children(n);
  for (std::size_t v = 0; v + 1 < n; ++v) children[v] = {v + 1};
  return children;
}

inline Shape star(std::size_t leaves) {
  Shape children(leaves + 1);
  for (std::size_t v = 1; v <= leaves; ++v) children[0].push_back(v);
  return children;
}

using Edges = std::vector<std::pair<std::size_t, std::size_t>>;

inline Edges edges_of(const Shape& s) {
  Edges e;
  for (std::size_t v = 0; v < s.size(); ++v) {
    for (auto c : s[v]) e.emplace_back(v, c);
  }
  return e;
}

inline Edges reversed(const Edges& e) {
  Edges out;
  for (const auto& [a, b] : e) out.emplace_back(b, a);
  return out;
}

// Max gap cut of a vertex order; `pos[v]` is the 0-based position of v.
inline std::size_t gap_cut(const Edges& edges, const std::vector<std::size_t>& pos,
                           std::size_t n) {
  std::size_t best = 0;
  for (std::size_t gap = 0; gap + 1 < n; ++gap) {
    std::size_t cut = 0;
    for (const auto& [a, b] : edges) cut += pos[a] <= gap && gap < pos[b];
    best = std::max(best, cut);
  }
  return best;
}

// Minimum over all topological orders, by enumerating every permutation.
inline std::size_t naive_cutwidth(const Edges& edges, std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::size_t best = SIZE_MAX;
  do {
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
    const bool topo = std::all_of(edges.begin(), edges.end(),
                                  [&](const auto& e) { return pos[e.first] < pos[e.second]; });
    if (topo) best = std::min(best, gap_cut(edges, pos, n));
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

// Label tree with children sorted, for isomorphism up to child order.
inline std::string canonical_tree(const elproof::ProofDag& dag, std::size_t v) {
  std::vector<std::string> kids;
  for (auto c : dag.vertices[v].children) kids.push_back(canonical_tree(dag, c));
  std::sort(kids.begin(), kids.end());
  std::string out = to_string(dag.vertices[v].label);
  if (kids.empty()) return out;
  out += "[";
  for (std::size_t i = 0; i < kids.size(); ++i) out += (i ? "; " : "") + kids[i];
  return out + "]";
}

struct ExpectedTree {
  std::string label;
  std::vector<ExpectedTree> children;
};

inline std::string canonical_tree(const ExpectedTree& t) {
  std::vector<std::string> kids;
  for (const auto& c : t.children) kids.push_back(canonical_tree(c));
  std::sort(kids.begin(), kids.end());
  if (kids.empty()) return t.label;
  std::string out = t.label + "[";
  for (std::size_t i = 0; i < kids.size(); ++i) out += (i ? "; " : "") + kids[i];
  return out + "]";
}

// The three proofs of the small example, written out by hand.
inline ExpectedTree example_elk() {
  return {"SubClassOf(A E)",
          {{"SubClassOf(A ObjectSomeValuesFrom(t D))",
            {{"SubClassOf(A ObjectSomeValuesFrom(r C))",
              {{"SubClassOf(A B)", {}}, {"SubClassOf(B ObjectSomeValuesFrom(r C))", {}}}},
             {"SubClassOf(C D)", {}},
             {"SubObjectPropertyOf(r t)",
              {{"SubObjectPropertyOf(r s)", {}}, {"SubObjectPropertyOf(s t)", {}}}}}},
           {"SubClassOf(ObjectSomeValuesFrom(t D) E)", {}}}};
}

inline ExpectedTree example_textbook() {
  return {"SubClassOf(A E)",
          {{"SubClassOf(A ObjectSomeValuesFrom(r C))",
            {{"SubClassOf(A B)", {}}, {"SubClassOf(B ObjectSomeValuesFrom(r C))", {}}}},
           {"SubClassOf(C D)", {}},
           {"SubClassOf(ObjectSomeValuesFrom(t D) E)", {}},
           {"SubObjectPropertyOf(r t)",
            {{"SubObjectPropertyOf(r s)", {}}, {"SubObjectPropertyOf(s t)", {}}}}}};
}

inline ExpectedTree example_envelope() {
  return {"SubClassOf(A E)",
          {{"SubClassOf(A ObjectSomeValuesFrom(t C))",
            {{"SubClassOf(A ObjectSomeValuesFrom(s C))",
              {{"SubClassOf(A ObjectSomeValuesFrom(r C))",
                {{"SubClassOf(A B)", {}}, {"SubClassOf(B ObjectSomeValuesFrom(r C))", {}}}},
               {"SubObjectPropertyOf(r s)", {}}}},
             {"SubObjectPropertyOf(s t)", {}}}},
           {"SubClassOf(C D)", {}},
           {"SubClassOf(ObjectSomeValuesFrom(t D) E)", {}}}};
}

}  // namespace oracle
