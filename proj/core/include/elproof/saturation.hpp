#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "elproof/normalize.hpp"
#include "elproof/syntax.hpp"

namespace elproof {

using ConceptId = std::uint32_t;
using RoleId = std::uint32_t;
using FactId = std::uint32_t;

inline constexpr ConceptId kTopId = 0;
inline constexpr ConceptId kBottomId = 1;

/// Hash-consed concepts: every node refers to its operands by id.
class ConceptTable {
 public:
  struct Node {
    ConceptKind kind;
    std::uint32_t symbol;  // name index for Named, RoleId for Existential
    std::vector<ConceptId> operands;
  };

  ConceptTable();

  ConceptId intern(const Concept& c);
  std::optional<ConceptId> find(const Concept& c) const;
  /// Existential lookup without building a Concept.
  std::optional<ConceptId> find_existential(RoleId role, ConceptId filler) const;
  ConceptId intern_existential(RoleId role, ConceptId filler);

  const Node& node(ConceptId id) const { return nodes_[id]; }
  bool is_atomic(ConceptId id) const {
    const auto k = nodes_[id].kind;
    return k == ConceptKind::Top || k == ConceptKind::Bottom || k == ConceptKind::Named;
  }
  Concept to_concept(ConceptId id) const;
  std::size_t size() const { return nodes_.size(); }

  RoleId role_id(const std::string& role);
  std::optional<RoleId> find_role(const std::string& role) const;
  const std::string& role_name(RoleId id) const { return roles_[id]; }
  std::size_t role_count() const { return roles_.size(); }

 private:
  ConceptId add(Node node, std::string key);

  std::vector<Node> nodes_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> name_index_;
  std::unordered_map<std::string, ConceptId> by_key_;
  std::vector<std::string> roles_;
  std::unordered_map<std::string, RoleId> role_index_;
};

enum class FactKind : std::uint8_t {
  Init,             // elk init(C)
  SubClass,         // C ⊑ D, both atomic (names, ⊤, ⊥, aliases)
  SubClassComplex,  // C ⊑ D with a one-constructor side
  Link,             // elk C →r E
  Equivalence,      // synthetic C ≡ D for equivalence goals
};

struct Fact {
  FactKind kind = FactKind::SubClass;
  ConceptId lhs = 0;
  RoleId role = 0;
  ConceptId rhs = 0;

  friend bool operator==(const Fact&, const Fact&) = default;
};

struct FactHash {
  std::size_t operator()(const Fact& f) const noexcept {
    std::size_t h = static_cast<std::size_t>(f.kind);
    h = h * 0x9E3779B97F4A7C15ULL ^ f.lhs;
    h = h * 0x9E3779B97F4A7C15ULL ^ f.role;
    h = h * 0x9E3779B97F4A7C15ULL ^ f.rhs;
    return h;
  }
};

enum class Rule : std::uint8_t {
  // seeds
  Tbox,
  Seed,
  // elk
  R0,
  RTop,
  RSub,
  RConjMinus,
  RConjPlus,
  RExMinus,
  RExPlus,
  RInit,
  RBot,
  RComp,
  // textbook
  CR1,
  CR2,
  CR3,
  CR4,
  CR5p,
  RBotPrime,
  // envelope
  ECR1,
  ECR2,
  ECR3,
  ECR4,
  ECR5,
  ECR10,
  ECR11,
  // synthetic
  Equiv,
};

const char* rule_name(Rule r);

/// A side condition: a TBox axiom (index into NormalizedTBox::axioms) or a
/// role-hierarchy pair r ⊑*_T s.
struct SideCondition {
  enum class Kind : std::uint8_t { Axiom, RolePair } kind = Kind::Axiom;
  std::uint32_t axiom = 0;
  RoleId sub = 0;
  RoleId sup = 0;

  static SideCondition tbox(std::size_t index) {
    return {Kind::Axiom, static_cast<std::uint32_t>(index), 0, 0};
  }
  static SideCondition roles(RoleId sub, RoleId sup) { return {Kind::RolePair, 0, sub, sup}; }
  friend bool operator==(const SideCondition&, const SideCondition&) = default;
};

struct Derivation {
  Rule rule = Rule::Seed;
  std::vector<FactId> premises;
  std::vector<SideCondition> sides;

  friend bool operator==(const Derivation&, const Derivation&) = default;
};

/// Every distinct rule application of one saturation run, keyed by conclusion.
class DerivationGraph {
 public:
  Calculus calculus = Calculus::Elk;
  ConceptTable concepts;
  std::vector<Fact> facts;
  std::vector<std::uint32_t> rounds;
  std::vector<std::vector<Derivation>> derivations;
  std::vector<FactId> seeds;

  std::optional<FactId> find(const Fact& f) const;
  /// Inserts `f` if absent; returns (id, inserted).
  std::pair<FactId, bool> insert(const Fact& f, std::uint32_t round);
  /// Appends a derivation unless an identical one is recorded.
  bool record(FactId conclusion, Derivation d);

  /// Normal-form axiom rendering of a fact; Init yields nothing.
  std::optional<Axiom> fact_axiom(FactId id) const;
  std::string fact_string(FactId id) const;

  Fact sub(ConceptId lhs, ConceptId rhs) const;
  Fact link(ConceptId lhs, RoleId role, ConceptId rhs) const {
    return {FactKind::Link, lhs, role, rhs};
  }

 private:
  std::unordered_map<Fact, FactId, FactHash> index_;
};

struct SaturationOptions {
  std::size_t max_facts = 10'000'000;
  /// elk only: seed init(C) for these concepts instead of all main names.
  std::optional<std::vector<Concept>> init_only;
  /// elk only: extra init seeds in addition to the main names.
  std::vector<Concept> extra_init;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

DerivationGraph saturate(const NormalizedTBox& ntbox, const SaturationOptions& options = {});

using Subsumption = std::pair<std::string, std::string>;

/// Entailed subsumptions between main concept names, without (A,A) pairs.
std::set<Subsumption> classify(const TBox& tbox, Calculus calculus,
                               const SaturationOptions& options = {});
std::set<Subsumption> classify(const NormalizedTBox& ntbox, const DerivationGraph& graph);

struct Entailment {
  bool entailed = false;
  std::optional<FactId> goal;  // absent for tautological goals
};

/// Goal check on an existing saturation. For equivalence goals a synthetic
/// Equivalence fact with two premises is added to `graph`.
Entailment check_goal(const NormalizedTBox& ntbox, DerivationGraph& graph, const Axiom& goal);

/// Throws Error(UnsupportedGoal) unless the goal is A ⊑ B or A ≡ B over main
/// names, ⊤ and ⊥; Error(UnknownName) for names outside the signature.
void require_supported_goal(const Axiom& goal, const Signature& sig);

struct EntailmentRun {
  NormalizedTBox ntbox;
  DerivationGraph graph;
  Entailment result;
};

EntailmentRun entails(const TBox& tbox, Calculus calculus, const Axiom& goal,
                      const SaturationOptions& options = {});

}  // namespace elproof
