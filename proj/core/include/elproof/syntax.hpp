#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace elproof {

enum class ConceptKind : std::uint8_t { Top, Bottom, Named, Conjunction, Existential };

/// Immutable EL concept tree with value semantics.
///
/// Equality is structural and order-sensitive for conjunctions; use
/// `canonical()` to flatten, deduplicate and sort conjunctions first.
class Concept {
 public:
  Concept() = default;  // owl:Thing

  static Concept top();
  static Concept bottom();
  static Concept named(std::string name);
  static Concept conjunction(std::vector<Concept> operands);
  static Concept existential(std::string role, Concept filler);

  ConceptKind kind() const noexcept { return kind_; }
  bool is_atomic() const noexcept {
    return kind_ == ConceptKind::Top || kind_ == ConceptKind::Bottom ||
           kind_ == ConceptKind::Named;
  }
  /// Concept name for Named, role for Existential, empty otherwise.
  const std::string& name() const noexcept { return name_; }
  const std::string& role() const noexcept { return name_; }
  const std::vector<Concept>& operands() const noexcept { return operands_; }
  const Concept& filler() const { return operands_.front(); }

  /// Flattened, deduplicated, lexicographically sorted form.
  Concept canonical() const;

  friend bool operator==(const Concept& a, const Concept& b);
  friend std::strong_ordering operator<=>(const Concept& a, const Concept& b);

 private:
  ConceptKind kind_ = ConceptKind::Top;
  std::string name_;
  std::vector<Concept> operands_;
};

std::string to_string(const Concept& c);

/// Nesting depth: atomic 0, existential 1 + filler, conjunction 1 + max operand.
int nesting_depth(const Concept& c);

/// All subconcepts including `c` itself, pre-order.
void collect_subconcepts(const Concept& c, std::vector<Concept>& out);

enum class AxiomKind : std::uint8_t {
  ConceptInclusion,
  RoleInclusion,
  RoleChainInclusion,
  Equivalence,
  Transitivity,
  Domain,
};

struct Axiom {
  AxiomKind kind = AxiomKind::ConceptInclusion;
  Concept lhs;                     // CI/Equivalence left side
  Concept rhs;                     // CI/Equivalence right side, Domain concept
  std::vector<std::string> roles;  // RI: {sub}; chain: the chain
  std::string role;                // RI/chain super-role, Transitivity/Domain role

  static Axiom subclass(Concept lhs, Concept rhs);
  static Axiom equivalence(Concept a, Concept b);
  static Axiom subrole(std::string sub, std::string sup);
  static Axiom chain(std::vector<std::string> chain, std::string sup);
  static Axiom transitive(std::string role);
  static Axiom domain(std::string role, Concept filler);

  bool is_concept_inclusion() const { return kind == AxiomKind::ConceptInclusion; }
  bool is_role_inclusion() const { return kind == AxiomKind::RoleInclusion; }

  /// Canonicalizes every concept in the axiom.
  Axiom canonical() const;

  friend bool operator==(const Axiom& a, const Axiom& b);
  friend std::strong_ordering operator<=>(const Axiom& a, const Axiom& b);
};

/// Renders an axiom in `.elt` syntax.
std::string to_string(const Axiom& a);

/// Axioms valid without any TBox: C⊑C, C⊑⊤, ⊥⊑C, C₁⊓…⊓Cₙ⊑Cᵢ (and
/// sub-conjunctions), r⊑r. Expects canonical concepts.
bool is_tautology(const Axiom& a);

/// The identity tautologies C⊑C and r⊑r.
bool is_identity(const Axiom& a);

/// Operands of a canonical conjunction, or `{c}` otherwise.
std::vector<Concept> conjuncts(const Concept& c);

struct Signature {
  std::set<std::string> concepts;
  std::set<std::string> roles;
};

/// Finite set of axioms, kept in first-insertion order without duplicates.
class TBox {
 public:
  TBox() = default;
  explicit TBox(std::vector<Axiom> axioms);

  /// Returns false if the axiom was already present.
  bool add(Axiom axiom);

  const std::vector<Axiom>& axioms() const noexcept { return axioms_; }
  std::size_t size() const noexcept { return axioms_.size(); }
  bool empty() const noexcept { return axioms_.empty(); }
  bool contains(const Axiom& axiom) const { return members_.count(axiom) > 0; }

  Signature signature() const;

  friend bool operator==(const TBox& a, const TBox& b) { return a.axioms_ == b.axioms_; }

 private:
  std::vector<Axiom> axioms_;
  std::set<Axiom> members_;
};

void collect_signature(const Concept& c, Signature& sig);
void collect_signature(const Axiom& a, Signature& sig);

/// One axiom per line in `.elt` syntax.
std::string serialize(const TBox& tbox);

}  // namespace elproof
