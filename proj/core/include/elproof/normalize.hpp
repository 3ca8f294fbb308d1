#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "elproof/syntax.hpp"

namespace elproof {

enum class Calculus { Elk, Textbook, Envelope };

const char* to_string(Calculus c);
Calculus parse_calculus(const std::string& name);

using RolePair = std::pair<std::string, std::string>;

struct NormalizedTBox {
  Calculus calculus = Calculus::Elk;
  /// Normal-form axioms in deterministic generation order.
  std::vector<Axiom> axioms;
  /// Fresh concept name -> the (flat, possibly alias-containing) concept it names.
  std::map<std::string, Concept> alias_concepts;
  /// Fresh role name -> the composition of input roles it stands for.
  std::map<std::string, std::vector<std::string>> alias_roles;
  std::set<Concept> negative_concepts;
  std::set<std::string> negative_roles;
  std::set<RolePair> role_hierarchy;
  /// Signature of the input TBox.
  Signature signature;
  /// Desugared, canonical input axioms; these are the admissible proof leaves.
  std::set<Axiom> source_axioms;

  bool is_alias_concept(const std::string& name) const {
    return alias_concepts.count(name) > 0;
  }
  bool is_alias_role(const std::string& name) const { return alias_roles.count(name) > 0; }
};

/// Negative occurrences of an (undesugared) TBox: every subconcept of a
/// left-hand side, both sides of equivalences, and ∃r.⊤ for domain axioms,
/// plus the roles inside those subconcepts.
std::pair<std::set<Concept>, std::set<std::string>> negative_occurrences(const TBox& tbox);

/// Top-down role hierarchy: (t,t) for each seed role, and (r,t) whenever
/// r ⊑ s is a simple inclusion of `axioms` and (s,t) is already present.
std::set<RolePair> role_hierarchy_closure(const std::vector<Axiom>& axioms,
                                          const std::set<std::string>& negative_roles);
std::set<RolePair> role_hierarchy_closure(const TBox& tbox,
                                          const std::set<std::string>& negative_roles);

/// Rewrites Transitivity, Domain and Equivalence into plain inclusions and
/// canonicalizes concepts. Output is sorted and duplicate free.
std::vector<Axiom> desugar(const TBox& tbox);

/// Structural normalization for the given calculus. Throws
/// Error(UnsupportedFeature) for role chains under the textbook calculus.
NormalizedTBox normalize(const TBox& tbox, Calculus calculus);

/// Result of mapping a normalized axiom back to input vocabulary. An empty
/// optional is the tautology marker: the axiom defines a fresh role and has
/// a role composition on its right-hand side.
using Denormalized = std::optional<Axiom>;

Denormalized denormalize_axiom(const Axiom& axiom, const NormalizedTBox& ntbox);
Concept denormalize_concept(const Concept& c, const NormalizedTBox& ntbox);

}  // namespace elproof
