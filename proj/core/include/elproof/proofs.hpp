#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "elproof/normalize.hpp"
#include "elproof/saturation.hpp"
#include "elproof/syntax.hpp"

namespace elproof {

inline constexpr const char* kAsserted = "asserted";
inline constexpr const char* kTautology = "tautology";

/// One DL-level inference: premises are node indices of the owning DlGraph.
struct DlStep {
  std::string rule;
  std::vector<std::size_t> premises;

  friend bool operator==(const DlStep&, const DlStep&) = default;
};

struct DlNode {
  Axiom label;
  /// "asserted" or "tautology" when the label may close a branch.
  std::optional<std::string> leaf;
  std::vector<DlStep> steps;
};

/// Axiom-labeled hypergraph with every recorded alternative kept.
class DlGraph {
 public:
  Calculus calculus = Calculus::Elk;
  std::vector<DlNode> nodes;

  std::optional<std::size_t> find(const Axiom& label) const;
  std::size_t node(const Axiom& label);
  void add_step(std::size_t conclusion, DlStep step);
  std::size_t step_count() const;

 private:
  std::map<Axiom, std::size_t> index_;
};

/// Maps facts to DL axioms, side conditions to premises, and drops what the
/// proof notation cannot show (init, identity premises, collapsed steps).
DlGraph lift_to_dl(const DerivationGraph& graph, const NormalizedTBox& ntbox);

struct ProofVertex {
  std::size_t id = 0;
  Axiom label;
  std::string rule;
  std::vector<std::size_t> children;
};

/// Non-redundant proof: one vertex per label, vertex ids dense and 0-based.
struct ProofDag {
  Calculus calculus = Calculus::Elk;
  Axiom goal;
  std::size_t root = 0;
  std::vector<ProofVertex> vertices;

  std::size_t size() const { return vertices.size(); }
};

/// Size-minimal proof over the recorded derivations; ties by depth, then by
/// the serialized premise labels.
ProofDag extract_min_proof(const DlGraph& dl, const Axiom& goal);

/// Proof built from the earliest usable derivation of each label.
ProofDag extract_first_proof(const DlGraph& dl, const Axiom& goal);

enum class ProofMode { Minimal, First };
const char* to_string(ProofMode m);
ProofMode parse_mode(const std::string& name);

std::string proof_to_json(const ProofDag& dag);
ProofDag proof_from_json(const std::string& text);

/// Tree unraveling of a proof. DAG-level data is always present; the
/// explicit node list only when the unraveling has at most `cap` nodes.
class ProofTree {
 public:
  struct Node {
    std::size_t vertex;
    std::vector<std::size_t> children;
  };

  static ProofTree unravel(const ProofDag& dag, std::uint64_t cap = 1'000'000);
  /// A plain tree given by child lists; vertex 0 is the root.
  static ProofTree from_shape(const std::vector<std::vector<std::size_t>>& children);

  std::size_t root() const { return root_; }
  std::size_t vertex_count() const { return children_.size(); }
  const std::vector<std::size_t>& children(std::size_t v) const { return children_[v]; }
  const std::string& label(std::size_t v) const { return labels_[v]; }
  const std::string& rule(std::size_t v) const { return rules_[v]; }
  /// Axiom labels; empty for shape-only trees.
  const std::vector<Axiom>& axioms() const { return axioms_; }
  /// Saturating node count of the unraveling.
  std::uint64_t tree_size() const { return tree_size_; }

  bool materialized() const { return !nodes_.empty(); }
  /// Preorder node list, node 0 is the root.
  const std::vector<Node>& nodes() const { return nodes_; }

  /// DAG vertices with every child listed after its parents.
  std::vector<std::size_t> topological_order() const;

 private:
  void finish(std::uint64_t cap);

  std::size_t root_ = 0;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::string> labels_;
  std::vector<std::string> rules_;
  std::vector<Axiom> axioms_;
  std::uint64_t tree_size_ = 0;
  std::vector<Node> nodes_;
};

struct Violation {
  std::string kind;
  std::optional<std::size_t> vertex;
  std::string message;
};

/// All structural, leaf, schema and soundness problems of `dag`.
std::vector<Violation> validate_proof(const ProofDag& dag, const TBox& tbox, const Axiom& goal);

}  // namespace elproof
