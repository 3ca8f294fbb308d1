#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "elproof/proofs.hpp"
#include "elproof/syntax.hpp"

namespace elproof {

using Rational = boost::rational<long long>;

/// Exact decimal rendering with `digits` fractional digits, rounding half up.
std::string format_decimal(const Rational& r, int digits = 4);

struct BasicMeasures {
  std::uint64_t size = 0;
  std::uint32_t depth = 0;
  std::size_t justification = 0;
  Rational bushiness{0};
};

BasicMeasures compute_basic(const ProofTree& tree);

/// A topological order of the materialized tree nodes.
struct Serialization {
  std::vector<std::size_t> order;      // tree node ids
  std::vector<std::size_t> positions;  // tree node id -> 1-based position
};

struct CutwidthResult {
  std::uint64_t value = 0;
  /// Standard serialization; empty when the tree is not materialized.
  Serialization witness;
};

/// Directed cutwidth via the child-sorting recurrence.
CutwidthResult cutwidth_standard(const ProofTree& tree);

/// Largest gap cut of `s` over the materialized tree.
std::uint64_t max_gap_cut(const ProofTree& tree, const Serialization& s);

inline constexpr std::size_t kBruteforceLimit = 12;

/// Exact minimum over all serializations. Throws Error(SizeLimit) above
/// kBruteforceLimit vertices.
std::uint64_t cutwidth_bruteforce(const ProofTree& tree);

struct StepWeights {
  Rational premises{10};
  Rational shapes{10};
  Rational constructors{5};
  Rational depth{2};
  Rational triviality{50};
};

StepWeights parse_weights(const std::string& json_text);

Rational step_complexity(const std::vector<Axiom>& premises, const Axiom& conclusion,
                         const StepWeights& weights = {});

/// Mean over internal node occurrences of the unraveling; 0 without steps.
Rational avg_step_complexity(const ProofTree& tree, const StepWeights& weights = {});

/// Number of internal node occurrences of the unraveling.
std::uint64_t step_count(const ProofTree& tree);

struct MetricsReport {
  std::uint64_t size = 0;
  std::uint32_t depth = 0;
  std::size_t justification = 0;
  Rational bushiness{0};
  std::uint64_t cutwidth = 0;
  Rational avg_step_complexity{0};
  std::uint64_t step_count = 0;
};

MetricsReport compute_metrics(const ProofTree& tree, const StepWeights& weights = {});

std::string metrics_to_json(const MetricsReport& m);

}  // namespace elproof
