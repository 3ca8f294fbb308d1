#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "elproof/metrics.hpp"
#include "elproof/parser.hpp"
#include "elproof/proofs.hpp"
#include "elproof/saturation.hpp"

using namespace elproof;

namespace {

TBox chain_tbox(int n) {
  std::string text;
  for (int i = 0; i < n; ++i) {
    text += "SubClassOf(A" + std::to_string(i) + " A" + std::to_string(i + 1) + ")\n";
  }
  return parse_tbox(text);
}

Axiom chain_goal(int n) {
  return Axiom::subclass(Concept::named("A0"), Concept::named("A" + std::to_string(n)));
}

// Layered existential ontology: every Ai reaches Ai+1 through a role, and
// the role hierarchy lets the top role be read back at every level.
TBox layered_tbox(int n) {
  std::string text = "SubObjectPropertyOf(r s)\nSubObjectPropertyOf(s t)\n";
  for (int i = 0; i < n; ++i) {
    const auto a = "A" + std::to_string(i), b = "A" + std::to_string(i + 1);
    text += "SubClassOf(" + a + " ObjectSomeValuesFrom(r " + b + "))\n";
    text += "SubClassOf(ObjectSomeValuesFrom(t " + b + ") " + a + "_)\n";
    text += "SubClassOf(ObjectIntersectionOf(" + a + " " + a + "_) " + b + ")\n";
  }
  return parse_tbox(text);
}

Calculus calculus_arg(std::int64_t i) { return static_cast<Calculus>(i); }

void BM_SaturateChain(benchmark::State& state) {
  const auto nt = normalize(chain_tbox(static_cast<int>(state.range(0))), calculus_arg(state.range(1)));
  for (auto _ : state) {
    auto g = saturate(nt);
    benchmark::DoNotOptimize(g.facts.size());
  }
}
BENCHMARK(BM_SaturateChain)->ArgsProduct({{8, 32, 128}, {0, 1, 2}});

void BM_SaturateLayered(benchmark::State& state) {
  const auto nt = normalize(layered_tbox(static_cast<int>(state.range(0))), calculus_arg(state.range(1)));
  for (auto _ : state) {
    auto g = saturate(nt);
    benchmark::DoNotOptimize(g.facts.size());
  }
}
BENCHMARK(BM_SaturateLayered)->ArgsProduct({{16, 64}, {0, 1, 2}});

void BM_ExtractMinChain(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto run = entails(chain_tbox(n), calculus_arg(state.range(1)), chain_goal(n));
  const auto dl = lift_to_dl(run.graph, run.ntbox);
  for (auto _ : state) {
    auto p = extract_min_proof(dl, chain_goal(n));
    benchmark::DoNotOptimize(p.vertices.size());
  }
}
BENCHMARK(BM_ExtractMinChain)->ArgsProduct({{8, 32, 64}, {0, 1, 2}});

void BM_CutwidthRandomTree(benchmark::State& state) {
  std::mt19937_64 rng(42);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::vector<std::size_t>> children(n);
  for (std::size_t v = 1; v < n; ++v) children[rng() % v].push_back(v);
  const auto tree = ProofTree::from_shape(children);
  for (auto _ : state) {
    auto r = cutwidth_standard(tree);
    benchmark::DoNotOptimize(r.value);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CutwidthRandomTree)->RangeMultiplier(4)->Range(64, 65536)->Complexity();

void BM_CutwidthBruteforce(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::vector<std::size_t>> children(n);
  for (std::size_t v = 1; v < n; ++v) children[rng() % v].push_back(v);
  const auto tree = ProofTree::from_shape(children);
  for (auto _ : state) benchmark::DoNotOptimize(cutwidth_bruteforce(tree));
}
BENCHMARK(BM_CutwidthBruteforce)->DenseRange(6, 12, 3);

}  // namespace

BENCHMARK_MAIN();
