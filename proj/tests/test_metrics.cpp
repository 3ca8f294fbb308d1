#include "doctest.h"

#include "json.hpp"

#include "elproof/errors.hpp"
#include "elproof/metrics.hpp"
#include "elproof/parser.hpp"
#include "elproof/saturation.hpp"
#include "support/oracles.hpp"

using namespace elproof;

namespace {

ProofDag example(Calculus calc) {
  const auto t = parse_tbox(oracle::kExample);
  const auto goal = parse_axiom("SubClassOf(A E)");
  auto run = entails(t, calc, goal);
  return extract_min_proof(lift_to_dl(run.graph, run.ntbox), goal);
}

std::uint64_t dcw(const oracle::Shape& s) {
  return cutwidth_standard(ProofTree::from_shape(s)).value;
}

std::size_t max_out_degree(const oracle::Shape& s) {
  std::size_t best = 0;
  for (const auto& c : s) best = std::max(best, c.size());
  return best;
}

}  // namespace

TEST_SUITE("basic measures") {
  TEST_CASE("example proofs") {
    struct Row {
      Calculus calc;
      std::uint64_t size;
      std::uint32_t depth;
      Rational bushiness;
    };
    for (const auto& r : {Row{Calculus::Elk, 10, 3, Rational(5, 2)},
                          Row{Calculus::Textbook, 9, 2, Rational(3)},
                          Row{Calculus::Envelope, 10, 4, Rational(2)}}) {
      const auto m = compute_basic(ProofTree::unravel(example(r.calc)));
      CHECK(m.size == r.size);
      CHECK(m.depth == r.depth);
      CHECK(m.justification == 6);
      CHECK(m.bushiness == r.bushiness);
    }
  }

  TEST_CASE("full binary tree") {
    const auto m = compute_basic(ProofTree::from_shape(oracle::full_binary_tree(5)));
    CHECK(m.size == 31);
    CHECK(m.depth == 4);
    CHECK(m.bushiness == Rational(31, 5));
    CHECK(format_decimal(m.bushiness) == "6.2000");
  }

  TEST_CASE("single-premise chain") {
    for (std::size_t n = 2; n < 12; ++n) {
      CHECK(compute_basic(ProofTree::from_shape(oracle::path(n))).bushiness == Rational(1));
    }
  }

  TEST_CASE("single leaf") {
    const auto m = compute_basic(ProofTree::from_shape(oracle::Shape(1)));
    CHECK(m.size == 1);
    CHECK(m.depth == 0);
    CHECK(m.bushiness == Rational(1));
  }

  TEST_CASE("justification counts asserted leaves") {
    ProofDag dag;
    const auto ax = [](const char* a, const char* b) {
      return Axiom::subclass(Concept::named(a), Concept::named(b));
    };
    dag.goal = ax("A", "D");
    dag.vertices = {{0, ax("A", "D"), "CR3", {1, 2}},
                    {1, ax("A", "C"), "CR3", {3, 4}},
                    {2, ax("C", "D"), kAsserted, {}},
                    {3, ax("A", "B"), kAsserted, {}},
                    {4, ax("B", "C"), kAsserted, {}}};
    const auto m = compute_basic(ProofTree::unravel(dag));
    CHECK(m.size == 5);
    CHECK(m.justification == 3);
    CHECK(m.bushiness == Rational(5, 3));
  }
}

TEST_SUITE("cutwidth") {
  TEST_CASE("singleton") {
    CHECK(dcw(oracle::Shape(1)) == 0);
    CHECK(cutwidth_bruteforce(ProofTree::from_shape(oracle::Shape(1))) == Rational(0));
  }

  TEST_CASE("full binary trees") {
    for (int d = 1; d <= 5; ++d) CHECK(dcw(oracle::full_binary_tree(d + 1)) == d + 1);
    for (int d = 1; d <= 2; ++d) {
      CHECK(cutwidth_bruteforce(ProofTree::from_shape(oracle::full_binary_tree(d + 1))) == d + 1);
    }
  }

  TEST_CASE("paths and stars") {
    for (std::size_t n = 2; n < 40; ++n) CHECK(dcw(oracle::path(n)) == 1);
    for (std::size_t l = 1; l < 40; ++l) CHECK(dcw(oracle::star(l)) == l);
    for (std::size_t l = 1; l <= 11; ++l) {
      CHECK(cutwidth_bruteforce(ProofTree::from_shape(oracle::star(l))) == l);
    }
  }

  TEST_CASE("example proofs") {
    for (const auto& [calc, want] : {std::pair{Calculus::Elk, 3}, std::pair{Calculus::Textbook, 4},
                                     std::pair{Calculus::Envelope, 3}}) {
      const auto tree = ProofTree::unravel(example(calc));
      CHECK(cutwidth_standard(tree).value == static_cast<std::uint64_t>(want));
      CHECK(cutwidth_bruteforce(tree) == static_cast<std::uint64_t>(want));
    }
  }

  TEST_CASE("brute force size limit") {
    try {
      cutwidth_bruteforce(ProofTree::from_shape(oracle::path(kBruteforceLimit + 1)));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::SizeLimit);
    }
    CHECK(cutwidth_bruteforce(ProofTree::from_shape(oracle::path(kBruteforceLimit))) == 1);
  }

  TEST_CASE("random trees against exhaustive search") {
    oracle::Rng rng(20240601);
    for (int i = 0; i < 400; ++i) {
      const auto n = 1 + rng.below(9);
      const auto shape = oracle::random_tree(rng, n);
      const auto tree = ProofTree::from_shape(shape);
      const auto standard = cutwidth_standard(tree);
      CHECK(standard.value == cutwidth_bruteforce(tree));
      CHECK(standard.value >= max_out_degree(shape));
      CHECK(max_gap_cut(tree, standard.witness) == standard.value);

      const auto edges = oracle::edges_of(shape);
      std::vector<std::size_t> pos(n);
      for (std::size_t k = 0; k < n; ++k) pos[tree.nodes()[standard.witness.order[k]].vertex] = k;
      CHECK(oracle::gap_cut(edges, pos, n) == standard.value);

      // Reversed edges read in reversed order cut the same gaps.
      std::vector<std::size_t> rpos(n);
      for (std::size_t v = 0; v < n; ++v) rpos[v] = n - 1 - pos[v];
      CHECK(oracle::gap_cut(oracle::reversed(edges), rpos, n) == standard.value);

      if (n <= 7) CHECK(oracle::naive_cutwidth(edges, n) == standard.value);
    }
  }

  TEST_CASE("witness is a topological order") {
    oracle::Rng rng(8);
    for (int i = 0; i < 100; ++i) {
      const auto tree = ProofTree::from_shape(oracle::random_tree(rng, 1 + rng.below(60)));
      const auto w = cutwidth_standard(tree).witness;
      REQUIRE(w.order.size() == tree.nodes().size());
      CHECK(w.order.front() == 0);
      for (std::size_t k = 0; k < w.order.size(); ++k) CHECK(w.positions[w.order[k]] == k + 1);
      for (std::size_t v = 0; v < tree.nodes().size(); ++v) {
        for (auto c : tree.nodes()[v].children) CHECK(w.positions[v] < w.positions[c]);
      }
    }
  }
}

TEST_SUITE("step complexity") {
  TEST_CASE("hand-computed steps") {
    const auto p = [](const char* s) { return parse_axiom(s); };
    CHECK(step_complexity({p("SubClassOf(A B)"), p("SubClassOf(B ObjectSomeValuesFrom(r C))")},
                          p("SubClassOf(A ObjectSomeValuesFrom(r C))")) == Rational(37));
    CHECK(step_complexity({p("SubClassOf(A ObjectSomeValuesFrom(r B))"), p("SubClassOf(B owl:Nothing)")},
                          p("SubClassOf(A owl:Nothing)")) == Rational(92));
  }

  TEST_CASE("scaling all weights scales every value") {
    const StepWeights base;
    StepWeights scaled;
    const Rational lambda(7, 3);
    scaled.premises *= lambda;
    scaled.shapes *= lambda;
    scaled.constructors *= lambda;
    scaled.depth *= lambda;
    scaled.triviality *= lambda;
    for (auto calc : {Calculus::Elk, Calculus::Textbook, Calculus::Envelope}) {
      const auto tree = ProofTree::unravel(example(calc));
      CHECK(avg_step_complexity(tree, scaled) == lambda * avg_step_complexity(tree, base));
    }
  }

  TEST_CASE("average is taken over tree occurrences") {
    ProofDag dag;
    const auto ax = [](const char* a, const char* b) {
      return Axiom::subclass(Concept::named(a), Concept::named(b));
    };
    const auto p = [](const char* s) { return parse_axiom(s); };
    // The conjunction step below the root occurs twice in the unraveling.
    dag.goal = ax("A", "E");
    dag.vertices = {
        {0, ax("A", "E"), "step", {1, 2}},
        {1, p("SubClassOf(A ObjectIntersectionOf(B C))"), "step", {3}},
        {2, p("SubClassOf(ObjectIntersectionOf(B C) E)"), "step", {1, 4}},
        {3, ax("A", "D"), kAsserted, {}},
        {4, p("SubClassOf(ObjectIntersectionOf(A B C) E)"), kAsserted, {}},
    };
    const auto tree = ProofTree::unravel(dag);
    const auto sc = [&](std::size_t v) {
      std::vector<Axiom> premises;
      for (auto c : dag.vertices[v].children) premises.push_back(dag.vertices[c].label);
      return step_complexity(premises, dag.vertices[v].label);
    };
    CHECK(step_count(tree) == 4);
    CHECK(avg_step_complexity(tree) == (sc(0) + 2 * sc(1) + sc(2)) / 4);
  }

  TEST_CASE("shape trees count premises only") {
    const auto tree = ProofTree::from_shape(oracle::full_binary_tree(3));
    CHECK(step_count(tree) == 3);
    CHECK(avg_step_complexity(tree) == Rational(20));
    CHECK(avg_step_complexity(ProofTree::from_shape(oracle::Shape(1))) == Rational(0));
  }

  TEST_CASE("weights json") {
    const auto w = parse_weights(R"({"wPremises": 1, "wAxiomShapes": 0.5, "wTriviality": "1/3"})");
    CHECK(w.premises == Rational(1));
    CHECK(w.shapes == Rational(1, 2));
    CHECK(w.constructors == Rational(5));
    CHECK(w.depth == Rational(2));
    CHECK(w.triviality == Rational(1, 3));
    for (const char* bad : {"[]", "{\"wPremises\": -1}", "{\"wUnknown\": 1}", "{\"wDepth\": \"x\"}",
                            "nope"}) {
      CHECK_THROWS_AS(parse_weights(bad), Error);
    }
  }
}

TEST_SUITE("reporting") {
  TEST_CASE("decimal rendering") {
    CHECK(format_decimal(Rational(31, 5)) == "6.2000");
    CHECK(format_decimal(Rational(134, 3)) == "44.6667");
    CHECK(format_decimal(Rational(1, 20000)) == "0.0001");
    CHECK(format_decimal(Rational(1, 20001)) == "0.0000");
    CHECK(format_decimal(Rational(7), 2) == "7.00");
  }

  TEST_CASE("metrics json") {
    const auto m = compute_metrics(ProofTree::unravel(example(Calculus::Textbook)));
    const auto j = nlohmann::json::parse(metrics_to_json(m));
    CHECK(j["size"] == 9);
    CHECK(j["depth"] == 2);
    CHECK(j["justificationSize"] == 6);
    CHECK(j["cutwidth"] == 4);
    CHECK(j["bushinessNumerator"] == 3);
    CHECK(j["bushinessDenominator"] == 1);
    CHECK(j["stepCount"] == 3);
  }
}
