#include "doctest.h"

#include <chrono>

#include "elproof/errors.hpp"
#include "elproof/normalize.hpp"
#include "elproof/parser.hpp"
#include "elproof/saturation.hpp"
#include "support/oracles.hpp"

using namespace elproof;

namespace {

constexpr Calculus kAll[] = {Calculus::Elk, Calculus::Textbook, Calculus::Envelope};

ConceptId id_of(const DerivationGraph& g, const char* name) {
  const auto id = g.concepts.find(Concept::named(name));
  REQUIRE(id.has_value());
  return *id;
}

ErrorKind error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Io;
}

}  // namespace

TEST_SUITE("saturate") {
  TEST_CASE("elk derives the example goal from init") {
    const auto nt = normalize(parse_tbox(oracle::kExample), Calculus::Elk);
    const auto g = saturate(nt);
    const auto a = id_of(g, "A");
    const auto goal = g.find(g.sub(a, id_of(g, "E")));
    REQUIRE(goal.has_value());
    const auto init = g.find(Fact{FactKind::Init, a, 0, 0});
    REQUIRE(init.has_value());
    CHECK(std::find(g.seeds.begin(), g.seeds.end(), *init) != g.seeds.end());
  }

  TEST_CASE("elk bottom propagation") {
    const auto nt =
        normalize(parse_tbox("SubClassOf(A ObjectSomeValuesFrom(r B))\nSubClassOf(B owl:Nothing)\n"),
                  Calculus::Elk);
    const auto g = saturate(nt);
    const auto a = id_of(g, "A"), b = id_of(g, "B");
    const auto goal = g.find(g.sub(a, kBottomId));
    REQUIRE(goal.has_value());
    const auto link = g.find(g.link(a, *g.concepts.find_role("r"), b));
    const auto bbot = g.find(g.sub(b, kBottomId));
    REQUIRE(link.has_value());
    REQUIRE(bbot.has_value());
    bool found = false;
    for (const auto& d : g.derivations[*goal]) {
      found |= d.rule == Rule::RBot && d.premises == std::vector<FactId>{*link, *bbot};
    }
    CHECK(found);
  }

  TEST_CASE("empty envelope saturation holds only the seeds") {
    const auto g = saturate(normalize(TBox{}, Calculus::Envelope));
    CHECK(g.facts.size() == g.seeds.size());
    for (FactId f = 0; f < g.facts.size(); ++f) {
      const auto ax = g.fact_axiom(f);
      REQUIRE(ax.has_value());
      CHECK(is_tautology(*ax));
    }
  }

  TEST_CASE("derivation graph invariants") {
    for (const auto& t : oracle::random_tboxes(5, 40)) {
      for (auto calc : kAll) {
        const auto g = saturate(normalize(t, calc));
        REQUIRE(g.derivations.size() == g.facts.size());
        for (FactId f = 0; f < g.facts.size(); ++f) {
          CHECK_FALSE(g.derivations[f].empty());
          const auto& ds = g.derivations[f];
          for (std::size_t i = 0; i < ds.size(); ++i) {
            for (auto p : ds[i].premises) CHECK(p < g.facts.size());
            for (std::size_t j = 0; j < i; ++j) CHECK_FALSE(ds[i] == ds[j]);
          }
        }
      }
    }
  }

  TEST_CASE("resource limit") {
    const auto nt = normalize(parse_tbox(oracle::kExample), Calculus::Textbook);
    SaturationOptions opts;
    opts.max_facts = 5;
    CHECK(error_of([&] { saturate(nt, opts); }) == ErrorKind::ResourceLimit);
  }

  TEST_CASE("expired deadline") {
    auto text = std::string{};
    for (int i = 0; i < 400; ++i) {
      text += "SubClassOf(A" + std::to_string(i) + " A" + std::to_string(i + 1) + ")\n";
    }
    const auto nt = normalize(parse_tbox(text), Calculus::Textbook);
    SaturationOptions opts;
    opts.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
    CHECK(error_of([&] { saturate(nt, opts); }) == ErrorKind::Timeout);
  }

  TEST_CASE("determinism") {
    for (const auto& t : oracle::random_tboxes(9, 20)) {
      for (auto calc : kAll) {
        const auto nt = normalize(t, calc);
        const auto a = saturate(nt), b = saturate(nt);
        CHECK(a.facts == b.facts);
        CHECK(a.derivations == b.derivations);
        CHECK(a.seeds == b.seeds);
      }
    }
  }
}

TEST_SUITE("classify") {
  TEST_CASE("example ontology in every calculus") {
    // B ⊑ ∃r.C, C ⊑ D and r ⊑* t also give B ⊑ E.
    const auto t = parse_tbox(oracle::kExample);
    const std::set<Subsumption> expected{{"A", "B"}, {"A", "E"}, {"B", "E"}, {"C", "D"}};
    for (auto calc : kAll) CHECK(classify(t, calc) == expected);
  }

  TEST_CASE("unsatisfiable name is below everything") {
    const auto t = parse_tbox(
        "SubClassOf(A ObjectSomeValuesFrom(r B))\nSubClassOf(B owl:Nothing)\nSubClassOf(C C)\n");
    for (auto calc : kAll) {
      const auto c = classify(t, calc);
      CHECK(c.count({"A", "B"}));
      CHECK(c.count({"A", "C"}));
      CHECK(c.count({"B", "A"}));
      CHECK(c.count({"B", "C"}));
      CHECK_FALSE(c.count({"C", "A"}));
    }
  }

  TEST_CASE("empty tbox") {
    for (auto calc : kAll) CHECK(classify(TBox{}, calc).empty());
  }

  TEST_CASE("calculi agree on random ontologies") {
    for (const auto& t : oracle::random_tboxes(2024, 100)) {
      const auto elk = classify(t, Calculus::Elk);
      CHECK(classify(t, Calculus::Textbook) == elk);
      CHECK(classify(t, Calculus::Envelope) == elk);
    }
  }

  TEST_CASE("elk and envelope agree with role chains") {
    oracle::Rng rng(77);
    for (const auto& base : oracle::random_tboxes(78, 40)) {
      TBox t = base;
      t.add(Axiom::chain({"r0", "r0"}, "r0"));
      if (rng.chance(50)) t.add(Axiom::chain({"r0", "r1", "r0"}, "r1"));
      CHECK(classify(t, Calculus::Envelope) == classify(t, Calculus::Elk));
    }
  }

  TEST_CASE("monotonicity") {
    oracle::Rng rng(3);
    for (const auto& t : oracle::random_tboxes(4, 40)) {
      const auto before = classify(t, Calculus::Elk);
      TBox bigger = t;
      const auto extra = oracle::random_tboxes(rng.below(1000), 1).front();
      for (const auto& a : extra.axioms()) bigger.add(a);
      const auto after = classify(bigger, Calculus::Elk);
      CHECK(std::includes(after.begin(), after.end(), before.begin(), before.end()));
    }
  }
}

TEST_SUITE("entails") {
  TEST_CASE("example goal") {
    const auto t = parse_tbox(oracle::kExample);
    for (auto calc : kAll) CHECK(entails(t, calc, parse_axiom("SubClassOf(A E)")).result.entailed);
    CHECK_FALSE(
        entails(t, Calculus::Envelope, parse_axiom("SubClassOf(E A)")).result.entailed);
  }

  TEST_CASE("equivalence goal has a two-premise derivation") {
    const auto t = parse_tbox("SubClassOf(A B)\nSubClassOf(B A)\n");
    auto run = entails(t, Calculus::Textbook, parse_axiom("EquivalentClasses(A B)"));
    REQUIRE(run.result.entailed);
    REQUIRE(run.result.goal.has_value());
    const auto& ds = run.graph.derivations[*run.result.goal];
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].rule == Rule::Equiv);
    CHECK(ds[0].premises.size() == 2);
  }

  TEST_CASE("tautological and top goals") {
    const auto t = parse_tbox(oracle::kExample);
    for (auto calc : kAll) {
      CHECK(entails(t, calc, parse_axiom("SubClassOf(A A)")).result.entailed);
      CHECK(entails(t, calc, parse_axiom("SubClassOf(A owl:Thing)")).result.entailed);
      CHECK_FALSE(entails(t, calc, parse_axiom("SubClassOf(owl:Thing A)")).result.entailed);
    }
  }

  TEST_CASE("goal-directed elk agrees with full seeding") {
    for (const auto& t : oracle::random_tboxes(12, 30)) {
      const auto full = classify(t, Calculus::Elk);
      const auto names = t.signature().concepts;
      for (const auto& a : names) {
        for (const auto& b : names) {
          if (a == b) continue;
          const auto goal = Axiom::subclass(Concept::named(a), Concept::named(b));
          SaturationOptions opts;
          opts.init_only = std::vector<Concept>{Concept::named(a)};
          CHECK(entails(t, Calculus::Elk, goal, opts).result.entailed == (full.count({a, b}) > 0));
        }
      }
    }
  }

  TEST_CASE("unsupported and unknown goals") {
    const auto t = parse_tbox(oracle::kExample);
    CHECK(error_of([&] {
            entails(t, Calculus::Elk, parse_axiom("SubClassOf(A ObjectSomeValuesFrom(r C))"));
          }) == ErrorKind::UnsupportedGoal);
    CHECK(error_of([&] { entails(t, Calculus::Elk, parse_axiom("SubObjectPropertyOf(r t)")); }) ==
          ErrorKind::UnsupportedGoal);
    CHECK(error_of([&] { entails(t, Calculus::Elk, parse_axiom("SubClassOf(A Z)")); }) ==
          ErrorKind::UnknownName);
  }
}
