#include "elproof/metrics.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "elproof/errors.hpp"

namespace elproof {

__extension__ using Wide = __int128;

std::string format_decimal(const Rational& r, int digits) {
  const bool negative = r.numerator() < 0;
  Wide scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const Wide num = negative ? -static_cast<Wide>(r.numerator()) : r.numerator();
  const Wide den = r.denominator();
  Wide q = num * scale / den;
  if (2 * (num * scale % den) >= den) ++q;
  const auto whole = static_cast<long long>(q / scale);
  auto frac = std::to_string(static_cast<long long>(q % scale));
  std::string out = (negative && q != 0 ? "-" : "") + std::to_string(whole);
  if (digits > 0) out += "." + std::string(digits - frac.size(), '0') + frac;
  return out;
}

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  const auto max = std::numeric_limits<std::uint64_t>::max();
  return a > max - b ? max : a + b;
}

// Tree-size of every DAG vertex's unraveling.
std::vector<std::uint64_t> subtree_sizes(const ProofTree& t, const std::vector<std::size_t>& topo) {
  std::vector<std::uint64_t> size(t.vertex_count(), 0);
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    std::uint64_t s = 1;
    for (auto c : t.children(*it)) s = sat_add(s, size[c]);
    size[*it] = s;
  }
  return size;
}

// Occurrences of every DAG vertex in the unraveling.
std::vector<std::uint64_t> occurrences(const ProofTree& t, const std::vector<std::size_t>& topo) {
  std::vector<std::uint64_t> occ(t.vertex_count(), 0);
  if (topo.empty()) return occ;
  occ[t.root()] = 1;
  for (auto v : topo) {
    for (auto c : t.children(v)) occ[c] = sat_add(occ[c], occ[v]);
  }
  return occ;
}

}  // namespace

BasicMeasures compute_basic(const ProofTree& t) {
  BasicMeasures m;
  const auto topo = t.topological_order();
  if (topo.empty()) return m;
  std::vector<std::uint32_t> depth(t.vertex_count(), 0);
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    std::uint32_t d = 0;
    for (auto c : t.children(*it)) d = std::max(d, depth[c] + 1);
    depth[*it] = d;
  }
  m.size = subtree_sizes(t, topo)[t.root()];
  m.depth = depth[t.root()];
  for (auto v : topo) {
    if (t.children(v).empty() && t.rule(v) == kAsserted) ++m.justification;
  }
  m.bushiness = Rational(static_cast<long long>(m.size), static_cast<long long>(m.depth) + 1);
  return m;
}

CutwidthResult cutwidth_standard(const ProofTree& t) {
  CutwidthResult result;
  const auto topo = t.topological_order();
  if (topo.empty()) return result;
  const auto size = subtree_sizes(t, topo);
  std::vector<std::uint64_t> dcw(t.vertex_count(), 0);
  std::vector<std::vector<std::size_t>> sorted(t.vertex_count());
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    auto kids = t.children(*it);
    std::stable_sort(kids.begin(), kids.end(), [&](std::size_t a, std::size_t b) {
      return std::tie(dcw[a], size[a], t.label(a)) < std::tie(dcw[b], size[b], t.label(b));
    });
    const std::uint64_t l = kids.size();
    std::uint64_t value = l;
    for (std::uint64_t i = 1; i <= l; ++i) value = std::max(value, dcw[kids[i - 1]] + l - i);
    dcw[*it] = value;
    sorted[*it] = std::move(kids);
  }
  result.value = dcw[t.root()];
  if (!t.materialized()) return result;

  const auto& nodes = t.nodes();
  auto& w = result.witness;
  w.positions.assign(nodes.size(), 0);
  std::function<void(std::size_t)> emit = [&](std::size_t n) {
    w.order.push_back(n);
    w.positions[n] = w.order.size();
    // Tree nodes of equal DAG vertex are interchangeable, so match by vertex.
    std::vector<std::size_t> pending = nodes[n].children;
    for (auto v : sorted[nodes[n].vertex]) {
      auto it = std::find_if(pending.begin(), pending.end(),
                             [&](std::size_t c) { return nodes[c].vertex == v; });
      const auto c = *it;
      pending.erase(it);
      emit(c);
    }
  };
  emit(0);
  return result;
}

std::uint64_t max_gap_cut(const ProofTree& t, const Serialization& s) {
  const auto& nodes = t.nodes();
  std::vector<long long> delta(nodes.size() + 2, 0);
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    for (auto c : nodes[n].children) {
      ++delta[s.positions[n]];
      --delta[s.positions[c]];
    }
  }
  long long running = 0, best = 0;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    running += delta[i];
    best = std::max(best, running);
  }
  return static_cast<std::uint64_t>(best);
}

std::uint64_t cutwidth_bruteforce(const ProofTree& t) {
  if (!t.materialized() || t.nodes().size() > kBruteforceLimit) {
    throw Error(ErrorKind::SizeLimit, "brute-force cutwidth is limited to " +
                                          std::to_string(kBruteforceLimit) + " vertices");
  }
  const auto& nodes = t.nodes();
  const std::size_t n = nodes.size();
  std::vector<int> parent(n, -1);
  for (std::size_t v = 0; v < n; ++v) {
    for (auto c : nodes[v].children) parent[c] = static_cast<int>(v);
  }
  const std::uint32_t full = (1u << n) - 1;
  auto cut = [&](std::uint32_t placed) {
    std::uint64_t k = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (!(placed >> v & 1u)) continue;
      for (auto c : nodes[v].children) k += (placed >> c & 1u) ? 0 : 1;
    }
    return k;
  };
  constexpr auto kInf = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> best(full + 1, kInf);
  best[0] = 0;
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    if (best[mask] == kInf) continue;
    for (std::size_t v = 0; v < n; ++v) {
      if (mask >> v & 1u) continue;
      const bool ready = parent[v] < 0 ? mask == 0 : (mask >> parent[v] & 1u);
      if (!ready) continue;
      const std::uint32_t next = mask | (1u << v);
      best[next] = std::min(best[next], std::max(best[mask], cut(next)));
    }
  }
  return best[full];
}

namespace {

Rational json_rational(const nlohmann::json& v, const std::string& key) {
  Rational r;
  if (v.is_number_integer()) {
    r = Rational(v.get<long long>());
  } else if (v.is_number()) {
    std::ostringstream os;
    os.precision(12);
    os << std::fixed << v.get<double>();
    const std::string s = os.str();
    const auto dot = s.find('.');
    long long den = 1;
    for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    r = Rational(std::stoll(s.substr(0, dot) + s.substr(dot + 1)), den);
  } else if (v.is_string()) {
    const auto s = v.get<std::string>();
    const auto slash = s.find('/');
    try {
      r = slash == std::string::npos ? Rational(std::stoll(s))
                                     : Rational(std::stoll(s.substr(0, slash)),
                                                std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
      throw Error(ErrorKind::Format, "weight '" + key + "' is not a rational: " + s);
    }
  } else {
    throw Error(ErrorKind::Format, "weight '" + key + "' must be a number");
  }
  if (r < 0) throw Error(ErrorKind::Format, "weight '" + key + "' is negative");
  return r;
}

void collect_concepts(const Axiom& a, std::vector<Concept>& out) {
  switch (a.kind) {
    case AxiomKind::ConceptInclusion:
    case AxiomKind::Equivalence:
      out.push_back(a.lhs);
      out.push_back(a.rhs);
      break;
    case AxiomKind::Domain: out.push_back(a.rhs); break;
    default: break;
  }
}

bool mentions(const Concept& c, ConceptKind kind) {
  if (c.kind() == kind) return true;
  return std::any_of(c.operands().begin(), c.operands().end(),
                     [&](const Concept& op) { return mentions(op, kind); });
}

bool trivial(const Axiom& a) {
  if (a.kind != AxiomKind::ConceptInclusion && a.kind != AxiomKind::Equivalence) return false;
  for (const auto* lhs : {&a.lhs, a.kind == AxiomKind::Equivalence ? &a.rhs : &a.lhs}) {
    if (mentions(*lhs, ConceptKind::Bottom) || lhs->kind() == ConceptKind::Top) return true;
  }
  return a.kind == AxiomKind::ConceptInclusion && a.rhs.kind() == ConceptKind::Bottom;
}

}  // namespace

StepWeights parse_weights(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Format, std::string("weights JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::Format, "weights JSON must be an object");
  StepWeights w;
  const std::map<std::string, Rational*> fields{{"wPremises", &w.premises},
                                                {"wAxiomShapes", &w.shapes},
                                                {"wConstructors", &w.constructors},
                                                {"wDepth", &w.depth},
                                                {"wTriviality", &w.triviality}};
  for (const auto& [key, value] : j.items()) {
    auto it = fields.find(key);
    if (it == fields.end()) throw Error(ErrorKind::Format, "unknown weight '" + key + "'");
    *it->second = json_rational(value, key);
  }
  return w;
}

Rational step_complexity(const std::vector<Axiom>& premises, const Axiom& conclusion,
                         const StepWeights& w) {
  std::vector<const Axiom*> all;
  for (const auto& p : premises) all.push_back(&p);
  all.push_back(&conclusion);

  std::set<AxiomKind> shapes;
  std::vector<Concept> concepts;
  bool is_trivial = false;
  for (const auto* a : all) {
    shapes.insert(a->kind);
    collect_concepts(*a, concepts);
    is_trivial = is_trivial || trivial(*a);
  }
  std::set<ConceptKind> constructors;
  int depth = 0;
  for (const auto& c : concepts) {
    depth = std::max(depth, nesting_depth(c));
    std::vector<Concept> subs;
    collect_subconcepts(c, subs);
    for (const auto& s : subs) {
      if (s.kind() != ConceptKind::Named) constructors.insert(s.kind());
    }
  }
  return w.premises * static_cast<long long>(premises.size()) +
         w.shapes * static_cast<long long>(shapes.size()) +
         w.constructors * static_cast<long long>(constructors.size()) + w.depth * depth +
         (is_trivial ? w.triviality : Rational(0));
}

Rational avg_step_complexity(const ProofTree& t, const StepWeights& w) {
  const auto topo = t.topological_order();
  const auto occ = occurrences(t, topo);
  Rational total(0);
  long long steps = 0;
  for (auto v : topo) {
    if (t.children(v).empty()) continue;
    Rational sc;
    if (t.axioms().empty()) {
      sc = w.premises * static_cast<long long>(t.children(v).size());
    } else {
      std::vector<Axiom> premises;
      for (auto c : t.children(v)) premises.push_back(t.axioms()[c]);
      sc = step_complexity(premises, t.axioms()[v], w);
    }
    total += sc * static_cast<long long>(occ[v]);
    steps += static_cast<long long>(occ[v]);
  }
  if (steps == 0) return Rational(0);
  return total / steps;
}

std::uint64_t step_count(const ProofTree& t) {
  const auto topo = t.topological_order();
  const auto occ = occurrences(t, topo);
  std::uint64_t n = 0;
  for (auto v : topo) {
    if (!t.children(v).empty()) n = sat_add(n, occ[v]);
  }
  return n;
}

MetricsReport compute_metrics(const ProofTree& t, const StepWeights& w) {
  const auto basic = compute_basic(t);
  MetricsReport m;
  m.size = basic.size;
  m.depth = basic.depth;
  m.justification = basic.justification;
  m.bushiness = basic.bushiness;
  m.cutwidth = cutwidth_standard(t).value;
  m.avg_step_complexity = avg_step_complexity(t, w);
  m.step_count = step_count(t);
  return m;
}

std::string metrics_to_json(const MetricsReport& m) {
  std::ostringstream os;
  auto rational = [&](const char* key, const Rational& r) {
    os << "  \"" << key << "\": " << format_decimal(r) << ",\n";
    os << "  \"" << key << "Numerator\": " << r.numerator() << ",\n";
    os << "  \"" << key << "Denominator\": " << r.denominator() << ",\n";
  };
  os << "{\n";
  os << "  \"size\": " << m.size << ",\n";
  os << "  \"depth\": " << m.depth << ",\n";
  os << "  \"justificationSize\": " << m.justification << ",\n";
  rational("bushiness", m.bushiness);
  os << "  \"cutwidth\": " << m.cutwidth << ",\n";
  rational("avgStepComplexity", m.avg_step_complexity);
  os << "  \"stepCount\": " << m.step_count << "\n";
  os << "}\n";
  return os.str();
}

}  // namespace elproof
