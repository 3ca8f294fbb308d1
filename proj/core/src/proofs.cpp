#include "elproof/proofs.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <set>
#include <tuple>

#include "json.hpp"

#include "elproof/errors.hpp"
#include "elproof/parser.hpp"

namespace elproof {

// ---------------------------------------------------------------------------
// DlGraph

std::optional<std::size_t> DlGraph::find(const Axiom& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t DlGraph::node(const Axiom& label) {
  auto [it, inserted] = index_.emplace(label, nodes.size());
  if (inserted) nodes.push_back({label, std::nullopt, {}});
  return it->second;
}

void DlGraph::add_step(std::size_t conclusion, DlStep step) {
  auto& steps = nodes[conclusion].steps;
  if (std::find(steps.begin(), steps.end(), step) == steps.end()) steps.push_back(std::move(step));
}

std::size_t DlGraph::step_count() const {
  std::size_t n = 0;
  for (const auto& v : nodes) n += v.steps.size();
  return n;
}

namespace {

class Lifter {
 public:
  Lifter(const DerivationGraph& g, const NormalizedTBox& nt) : g_(g), nt_(nt) {
    dl_.calculus = nt.calculus;
    for (const auto& a : nt.axioms) {
      if (a.kind == AxiomKind::RoleInclusion) subroles_[a.roles.front()].push_back(a.role);
    }
  }

  DlGraph run() {
    std::vector<std::optional<Axiom>> labels(g_.facts.size());
    for (FactId i = 0; i < g_.facts.size(); ++i) {
      if (auto a = g_.fact_axiom(i)) labels[i] = denormalize_axiom(*a, nt_);
    }
    for (FactId i = 0; i < g_.facts.size(); ++i) {
      if (!labels[i]) continue;
      for (const auto& d : g_.derivations[i]) lift(*labels[i], d, labels);
    }
    return std::move(dl_);
  }

 private:
  std::optional<std::string> leaf_kind(const Axiom& a) const {
    if (nt_.source_axioms.count(a)) return std::string(kAsserted);
    if (is_tautology(a)) return std::string(kTautology);
    return std::nullopt;
  }

  std::size_t leaf(const Axiom& a) {
    const auto id = dl_.node(a);
    if (!dl_.nodes[id].leaf) dl_.nodes[id].leaf = leaf_kind(a);
    return id;
  }

  std::size_t role_node(const std::string& r, const std::string& t) {
    const auto id = dl_.node(Axiom::subrole(r, t));
    if (!roles_done_.emplace(r, t).second) return id;
    if (!nt_.role_hierarchy.count({r, t})) {
      throw Error(ErrorKind::MissingRolePair, "no role hierarchy pair " + r + " ⊑* " + t);
    }
    auto it = subroles_.find(r);
    if (it == subroles_.end()) return id;
    for (const auto& s : it->second) {
      if (s == t) {
        leaf(Axiom::subrole(r, t));
      } else if (nt_.role_hierarchy.count({s, t})) {
        const auto first = leaf(Axiom::subrole(r, s));
        const auto rest = role_node(s, t);
        dl_.add_step(id, {"role-trans", {first, rest}});
      }
    }
    return id;
  }

  const std::optional<Axiom>& side_label(std::size_t index) {
    auto it = side_labels_.find(index);
    if (it == side_labels_.end()) {
      it = side_labels_.emplace(index, denormalize_axiom(nt_.axioms[index], nt_)).first;
    }
    return it->second;
  }

  void lift(const Axiom& label, const Derivation& d,
            const std::vector<std::optional<Axiom>>& labels) {
    std::vector<std::size_t> premises;
    auto push = [&](std::size_t id) {
      if (std::find(premises.begin(), premises.end(), id) == premises.end()) premises.push_back(id);
    };
    for (auto p : d.premises) {
      if (!labels[p] || is_identity(*labels[p])) continue;
      push(dl_.node(*labels[p]));
    }
    for (const auto& side : d.sides) {
      if (side.kind == SideCondition::Kind::Axiom) {
        const auto& a = side_label(side.axiom);
        if (!a || is_identity(*a)) continue;
        push(leaf(*a));
      } else {
        const auto& r = g_.concepts.role_name(side.sub);
        const auto& s = g_.concepts.role_name(side.sup);
        if (r != s) push(role_node(r, s));
      }
    }
    const auto conclusion = dl_.node(label);
    if (std::find(premises.begin(), premises.end(), conclusion) != premises.end()) return;
    if (premises.empty()) {
      if (!dl_.nodes[conclusion].leaf) dl_.nodes[conclusion].leaf = leaf_kind(label);
      return;
    }
    dl_.add_step(conclusion, {rule_name(d.rule), std::move(premises)});
  }

  const DerivationGraph& g_;
  const NormalizedTBox& nt_;
  DlGraph dl_;
  std::map<std::string, std::vector<std::string>> subroles_;
  std::set<RolePair> roles_done_;
  std::map<std::size_t, std::optional<Axiom>> side_labels_;
};

}  // namespace

DlGraph lift_to_dl(const DerivationGraph& graph, const NormalizedTBox& ntbox) {
  return Lifter(graph, ntbox).run();
}

// ---------------------------------------------------------------------------
// Extraction

namespace {

constexpr int kLeafChoice = -1;

ProofDag tautology_proof(Calculus calculus, const Axiom& goal) {
  ProofDag dag;
  dag.calculus = calculus;
  dag.goal = goal;
  dag.vertices.push_back({0, goal, kTautology, {}});
  return dag;
}

ProofDag build_dag(const DlGraph& dl, const Axiom& goal, std::size_t root,
                   const std::vector<std::optional<int>>& choice) {
  ProofDag dag;
  dag.calculus = dl.calculus;
  dag.goal = goal;
  std::map<std::size_t, std::size_t> ids;
  std::function<std::size_t(std::size_t)> visit = [&](std::size_t n) -> std::size_t {
    if (auto it = ids.find(n); it != ids.end()) return it->second;
    const std::size_t id = dag.vertices.size();
    ids.emplace(n, id);
    const auto& node = dl.nodes[n];
    const int c = *choice[n];
    if (c == kLeafChoice) {
      dag.vertices.push_back({id, node.label, *node.leaf, {}});
      return id;
    }
    const auto& step = node.steps[static_cast<std::size_t>(c)];
    dag.vertices.push_back({id, node.label, step.rule, {}});
    std::vector<std::size_t> children;
    for (auto p : step.premises) children.push_back(visit(p));
    dag.vertices[id].children = std::move(children);
    return id;
  };
  dag.root = visit(root);
  return dag;
}

std::optional<std::size_t> goal_node(const DlGraph& dl, const Axiom& goal,
                                     const std::vector<std::optional<int>>& choice) {
  auto n = dl.find(goal);
  if (n && choice[*n]) return n;
  if (is_tautology(goal)) return std::nullopt;
  throw Error(ErrorKind::GoalNotDerivable, "goal " + to_string(goal) + " has no derivation");
}

struct Cost {
  std::uint64_t size = 0;
  std::uint32_t depth = 0;

  friend auto operator<=>(const Cost&, const Cost&) = default;
};

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  const auto max = std::numeric_limits<std::uint64_t>::max();
  return a > max - b ? max : a + b;
}

}  // namespace

ProofDag extract_min_proof(const DlGraph& dl, const Axiom& goal_in) {
  const Axiom goal = goal_in.canonical();
  const std::size_t n = dl.nodes.size();
  std::vector<std::optional<Cost>> best(n);
  std::vector<char> done(n, 0);
  std::vector<std::optional<int>> choice(n);
  std::vector<std::vector<std::size_t>> remaining(n);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> users(n);

  using Entry = std::tuple<std::uint64_t, std::uint32_t, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;

  for (std::size_t v = 0; v < n; ++v) {
    const auto& node = dl.nodes[v];
    for (std::size_t k = 0; k < node.steps.size(); ++k) {
      remaining[v].push_back(node.steps[k].premises.size());
      for (auto p : node.steps[k].premises) users[p].emplace_back(v, k);
    }
    if (node.leaf) {
      best[v] = Cost{1, 0};
      queue.emplace(1, 0, v);
    }
  }

  auto step_cost = [&](std::size_t v, std::size_t k) {
    Cost c{1, 0};
    for (auto p : dl.nodes[v].steps[k].premises) {
      c.size = saturating_add(c.size, best[p]->size);
      c.depth = std::max(c.depth, best[p]->depth + 1);
    }
    return c;
  };
  auto premise_labels = [&](std::size_t v, std::size_t k) {
    std::vector<std::string> out;
    for (auto p : dl.nodes[v].steps[k].premises) out.push_back(to_string(dl.nodes[p].label));
    return out;
  };

  while (!queue.empty()) {
    const auto [size, depth, v] = queue.top();
    queue.pop();
    if (done[v]) continue;
    done[v] = 1;
    if (dl.nodes[v].leaf) {
      choice[v] = kLeafChoice;
    } else {
      std::optional<std::size_t> pick;
      Cost pick_cost;
      std::vector<std::string> pick_labels;
      for (std::size_t k = 0; k < dl.nodes[v].steps.size(); ++k) {
        if (remaining[v][k] != 0) continue;
        const Cost c = step_cost(v, k);
        if (pick && c > pick_cost) continue;
        auto labels = premise_labels(v, k);
        if (!pick || c < pick_cost || labels < pick_labels) {
          pick = k;
          pick_cost = c;
          pick_labels = std::move(labels);
        }
      }
      choice[v] = static_cast<int>(*pick);
      best[v] = pick_cost;
    }
    for (const auto& [u, k] : users[v]) {
      if (done[u] || --remaining[u][k] != 0) continue;
      const Cost c = step_cost(u, k);
      if (!best[u] || c < *best[u]) {
        best[u] = c;
        queue.emplace(c.size, c.depth, u);
      }
    }
  }

  auto root = goal_node(dl, goal, choice);
  if (!root) return tautology_proof(dl.calculus, goal);
  return build_dag(dl, goal, *root, choice);
}

ProofDag extract_first_proof(const DlGraph& dl, const Axiom& goal_in) {
  const Axiom goal = goal_in.canonical();
  const std::size_t n = dl.nodes.size();
  std::vector<std::optional<int>> choice(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (dl.nodes[v].leaf) choice[v] = kLeafChoice;
  }
  for (bool changed = true; changed;) {
    changed = false;
    const auto before = choice;
    for (std::size_t v = 0; v < n; ++v) {
      if (choice[v]) continue;
      const auto& steps = dl.nodes[v].steps;
      for (std::size_t k = 0; k < steps.size(); ++k) {
        const bool ready = std::all_of(steps[k].premises.begin(), steps[k].premises.end(),
                                       [&](std::size_t p) { return before[p].has_value(); });
        if (ready) {
          choice[v] = static_cast<int>(k);
          changed = true;
          break;
        }
      }
    }
  }
  auto root = goal_node(dl, goal, choice);
  if (!root) return tautology_proof(dl.calculus, goal);
  return build_dag(dl, goal, *root, choice);
}

const char* to_string(ProofMode m) { return m == ProofMode::Minimal ? "minimal" : "first"; }

ProofMode parse_mode(const std::string& name) {
  if (name == "minimal") return ProofMode::Minimal;
  if (name == "first") return ProofMode::First;
  throw Error(ErrorKind::Format, "unknown proof mode '" + name + "'");
}

// ---------------------------------------------------------------------------
// JSON

std::string proof_to_json(const ProofDag& dag) {
  nlohmann::ordered_json j;
  j["calculus"] = to_string(dag.calculus);
  j["goal"] = to_string(dag.goal);
  j["root"] = dag.root;
  auto& vs = j["vertices"] = nlohmann::ordered_json::array();
  for (const auto& v : dag.vertices) {
    nlohmann::ordered_json jv;
    jv["id"] = v.id;
    jv["axiom"] = to_string(v.label);
    jv["rule"] = v.rule;
    jv["children"] = v.children;
    vs.push_back(std::move(jv));
  }
  return j.dump(2) + "\n";
}

ProofDag proof_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Format, std::string("proof JSON: ") + e.what());
  }
  try {
    ProofDag dag;
    dag.calculus = parse_calculus(j.at("calculus").get<std::string>());
    dag.goal = parse_axiom(j.at("goal").get<std::string>()).canonical();
    dag.root = j.at("root").get<std::size_t>();
    for (const auto& jv : j.at("vertices")) {
      ProofVertex v;
      v.id = jv.at("id").get<std::size_t>();
      if (v.id != dag.vertices.size()) {
        throw Error(ErrorKind::Format, "proof JSON: vertex ids must be dense and 0-based");
      }
      v.label = parse_axiom(jv.at("axiom").get<std::string>()).canonical();
      v.rule = jv.at("rule").get<std::string>();
      v.children = jv.at("children").get<std::vector<std::size_t>>();
      dag.vertices.push_back(std::move(v));
    }
    return dag;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Format, std::string("proof JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// ProofTree

ProofTree ProofTree::unravel(const ProofDag& dag, std::uint64_t cap) {
  ProofTree t;
  t.root_ = dag.root;
  for (const auto& v : dag.vertices) {
    t.children_.push_back(v.children);
    t.labels_.push_back(to_string(v.label));
    t.rules_.push_back(v.rule);
    t.axioms_.push_back(v.label);
  }
  t.finish(cap);
  return t;
}

ProofTree ProofTree::from_shape(const std::vector<std::vector<std::size_t>>& children) {
  ProofTree t;
  t.children_ = children;
  for (std::size_t v = 0; v < children.size(); ++v) {
    std::string label = std::to_string(v);
    t.labels_.push_back("v" + std::string(6 - std::min<std::size_t>(6, label.size()), '0') + label);
    t.rules_.push_back(children[v].empty() ? kAsserted : "step");
  }
  t.finish(std::numeric_limits<std::uint64_t>::max());
  return t;
}

std::vector<std::size_t> ProofTree::topological_order() const {
  std::vector<std::size_t> post;
  std::vector<char> seen(children_.size(), 0);
  std::vector<std::pair<std::size_t, std::size_t>> stack{{root_, 0}};
  seen[root_] = 1;
  while (!stack.empty()) {
    auto& [v, k] = stack.back();
    if (k < children_[v].size()) {
      const auto c = children_[v][k++];
      if (!seen[c]) {
        seen[c] = 1;
        stack.emplace_back(c, 0);
      }
    } else {
      post.push_back(v);
      stack.pop_back();
    }
  }
  std::reverse(post.begin(), post.end());
  return post;
}

void ProofTree::finish(std::uint64_t cap) {
  if (children_.empty()) return;
  const auto order = topological_order();
  std::vector<std::uint64_t> size(children_.size(), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::uint64_t s = 1;
    for (auto c : children_[*it]) s = saturating_add(s, size[c]);
    size[*it] = s;
  }
  tree_size_ = size[root_];
  if (tree_size_ > cap) return;
  nodes_.reserve(tree_size_);
  std::function<std::size_t(std::size_t)> add = [&](std::size_t v) -> std::size_t {
    const std::size_t idx = nodes_.size();
    nodes_.push_back({v, {}});
    std::vector<std::size_t> kids;
    for (auto c : children_[v]) kids.push_back(add(c));
    nodes_[idx].children = std::move(kids);
    return idx;
  };
  add(root_);
}

// ---------------------------------------------------------------------------
// Validation

namespace {

bool subset_of(const std::vector<Concept>& part, const std::vector<Concept>& whole) {
  return std::all_of(part.begin(), part.end(), [&](const Concept& c) {
    return c.kind() == ConceptKind::Top || std::find(whole.begin(), whole.end(), c) != whole.end();
  });
}

struct Schema {
  std::size_t min;
  std::size_t max;
  bool roles;   // role inclusions allowed among premises
  bool chains;  // role chains allowed among premises
};

std::optional<Schema> schema_for(Calculus calc, const std::string& rule) {
  if (rule == "role-trans") return Schema{2, 2, true, false};
  if (rule == "equiv") return Schema{2, 2, false, false};
  switch (calc) {
    case Calculus::Elk:
      if (rule == "R_sub") return Schema{1, 2, false, false};
      if (rule == "R_conj-") return Schema{1, 1, false, false};
      if (rule == "R_conj+") return Schema{1, 2, false, false};
      if (rule == "R_ex+") return Schema{1, 3, true, false};
      if (rule == "R_bot") return Schema{1, 2, false, false};
      if (rule == "R_comp") return Schema{1, 5, true, true};
      break;
    case Calculus::Textbook:
      if (rule == "CR3") return Schema{1, 2, false, false};
      if (rule == "CR4") return Schema{1, 3, false, false};
      if (rule == "CR5p") return Schema{1, 4, true, false};
      if (rule == "R_bot'") return Schema{1, 2, false, false};
      break;
    case Calculus::Envelope:
      if (rule == "CR1" || rule == "CR3") return Schema{1, 2, false, false};
      if (rule == "CR2") return Schema{1, 3, false, false};
      if (rule == "CR4") return Schema{1, 3, false, false};
      if (rule == "CR5") return Schema{1, 2, false, false};
      if (rule == "CR10") return Schema{1, 2, true, false};
      if (rule == "CR11") return Schema{1, 3, false, true};
      break;
  }
  return std::nullopt;
}

std::optional<std::string> check_schema(Calculus calc, const std::string& rule,
                                        const std::vector<Axiom>& ps, const Axiom& c) {
  const auto schema = schema_for(calc, rule);
  if (!schema) return "rule '" + rule + "' is not part of the " + to_string(calc) + " calculus";
  if (ps.size() < schema->min || ps.size() > schema->max) {
    return "rule '" + rule + "' does not take " + std::to_string(ps.size()) + " premises";
  }
  for (const auto& p : ps) {
    const bool ok = p.kind == AxiomKind::ConceptInclusion ||
                    (schema->roles && p.kind == AxiomKind::RoleInclusion) ||
                    (schema->chains && p.kind == AxiomKind::RoleChainInclusion);
    if (!ok) return "premise " + to_string(p) + " has the wrong shape for '" + rule + "'";
  }
  if (rule == "role-trans") {
    if (c.kind != AxiomKind::RoleInclusion || ps[0].roles != c.roles ||
        ps[0].role != ps[1].roles.front() || ps[1].role != c.role) {
      return "role-trans premises do not chain to the conclusion";
    }
    return std::nullopt;
  }
  if (rule == "equiv") {
    if (c.kind != AxiomKind::Equivalence || ps[0].lhs != c.lhs || ps[0].rhs != c.rhs ||
        ps[1].lhs != c.rhs || ps[1].rhs != c.lhs) {
      return "equiv premises are not the two directions of the conclusion";
    }
    return std::nullopt;
  }
  if (c.kind != AxiomKind::ConceptInclusion) return "conclusion is not a concept inclusion";
  const bool transitive = rule == "R_sub" || (calc == Calculus::Textbook && rule == "CR3") ||
                          (calc == Calculus::Envelope && (rule == "CR1" || rule == "CR3"));
  if (transitive) {
    if (ps.size() == 2 &&
        !(ps[0].lhs == c.lhs && ps[0].rhs == ps[1].lhs && ps[1].rhs == c.rhs)) {
      return "premises of '" + rule + "' do not chain to the conclusion";
    }
    if (ps.size() == 1 && !(ps[0].lhs == c.lhs || ps[0].rhs == c.rhs)) {
      return "premise of '" + rule + "' does not match the conclusion";
    }
  } else if (rule == "R_conj-") {
    if (ps[0].lhs != c.lhs || !subset_of(conjuncts(c.rhs), conjuncts(ps[0].rhs))) {
      return "R_conj- conclusion is not a conjunct of its premise";
    }
  } else if (rule == "R_conj+") {
    std::vector<Concept> have = conjuncts(c.lhs);
    for (const auto& p : ps) {
      if (p.lhs != c.lhs) return "R_conj+ premises have a different left-hand side";
      for (auto& x : conjuncts(p.rhs)) have.push_back(x);
    }
    if (!subset_of(conjuncts(c.rhs), have)) return "R_conj+ conclusion has an unsupported conjunct";
  } else if (rule == "R_bot" || rule == "R_bot'" || rule == "CR5") {
    if (c.rhs.kind() != ConceptKind::Bottom) return "'" + rule + "' must conclude ⊥";
  }
  return std::nullopt;
}

bool roles_entail(const std::vector<Axiom>& premises, const std::string& r, const std::string& t) {
  std::set<std::string> reach{r};
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : premises) {
      if (p.kind == AxiomKind::RoleInclusion && reach.count(p.roles.front()) &&
          reach.insert(p.role).second) {
        changed = true;
      }
    }
  }
  return reach.count(t) > 0;
}

bool concept_entails(const std::vector<Axiom>& premises, const Concept& lhs, const Concept& rhs) {
  TBox t;
  for (const auto& p : premises) t.add(p);
  const auto sig = t.signature();
  std::string l = "__lhs", r = "__rhs";
  while (sig.concepts.count(l)) l += "_";
  while (sig.concepts.count(r)) r += "_";
  t.add(Axiom::subclass(Concept::named(l), lhs));
  t.add(Axiom::subclass(rhs, Concept::named(r)));
  return entails(t, Calculus::Elk, Axiom::subclass(Concept::named(l), Concept::named(r)))
      .result.entailed;
}

bool step_sound(const std::vector<Axiom>& premises, const Axiom& c) {
  switch (c.kind) {
    case AxiomKind::RoleInclusion: return roles_entail(premises, c.roles.front(), c.role);
    case AxiomKind::ConceptInclusion: return concept_entails(premises, c.lhs, c.rhs);
    case AxiomKind::Equivalence:
      return concept_entails(premises, c.lhs, c.rhs) && concept_entails(premises, c.rhs, c.lhs);
    default: return false;
  }
}

}  // namespace

std::vector<Violation> validate_proof(const ProofDag& dag, const TBox& tbox, const Axiom& goal) {
  std::vector<Violation> out;
  const std::size_t n = dag.vertices.size();
  if (dag.root >= n) {
    out.push_back({"root", std::nullopt, "root id " + std::to_string(dag.root) + " out of range"});
    return out;
  }
  if (dag.vertices[dag.root].label != goal.canonical()) {
    out.push_back({"root mismatch", dag.root,
                   "root is " + to_string(dag.vertices[dag.root].label) + ", goal is " +
                       to_string(goal)});
  }
  bool dangling = false;
  std::map<Axiom, std::size_t> seen;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = dag.vertices[i];
    if (v.id != i) out.push_back({"bad id", i, "vertex id " + std::to_string(v.id)});
    for (auto c : v.children) {
      if (c >= n) {
        out.push_back({"dangling child", i, "child id " + std::to_string(c) + " out of range"});
        dangling = true;
      }
    }
    auto [it, inserted] = seen.emplace(v.label, i);
    if (!inserted) {
      out.push_back({"duplicate label", i,
                     to_string(v.label) + " also labels vertex " + std::to_string(it->second)});
    }
  }
  if (dangling) return out;

  std::vector<int> color(n, 0);
  std::function<bool(std::size_t)> cyclic = [&](std::size_t v) {
    color[v] = 1;
    for (auto c : dag.vertices[v].children) {
      if (color[c] == 1 || (color[c] == 0 && cyclic(c))) return true;
    }
    color[v] = 2;
    return false;
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (color[v] == 0 && cyclic(v)) {
      out.push_back({"cycle", v, "the proof graph has a cycle"});
      break;
    }
  }

  const auto sugar = desugar(tbox);
  std::set<Axiom> source(sugar.begin(), sugar.end());
  for (const auto& a : tbox.axioms()) source.insert(a.canonical());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = dag.vertices[i];
    const bool leaf_rule = v.rule == kAsserted || v.rule == kTautology;
    if (v.children.empty()) {
      if (!leaf_rule) {
        out.push_back({"leaf rule", i, "leaf carries rule '" + v.rule + "'"});
      } else if (v.rule == kAsserted ? !source.count(v.label) : !is_tautology(v.label)) {
        out.push_back({"foreign leaf", i, to_string(v.label) + " is not a " + v.rule + " axiom"});
      }
      continue;
    }
    if (leaf_rule) {
      out.push_back({"leaf rule", i, "inner vertex carries rule '" + v.rule + "'"});
      continue;
    }
    std::vector<Axiom> premises;
    for (auto c : v.children) premises.push_back(dag.vertices[c].label);
    if (auto err = check_schema(dag.calculus, v.rule, premises, v.label)) {
      out.push_back({"schema", i, *err});
    }
    if (!step_sound(premises, v.label)) {
      out.push_back({"unsound step", i, to_string(v.label) + " does not follow from its children"});
    }
  }
  return out;
}

}  // namespace elproof
