#include "elproof/saturation.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "elproof/errors.hpp"

namespace elproof {

// ---------------------------------------------------------------------------
// ConceptTable

ConceptTable::ConceptTable() {
  add({ConceptKind::Top, 0, {}}, "T");
  add({ConceptKind::Bottom, 0, {}}, "B");
}

ConceptId ConceptTable::add(Node node, std::string key) {
  const auto id = static_cast<ConceptId>(nodes_.size());
  nodes_.push_back(std::move(node));
  by_key_.emplace(std::move(key), id);
  return id;
}

RoleId ConceptTable::role_id(const std::string& role) {
  auto [it, inserted] = role_index_.emplace(role, static_cast<RoleId>(roles_.size()));
  if (inserted) roles_.push_back(role);
  return it->second;
}

std::optional<RoleId> ConceptTable::find_role(const std::string& role) const {
  auto it = role_index_.find(role);
  if (it == role_index_.end()) return std::nullopt;
  return it->second;
}

namespace {

std::string existential_key(RoleId role, ConceptId filler) {
  return "E" + std::to_string(role) + "," + std::to_string(filler);
}

}  // namespace

ConceptId ConceptTable::intern(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::Top: return kTopId;
    case ConceptKind::Bottom: return kBottomId;
    case ConceptKind::Named: {
      std::string key = "N" + c.name();
      if (auto it = by_key_.find(key); it != by_key_.end()) return it->second;
      auto [nit, inserted] =
          name_index_.emplace(c.name(), static_cast<std::uint32_t>(names_.size()));
      if (inserted) names_.push_back(c.name());
      return add({ConceptKind::Named, nit->second, {}}, std::move(key));
    }
    case ConceptKind::Existential:
      return intern_existential(role_id(c.role()), intern(c.filler()));
    case ConceptKind::Conjunction: {
      std::vector<ConceptId> ops;
      std::string key = "C";
      for (const auto& op : c.operands()) {
        ops.push_back(intern(op));
        key += std::to_string(ops.back()) + ",";
      }
      if (auto it = by_key_.find(key); it != by_key_.end()) return it->second;
      return add({ConceptKind::Conjunction, 0, std::move(ops)}, std::move(key));
    }
  }
  return kTopId;
}

std::optional<ConceptId> ConceptTable::find(const Concept& c) const {
  switch (c.kind()) {
    case ConceptKind::Top: return kTopId;
    case ConceptKind::Bottom: return kBottomId;
    case ConceptKind::Named: {
      auto it = by_key_.find("N" + c.name());
      if (it == by_key_.end()) return std::nullopt;
      return it->second;
    }
    case ConceptKind::Existential: {
      auto role = find_role(c.role());
      auto filler = find(c.filler());
      if (!role || !filler) return std::nullopt;
      return find_existential(*role, *filler);
    }
    case ConceptKind::Conjunction: {
      std::string key = "C";
      for (const auto& op : c.operands()) {
        auto id = find(op);
        if (!id) return std::nullopt;
        key += std::to_string(*id) + ",";
      }
      auto it = by_key_.find(key);
      if (it == by_key_.end()) return std::nullopt;
      return it->second;
    }
  }
  return std::nullopt;
}

std::optional<ConceptId> ConceptTable::find_existential(RoleId role, ConceptId filler) const {
  auto it = by_key_.find(existential_key(role, filler));
  if (it == by_key_.end()) return std::nullopt;
  return it->second;
}

ConceptId ConceptTable::intern_existential(RoleId role, ConceptId filler) {
  std::string key = existential_key(role, filler);
  if (auto it = by_key_.find(key); it != by_key_.end()) return it->second;
  return add({ConceptKind::Existential, role, {filler}}, std::move(key));
}

Concept ConceptTable::to_concept(ConceptId id) const {
  const Node& n = nodes_[id];
  switch (n.kind) {
    case ConceptKind::Top: return Concept::top();
    case ConceptKind::Bottom: return Concept::bottom();
    case ConceptKind::Named: return Concept::named(names_[n.symbol]);
    case ConceptKind::Existential:
      return Concept::existential(roles_[n.symbol], to_concept(n.operands.front()));
    case ConceptKind::Conjunction: {
      std::vector<Concept> ops;
      for (auto op : n.operands) ops.push_back(to_concept(op));
      return Concept::conjunction(std::move(ops));
    }
  }
  return Concept::top();
}

// ---------------------------------------------------------------------------
// DerivationGraph

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Tbox: return "tbox";
    case Rule::Seed: return "seed";
    case Rule::R0: return "R_0";
    case Rule::RTop: return "R_top";
    case Rule::RSub: return "R_sub";
    case Rule::RConjMinus: return "R_conj-";
    case Rule::RConjPlus: return "R_conj+";
    case Rule::RExMinus: return "R_ex-";
    case Rule::RExPlus: return "R_ex+";
    case Rule::RInit: return "R_init";
    case Rule::RBot: return "R_bot";
    case Rule::RComp: return "R_comp";
    case Rule::CR1: return "CR1";
    case Rule::CR2: return "CR2";
    case Rule::CR3: return "CR3";
    case Rule::CR4: return "CR4";
    case Rule::CR5p: return "CR5p";
    case Rule::RBotPrime: return "R_bot'";
    case Rule::ECR1: return "CR1";
    case Rule::ECR2: return "CR2";
    case Rule::ECR3: return "CR3";
    case Rule::ECR4: return "CR4";
    case Rule::ECR5: return "CR5";
    case Rule::ECR10: return "CR10";
    case Rule::ECR11: return "CR11";
    case Rule::Equiv: return "equiv";
  }
  return "?";
}

std::optional<FactId> DerivationGraph::find(const Fact& f) const {
  auto it = index_.find(f);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::pair<FactId, bool> DerivationGraph::insert(const Fact& f, std::uint32_t round) {
  auto [it, inserted] = index_.emplace(f, static_cast<FactId>(facts.size()));
  if (inserted) {
    facts.push_back(f);
    rounds.push_back(round);
    derivations.emplace_back();
  }
  return {it->second, inserted};
}

bool DerivationGraph::record(FactId conclusion, Derivation d) {
  auto& list = derivations[conclusion];
  if (std::find(list.begin(), list.end(), d) != list.end()) return false;
  if (d.premises.empty()) seeds.push_back(conclusion);
  list.push_back(std::move(d));
  return true;
}

Fact DerivationGraph::sub(ConceptId lhs, ConceptId rhs) const {
  const bool simple = concepts.is_atomic(lhs) && concepts.is_atomic(rhs);
  return {simple ? FactKind::SubClass : FactKind::SubClassComplex, lhs, 0, rhs};
}

std::optional<Axiom> DerivationGraph::fact_axiom(FactId id) const {
  const Fact& f = facts[id];
  switch (f.kind) {
    case FactKind::Init: return std::nullopt;
    case FactKind::SubClass:
    case FactKind::SubClassComplex:
      return Axiom::subclass(concepts.to_concept(f.lhs), concepts.to_concept(f.rhs));
    case FactKind::Link:
      return Axiom::subclass(
          concepts.to_concept(f.lhs),
          Concept::existential(concepts.role_name(f.role), concepts.to_concept(f.rhs)));
    case FactKind::Equivalence:
      return Axiom::equivalence(concepts.to_concept(f.lhs), concepts.to_concept(f.rhs));
  }
  return std::nullopt;
}

std::string DerivationGraph::fact_string(FactId id) const {
  const Fact& f = facts[id];
  switch (f.kind) {
    case FactKind::Init: return "init(" + to_string(concepts.to_concept(f.lhs)) + ")";
    case FactKind::Link:
      return to_string(concepts.to_concept(f.lhs)) + " -" + concepts.role_name(f.role) + "-> " +
             to_string(concepts.to_concept(f.rhs));
    default: return to_string(*fact_axiom(id));
  }
}

// ---------------------------------------------------------------------------
// Saturation

namespace {

using IdList = std::vector<FactId>;

class Saturator {
 public:
  Saturator(const NormalizedTBox& nt, const SaturationOptions& options)
      : nt_(nt), options_(options) {
    g_.calculus = nt.calculus;
    prepare();
  }

  DerivationGraph run() {
    seed();
    delta_begin_ = 0;
    delta_end_ = static_cast<FactId>(g_.facts.size());
    round_ = 1;
    while (delta_begin_ < delta_end_) {
      switch (nt_.calculus) {
        case Calculus::Elk: elk_round(); break;
        case Calculus::Textbook: textbook_round(); break;
        case Calculus::Envelope: envelope_round(); break;
      }
      delta_begin_ = delta_end_;
      delta_end_ = static_cast<FactId>(g_.facts.size());
      ++round_;
    }
    return std::move(g_);
  }

 private:
  struct AxiomRef {
    std::size_t index;
    ConceptId lhs;
    ConceptId rhs;
  };
  struct ChainRef {
    std::size_t index;
    RoleId sup;
  };

  // -- setup --------------------------------------------------------------

  void prepare() {
    auto& ct = g_.concepts;
    for (const auto& name : nt_.signature.concepts) ct.intern(Concept::named(name));
    for (const auto& [name, image] : nt_.alias_concepts) ct.intern(Concept::named(name));
    for (std::size_t i = 0; i < nt_.axioms.size(); ++i) {
      const Axiom& a = nt_.axioms[i];
      switch (a.kind) {
        case AxiomKind::ConceptInclusion: {
          const AxiomRef ref{i, ct.intern(a.lhs), ct.intern(a.rhs)};
          ax_by_lhs_[ref.lhs].push_back(ref);
          const auto& ln = ct.node(ref.lhs);
          if (ln.kind == ConceptKind::Conjunction) {
            for (auto op : ln.operands) conj_ax_by_op_[op].push_back(ref);
          }
          break;
        }
        case AxiomKind::RoleInclusion:
          ri_by_sub_[ct.role_id(a.roles.front())].push_back({i, ct.role_id(a.role)});
          break;
        case AxiomKind::RoleChainInclusion:
          chain_by_pair_[{ct.role_id(a.roles[0]), ct.role_id(a.roles[1])}].push_back(
              {i, ct.role_id(a.role)});
          break;
        default: break;
      }
    }
    for (const auto& [sub, sup] : nt_.role_hierarchy) {
      const RoleId r = ct.role_id(sub), s = ct.role_id(sup);
      sups_[r].push_back(s);
      hierarchy_.insert(pair_key(r, s));
    }
    for (const auto& c : nt_.negative_concepts) {
      const ConceptId id = ct.intern(c);
      negative_.insert(id);
      const auto& n = ct.node(id);
      if (n.kind == ConceptKind::Conjunction) {
        for (auto op : n.operands) neg_conj_by_op_[op].push_back(id);
      } else if (n.kind == ConceptKind::Existential) {
        neg_ex_by_filler_[n.operands.front()].push_back({n.symbol, id});
      }
    }
  }

  static std::uint64_t pair_key(RoleId a, RoleId b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }
  bool in_hierarchy(RoleId r, RoleId s) const { return hierarchy_.count(pair_key(r, s)) > 0; }

  const ConceptTable::Node& node(ConceptId id) const { return g_.concepts.node(id); }
  bool atomic(ConceptId id) const { return g_.concepts.is_atomic(id); }
  bool is_ex(ConceptId id) const { return node(id).kind == ConceptKind::Existential; }
  bool is_conj(ConceptId id) const { return node(id).kind == ConceptKind::Conjunction; }

  std::vector<ConceptId> all_names() const {
    std::vector<std::pair<std::string, ConceptId>> names;
    for (const auto& name : nt_.signature.concepts) {
      names.emplace_back(name, *g_.concepts.find(Concept::named(name)));
    }
    for (const auto& [name, image] : nt_.alias_concepts) {
      names.emplace_back(name, *g_.concepts.find(Concept::named(name)));
    }
    std::sort(names.begin(), names.end());
    std::vector<ConceptId> out;
    for (const auto& n : names) out.push_back(n.second);
    out.push_back(kTopId);
    out.push_back(kBottomId);
    return out;
  }

  void seed() {
    round_ = 0;
    switch (nt_.calculus) {
      case Calculus::Elk: {
        std::vector<Concept> inits;
        if (options_.init_only) {
          inits = *options_.init_only;
        } else {
          for (const auto& name : nt_.signature.concepts) inits.push_back(Concept::named(name));
        }
        inits.insert(inits.end(), options_.extra_init.begin(), options_.extra_init.end());
        for (const auto& c : inits) {
          conclude({FactKind::Init, g_.concepts.intern(c), 0, 0}, {Rule::Seed, {}, {}});
        }
        break;
      }
      case Calculus::Textbook:
        for (std::size_t i = 0; i < nt_.axioms.size(); ++i) {
          const Axiom& a = nt_.axioms[i];
          if (!a.is_concept_inclusion()) continue;
          conclude(g_.sub(g_.concepts.intern(a.lhs), g_.concepts.intern(a.rhs)),
                   {Rule::Tbox, {}, {SideCondition::tbox(i)}});
        }
        for (auto c : all_names()) {
          conclude(g_.sub(c, c), {Rule::CR1, {}, {}});
          conclude(g_.sub(c, kTopId), {Rule::CR2, {}, {}});
        }
        break;
      case Calculus::Envelope:
        for (auto c : all_names()) {
          conclude(g_.sub(c, c), {Rule::Seed, {}, {}});
          conclude(g_.sub(c, kTopId), {Rule::Seed, {}, {}});
        }
        break;
    }
  }

  // -- fact store -----------------------------------------------------------

  void conclude(const Fact& f, Derivation d) {
    auto [id, inserted] = g_.insert(f, round_);
    if (inserted) {
      index(id, f);
      if (g_.facts.size() > options_.max_facts) {
        throw Error(ErrorKind::ResourceLimit,
                    "derived fact count exceeds " + std::to_string(options_.max_facts));
      }
      if (options_.deadline && (++ticks_ & 0xFF) == 0 &&
          std::chrono::steady_clock::now() > *options_.deadline) {
        throw Error(ErrorKind::Timeout, "saturation deadline exceeded");
      }
    }
    g_.record(id, std::move(d));
  }

  void index(FactId id, const Fact& f) {
    switch (f.kind) {
      case FactKind::SubClass:
      case FactKind::SubClassComplex:
        sub_by_lhs_[f.lhs].push_back(id);
        sub_by_rhs_[f.rhs].push_back(id);
        if (atomic(f.lhs) && is_ex(f.rhs)) ex_rhs_by_filler_[node(f.rhs).operands.front()].push_back(id);
        if (is_ex(f.lhs)) ex_lhs_by_filler_[node(f.lhs).operands.front()].push_back(id);
        if (is_conj(f.lhs)) {
          for (auto op : node(f.lhs).operands) conj_lhs_by_op_[op].push_back(id);
        }
        break;
      case FactKind::Link:
        link_by_src_[f.lhs].push_back(id);
        link_by_dst_[f.rhs].push_back(id);
        break;
      default: break;
    }
  }

  // Id of an available fact (inserted before `limit`), if any.
  std::optional<FactId> available(const Fact& f, FactId limit) const {
    auto id = g_.find(f);
    if (id && *id < limit) return id;
    return std::nullopt;
  }

  // Copy of the ids in `list` below `limit`; lists are in insertion order.
  static IdList below(const std::unordered_map<ConceptId, IdList>& m, ConceptId key,
                      FactId limit) {
    IdList out;
    auto it = m.find(key);
    if (it == m.end()) return out;
    for (auto id : it->second) {
      if (id >= limit) break;
      out.push_back(id);
    }
    return out;
  }

  template <typename Fn>
  void for_delta(Fn&& fn) {
    for (FactId id = delta_begin_; id < delta_end_; ++id) {
      const Fact f = g_.facts[id];
      fn(id, f);
    }
  }

  static bool is_sub(const Fact& f) {
    return f.kind == FactKind::SubClass || f.kind == FactKind::SubClassComplex;
  }

  // -- elk --------------------------------------------------------------------

  void elk_round() {
    const bool top_negative = negative_.count(kTopId) > 0;
    // R_0, R_top
    for_delta([&](FactId id, const Fact& f) {
      if (f.kind == FactKind::Init) conclude(g_.sub(f.lhs, f.lhs), {Rule::R0, {id}, {}});
    });
    if (top_negative) {
      for_delta([&](FactId id, const Fact& f) {
        if (f.kind == FactKind::Init) conclude(g_.sub(f.lhs, kTopId), {Rule::RTop, {id}, {}});
      });
    }
    // R_sub
    for_delta([&](FactId id, const Fact& f) {
      if (!is_sub(f)) return;
      auto it = ax_by_lhs_.find(f.rhs);
      if (it == ax_by_lhs_.end()) return;
      for (const auto& ax : it->second) {
        conclude(g_.sub(f.lhs, ax.rhs), {Rule::RSub, {id}, {SideCondition::tbox(ax.index)}});
      }
    });
    // R_conj-
    for_delta([&](FactId id, const Fact& f) {
      if (!is_sub(f) || !is_conj(f.rhs)) return;
      const auto ops = node(f.rhs).operands;
      for (auto op : ops) conclude(g_.sub(f.lhs, op), {Rule::RConjMinus, {id}, {}});
    });
    // R_conj+
    for_delta([&](FactId id, const Fact& f) {
      if (!is_sub(f)) return;
      auto it = neg_conj_by_op_.find(f.rhs);
      if (it == neg_conj_by_op_.end()) return;
      const auto conjs = it->second;
      for (auto conj : conjs) {
        const auto ops = node(conj).operands;
        if (ops[0] == f.rhs) {
          if (auto other = available(g_.sub(f.lhs, ops[1]), delta_end_)) {
            conclude(g_.sub(f.lhs, conj), {Rule::RConjPlus, {id, *other}, {}});
          }
        } else if (auto other = available(g_.sub(f.lhs, ops[0]), delta_begin_)) {
          conclude(g_.sub(f.lhs, conj), {Rule::RConjPlus, {*other, id}, {}});
        }
      }
    });
    // R_ex-
    for_delta([&](FactId id, const Fact& f) {
      if (!is_sub(f) || !is_ex(f.rhs)) return;
      const auto& n = node(f.rhs);
      conclude(g_.link(f.lhs, n.symbol, n.operands.front()), {Rule::RExMinus, {id}, {}});
    });
    // R_ex+
    auto ex_plus = [&](FactId link_id, FactId sub_id) {
      const Fact l = g_.facts[link_id];
      const Fact s = g_.facts[sub_id];
      auto it = neg_ex_by_filler_.find(s.rhs);
      if (it == neg_ex_by_filler_.end()) return;
      const auto targets = it->second;
      for (const auto& [role, ex] : targets) {
        if (!in_hierarchy(l.role, role)) continue;
        conclude(g_.sub(l.lhs, ex),
                 {Rule::RExPlus, {link_id, sub_id}, {SideCondition::roles(l.role, role)}});
      }
    };
    for_delta([&](FactId id, const Fact& f) {
      if (f.kind == FactKind::Link) {
        for (auto s : below(sub_by_lhs_, f.rhs, delta_end_)) ex_plus(id, s);
      } else if (is_sub(f)) {
        for (auto l : below(link_by_dst_, f.lhs, delta_begin_)) ex_plus(l, id);
      }
    });
    // R_init
    for_delta([&](FactId id, const Fact& f) {
      if (f.kind == FactKind::Link) {
        conclude({FactKind::Init, f.rhs, 0, 0}, {Rule::RInit, {id}, {}});
      }
    });
    // R_bot
    for_delta([&](FactId id, const Fact& f) {
      if (f.kind == FactKind::Link) {
        if (auto b = available(g_.sub(f.rhs, kBottomId), delta_end_)) {
          conclude(g_.sub(f.lhs, kBottomId), {Rule::RBot, {id, *b}, {}});
        }
      } else if (is_sub(f) && f.rhs == kBottomId) {
        for (auto l : below(link_by_dst_, f.lhs, delta_begin_)) {
          conclude(g_.sub(g_.facts[l].lhs, kBottomId), {Rule::RBot, {l, id}, {}});
        }
      }
    });
    // R_comp
    if (chain_by_pair_.empty()) return;
    auto comp = [&](FactId first, FactId second) {
      const Fact l1 = g_.facts[first];
      const Fact l2 = g_.facts[second];
      const auto s1s = sups_of(l1.role);
      const auto s2s = sups_of(l2.role);
      for (auto s1 : s1s) {
        for (auto s2 : s2s) {
          auto it = chain_by_pair_.find({s1, s2});
          if (it == chain_by_pair_.end()) continue;
          for (const auto& ch : it->second) {
            conclude(g_.link(l1.lhs, ch.sup, l2.rhs),
                     {Rule::RComp,
                      {first, second},
                      {SideCondition::roles(l1.role, s1), SideCondition::roles(l2.role, s2),
                       SideCondition::tbox(ch.index)}});
          }
        }
      }
    };
    for_delta([&](FactId id, const Fact& f) {
      if (f.kind != FactKind::Link) return;
      for (auto l2 : below(link_by_src_, f.rhs, delta_end_)) comp(id, l2);
      for (auto l1 : below(link_by_dst_, f.lhs, delta_begin_)) comp(l1, id);
    });
  }

  std::vector<RoleId> sups_of(RoleId r) const {
    auto it = sups_.find(r);
    if (it == sups_.end()) return {};
    return it->second;
  }

  // -- textbook ---------------------------------------------------------------

  void textbook_round() {
    // CR3
    for_delta([&](FactId id, const Fact& f) {
      if (!is_sub(f) || !atomic(f.lhs)) return;
      if (atomic(f.rhs)) {
        for (auto g : below(sub_by_lhs_, f.rhs, delta_end_)) {
          conclude(g_.sub(f.lhs, g_.facts[g].rhs), {Rule::CR3, {id, g}, {}});
        }
      }
      for (auto p : below(sub_by_rhs_, f.lhs, delta_begin_)) {
        const Fact pf = g_.facts[p];
        if (atomic(pf.lhs)) conclude(g_.sub(pf.lhs, f.rhs), {Rule::CR3, {p, id}, {}});
      }
    });
    // CR4
    for_delta([&](FactId id, const Fact& f) {
      if (!is_sub(f)) return;
      if (atomic(f.lhs) && atomic(f.rhs)) {
        for (auto k : below(conj_lhs_by_op_, f.rhs, delta_end_)) {
          const Fact kf = g_.facts[k];
          const auto ops = node(kf.lhs).operands;
          if (ops[0] == f.rhs) {
            if (auto o = available(g_.sub(f.lhs, ops[1]), delta_end_)) {
              conclude(g_.sub(f.lhs, kf.rhs), {Rule::CR4, {id, *o, k}, {}});
            }
          } else if (auto o = available(g_.sub(f.lhs, ops[0]), delta_begin_)) {
            conclude(g_.sub(f.lhs, kf.rhs), {Rule::CR4, {*o, id, k}, {}});
          }
        }
      }
      if (is_conj(f.lhs)) {
        const auto ops = node(f.lhs).operands;
        for (auto p : below(sub_by_rhs_, ops[0], delta_begin_)) {
          const Fact pf = g_.facts[p];
          if (!atomic(pf.lhs)) continue;
          if (auto o = available(g_.sub(pf.lhs, ops[1]), delta_begin_)) {
            conclude(g_.sub(pf.lhs, f.rhs), {Rule::CR4, {p, *o, id}, {}});
          }
        }
      }
    });
    // CR5'
    auto cr5 = [&](FactId ex_id, FactId mid_id, FactId ax_id) {
      const RoleId r = node(g_.facts[ex_id].rhs).symbol;
      const Fact k = g_.facts[ax_id];
      const RoleId s = node(k.lhs).symbol;
      if (!in_hierarchy(r, s)) return;
      conclude(g_.sub(g_.facts[ex_id].lhs, k.rhs),
               {Rule::CR5p, {ex_id, mid_id, ax_id}, {SideCondition::roles(r, s)}});
    };
    for_delta([&](FactId id, const Fact& f) {
      if (!is_sub(f)) return;
      if (atomic(f.lhs) && is_ex(f.rhs)) {
        const ConceptId d1 = node(f.rhs).operands.front();
        for (auto g : below(sub_by_lhs_, d1, delta_end_)) {
          const ConceptId d2 = g_.facts[g].rhs;
          if (!atomic(d2)) continue;
          for (auto k : below(ex_lhs_by_filler_, d2, delta_end_)) cr5(id, g, k);
        }
      }
      if (atomic(f.lhs) && atomic(f.rhs)) {
        for (auto e : below(ex_rhs_by_filler_, f.lhs, delta_begin_)) {
          for (auto k : below(ex_lhs_by_filler_, f.rhs, delta_end_)) cr5(e, id, k);
        }
      }
      if (is_ex(f.lhs)) {
        const ConceptId d2 = node(f.lhs).operands.front();
        for (auto g : below(sub_by_rhs_, d2, delta_begin_)) {
          const ConceptId d1 = g_.facts[g].lhs;
          if (!atomic(d1)) continue;
          for (auto e : below(ex_rhs_by_filler_, d1, delta_begin_)) cr5(e, g, id);
        }
      }
    });
    bottom_round(Rule::RBotPrime);
  }

  // C ⊑ ∃r.E, E ⊑ ⊥ ⟹ C ⊑ ⊥ over existential facts (textbook and envelope).
  void bottom_round(Rule rule) {
    for_delta([&](FactId id, const Fact& f) {
      if (!is_sub(f) || !atomic(f.lhs)) return;
      if (is_ex(f.rhs)) {
        if (auto b = available(g_.sub(node(f.rhs).operands.front(), kBottomId), delta_end_)) {
          conclude(g_.sub(f.lhs, kBottomId), {rule, {id, *b}, {}});
        }
      }
      if (f.rhs == kBottomId) {
        for (auto e : below(ex_rhs_by_filler_, f.lhs, delta_begin_)) {
          conclude(g_.sub(g_.facts[e].lhs, kBottomId), {rule, {e, id}, {}});
        }
      }
    });
  }

  // -- envelope ---------------------------------------------------------------

  void envelope_round() {
    // CR1, CR3 share the D ⊑ X ∈ T lookup; CR1 first.
    for (Rule rule : {Rule::ECR1, Rule::ECR2, Rule::ECR3}) {
      for_delta([&](FactId id, const Fact& f) {
        if (!is_sub(f) || !atomic(f.lhs) || !atomic(f.rhs)) return;
        if (rule == Rule::ECR2) {
          auto it = conj_ax_by_op_.find(f.rhs);
          if (it == conj_ax_by_op_.end()) return;
          for (const auto& ax : it->second) {
            const auto ops = node(ax.lhs).operands;
            if (ops[0] == f.rhs) {
              if (auto o = available(g_.sub(f.lhs, ops[1]), delta_end_)) {
                conclude(g_.sub(f.lhs, ax.rhs),
                         {rule, {id, *o}, {SideCondition::tbox(ax.index)}});
              }
            } else if (auto o = available(g_.sub(f.lhs, ops[0]), delta_begin_)) {
              conclude(g_.sub(f.lhs, ax.rhs), {rule, {*o, id}, {SideCondition::tbox(ax.index)}});
            }
          }
          return;
        }
        auto it = ax_by_lhs_.find(f.rhs);
        if (it == ax_by_lhs_.end()) return;
        for (const auto& ax : it->second) {
          const bool wants_ex = rule == Rule::ECR3;
          if (is_ex(ax.rhs) != wants_ex) continue;
          conclude(g_.sub(f.lhs, ax.rhs), {rule, {id}, {SideCondition::tbox(ax.index)}});
        }
      });
    }
    // CR4
    auto cr4 = [&](FactId ex_id, FactId mid_id) {
      const RoleId r = node(g_.facts[ex_id].rhs).symbol;
      auto ex = g_.concepts.find_existential(r, g_.facts[mid_id].rhs);
      if (!ex) return;
      auto it = ax_by_lhs_.find(*ex);
      if (it == ax_by_lhs_.end()) return;
      for (const auto& ax : it->second) {
        conclude(g_.sub(g_.facts[ex_id].lhs, ax.rhs),
                 {Rule::ECR4, {ex_id, mid_id}, {SideCondition::tbox(ax.index)}});
      }
    };
    for_delta([&](FactId id, const Fact& f) {
      if (!is_sub(f) || !atomic(f.lhs)) return;
      if (is_ex(f.rhs)) {
        for (auto g : below(sub_by_lhs_, node(f.rhs).operands.front(), delta_end_)) {
          if (atomic(g_.facts[g].rhs)) cr4(id, g);
        }
      } else {
        for (auto e : below(ex_rhs_by_filler_, f.lhs, delta_begin_)) cr4(e, id);
      }
    });
    // CR5
    bottom_round(Rule::ECR5);
    // CR10
    for_delta([&](FactId id, const Fact& f) {
      if (!is_sub(f) || !atomic(f.lhs) || !is_ex(f.rhs)) return;
      const auto n = node(f.rhs);
      auto it = ri_by_sub_.find(n.symbol);
      if (it == ri_by_sub_.end()) return;
      for (const auto& ri : it->second) {
        const ConceptId target = g_.concepts.intern_existential(ri.sup, n.operands.front());
        conclude(g_.sub(f.lhs, target), {Rule::ECR10, {id}, {SideCondition::tbox(ri.index)}});
      }
    });
    // CR11
    if (chain_by_pair_.empty()) return;
    auto cr11 = [&](FactId first, FactId second) {
      const auto n1 = node(g_.facts[first].rhs);
      const auto n2 = node(g_.facts[second].rhs);
      auto it = chain_by_pair_.find({n1.symbol, n2.symbol});
      if (it == chain_by_pair_.end()) return;
      for (const auto& ch : it->second) {
        const ConceptId target = g_.concepts.intern_existential(ch.sup, n2.operands.front());
        conclude(g_.sub(g_.facts[first].lhs, target),
                 {Rule::ECR11, {first, second}, {SideCondition::tbox(ch.index)}});
      }
    };
    for_delta([&](FactId id, const Fact& f) {
      if (!is_sub(f) || !atomic(f.lhs) || !is_ex(f.rhs)) return;
      for (auto g : below(sub_by_lhs_, node(f.rhs).operands.front(), delta_end_)) {
        if (is_ex(g_.facts[g].rhs)) cr11(id, g);
      }
      for (auto e : below(ex_rhs_by_filler_, f.lhs, delta_begin_)) cr11(e, id);
    });
  }

  const NormalizedTBox& nt_;
  const SaturationOptions& options_;
  DerivationGraph g_;
  std::uint32_t round_ = 0;
  FactId delta_begin_ = 0;
  FactId delta_end_ = 0;
  std::size_t ticks_ = 0;

  std::unordered_map<ConceptId, std::vector<AxiomRef>> ax_by_lhs_;
  std::unordered_map<ConceptId, std::vector<AxiomRef>> conj_ax_by_op_;
  std::unordered_map<RoleId, std::vector<ChainRef>> ri_by_sub_;
  std::map<std::pair<RoleId, RoleId>, std::vector<ChainRef>> chain_by_pair_;
  std::unordered_map<RoleId, std::vector<RoleId>> sups_;
  std::unordered_set<std::uint64_t> hierarchy_;
  std::unordered_set<ConceptId> negative_;
  std::unordered_map<ConceptId, std::vector<ConceptId>> neg_conj_by_op_;
  std::unordered_map<ConceptId, std::vector<std::pair<RoleId, ConceptId>>> neg_ex_by_filler_;

  std::unordered_map<ConceptId, IdList> sub_by_lhs_, sub_by_rhs_;
  std::unordered_map<ConceptId, IdList> link_by_src_, link_by_dst_;
  std::unordered_map<ConceptId, IdList> ex_rhs_by_filler_, ex_lhs_by_filler_;
  std::unordered_map<ConceptId, IdList> conj_lhs_by_op_;
};

}  // namespace

DerivationGraph saturate(const NormalizedTBox& ntbox, const SaturationOptions& options) {
  return Saturator(ntbox, options).run();
}

std::set<Subsumption> classify(const NormalizedTBox& ntbox, const DerivationGraph& graph) {
  std::set<Subsumption> out;
  const auto& names = ntbox.signature.concepts;
  std::map<ConceptId, std::string> main;
  for (const auto& n : names) {
    if (auto id = graph.concepts.find(Concept::named(n))) main.emplace(*id, n);
  }
  for (const auto& [id, a] : main) {
    if (graph.find(graph.sub(id, kBottomId))) {
      for (const auto& b : names) {
        if (b != a) out.emplace(a, b);
      }
    }
  }
  for (const auto& f : graph.facts) {
    if (f.kind != FactKind::SubClass || f.lhs == f.rhs) continue;
    auto a = main.find(f.lhs);
    auto b = main.find(f.rhs);
    if (a != main.end() && b != main.end()) out.emplace(a->second, b->second);
  }
  return out;
}

std::set<Subsumption> classify(const TBox& tbox, Calculus calculus,
                               const SaturationOptions& options) {
  const auto nt = normalize(tbox, calculus);
  const auto g = saturate(nt, options);
  return classify(nt, g);
}

void require_supported_goal(const Axiom& goal, const Signature& sig) {
  if (goal.kind != AxiomKind::ConceptInclusion && goal.kind != AxiomKind::Equivalence) {
    throw Error(ErrorKind::UnsupportedGoal, "goal must be a concept inclusion or equivalence: " +
                                                to_string(goal));
  }
  for (const Concept* c : {&goal.lhs, &goal.rhs}) {
    if (!c->is_atomic()) {
      throw Error(ErrorKind::UnsupportedGoal,
                  "goal sides must be concept names, owl:Thing or owl:Nothing: " +
                      to_string(goal));
    }
    if (c->kind() == ConceptKind::Named && !sig.concepts.count(c->name())) {
      throw Error(ErrorKind::UnknownName, "goal mentions unknown concept '" + c->name() + "'");
    }
  }
}

namespace {

// Entailment of an atomic inclusion; `fact` is set when the saturation holds it.
bool atomic_entailed(const DerivationGraph& g, const Concept& lhs, const Concept& rhs,
                     std::optional<FactId>& fact) {
  auto l = g.concepts.find(lhs);
  auto r = g.concepts.find(rhs);
  if (l && r) fact = g.find(g.sub(*l, *r));
  if (lhs == rhs || rhs.kind() == ConceptKind::Top || lhs.kind() == ConceptKind::Bottom) {
    return true;
  }
  if (fact) return true;
  return l && g.find(g.sub(*l, kBottomId)).has_value();
}

}  // namespace

Entailment check_goal(const NormalizedTBox& ntbox, DerivationGraph& graph, const Axiom& goal) {
  require_supported_goal(goal, ntbox.signature);
  Entailment result;
  if (goal.kind == AxiomKind::ConceptInclusion) {
    result.entailed = atomic_entailed(graph, goal.lhs, goal.rhs, result.goal);
    return result;
  }
  std::optional<FactId> there, back;
  const bool fwd = atomic_entailed(graph, goal.lhs, goal.rhs, there);
  const bool bwd = atomic_entailed(graph, goal.rhs, goal.lhs, back);
  result.entailed = fwd && bwd;
  if (result.entailed && there && back) {
    const Fact eq{FactKind::Equivalence, *graph.concepts.find(goal.lhs), 0,
                  *graph.concepts.find(goal.rhs)};
    const auto round = std::max(graph.rounds[*there], graph.rounds[*back]) + 1;
    const FactId id = graph.insert(eq, round).first;
    graph.record(id, {Rule::Equiv, {*there, *back}, {}});
    result.goal = id;
  }
  return result;
}

EntailmentRun entails(const TBox& tbox, Calculus calculus, const Axiom& goal,
                      const SaturationOptions& options) {
  require_supported_goal(goal, tbox.signature());
  EntailmentRun run{normalize(tbox, calculus), {}, {}};
  SaturationOptions opts = options;
  if (calculus == Calculus::Elk) {
    for (const Concept* c : {&goal.lhs, &goal.rhs}) {
      if (c->kind() == ConceptKind::Top) opts.extra_init.push_back(*c);
    }
  }
  run.graph = saturate(run.ntbox, opts);
  run.result = check_goal(run.ntbox, run.graph, goal);
  return run;
}

}  // namespace elproof
