#include "elproof/normalize.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>

#include "elproof/errors.hpp"

namespace elproof {

const char* to_string(Calculus c) {
  switch (c) {
    case Calculus::Elk: return "elk";
    case Calculus::Textbook: return "textbook";
    case Calculus::Envelope: return "envelope";
  }
  return "?";
}

Calculus parse_calculus(const std::string& name) {
  if (name == "elk") return Calculus::Elk;
  if (name == "textbook") return Calculus::Textbook;
  if (name == "envelope") return Calculus::Envelope;
  throw Error(ErrorKind::Format, "unknown calculus '" + name + "'");
}

std::pair<std::set<Concept>, std::set<std::string>> negative_occurrences(const TBox& tbox) {
  std::vector<Concept> subs;
  for (const auto& a : tbox.axioms()) {
    switch (a.kind) {
      case AxiomKind::ConceptInclusion: collect_subconcepts(a.lhs.canonical(), subs); break;
      case AxiomKind::Equivalence:
        collect_subconcepts(a.lhs.canonical(), subs);
        collect_subconcepts(a.rhs.canonical(), subs);
        break;
      case AxiomKind::Domain:
        collect_subconcepts(Concept::existential(a.role, Concept::top()), subs);
        break;
      default: break;
    }
  }
  std::set<Concept> concepts(subs.begin(), subs.end());
  std::set<std::string> roles;
  for (const auto& c : concepts) {
    if (c.kind() == ConceptKind::Existential) roles.insert(c.role());
  }
  return {std::move(concepts), std::move(roles)};
}

std::set<RolePair> role_hierarchy_closure(const std::vector<Axiom>& axioms,
                                          const std::set<std::string>& negative_roles) {
  std::map<std::string, std::vector<std::string>> direct_subs;  // s -> {r | r ⊑ s}
  for (const auto& a : axioms) {
    if (a.kind == AxiomKind::RoleInclusion) direct_subs[a.role].push_back(a.roles.front());
  }
  std::set<RolePair> closure;
  std::deque<RolePair> work;
  for (const auto& t : negative_roles) {
    if (closure.emplace(t, t).second) work.emplace_back(t, t);
  }
  // Each pair (s,t) pushes (r,t) for every direct sub-role r of s.
  while (!work.empty()) {
    const auto [s, t] = work.front();
    work.pop_front();
    auto it = direct_subs.find(s);
    if (it == direct_subs.end()) continue;
    for (const auto& r : it->second) {
      if (closure.emplace(r, t).second) work.emplace_back(r, t);
    }
  }
  return closure;
}

std::set<RolePair> role_hierarchy_closure(const TBox& tbox,
                                          const std::set<std::string>& negative_roles) {
  return role_hierarchy_closure(tbox.axioms(), negative_roles);
}

std::vector<Axiom> desugar(const TBox& tbox) {
  std::set<Axiom> seen;
  std::vector<Axiom> out;
  auto push = [&](Axiom a) {
    a = a.canonical();
    if (seen.insert(a).second) out.push_back(std::move(a));
  };
  for (const auto& a : tbox.axioms()) {
    switch (a.kind) {
      case AxiomKind::Equivalence:
        push(Axiom::subclass(a.lhs, a.rhs));
        push(Axiom::subclass(a.rhs, a.lhs));
        break;
      case AxiomKind::Domain:
        push(Axiom::subclass(Concept::existential(a.role, Concept::top()), a.rhs));
        break;
      case AxiomKind::Transitivity: push(Axiom::chain({a.role, a.role}, a.role)); break;
      default: push(a); break;
    }
  }
  std::vector<std::pair<std::string, Axiom>> keyed;
  for (auto& a : out) keyed.emplace_back(to_string(a), std::move(a));
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  out.clear();
  for (auto& [key, a] : keyed) out.push_back(std::move(a));
  return out;
}

namespace {

enum class Polarity { Positive, Negative };

class Normalizer {
 public:
  Normalizer(Calculus calculus, NormalizedTBox& out) : calculus_(calculus), out_(out) {}

  void axiom(const Axiom& a) {
    switch (a.kind) {
      case AxiomKind::ConceptInclusion: inclusion(a.lhs, a.rhs); break;
      case AxiomKind::RoleInclusion: emit(a); break;
      case AxiomKind::RoleChainInclusion: {
        std::vector<std::string> prefix(a.roles.begin(), a.roles.end() - 1);
        emit(Axiom::chain({atom_role(prefix), a.roles.back()}, a.role));
        break;
      }
      default: break;  // desugared away
    }
  }

  void emit(Axiom a) {
    if (emitted_.insert(a).second) out_.axioms.push_back(std::move(a));
  }

 private:
  bool structural() const { return calculus_ != Calculus::Elk; }

  void inclusion(const Concept& lhs, const Concept& rhs) {
    const Concept l = lhs.is_atomic() ? lhs : flat(lhs, Polarity::Negative);
    Concept r;
    if (rhs.is_atomic()) {
      r = rhs;
    } else if (!structural()) {
      r = flat(rhs, Polarity::Positive);
    } else if (lhs.is_atomic() && rhs.kind() == ConceptKind::Existential) {
      r = Concept::existential(rhs.role(), atomize(rhs.filler(), Polarity::Positive));
    } else {
      r = atomize(rhs, Polarity::Positive);
    }
    emit(Axiom::subclass(l, r));
  }

  // One constructor over atomic operands; conjunctions become binary.
  Concept flat(const Concept& c, Polarity p) {
    if (c.kind() == ConceptKind::Existential) {
      return Concept::existential(c.role(), atomize(c.filler(), p));
    }
    const auto& ops = c.operands();
    if (ops.size() == 2) return Concept::conjunction({atomize(ops[0], p), atomize(ops[1], p)});
    std::vector<Concept> prefix(ops.begin(), ops.end() - 1);
    Concept head = atomize(Concept::conjunction(std::move(prefix)), p);
    return Concept::conjunction({std::move(head), atomize(ops.back(), p)});
  }

  Concept atomize(const Concept& c, Polarity p) {
    if (c.is_atomic()) return c;
    auto it = concept_alias_.find(c);
    if (it == concept_alias_.end()) {
      it = concept_alias_.emplace(c, fresh("_C", concept_counter_, out_.signature.concepts,
                                            out_.alias_concepts))
               .first;
      out_.alias_concepts[it->second] = Concept::top();  // reserve
    }
    const std::string name = it->second;
    const Concept alias = Concept::named(name);
    if (!defined_.insert({name, p}).second) return alias;

    if (p == Polarity::Negative) {
      emit(Axiom::subclass(flat(c, p), alias));
    } else if (!structural() || c.kind() == ConceptKind::Existential) {
      emit(Axiom::subclass(alias, flat(c, p)));
    } else {
      for (const auto& op : c.operands()) emit(Axiom::subclass(alias, atomize(op, p)));
    }
    out_.alias_concepts[name] = image(c, p);
    return alias;
  }

  Concept image(const Concept& c, Polarity p) {
    if (c.kind() == ConceptKind::Existential) {
      return Concept::existential(c.role(), atomize(c.filler(), p));
    }
    std::vector<Concept> ops;
    for (const auto& op : c.operands()) ops.push_back(atomize(op, p));
    return Concept::conjunction(std::move(ops));
  }

  std::string atom_role(const std::vector<std::string>& seq) {
    if (seq.size() == 1) return seq.front();
    auto it = role_alias_.find(seq);
    if (it != role_alias_.end()) return it->second;
    const std::string name =
        fresh("_R", role_counter_, out_.signature.roles, out_.alias_roles);
    role_alias_.emplace(seq, name);
    out_.alias_roles[name] = seq;
    std::vector<std::string> prefix(seq.begin(), seq.end() - 1);
    emit(Axiom::chain({atom_role(prefix), seq.back()}, name));
    return name;
  }

  template <typename Map>
  static std::string fresh(const char* prefix, int& counter, const std::set<std::string>& taken,
                           const Map& aliases) {
    for (;;) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%s%04d", prefix, ++counter);
      std::string name(buf);
      if (!taken.count(name) && !aliases.count(name)) return name;
    }
  }

  Calculus calculus_;
  NormalizedTBox& out_;
  std::set<Axiom> emitted_;
  std::map<Concept, std::string> concept_alias_;
  std::set<std::pair<std::string, Polarity>> defined_;
  std::map<std::vector<std::string>, std::string> role_alias_;
  int concept_counter_ = 0;
  int role_counter_ = 0;
};

}  // namespace

NormalizedTBox normalize(const TBox& tbox, Calculus calculus) {
  NormalizedTBox out;
  out.calculus = calculus;
  out.signature = tbox.signature();
  const auto sugar_free = desugar(tbox);
  out.source_axioms.insert(sugar_free.begin(), sugar_free.end());

  Normalizer norm(calculus, out);
  for (const auto& a : sugar_free) norm.axiom(a);
  for (const auto& name : out.signature.concepts) {
    norm.emit(Axiom::subclass(Concept::bottom(), Concept::named(name)));
  }

  std::vector<Concept> subs;
  for (const auto& a : out.axioms) {
    if (a.kind == AxiomKind::ConceptInclusion) collect_subconcepts(a.lhs, subs);
    if (a.kind == AxiomKind::RoleChainInclusion) {
      if (calculus == Calculus::Textbook) {
        throw Error(ErrorKind::UnsupportedFeature,
                    "the textbook calculus supports only simple role inclusions, got " +
                        to_string(a));
      }
      out.negative_roles.insert(a.roles.begin(), a.roles.end());
    }
  }
  out.negative_concepts.insert(subs.begin(), subs.end());
  for (const auto& c : out.negative_concepts) {
    if (c.kind() == ConceptKind::Existential) out.negative_roles.insert(c.role());
  }
  out.role_hierarchy = role_hierarchy_closure(out.axioms, out.negative_roles);
  return out;
}

namespace {

void expand_role(const std::string& role, const NormalizedTBox& nt,
                 std::vector<std::string>& out) {
  if (auto it = nt.alias_roles.find(role); it != nt.alias_roles.end()) {
    out.insert(out.end(), it->second.begin(), it->second.end());
    return;
  }
  if (!nt.signature.roles.count(role)) {
    throw Error(ErrorKind::UnknownName, "unknown role name '" + role + "'");
  }
  out.push_back(role);
}

Concept expand(const Concept& c, const NormalizedTBox& nt) {
  switch (c.kind()) {
    case ConceptKind::Named: {
      if (auto it = nt.alias_concepts.find(c.name()); it != nt.alias_concepts.end()) {
        return expand(it->second, nt);
      }
      if (!nt.signature.concepts.count(c.name())) {
        throw Error(ErrorKind::UnknownName, "unknown concept name '" + c.name() + "'");
      }
      return c;
    }
    case ConceptKind::Existential: {
      std::vector<std::string> path;
      expand_role(c.role(), nt, path);
      Concept result = expand(c.filler(), nt);
      for (auto it = path.rbegin(); it != path.rend(); ++it) {
        result = Concept::existential(*it, std::move(result));
      }
      return result;
    }
    case ConceptKind::Conjunction: {
      std::vector<Concept> ops;
      for (const auto& op : c.operands()) ops.push_back(expand(op, nt));
      return Concept::conjunction(std::move(ops));
    }
    default: return c;
  }
}

}  // namespace

Concept denormalize_concept(const Concept& c, const NormalizedTBox& ntbox) {
  return expand(c, ntbox).canonical();
}

Denormalized denormalize_axiom(const Axiom& axiom, const NormalizedTBox& ntbox) {
  switch (axiom.kind) {
    case AxiomKind::ConceptInclusion:
      return Axiom::subclass(denormalize_concept(axiom.lhs, ntbox),
                             denormalize_concept(axiom.rhs, ntbox));
    case AxiomKind::Equivalence:
      return Axiom::equivalence(denormalize_concept(axiom.lhs, ntbox),
                                denormalize_concept(axiom.rhs, ntbox));
    case AxiomKind::RoleInclusion:
    case AxiomKind::RoleChainInclusion: {
      std::vector<std::string> chain;
      for (const auto& r : axiom.roles) expand_role(r, ntbox, chain);
      if (ntbox.is_alias_role(axiom.role)) return std::nullopt;
      if (!ntbox.signature.roles.count(axiom.role)) {
        throw Error(ErrorKind::UnknownName, "unknown role name '" + axiom.role + "'");
      }
      if (chain.size() == 1) return Axiom::subrole(chain.front(), axiom.role);
      return Axiom::chain(std::move(chain), axiom.role);
    }
    case AxiomKind::Transitivity:
    case AxiomKind::Domain: return axiom;
  }
  return axiom;
}

}  // namespace elproof
