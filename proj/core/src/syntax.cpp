#include "elproof/syntax.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

#include "elproof/errors.hpp"

namespace elproof {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "syntax error";
    case ErrorKind::Arity: return "arity error";
    case ErrorKind::UnknownKeyword: return "unknown keyword";
    case ErrorKind::UnknownName: return "unknown name";
    case ErrorKind::UnsupportedFeature: return "unsupported feature";
    case ErrorKind::UnsupportedGoal: return "unsupported goal";
    case ErrorKind::ResourceLimit: return "resource limit";
    case ErrorKind::Timeout: return "timeout";
    case ErrorKind::GoalNotDerivable: return "goal not derivable";
    case ErrorKind::MissingRolePair: return "missing role pair";
    case ErrorKind::SizeLimit: return "size limit";
    case ErrorKind::InvalidProof: return "invalid proof";
    case ErrorKind::Io: return "io error";
    case ErrorKind::Format: return "format error";
  }
  return "error";
}

ParseError::ParseError(ErrorKind kind, std::size_t line, std::size_t column,
                       const std::string& message)
    : Error(kind, std::string(to_string(kind)) + " at line " + std::to_string(line) +
                      ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

Concept Concept::top() { return Concept{}; }

Concept Concept::bottom() {
  Concept c;
  c.kind_ = ConceptKind::Bottom;
  return c;
}

Concept Concept::named(std::string name) {
  Concept c;
  c.kind_ = ConceptKind::Named;
  c.name_ = std::move(name);
  return c;
}

Concept Concept::conjunction(std::vector<Concept> operands) {
  assert(operands.size() >= 2);
  Concept c;
  c.kind_ = ConceptKind::Conjunction;
  c.operands_ = std::move(operands);
  return c;
}

Concept Concept::existential(std::string role, Concept filler) {
  Concept c;
  c.kind_ = ConceptKind::Existential;
  c.name_ = std::move(role);
  c.operands_.push_back(std::move(filler));
  return c;
}

bool operator==(const Concept& a, const Concept& b) {
  return a.kind_ == b.kind_ && a.name_ == b.name_ && a.operands_ == b.operands_;
}

std::strong_ordering operator<=>(const Concept& a, const Concept& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (auto c = a.name_ <=> b.name_; c != 0) return c;
  const auto n = std::min(a.operands_.size(), b.operands_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.operands_[i] <=> b.operands_[i]; c != 0) return c;
  }
  return a.operands_.size() <=> b.operands_.size();
}

namespace {

void flatten_into(const Concept& c, std::vector<Concept>& out) {
  if (c.kind() == ConceptKind::Conjunction) {
    for (const auto& op : c.operands()) flatten_into(op, out);
  } else {
    out.push_back(c);
  }
}

void render(const Concept& c, std::string& out) {
  switch (c.kind()) {
    case ConceptKind::Top: out += "owl:Thing"; break;
    case ConceptKind::Bottom: out += "owl:Nothing"; break;
    case ConceptKind::Named: out += c.name(); break;
    case ConceptKind::Conjunction:
      out += "ObjectIntersectionOf(";
      for (std::size_t i = 0; i < c.operands().size(); ++i) {
        if (i) out += ' ';
        render(c.operands()[i], out);
      }
      out += ')';
      break;
    case ConceptKind::Existential:
      out += "ObjectSomeValuesFrom(";
      out += c.role();
      out += ' ';
      render(c.filler(), out);
      out += ')';
      break;
  }
}

}  // namespace

Concept Concept::canonical() const {
  switch (kind_) {
    case ConceptKind::Existential: return existential(name_, filler().canonical());
    case ConceptKind::Conjunction: {
      std::vector<Concept> flat;
      for (const auto& op : operands_) flatten_into(op.canonical(), flat);
      std::vector<std::pair<std::string, Concept>> keyed;
      keyed.reserve(flat.size());
      for (auto& op : flat) keyed.emplace_back(to_string(op), std::move(op));
      std::sort(keyed.begin(), keyed.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      keyed.erase(std::unique(keyed.begin(), keyed.end(),
                              [](const auto& x, const auto& y) { return x.first == y.first; }),
                  keyed.end());
      if (keyed.size() == 1) return keyed.front().second;
      std::vector<Concept> ops;
      for (auto& [key, op] : keyed) ops.push_back(std::move(op));
      return conjunction(std::move(ops));
    }
    default: return *this;
  }
}

std::string to_string(const Concept& c) {
  std::string out;
  render(c, out);
  return out;
}

int nesting_depth(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::Existential: return 1 + nesting_depth(c.filler());
    case ConceptKind::Conjunction: {
      int best = 0;
      for (const auto& op : c.operands()) best = std::max(best, nesting_depth(op));
      return 1 + best;
    }
    default: return 0;
  }
}

void collect_subconcepts(const Concept& c, std::vector<Concept>& out) {
  out.push_back(c);
  for (const auto& op : c.operands()) collect_subconcepts(op, out);
}

std::vector<Concept> conjuncts(const Concept& c) {
  if (c.kind() == ConceptKind::Conjunction) return c.operands();
  return {c};
}

Axiom Axiom::subclass(Concept lhs, Concept rhs) {
  Axiom a;
  a.kind = AxiomKind::ConceptInclusion;
  a.lhs = std::move(lhs);
  a.rhs = std::move(rhs);
  return a;
}

Axiom Axiom::equivalence(Concept x, Concept y) {
  Axiom a;
  a.kind = AxiomKind::Equivalence;
  a.lhs = std::move(x);
  a.rhs = std::move(y);
  return a;
}

Axiom Axiom::subrole(std::string sub, std::string sup) {
  Axiom a;
  a.kind = AxiomKind::RoleInclusion;
  a.roles = {std::move(sub)};
  a.role = std::move(sup);
  return a;
}

Axiom Axiom::chain(std::vector<std::string> chain, std::string sup) {
  assert(chain.size() >= 2);
  Axiom a;
  a.kind = AxiomKind::RoleChainInclusion;
  a.roles = std::move(chain);
  a.role = std::move(sup);
  return a;
}

Axiom Axiom::transitive(std::string role) {
  Axiom a;
  a.kind = AxiomKind::Transitivity;
  a.role = std::move(role);
  return a;
}

Axiom Axiom::domain(std::string role, Concept filler) {
  Axiom a;
  a.kind = AxiomKind::Domain;
  a.role = std::move(role);
  a.rhs = std::move(filler);
  return a;
}

Axiom Axiom::canonical() const {
  Axiom a = *this;
  a.lhs = lhs.canonical();
  a.rhs = rhs.canonical();
  return a;
}

bool operator==(const Axiom& a, const Axiom& b) {
  return a.kind == b.kind && a.lhs == b.lhs && a.rhs == b.rhs && a.roles == b.roles &&
         a.role == b.role;
}

std::strong_ordering operator<=>(const Axiom& a, const Axiom& b) {
  if (auto c = a.kind <=> b.kind; c != 0) return c;
  if (auto c = a.lhs <=> b.lhs; c != 0) return c;
  if (auto c = a.rhs <=> b.rhs; c != 0) return c;
  if (auto c = a.roles <=> b.roles; c != 0) return c;
  return a.role <=> b.role;
}

std::string to_string(const Axiom& a) {
  switch (a.kind) {
    case AxiomKind::ConceptInclusion:
      return "SubClassOf(" + to_string(a.lhs) + " " + to_string(a.rhs) + ")";
    case AxiomKind::Equivalence:
      return "EquivalentClasses(" + to_string(a.lhs) + " " + to_string(a.rhs) + ")";
    case AxiomKind::RoleInclusion:
      return "SubObjectPropertyOf(" + a.roles.front() + " " + a.role + ")";
    case AxiomKind::RoleChainInclusion: {
      std::string out = "SubObjectPropertyOf(ObjectPropertyChain(";
      for (std::size_t i = 0; i < a.roles.size(); ++i) {
        if (i) out += ' ';
        out += a.roles[i];
      }
      return out + ") " + a.role + ")";
    }
    case AxiomKind::Transitivity: return "TransitiveObjectProperty(" + a.role + ")";
    case AxiomKind::Domain:
      return "ObjectPropertyDomain(" + a.role + " " + to_string(a.rhs) + ")";
  }
  return {};
}

bool is_identity(const Axiom& a) {
  if (a.kind == AxiomKind::ConceptInclusion) return a.lhs == a.rhs;
  if (a.kind == AxiomKind::RoleInclusion) return a.roles.front() == a.role;
  return false;
}

bool is_tautology(const Axiom& a) {
  if (a.kind == AxiomKind::RoleInclusion) return a.roles.front() == a.role;
  if (a.kind == AxiomKind::Equivalence) return a.lhs == a.rhs;
  if (a.kind != AxiomKind::ConceptInclusion) return false;
  if (a.rhs.kind() == ConceptKind::Top || a.lhs.kind() == ConceptKind::Bottom) return true;
  const auto have = conjuncts(a.lhs);
  for (const auto& c : conjuncts(a.rhs)) {
    if (c.kind() == ConceptKind::Top) continue;
    if (std::find(have.begin(), have.end(), c) == have.end()) return false;
  }
  return true;
}

TBox::TBox(std::vector<Axiom> axioms) {
  for (auto& a : axioms) add(std::move(a));
}

bool TBox::add(Axiom axiom) {
  if (!members_.insert(axiom).second) return false;
  axioms_.push_back(std::move(axiom));
  return true;
}

void collect_signature(const Concept& c, Signature& sig) {
  switch (c.kind()) {
    case ConceptKind::Named: sig.concepts.insert(c.name()); break;
    case ConceptKind::Existential:
      sig.roles.insert(c.role());
      collect_signature(c.filler(), sig);
      break;
    case ConceptKind::Conjunction:
      for (const auto& op : c.operands()) collect_signature(op, sig);
      break;
    default: break;
  }
}

void collect_signature(const Axiom& a, Signature& sig) {
  switch (a.kind) {
    case AxiomKind::ConceptInclusion:
    case AxiomKind::Equivalence:
      collect_signature(a.lhs, sig);
      collect_signature(a.rhs, sig);
      break;
    case AxiomKind::RoleInclusion:
    case AxiomKind::RoleChainInclusion:
      sig.roles.insert(a.roles.begin(), a.roles.end());
      sig.roles.insert(a.role);
      break;
    case AxiomKind::Transitivity: sig.roles.insert(a.role); break;
    case AxiomKind::Domain:
      sig.roles.insert(a.role);
      collect_signature(a.rhs, sig);
      break;
  }
}

Signature TBox::signature() const {
  Signature sig;
  for (const auto& a : axioms_) collect_signature(a, sig);
  return sig;
}

std::string serialize(const TBox& tbox) {
  std::string out;
  for (const auto& a : tbox.axioms()) {
    out += to_string(a);
    out += '\n';
  }
  return out;
}

}  // namespace elproof
