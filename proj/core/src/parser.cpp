#include "elproof/parser.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "elproof/errors.hpp"

namespace elproof {
namespace {

bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == ':' ||
         c == '-';
}

enum class TokenKind { Name, Open, Close, End };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t column;
};

class LineParser {
 public:
  LineParser(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) {
    advance();
  }

  bool at_end() const { return current_.kind == TokenKind::End; }

  Axiom axiom() {
    const Token head = expect_name("axiom keyword");
    const auto args = arguments(head);
    if (head.text == "SubClassOf") {
      require_arity(head, args, 2);
      return Axiom::subclass(concept_of(args[0]), concept_of(args[1]));
    }
    if (head.text == "EquivalentClasses") {
      require_arity(head, args, 2);
      return Axiom::equivalence(concept_of(args[0]), concept_of(args[1]));
    }
    if (head.text == "SubObjectPropertyOf") {
      require_arity(head, args, 2);
      const std::string sup = role(args[1]);
      if (args[0].is_call) {
        if (args[0].head.text != "ObjectPropertyChain") {
          throw ParseError(ErrorKind::UnknownKeyword, line_no_, args[0].head.column,
                           "'" + args[0].head.text + "' is not a role expression");
        }
        std::vector<std::string> chain;
        for (const auto& r : args[0].args) chain.push_back(role(r));
        if (chain.size() < 2) {
          throw ParseError(ErrorKind::Arity, line_no_, args[0].head.column,
                           "ObjectPropertyChain expects at least 2 roles");
        }
        return Axiom::chain(std::move(chain), sup);
      }
      return Axiom::subrole(role(args[0]), sup);
    }
    if (head.text == "TransitiveObjectProperty") {
      require_arity(head, args, 1);
      return Axiom::transitive(role(args[0]));
    }
    if (head.text == "ObjectPropertyDomain") {
      require_arity(head, args, 2);
      return Axiom::domain(role(args[0]), concept_of(args[1]));
    }
    throw ParseError(ErrorKind::UnknownKeyword, line_no_, head.column,
                     "'" + head.text + "' is not an axiom keyword");
  }

  Concept standalone_concept() { return concept_of(term()); }

  void expect_end() {
    if (!at_end()) {
      throw ParseError(ErrorKind::Syntax, line_no_, current_.column,
                       "unexpected trailing input");
    }
  }

 private:
  // Generic s-expression node; semantic checks run after arity is known.
  struct Term {
    Token head;
    bool is_call = false;
    std::vector<Term> args;
  };

  void advance() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
    const std::size_t column = pos_ + 1;
    if (pos_ >= line_.size() || line_[pos_] == '#') {
      current_ = {TokenKind::End, "", column};
      return;
    }
    const char c = line_[pos_];
    if (c == '(') {
      ++pos_;
      current_ = {TokenKind::Open, "(", column};
    } else if (c == ')') {
      ++pos_;
      current_ = {TokenKind::Close, ")", column};
    } else if (is_name_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < line_.size() && is_name_char(line_[pos_])) ++pos_;
      current_ = {TokenKind::Name, std::string(line_.substr(start, pos_ - start)), column};
    } else {
      throw ParseError(ErrorKind::Syntax, line_no_, column,
                       std::string("unexpected character '") + c + "'");
    }
  }

  Token expect_name(const char* what) {
    if (current_.kind != TokenKind::Name) {
      throw ParseError(ErrorKind::Syntax, line_no_, current_.column,
                       std::string("expected ") + what);
    }
    Token t = current_;
    advance();
    return t;
  }

  std::vector<Term> arguments(const Token& head) {
    if (current_.kind != TokenKind::Open) {
      throw ParseError(ErrorKind::Syntax, line_no_, current_.column,
                       "expected '(' after '" + head.text + "'");
    }
    advance();
    std::vector<Term> args;
    while (current_.kind != TokenKind::Close) {
      if (current_.kind == TokenKind::End) {
        throw ParseError(ErrorKind::Syntax, line_no_, current_.column, "missing ')'");
      }
      args.push_back(term());
    }
    advance();
    return args;
  }

  Term term() {
    Term t;
    t.head = expect_name("name or constructor");
    if (current_.kind == TokenKind::Open) {
      t.is_call = true;
      t.args = arguments(t.head);
    }
    return t;
  }

  void require_arity(const Token& head, const std::vector<Term>& args, std::size_t n) {
    if (args.size() != n) {
      throw ParseError(ErrorKind::Arity, line_no_, head.column,
                       head.text + " expects " + std::to_string(n) + " argument(s), got " +
                           std::to_string(args.size()));
    }
  }

  std::string role(const Term& t) {
    if (t.is_call) {
      throw ParseError(ErrorKind::Syntax, line_no_, t.head.column,
                       "expected a role name, got '" + t.head.text + "(...)'");
    }
    return t.head.text;
  }

  Concept concept_of(const Term& t) {
    if (!t.is_call) {
      if (t.head.text == "owl:Thing") return Concept::top();
      if (t.head.text == "owl:Nothing") return Concept::bottom();
      return Concept::named(t.head.text);
    }
    if (t.head.text == "ObjectIntersectionOf") {
      if (t.args.size() < 2) {
        throw ParseError(ErrorKind::Arity, line_no_, t.head.column,
                         "ObjectIntersectionOf expects at least 2 operands");
      }
      std::vector<Concept> ops;
      for (const auto& a : t.args) ops.push_back(concept_of(a));
      return Concept::conjunction(std::move(ops));
    }
    if (t.head.text == "ObjectSomeValuesFrom") {
      require_arity(t.head, t.args, 2);
      return Concept::existential(role(t.args[0]), concept_of(t.args[1]));
    }
    throw ParseError(ErrorKind::UnknownKeyword, line_no_, t.head.column,
                     "'" + t.head.text + "' is not a concept constructor");
  }

  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
  Token current_{TokenKind::End, "", 1};
};

}  // namespace

TBox parse_tbox(std::string_view text) {
  TBox tbox;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    auto line = text.substr(start, end == std::string_view::npos ? text.npos : end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    LineParser p(line, line_no);
    if (!p.at_end()) {
      tbox.add(p.axiom());
      p.expect_end();
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return tbox;
}

TBox parse_tbox(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_tbox(buf.str());
}

TBox load_tbox(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  return parse_tbox(in);
}

Axiom parse_axiom(std::string_view text) {
  const TBox t = parse_tbox(text);
  if (t.size() != 1) {
    throw ParseError(ErrorKind::Syntax, 1, 1,
                     "expected exactly one axiom, got " + std::to_string(t.size()));
  }
  return t.axioms().front();
}

Concept parse_concept(std::string_view text) {
  LineParser p(text, 1);
  Concept c = p.standalone_concept();
  p.expect_end();
  return c;
}

}  // namespace elproof
