#include "leibniz/expression.hpp"

#include <cctype>
#include <set>

#include "leibniz/errors.hpp"

namespace leibniz {

struct Expression::Node {
  enum class Kind { Constant, Param, Add, Sub, Mul, Div, Neg } kind;
  Scalar value;
  std::string name;
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  NodePtr parse_all() {
    NodePtr n = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return n;
  }

  NodePtr expr() {
    NodePtr n = term();
    while (true) {
      skip();
      if (peek('+')) {
        ++pos_;
        n = binary(Kind::Add, n, term());
      } else if (peek('-')) {
        ++pos_;
        n = binary(Kind::Sub, n, term());
      } else {
        return n;
      }
    }
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("expression '" + s_ + "': " + why + " at offset " + std::to_string(pos_));
  }

 private:
  static NodePtr binary(Kind k, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Expression::Node>();
    n->kind = k;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
  }

  NodePtr term() {
    NodePtr n = unary();
    while (true) {
      skip();
      if (peek('*')) {
        ++pos_;
        n = binary(Kind::Mul, n, unary());
      } else if (peek('/')) {
        ++pos_;
        n = binary(Kind::Div, n, unary());
      } else {
        return n;
      }
    }
  }

  NodePtr unary() {
    skip();
    if (peek('-')) {
      ++pos_;
      auto n = std::make_shared<Expression::Node>();
      n->kind = Kind::Neg;
      n->lhs = unary();
      return n;
    }
    return atom();
  }

  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr n = expr();
      skip();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return n;
    }
    auto n = std::make_shared<Expression::Node>();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      n->kind = Kind::Constant;
      n->value = Scalar(mpq_class(mpz_class(s_.substr(start, pos_ - start))));
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (name == "i") {
        n->kind = Kind::Constant;
        n->value = Scalar::i();
      } else {
        n->kind = Kind::Param;
        n->name = std::move(name);
      }
      return n;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }

  const std::string& s_;
  std::size_t pos_ = 0;
};

Scalar eval_scalar(const Expression::Node& n, const ParamMap& params) {
  switch (n.kind) {
    case Kind::Constant: return n.value;
    case Kind::Param: {
      auto it = params.find(n.name);
      if (it == params.end()) throw ConstraintViolation("missing parameter '" + n.name + "'");
      return it->second;
    }
    case Kind::Add: return eval_scalar(*n.lhs, params) + eval_scalar(*n.rhs, params);
    case Kind::Sub: return eval_scalar(*n.lhs, params) - eval_scalar(*n.rhs, params);
    case Kind::Mul: return eval_scalar(*n.lhs, params) * eval_scalar(*n.rhs, params);
    case Kind::Div: return eval_scalar(*n.lhs, params) / eval_scalar(*n.rhs, params);
    case Kind::Neg: return -eval_scalar(*n.lhs, params);
  }
  return {};
}

Poly eval_poly(const Expression::Node& n, const std::map<std::string, Poly>& params) {
  switch (n.kind) {
    case Kind::Constant: return Poly(n.value);
    case Kind::Param: {
      auto it = params.find(n.name);
      if (it == params.end()) throw ConstraintViolation("missing parameter '" + n.name + "'");
      return it->second;
    }
    case Kind::Add: return eval_poly(*n.lhs, params) + eval_poly(*n.rhs, params);
    case Kind::Sub: return eval_poly(*n.lhs, params) - eval_poly(*n.rhs, params);
    case Kind::Mul: return eval_poly(*n.lhs, params) * eval_poly(*n.rhs, params);
    case Kind::Div: {
      const Poly d = eval_poly(*n.rhs, params);
      if (!d.is_constant()) throw Error("division by a parameter in a polynomial context");
      return eval_poly(*n.lhs, params) * d.constant().inverse();
    }
    case Kind::Neg: return -eval_poly(*n.lhs, params);
  }
  return {};
}

void collect(const Expression::Node& n, std::set<std::string>& out) {
  if (n.kind == Kind::Param) out.insert(n.name);
  if (n.lhs) collect(*n.lhs, out);
  if (n.rhs) collect(*n.rhs, out);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

// Splits "a, b, c" at top-level commas.
std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

// "name(args)" -> (name, args); nullopt when the shape does not match.
std::optional<std::pair<std::string, std::string>> call_shape(const std::string& s) {
  const auto open = s.find('(');
  if (open == std::string::npos || s.empty() || s.back() != ')') return std::nullopt;
  return std::make_pair(trim(s.substr(0, open)), s.substr(open + 1, s.size() - open - 2));
}

void parse_predicate(const std::string& text, std::vector<Constraint::Atom>& atoms) {
  const std::string t = trim(text);
  auto shape = call_shape(t);
  if (!shape) throw ParseError("constraint '" + t + "': expected ne(...) or and(...)");
  const auto args = split_args(shape->second);
  if (shape->first == "and") {
    for (const auto& a : args) parse_predicate(a, atoms);
  } else if (shape->first == "ne") {
    if (args.size() != 2) throw ParseError("constraint '" + t + "': ne takes two arguments");
    atoms.push_back({Expression::parse(args[0]), Expression::parse(args[1]), t});
  } else {
    throw ParseError("constraint '" + t + "': unknown predicate '" + shape->first + "'");
  }
}

}  // namespace

Expression Expression::parse(const std::string& text) {
  Expression e;
  e.text_ = text;
  Parser p(e.text_);
  e.root_ = p.parse_all();
  return e;
}

Scalar Expression::evaluate(const ParamMap& params) const { return eval_scalar(*root_, params); }

Poly Expression::evaluate(const std::map<std::string, Poly>& params) const { return eval_poly(*root_, params); }

std::vector<std::string> Expression::names() const {
  std::set<std::string> s;
  collect(*root_, s);
  return {s.begin(), s.end()};
}

Constraint Constraint::parse(const std::string& text) {
  Constraint c;
  c.text_ = text;
  if (!trim(text).empty()) parse_predicate(text, c.atoms_);
  return c;
}

std::optional<std::string> Constraint::first_violation(const ParamMap& params) const {
  for (const auto& a : atoms_)
    if (a.lhs.evaluate(params) == a.rhs.evaluate(params)) return a.text;
  return std::nullopt;
}

}  // namespace leibniz
