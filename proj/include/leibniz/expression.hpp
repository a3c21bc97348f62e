#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "leibniz/poly.hpp"
#include "leibniz/scalar.hpp"

namespace leibniz {

using ParamMap = std::map<std::string, Scalar>;

/// Arithmetic expression over family parameters:
///   expr := term (("+" | "-") term)* ; term := unary (("*" | "/") unary)*
///   unary := "-" unary | atom ; atom := integer | "i" | name | "(" expr ")"
/// Division is only allowed by constants when evaluated as a polynomial.
class Expression {
 public:
  struct Node;

  static Expression parse(const std::string& text);

  const std::string& text() const { return text_; }
  /// Throws ConstraintViolation when a parameter is missing, SingularMatrix on
  /// division by zero.
  Scalar evaluate(const ParamMap& params) const;
  Poly evaluate(const std::map<std::string, Poly>& params) const;
  std::vector<std::string> names() const;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

/// Conjunction of "ne(lhs, rhs)" atoms, written as "ne(...)" or "and(ne(...), ...)".
/// The empty string is the trivially true constraint.
class Constraint {
 public:
  struct Atom {
    Expression lhs;
    Expression rhs;
    std::string text;
  };

  static Constraint parse(const std::string& text);

  const std::string& text() const { return text_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  /// Text of the first violated atom, if any.
  std::optional<std::string> first_violation(const ParamMap& params) const;

 private:
  std::string text_;
  std::vector<Atom> atoms_;
};

}  // namespace leibniz
