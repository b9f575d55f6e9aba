// Copyright 2026 The frobtrace Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License").
// You may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing,
// software distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions
// and limitations under the License.

#pragma once

// Small arithmetic expressions over F_q used by chart records and fiber
// recipes, e.g. "(r^2*s*t)^(p-1)" or "1+c*lambda".
//
// Grammar:
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' iatom)?
//   atom   := integer | name | '(' expr ')'
// Exponents are integer expressions (+, -, * over integers and names such as
// p or j), written either as a bare integer/name or in parentheses.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "frobtrace/checked.hpp"
#include "frobtrace/gf.hpp"

namespace frobtrace {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using IntEnv = std::map<std::string, Int, std::less<>>;
using FieldEnv = std::map<std::string, FqElement, std::less<>>;

class IntExpr {
 public:
  IntExpr() = default;
  static IntExpr parse(std::string_view text);

  struct Node;
  IntExpr(std::shared_ptr<const Node> root, std::string text) : root_(std::move(root)), text_(std::move(text)) {}

  /// Throws std::out_of_range naming an unbound variable.
  Int eval(const IntEnv& env) const;
  const std::string& text() const { return text_; }

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

class Expr {
 public:
  Expr() = default;
  static Expr parse(std::string_view text);

  /// nullopt when a zero divisor or a negative power of zero is hit.
  /// Throws std::out_of_range naming an unbound variable.
  std::optional<FqElement> eval(const FieldCtx& ctx, const FieldEnv& env, const IntEnv& ints) const;

  /// Field variables referenced (exponent variables excluded).
  std::set<std::string> variables() const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

/// Replaces every "{int-expr}" in a template with its value, e.g.
/// "R{j-1}" with j = 2 gives "R1".
std::string expand_template(std::string_view tmpl, const IntEnv& env);

}  // namespace frobtrace
