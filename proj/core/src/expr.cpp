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

#include "frobtrace/expr.hpp"

#include <cctype>
#include <stdexcept>

namespace frobtrace {

struct IntExpr::Node {
  enum class Kind { kLit, kVar, kAdd, kSub, kMul, kNeg } kind;
  Int value = 0;
  std::string name;
  std::shared_ptr<const Node> lhs, rhs;
};

struct Expr::Node {
  enum class Kind { kLit, kVar, kAdd, kSub, kMul, kDiv, kNeg, kPow } kind;
  Int value = 0;
  std::string name;
  std::shared_ptr<const Node> lhs, rhs;
  IntExpr exponent;
};

namespace {

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip();
    return pos_ >= s_.size();
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }
  bool at_name() {
    const char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
  }
  Int integer() {
    skip();
    Int v = 0;
    if (!at_digit()) fail("expected integer");
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      v = checked_add(checked_mul(v, 10), s_[pos_++] - '0');
    return v;
  }
  std::string name() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) != 0 || s_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected name");
    return std::string(s_.substr(start, pos_ - start));
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

using INode = IntExpr::Node;
using ENode = Expr::Node;
using IPtr = std::shared_ptr<const INode>;
using EPtr = std::shared_ptr<const ENode>;

IPtr ibin(INode::Kind k, IPtr l, IPtr r) {
  auto n = std::make_shared<INode>();
  n->kind = k;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

IPtr parse_isum(Lexer& lx);

IPtr parse_iatom(Lexer& lx) {
  if (lx.accept('(')) {
    IPtr e = parse_isum(lx);
    lx.expect(')');
    return e;
  }
  if (lx.accept('-')) return ibin(INode::Kind::kNeg, parse_iatom(lx), nullptr);
  auto n = std::make_shared<INode>();
  if (lx.at_digit()) {
    n->kind = INode::Kind::kLit;
    n->value = lx.integer();
  } else if (lx.at_name()) {
    n->kind = INode::Kind::kVar;
    n->name = lx.name();
  } else {
    lx.fail("expected integer atom");
  }
  return n;
}

IPtr parse_iterm(Lexer& lx) {
  IPtr e = parse_iatom(lx);
  while (lx.accept('*')) e = ibin(INode::Kind::kMul, e, parse_iatom(lx));
  return e;
}

IPtr parse_isum(Lexer& lx) {
  IPtr e = parse_iterm(lx);
  for (;;) {
    if (lx.accept('+')) {
      e = ibin(INode::Kind::kAdd, e, parse_iterm(lx));
    } else if (lx.accept('-')) {
      e = ibin(INode::Kind::kSub, e, parse_iterm(lx));
    } else {
      return e;
    }
  }
}

Int ieval(const INode& n, const IntEnv& env) {
  switch (n.kind) {
    case INode::Kind::kLit: return n.value;
    case INode::Kind::kVar: {
      auto it = env.find(n.name);
      if (it == env.end()) throw std::out_of_range("unbound integer variable '" + n.name + "'");
      return it->second;
    }
    case INode::Kind::kAdd: return checked_add(ieval(*n.lhs, env), ieval(*n.rhs, env));
    case INode::Kind::kSub: return checked_add(ieval(*n.lhs, env), -ieval(*n.rhs, env));
    case INode::Kind::kMul: return checked_mul(ieval(*n.lhs, env), ieval(*n.rhs, env));
    case INode::Kind::kNeg: return -ieval(*n.lhs, env);
  }
  return 0;
}

EPtr ebin(ENode::Kind k, EPtr l, EPtr r) {
  auto n = std::make_shared<ENode>();
  n->kind = k;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

EPtr parse_esum(Lexer& lx);

EPtr parse_eatom(Lexer& lx) {
  if (lx.accept('(')) {
    EPtr e = parse_esum(lx);
    lx.expect(')');
    return e;
  }
  auto n = std::make_shared<ENode>();
  if (lx.at_digit()) {
    n->kind = ENode::Kind::kLit;
    n->value = lx.integer();
  } else if (lx.at_name()) {
    n->kind = ENode::Kind::kVar;
    n->name = lx.name();
  } else {
    lx.fail("expected atom");
  }
  return n;
}

std::string itext(const INode& n) {
  switch (n.kind) {
    case INode::Kind::kLit: return std::to_string(n.value);
    case INode::Kind::kVar: return n.name;
    case INode::Kind::kAdd: return "(" + itext(*n.lhs) + "+" + itext(*n.rhs) + ")";
    case INode::Kind::kSub: return "(" + itext(*n.lhs) + "-" + itext(*n.rhs) + ")";
    case INode::Kind::kMul: return itext(*n.lhs) + "*" + itext(*n.rhs);
    case INode::Kind::kNeg: return "-" + itext(*n.lhs);
  }
  return {};
}

EPtr parse_epower(Lexer& lx) {
  EPtr base = parse_eatom(lx);
  if (!lx.accept('^')) return base;
  auto n = std::make_shared<ENode>();
  n->kind = ENode::Kind::kPow;
  n->lhs = std::move(base);
  IPtr ex = parse_iatom(lx);
  n->exponent = IntExpr(ex, itext(*ex));
  return n;
}

EPtr parse_eunary(Lexer& lx) {
  if (lx.accept('-')) return ebin(ENode::Kind::kNeg, parse_eunary(lx), nullptr);
  return parse_epower(lx);
}

EPtr parse_eterm(Lexer& lx) {
  EPtr e = parse_eunary(lx);
  for (;;) {
    if (lx.accept('*')) {
      e = ebin(ENode::Kind::kMul, e, parse_eunary(lx));
    } else if (lx.accept('/')) {
      e = ebin(ENode::Kind::kDiv, e, parse_eunary(lx));
    } else {
      return e;
    }
  }
}

EPtr parse_esum(Lexer& lx) {
  EPtr e = parse_eterm(lx);
  for (;;) {
    if (lx.accept('+')) {
      e = ebin(ENode::Kind::kAdd, e, parse_eterm(lx));
    } else if (lx.accept('-')) {
      e = ebin(ENode::Kind::kSub, e, parse_eterm(lx));
    } else {
      return e;
    }
  }
}

std::optional<FqElement> eeval(const ENode& n, const FieldCtx& ctx, const FieldEnv& env, const IntEnv& ints) {
  switch (n.kind) {
    case ENode::Kind::kLit: return ctx.from_int(n.value);
    case ENode::Kind::kVar: {
      auto it = env.find(n.name);
      if (it == env.end()) throw std::out_of_range("unbound variable '" + n.name + "'");
      return it->second;
    }
    case ENode::Kind::kNeg: {
      auto v = eeval(*n.lhs, ctx, env, ints);
      if (!v) return std::nullopt;
      return ctx.neg(*v);
    }
    case ENode::Kind::kPow: {
      auto v = eeval(*n.lhs, ctx, env, ints);
      if (!v) return std::nullopt;
      const Int e = n.exponent.eval(ints);
      if (e < 0 && ctx.is_zero(*v)) return std::nullopt;
      return ctx.pow(*v, static_cast<std::int64_t>(e));
    }
    default: break;
  }
  auto l = eeval(*n.lhs, ctx, env, ints);
  auto r = eeval(*n.rhs, ctx, env, ints);
  if (!l || !r) return std::nullopt;
  switch (n.kind) {
    case ENode::Kind::kAdd: return ctx.add(*l, *r);
    case ENode::Kind::kSub: return ctx.sub(*l, *r);
    case ENode::Kind::kMul: return ctx.mul(*l, *r);
    case ENode::Kind::kDiv:
      if (ctx.is_zero(*r)) return std::nullopt;
      return ctx.div(*l, *r);
    default: return std::nullopt;
  }
}

void collect(const ENode& n, std::set<std::string>& out) {
  if (n.kind == ENode::Kind::kVar) out.insert(n.name);
  if (n.lhs) collect(*n.lhs, out);
  if (n.rhs) collect(*n.rhs, out);
}

}  // namespace

IntExpr IntExpr::parse(std::string_view text) {
  Lexer lx(text);
  IPtr root = parse_isum(lx);
  if (!lx.done()) lx.fail("trailing input");
  return IntExpr(std::move(root), std::string(text));
}

Int IntExpr::eval(const IntEnv& env) const {
  if (!root_) throw std::logic_error("empty integer expression");
  return ieval(*root_, env);
}

Expr Expr::parse(std::string_view text) {
  Lexer lx(text);
  Expr e;
  e.root_ = parse_esum(lx);
  if (!lx.done()) lx.fail("trailing input");
  e.text_ = std::string(text);
  return e;
}

std::optional<FqElement> Expr::eval(const FieldCtx& ctx, const FieldEnv& env, const IntEnv& ints) const {
  if (!root_) throw std::logic_error("empty expression");
  return eeval(*root_, ctx, env, ints);
}

std::set<std::string> Expr::variables() const {
  std::set<std::string> out;
  if (root_) collect(*root_, out);
  return out;
}

std::string expand_template(std::string_view tmpl, const IntEnv& env) {
  std::string out;
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] != '{') {
      out += tmpl[i++];
      continue;
    }
    const std::size_t close = tmpl.find('}', i);
    if (close == std::string_view::npos) throw ParseError("unclosed '{' in \"" + std::string(tmpl) + "\"");
    out += std::to_string(IntExpr::parse(tmpl.substr(i + 1, close - i - 1)).eval(env));
    i = close + 1;
  }
  return out;
}

}  // namespace frobtrace
