// Copyright 2026 The katosg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kato/rate_expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace kato {

struct RateExpr::Node {
  char op = 'n';  // 'n' number, 'k' index, 'u' negate, or a binary operator
  double value = 0.0;
  std::shared_ptr<const Node> lhs, rhs;

  double eval(double k) const {
    switch (op) {
      case 'n': return value;
      case 'k': return k;
      case 'u': return -lhs->eval(k);
      case '+': return lhs->eval(k) + rhs->eval(k);
      case '-': return lhs->eval(k) - rhs->eval(k);
      case '*': return lhs->eval(k) * rhs->eval(k);
      case '/': return lhs->eval(k) / rhs->eval(k);
      case '^': return std::pow(lhs->eval(k), rhs->eval(k));
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const RateExpr::Node>;

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  NodePtr parse() {
    NodePtr root = expression();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("rate expression \"" + s_ + "\": " + what + " at position " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static NodePtr binary(char op, NodePtr a, NodePtr b) {
    auto n = std::make_shared<RateExpr::Node>();
    n->op = op;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
  }

  NodePtr expression() {
    NodePtr left = term();
    while (true) {
      if (accept('+')) left = binary('+', left, term());
      else if (accept('-')) left = binary('-', left, term());
      else return left;
    }
  }

  NodePtr term() {
    NodePtr left = unary();
    while (true) {
      if (accept('*')) left = binary('*', left, unary());
      else if (accept('/')) left = binary('/', left, unary());
      else return left;
    }
  }

  NodePtr unary() {
    if (accept('-')) {
      auto n = std::make_shared<RateExpr::Node>();
      n->op = 'u';
      n->lhs = unary();
      return n;
    }
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return binary('^', base, unary());
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (accept('(')) {
      NodePtr inner = expression();
      if (!accept(')')) fail("missing ')'");
      return inner;
    }
    if (s_[pos_] == 'k') {
      ++pos_;
      auto n = std::make_shared<RateExpr::Node>();
      n->op = 'k';
      return n;
    }
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    if (std::isdigit(static_cast<unsigned char>(*begin)) || *begin == '.') {
      const double v = std::strtod(begin, &end);
      if (end != begin) {
        pos_ += static_cast<std::size_t>(end - begin);
        auto n = std::make_shared<RateExpr::Node>();
        n->value = v;
        return n;
      }
    }
    fail("expected a number, 'k' or '('");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

RateExpr RateExpr::parse(const std::string& text) {
  RateExpr e;
  e.text_ = text;
  e.root_ = Parser(text).parse();
  return e;
}

RateExpr RateExpr::constant(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return parse(buf);
}

double RateExpr::operator()(double k) const { return root_ ? root_->eval(k) : 0.0; }

RealVector RateExpr::evaluate(Index n, const std::string& field) const {
  RealVector out(n);
  for (Index k = 0; k < n; ++k) {
    const double v = (*this)(static_cast<double>(k));
    if (!std::isfinite(v) || v < 0.0) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.6g", v);
      throw ValidationError(field + ": rate \"" + text_ + "\" evaluates to " + buf + " at k=" + std::to_string(k) +
                            " (rates must be finite and >= 0)");
    }
    out(k) = v;
  }
  return out;
}

}  // namespace kato
