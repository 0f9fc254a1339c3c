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

#pragma once

#include <memory>
#include <string>

#include "kato/state_space.hpp"

namespace kato {

/// Arithmetic over the state index k: numbers, k, + - * / ^, parentheses
/// and unary minus. '^' binds tightest and associates to the right, so
/// -k^2 is -(k^2).
class RateExpr {
 public:
  /// The zero rate.
  RateExpr() = default;

  /// Throws ValidationError with the offending position.
  static RateExpr parse(const std::string& text);
  static RateExpr constant(double value);

  double operator()(double k) const;
  const std::string& text() const { return text_; }

  /// Values at k = 0..n-1. Rejects negative or non-finite values, naming
  /// `field` and the first offending k.
  RealVector evaluate(Index n, const std::string& field) const;

  struct Node;

 private:
  std::string text_ = "0";
  std::shared_ptr<const Node> root_;
};

}  // namespace kato
