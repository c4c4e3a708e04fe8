// Copyright 2026 The memgoi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MEMGOI_FORMULA_H
#define MEMGOI_FORMULA_H

#include <memory>
#include <string>

namespace memgoi {

enum class Connective { One, Bot, Tensor, Par, OfCourse, WhyNot };

// Immutable, shared formula of multiplicative-exponential logic with units.
class Formula {
   public:
    Formula();  // 1

    static Formula one();
    static Formula bot();
    static Formula tensor(Formula a, Formula b);
    static Formula par(Formula a, Formula b);
    static Formula ofcourse(Formula a);
    static Formula whynot(Formula a);
    static Formula lolli(Formula a, Formula b);  // a^ ⅋ b

    Connective kind() const { return node_->kind; }
    const Formula& left() const { return *node_->left; }
    const Formula& right() const { return *node_->right; }
    const Formula& body() const { return *node_->left; }

    bool is_unit() const { return kind() == Connective::One || kind() == Connective::Bot; }
    bool is_exponential() const { return kind() == Connective::OfCourse || kind() == Connective::WhyNot; }
    // 1, ⊗ and ! are positive.
    bool is_positive() const;

    Formula neg() const;
    std::size_t count_ones() const;
    const std::string& str() const { return node_->text; }

    friend bool operator==(const Formula& a, const Formula& b);
    friend bool operator<(const Formula& a, const Formula& b) { return a.str() < b.str(); }

   private:
    struct Node {
        Connective kind;
        std::shared_ptr<const Formula> left, right;
        std::string text;
    };
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Formula make(Connective k, const Formula* a, const Formula* b);
    std::shared_ptr<const Node> node_;
};

}  // namespace memgoi

#endif  // MEMGOI_FORMULA_H
