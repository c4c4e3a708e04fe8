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

#include "memgoi/formula.h"

namespace memgoi {

namespace {

std::string wrap(const Formula& f) {
    if (f.kind() == Connective::Tensor || f.kind() == Connective::Par) return "(" + f.str() + ")";
    return f.str();
}

}  // namespace

Formula Formula::make(Connective k, const Formula* a, const Formula* b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    if (a) n->left = std::make_shared<const Formula>(*a);
    if (b) n->right = std::make_shared<const Formula>(*b);
    switch (k) {
        case Connective::One:
            n->text = "1";
            break;
        case Connective::Bot:
            n->text = "⊥";
            break;
        case Connective::Tensor:
            n->text = wrap(*a) + "⊗" + wrap(*b);
            break;
        case Connective::Par:
            n->text = wrap(*a) + "⅋" + wrap(*b);
            break;
        case Connective::OfCourse:
            n->text = "!" + wrap(*a);
            break;
        case Connective::WhyNot:
            n->text = "?" + wrap(*a);
            break;
    }
    return Formula(std::move(n));
}

Formula::Formula() : Formula(one()) {}

Formula Formula::one() {
    static const Formula f = make(Connective::One, nullptr, nullptr);
    return f;
}

Formula Formula::bot() {
    static const Formula f = make(Connective::Bot, nullptr, nullptr);
    return f;
}

Formula Formula::tensor(Formula a, Formula b) { return make(Connective::Tensor, &a, &b); }
Formula Formula::par(Formula a, Formula b) { return make(Connective::Par, &a, &b); }
Formula Formula::ofcourse(Formula a) { return make(Connective::OfCourse, &a, nullptr); }
Formula Formula::whynot(Formula a) { return make(Connective::WhyNot, &a, nullptr); }
Formula Formula::lolli(Formula a, Formula b) { return par(a.neg(), std::move(b)); }

bool Formula::is_positive() const {
    return kind() == Connective::One || kind() == Connective::Tensor || kind() == Connective::OfCourse;
}

Formula Formula::neg() const {
    switch (kind()) {
        case Connective::One:
            return bot();
        case Connective::Bot:
            return one();
        case Connective::Tensor:
            return par(left().neg(), right().neg());
        case Connective::Par:
            return tensor(left().neg(), right().neg());
        case Connective::OfCourse:
            return whynot(body().neg());
        case Connective::WhyNot:
            return ofcourse(body().neg());
    }
    return *this;
}

std::size_t Formula::count_ones() const {
    switch (kind()) {
        case Connective::One:
            return 1;
        case Connective::Bot:
            return 0;
        case Connective::Tensor:
        case Connective::Par:
            return left().count_ones() + right().count_ones();
        case Connective::OfCourse:
        case Connective::WhyNot:
            return body().count_ones();
    }
    return 0;
}

bool operator==(const Formula& a, const Formula& b) { return a.node_ == b.node_ || a.str() == b.str(); }

}  // namespace memgoi
