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

#include "memgoi/pars.h"

#include <gtest/gtest.h>

#include <random>
#include <string>

using memgoi::pars::Distribution;
using memgoi::pars::Policy;

namespace {

// A table-driven system over string elements.
struct TableSystem {
    using Element = std::string;
    using Redex = int;
    std::map<std::string, std::vector<Distribution<std::string>>> rules;

    std::vector<int> enumerate_redexes(const std::string& e) const {
        auto it = rules.find(e);
        std::vector<int> out;
        if (it == rules.end()) return out;
        for (int k = 0; k < static_cast<int>(it->second.size()); ++k) out.push_back(k);
        return out;
    }
    Distribution<std::string> apply(const std::string& e, int r) const {
        return rules.at(e).at(static_cast<std::size_t>(r));
    }
    bool is_terminal(const std::string& e) const { return enumerate_redexes(e).empty(); }
    std::string describe(const std::string& e) const { return e; }
};

Distribution<std::string> two(const std::string& a, double pa, const std::string& b, double pb) {
    Distribution<std::string> d;
    d.add(a, pa);
    d.add(b, pb);
    return d;
}

TableSystem geometric() {
    TableSystem s;
    s.rules["a"] = {two("halt", 0.5, "a", 0.5)};
    return s;
}

static_assert(memgoi::pars::RewriteSystem<TableSystem>);

}  // namespace

TEST(Pars, TerminalSplitSeparatesParts) {
    auto sys = geometric();
    auto [t, r] = memgoi::pars::terminal_split(two("halt", 0.5, "a", 0.5), sys);
    EXPECT_DOUBLE_EQ(t.at("halt"), 0.5);
    EXPECT_EQ(t.size(), 1u);
    EXPECT_DOUBLE_EQ(r.at("a"), 0.5);
    EXPECT_EQ(r.size(), 1u);

    auto [t2, r2] = memgoi::pars::terminal_split(Distribution<std::string>{}, sys);
    EXPECT_TRUE(t2.empty());
    EXPECT_TRUE(r2.empty());
}

TEST(Pars, DegreeOfTermination) {
    TableSystem s;
    s.rules["c"] = {Distribution<std::string>::dirac("c")};
    Distribution<std::string> mu;
    mu.add("a", 0.25);
    mu.add("b", 0.25);
    mu.add("c", 0.5);
    EXPECT_DOUBLE_EQ(memgoi::pars::degree_of_termination(mu, s), 0.5);
}

TEST(Pars, GeometricLiftStep) {
    auto sys = geometric();
    auto mu = Distribution<std::string>::dirac("a");
    auto one = memgoi::pars::lift_step(mu, sys, Policy::leftmost());
    EXPECT_DOUBLE_EQ(one.at("halt"), 0.5);
    EXPECT_DOUBLE_EQ(one.at("a"), 0.5);
    auto twice = memgoi::pars::iterate(mu, 2, sys, Policy::leftmost());
    EXPECT_DOUBLE_EQ(twice.at("halt"), 0.75);
    EXPECT_DOUBLE_EQ(twice.at("a"), 0.25);
    auto ten = memgoi::pars::iterate(mu, 10, sys, Policy::leftmost());
    EXPECT_NEAR(memgoi::pars::degree_of_termination(ten, sys), 0.9990234375, 1e-12);
    EXPECT_EQ(memgoi::pars::iterate(mu, 0, sys, Policy::leftmost()).at("a"), 1.0);
}

TEST(Pars, TerminalDistributionIsFixed) {
    auto sys = geometric();
    auto mu = two("halt", 0.5, "x", 0.5);
    auto out = memgoi::pars::iterate(mu, 7, sys, Policy::random(3));
    EXPECT_TRUE(out.approx_equal(mu));
}

TEST(Pars, ConvergeGeometric) {
    auto sys = geometric();
    auto res = memgoi::pars::converge(Distribution<std::string>::dirac("a"), sys, Policy::leftmost(), 64, 1e-12);
    EXPECT_NEAR(res.probability, 1.0, 1e-12);
    EXPECT_FALSE(res.reached_horizon);
}

TEST(Pars, ConvergeAllTerminalStopsAfterOneStep) {
    auto sys = geometric();
    auto res = memgoi::pars::converge(two("halt", 0.5, "z", 0.25), sys, Policy::leftmost(), 100, 1e-9);
    EXPECT_NEAR(res.probability, 0.75, 1e-12);
    EXPECT_FALSE(res.reached_horizon);
    EXPECT_EQ(res.steps, 1u);
}

TEST(Pars, ConvergePureLoopHitsHorizon) {
    TableSystem s;
    s.rules["a"] = {Distribution<std::string>::dirac("a")};
    auto res = memgoi::pars::converge(Distribution<std::string>::dirac("a"), s, Policy::leftmost(), 50, 1e-9);
    EXPECT_EQ(res.probability, 0.0);
    EXPECT_TRUE(res.reached_horizon);
    EXPECT_EQ(res.steps, 50u);
}

TEST(Pars, DiamondDeterministicAndGeometricPass) {
    TableSystem det;
    det.rules["a"] = {Distribution<std::string>::dirac("b")};
    det.rules["b"] = {Distribution<std::string>::dirac("c")};
    auto r1 = memgoi::pars::check_diamond(det, {"a"}, 5, {Policy::leftmost(), Policy::random(9)});
    EXPECT_TRUE(r1.ok) << r1.counterexample;
    auto r2 = memgoi::pars::check_diamond(geometric(), {"a"}, 12, {Policy::leftmost(), Policy::rightmost()});
    EXPECT_TRUE(r2.ok) << r2.counterexample;
}

TEST(Pars, DiamondFailureHasWitness) {
    TableSystem s;
    s.rules["a"] = {Distribution<std::string>::dirac("b"), Distribution<std::string>::dirac("c")};
    auto r = memgoi::pars::check_diamond(s, {"a"}, 3, {Policy::leftmost(), Policy::rightmost()});
    EXPECT_FALSE(r.ok);
    EXPECT_NE(r.counterexample.find("b"), std::string::npos);
    EXPECT_NE(r.counterexample.find("c"), std::string::npos);
}

TEST(Pars, DiamondOfCommutingChoices) {
    // Two independent coins, tossed in either order.
    TableSystem t;
    t.rules["xy"] = {two("0?", 0.5, "1?", 0.5), two("?0", 0.5, "?1", 0.5)};
    t.rules["0?"] = {two("00", 0.5, "01", 0.5)};
    t.rules["1?"] = {two("10", 0.5, "11", 0.5)};
    t.rules["?0"] = {two("00", 0.5, "10", 0.5)};
    t.rules["?1"] = {two("01", 0.5, "11", 0.5)};
    auto r = memgoi::pars::check_diamond(t, {"xy"}, 4, {Policy::leftmost(), Policy::rightmost()});
    EXPECT_TRUE(r.ok) << r.counterexample;
}

// Property checks over random finite systems that only ever move mass forward
// along a chain, each element having a single redex.
class RandomChain : public ::testing::TestWithParam<int> {};

TEST_P(RandomChain, MassMonotonicityPersistence) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()));
    std::uniform_real_distribution<double> u(0.05, 0.95);
    TableSystem s;
    const int n = 6;
    for (int k = 0; k < n; ++k) {
        double p = u(rng);
        std::string self = "s" + std::to_string(k);
        std::string next = k + 1 < n ? "s" + std::to_string(k + 1) : "t";
        s.rules[self] = {two(next, p, "t" + std::to_string(k), 1 - p)};
    }
    Distribution<std::string> mu;
    mu.add("s0", 0.6);
    mu.add("t", 0.4);
    double prev = memgoi::pars::degree_of_termination(mu, s);
    for (std::size_t k = 1; k <= 8; ++k) {
        auto nu = memgoi::pars::iterate(mu, k, s, Policy::random(static_cast<std::uint64_t>(GetParam())));
        EXPECT_NEAR(nu.mass(), 1.0, 1e-9);
        double d = memgoi::pars::degree_of_termination(nu, s);
        EXPECT_GE(d + 1e-12, prev);
        EXPECT_GE(nu.at("t") + 1e-12, 0.4);
        prev = d;
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomChain, ::testing::Range(1, 21));
