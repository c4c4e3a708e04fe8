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

#include "memgoi/memory.h"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "support/memory_laws.h"

using namespace memgoi;

namespace {

const OperationLabel kS{"S", 1};
const OperationLabel kP{"P", 1};
const OperationLabel kMax{"max", 2};
const OperationLabel kCoin{"c", 1};
const OperationLabel kH{"H", 1};
const OperationLabel kCnot{"CNOT", 2};

IntRegisterMemory regs(std::vector<std::uint64_t> v) {
    IntRegisterMemory m;
    for (std::size_t k = 0; k < v.size(); ++k) m = m.with(k, v[k]);
    return m;
}

const double kHalfRoot2 = std::sqrt(2.0) / 2.0;

}  // namespace

TEST(IntRegisters, ExampleTrace) {
    IntRegisterMemory m0;
    auto m1 = m0.update({0}, kS);
    EXPECT_EQ(m1, regs({1}));
    auto m2 = m1.update({1}, kS);
    EXPECT_EQ(m2, regs({1, 1}));
    auto m3 = m2.update({0}, kP);
    EXPECT_EQ(m3, regs({0, 1}));
    auto t = m3.test(1);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_FALSE(std::get<0>(t[0]));
    EXPECT_EQ(std::get<1>(t[0]), regs({0, 1}));
    EXPECT_EQ(std::get<2>(t[0]), 1.0);
}

TEST(IntRegisters, TestPolarityAndMax) {
    auto fresh = IntRegisterMemory{}.test(5);
    EXPECT_TRUE(std::get<0>(fresh[0]));
    EXPECT_FALSE(std::get<0>(regs({1}).test(0)[0]));
    EXPECT_EQ(regs({2, 5}).update({0, 1}, kMax), regs({5, 5}));
    EXPECT_EQ(regs({0}).update({0}, kP), regs({0}));
}

TEST(IntRegisters, PartialUpdates) {
    EXPECT_THROW(regs({2, 5}).update({0, 0}, kMax), PartialityError);
    EXPECT_THROW(regs({2, 5}).update({0}, kMax), PartialityError);
    EXPECT_THROW(regs({2}).update({0, 1}, kS), PartialityError);
}

TEST(IntRegisters, RenameSwaps) {
    Renaming swap{{0, 1}, {1, 0}};
    EXPECT_EQ(regs({1}).rename(swap), regs({0, 1}));
    EXPECT_EQ(regs({1}).rename({}), regs({1}));
    Renaming fresh_swap{{6, 7}, {7, 6}};
    EXPECT_EQ(regs({1, 2}).rename(fresh_swap), regs({1, 2}));
}

TEST(ProbRegisters, CoinAndTest) {
    ProbRegisterMemory m0;
    auto m1 = m0.update({0}, kCoin);
    EXPECT_DOUBLE_EQ(m1.get(0), 0.5);
    EXPECT_EQ(m1.update({0}, kCoin), m1);
    auto t = Memory(m1).test(0);
    ASSERT_EQ(t.size(), 2u);
    for (const auto& [b, p] : t) {
        EXPECT_DOUBLE_EQ(p, 0.5);
        const auto& mm = std::get<ProbRegisterMemory>(b.memory->state());
        EXPECT_DOUBLE_EQ(mm.get(0), b.outcome ? 1.0 : 0.0);
    }
    auto sure = ProbRegisterMemory{}.with(3, 1.0).test(3);
    ASSERT_EQ(sure.size(), 1u);
    EXPECT_TRUE(std::get<0>(sure[0]));
    auto never = ProbRegisterMemory{}.test(3);
    ASSERT_EQ(never.size(), 1u);
    EXPECT_FALSE(std::get<0>(never[0]));
    EXPECT_THROW(m0.update({0, 1}, {"c", 2}), PartialityError);
}

TEST(Quantum, HadamardOnFreshAddress) {
    QuantumMemory m;
    auto h = m.update({0}, kH);
    ASSERT_EQ(h.bound(), std::vector<Address>{0});
    EXPECT_NEAR(h.amplitudes()[0].real(), kHalfRoot2, 1e-12);
    EXPECT_NEAR(h.amplitudes()[1].real(), kHalfRoot2, 1e-12);
    auto t = Memory(h).test(0);
    ASSERT_EQ(t.size(), 2u);
    for (const auto& [b, p] : t) {
        EXPECT_NEAR(p, 0.5, 1e-12);
        EXPECT_TRUE(std::get<QuantumMemory>(b.memory->state()).bound().empty());
    }
}

TEST(Quantum, BellState) {
    QuantumMemory m;
    auto bell = m.update({1}, kH).update({0, 1}, kCnot);
    ASSERT_EQ(bell.bound(), (std::vector<Address>{0, 1}));
    const auto& a = bell.amplitudes();
    EXPECT_NEAR(std::abs(a[0] - Complex(kHalfRoot2)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(a[1]), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(a[2]), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(a[3] - Complex(kHalfRoot2)), 0.0, 1e-12);
    auto t = Memory(bell).test(0);
    ASSERT_EQ(t.size(), 2u);
    for (const auto& [b, p] : t) {
        EXPECT_NEAR(p, 0.5, 1e-12);
        const auto& q = std::get<QuantumMemory>(b.memory->state());
        ASSERT_EQ(q.bound(), std::vector<Address>{1});
        EXPECT_NEAR(std::norm(q.amplitudes()[b.outcome ? 1 : 0]), 1.0, 1e-12);
    }
}

TEST(Quantum, CnotFirstQubitIsTarget) {
    QuantumMemory m;
    auto x = m.update({1}, {"X", 1});  // |01>
    auto c = x.update({0, 1}, kCnot);  // |11>
    EXPECT_NEAR(std::norm(c.amplitudes()[3]), 1.0, 1e-12);
    auto d = x.update({1, 0}, kCnot);  // control is qubit 0, still |01>
    EXPECT_NEAR(std::norm(d.amplitudes()[1]), 1.0, 1e-12);
}

TEST(Quantum, MeasureFreshIsFalse) {
    QuantumMemory m;
    auto t = m.test(4);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_FALSE(std::get<0>(t[0]));
    EXPECT_DOUBLE_EQ(std::get<2>(t[0]), 1.0);
}

TEST(Quantum, RenameKeepsBoundSorted) {
    QuantumMemory m;
    auto s = m.update({0}, {"X", 1}).update({3}, kH);
    auto r = s.rename({{0, 5}, {5, 0}});
    EXPECT_EQ(r.bound(), (std::vector<Address>{3, 5}));
    EXPECT_NEAR(r.prob_one(5), 1.0, 1e-12);
    EXPECT_NEAR(r.prob_one(3), 0.5, 1e-12);
}

TEST(Quantum, PartialUpdates) {
    QuantumMemory m;
    EXPECT_THROW(m.update({0, 0}, kCnot), PartialityError);
    EXPECT_THROW(m.update({0}, kCnot), PartialityError);
    EXPECT_THROW(m.update({0}, {"nope", 1}), std::invalid_argument);
}

TEST(Gates, ComplexLiterals) {
    EXPECT_EQ(parse_complex("1"), Complex(1, 0));
    EXPECT_EQ(parse_complex("-i"), Complex(0, -1));
    EXPECT_EQ(parse_complex("0.5+0.5i"), Complex(0.5, 0.5));
    EXPECT_EQ(parse_complex("1e-1-2e-1i"), Complex(0.1, -0.2));
    EXPECT_EQ(parse_complex(" 2 i "), Complex(0, 2));
    EXPECT_THROW(parse_complex("abc"), std::invalid_argument);
}

TEST(Gates, ParseFileFormat) {
    auto gs = GateSet::parse(
        "# phase gates\n"
        "S, 1, [1, 0, 0, i]\n"
        "SWAP, 2, 1,0,0,0, 0,0,1,0, 0,1,0,0, 0,0,0,1\n",
        GateSet::builtin());
    ASSERT_NE(gs.find("S"), nullptr);
    ASSERT_NE(gs.find("SWAP"), nullptr);
    EXPECT_EQ(gs.find("SWAP")->arity, 2u);
    EXPECT_NE(gs.find("H"), nullptr);
    EXPECT_THROW(GateSet::parse("BAD, 1, 1, 1, 0, 1\n", GateSet{}), std::runtime_error);
    EXPECT_THROW(GateSet::parse("SHORT, 1, 1, 0\n", GateSet{}), std::runtime_error);
}

TEST(Gates, LoadedGateActs) {
    auto gs = std::make_shared<const GateSet>(GateSet::parse("SWAP, 2, 1,0,0,0, 0,0,1,0, 0,1,0,0, 0,0,0,1\n",
                                                             GateSet::builtin()));
    QuantumMemory m(gs);
    auto s = m.update({0}, {"X", 1}).update({0, 1}, {"SWAP", 2});
    EXPECT_NEAR(s.prob_one(1), 1.0, 1e-12);
    EXPECT_NEAR(s.prob_one(0), 0.0, 1e-12);
}

TEST(MemoryFacade, FreshAvoidsSupportAndUsed) {
    Memory m(regs({1, 0, 3}));
    EXPECT_EQ(m.fresh({}), 1u);
    EXPECT_EQ(m.fresh({1}), 3u);
    Memory q = Memory::make(Backend::Quantum).update({0}, kH);
    EXPECT_EQ(q.fresh({}), 1u);
}

TEST(MemoryFacade, Readouts) {
    Memory q = Memory::make(Backend::Quantum).update({0}, {"X", 1}).update({1}, kH);
    EXPECT_EQ(q.readout(0), "1");
    EXPECT_EQ(q.readout(1), "?");
    EXPECT_EQ(q.readout(2), "0");
    EXPECT_EQ(join_readouts({"1", "0"}), "10");
    EXPECT_EQ(join_readouts({"12", "0"}), "12,0");
}

class Laws : public ::testing::TestWithParam<Backend> {};

TEST_P(Laws, DisjointOperationsCommute) {
    auto rep = memgoi::testing::check_laws(GetParam(), 200, 1234);
    EXPECT_EQ(rep.instances, 600u);
    for (const auto& f : rep.failures) ADD_FAILURE() << f;
}

TEST_P(Laws, RenameIsEquivariant) {
    std::mt19937_64 rng(77);
    for (int n = 0; n < 100; ++n) {
        Memory m = memgoi::testing::random_memory(GetParam(), rng);
        auto perm = memgoi::testing::distinct_addresses(memgoi::testing::kAddressPool, rng);
        Renaming sigma;
        for (Address a = 0; a < memgoi::testing::kAddressPool; ++a) sigma[a] = perm[a];
        Address i = perm[0] % memgoi::testing::kAddressPool;
        auto lhs = m.rename(sigma).test(sigma[i]);
        auto rhs = m.test(i);
        ASSERT_EQ(lhs.size(), rhs.size());
        for (const auto& [b, p] : rhs) {
            bool matched = false;
            for (const auto& [c, q] : lhs) {
                if (c.outcome == b.outcome && std::abs(p - q) < 1e-9 &&
                    b.memory->rename(sigma).approx_equal(*c.memory)) {
                    matched = true;
                }
            }
            EXPECT_TRUE(matched) << m.to_string();
        }
        OperationLabel l = memgoi::testing::random_label(m, rng);
        auto k = memgoi::testing::distinct_addresses(l.arity, rng);
        std::vector<Address> sk;
        for (Address a : k) sk.push_back(sigma[a]);
        EXPECT_TRUE(m.update(k, l).rename(sigma).approx_equal(m.rename(sigma).update(sk, l)));
    }
}

TEST(Quantum, NormIsPreserved) {
    std::mt19937_64 rng(5);
    for (int n = 0; n < 200; ++n) {
        Memory m = memgoi::testing::random_memory(Backend::Quantum, rng);
        OperationLabel l = memgoi::testing::random_label(m, rng);
        auto k = memgoi::testing::distinct_addresses(l.arity, rng);
        Memory u = m.update(k, l);
        EXPECT_NEAR(std::get<QuantumMemory>(u.state()).norm2(), 1.0, 1e-9);
        for (const auto& [b, p] : m.test(k[0])) {
            EXPECT_NEAR(std::get<QuantumMemory>(b.memory->state()).norm2(), 1.0, 1e-9);
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Backends, Laws, ::testing::Values(Backend::Int, Backend::Prob, Backend::Quantum),
                         [](const auto& info) { return backend_name(info.param); });
