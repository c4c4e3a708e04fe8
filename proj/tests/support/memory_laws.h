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

// Random memories and the three disjoint-commutation laws, shared by the unit
// tests and the acceptance runner.

#ifndef MEMGOI_TESTS_MEMORY_LAWS_H
#define MEMGOI_TESTS_MEMORY_LAWS_H

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "memgoi/memory.h"

namespace memgoi::testing {

inline constexpr Address kAddressPool = 8;

inline Memory random_memory(Backend b, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coin(0, 1);
    switch (b) {
        case Backend::Int: {
            IntRegisterMemory m;
            std::uniform_int_distribution<std::uint64_t> v(0, 3);
            for (Address a = 0; a < kAddressPool; ++a) {
                if (coin(rng)) m = m.with(a, v(rng));
            }
            return Memory(m);
        }
        case Backend::Prob: {
            ProbRegisterMemory m;
            std::uniform_real_distribution<double> u(0.0, 1.0);
            std::uniform_int_distribution<int> pick(0, 3);
            for (Address a = 0; a < kAddressPool; ++a) {
                double vals[] = {0.0, 0.5, 1.0, u(rng)};
                m = m.with(a, vals[pick(rng)]);
            }
            return Memory(m);
        }
        case Backend::Quantum: {
            std::uniform_int_distribution<int> nq(0, 4);
            std::vector<Address> pool(kAddressPool);
            for (Address a = 0; a < kAddressPool; ++a) pool[a] = a;
            std::shuffle(pool.begin(), pool.end(), rng);
            std::vector<Address> bound(pool.begin(), pool.begin() + nq(rng));
            std::normal_distribution<double> g;
            std::vector<Complex> amp(std::size_t{1} << bound.size());
            double norm = 0.0;
            for (auto& c : amp) {
                c = Complex(g(rng), g(rng));
                norm += std::norm(c);
            }
            for (auto& c : amp) c /= std::sqrt(norm);
            return Memory(QuantumMemory::from_state(std::make_shared<const GateSet>(GateSet::builtin()), bound, amp));
        }
    }
    return Memory();
}

// Distinct addresses drawn from the pool.
inline std::vector<Address> distinct_addresses(std::size_t n, std::mt19937_64& rng) {
    std::vector<Address> pool(kAddressPool);
    for (Address a = 0; a < kAddressPool; ++a) pool[a] = a;
    std::shuffle(pool.begin(), pool.end(), rng);
    return {pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n)};
}

inline OperationLabel random_label(const Memory& m, std::mt19937_64& rng) {
    auto ls = m.labels();
    std::uniform_int_distribution<std::size_t> pick(0, ls.size() - 1);
    return ls[pick(rng)];
}

struct Branch {
    double p = 0.0;
    std::shared_ptr<const Memory> m;
};

// Branch for outcome `b`, with probability 0 when pruned.
inline Branch branch(const Memory& m, Address i, bool b) {
    for (const auto& [tb, p] : m.test(i)) {
        if (tb.outcome == b) return {p, tb.memory};
    }
    return {};
}

inline bool mass_ok(const Memory& m, Address i, double tol) {
    double s = 0.0;
    for (const auto& kv : m.test(i)) s += kv.second;
    return std::abs(s - 1.0) <= tol;
}

// test(i) then test(j) against test(j) then test(i).
inline std::string test_test(const Memory& m, Address i, Address j, double tol) {
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            Branch bx = branch(m, i, x);
            Branch by = branch(m, j, y);
            Branch bxy = bx.m ? branch(*bx.m, j, y) : Branch{};
            Branch byx = by.m ? branch(*by.m, i, x) : Branch{};
            double lhs = bx.p * bxy.p;
            double rhs = by.p * byx.p;
            if (std::abs(lhs - rhs) > tol) {
                return "branch mass " + std::to_string(lhs) + " vs " + std::to_string(rhs) + " on " + m.to_string();
            }
            if (lhs > tol && rhs > tol && !bxy.m->approx_equal(*byx.m, tol)) {
                return "branch memories differ: " + bxy.m->to_string() + " vs " + byx.m->to_string();
            }
        }
    }
    return "";
}

// test(i) then update(k) on each branch against update(k) then test(i).
inline std::string test_update(const Memory& m, Address i, const std::vector<Address>& k, const OperationLabel& l,
                               double tol) {
    Memory mu = m.update(k, l);
    for (int x = 0; x < 2; ++x) {
        Branch b = branch(m, i, x);
        Branch c = branch(mu, i, x);
        if (std::abs(b.p - c.p) > tol) {
            return "test mass " + std::to_string(b.p) + " vs " + std::to_string(c.p) + " on " + m.to_string();
        }
        if (b.p > tol) {
            Memory lhs = b.m->update(k, l);
            if (!lhs.approx_equal(*c.m, tol)) return "memories differ: " + lhs.to_string() + " vs " + c.m->to_string();
        }
    }
    return "";
}

inline std::string update_update(const Memory& m, const std::vector<Address>& k, const OperationLabel& l,
                                 const std::vector<Address>& k2, const OperationLabel& l2, double tol) {
    Memory a = m.update(k2, l2).update(k, l);
    Memory b = m.update(k, l).update(k2, l2);
    if (!a.approx_equal(b, tol)) return "updates do not commute: " + a.to_string() + " vs " + b.to_string();
    return "";
}

struct LawReport {
    std::size_t instances = 0;
    std::vector<std::string> failures;
};

// `count` random instances of each law family for one backend.
inline LawReport check_laws(Backend backend, std::size_t count, std::uint64_t seed, double tol = 1e-9) {
    std::mt19937_64 rng(seed);
    LawReport rep;
    auto fail = [&](const std::string& family, const std::string& msg) {
        if (!msg.empty() && rep.failures.size() < 10) rep.failures.push_back(family + ": " + msg);
    };
    for (std::size_t n = 0; n < count; ++n) {
        Memory m = random_memory(backend, rng);
        {
            auto ij = distinct_addresses(2, rng);
            fail("test-test", test_test(m, ij[0], ij[1], tol));
            if (!mass_ok(m, ij[0], tol)) fail("properness", "test mass is not 1 on " + m.to_string());
        }
        {
            OperationLabel l = random_label(m, rng);
            auto addrs = distinct_addresses(l.arity + 1, rng);
            std::vector<Address> k(addrs.begin(), addrs.begin() + static_cast<std::ptrdiff_t>(l.arity));
            fail("test-update", test_update(m, addrs.back(), k, l, tol));
        }
        {
            OperationLabel l = random_label(m, rng);
            OperationLabel l2 = random_label(m, rng);
            auto addrs = distinct_addresses(l.arity + l2.arity, rng);
            std::vector<Address> k(addrs.begin(), addrs.begin() + static_cast<std::ptrdiff_t>(l.arity));
            std::vector<Address> k2(addrs.begin() + static_cast<std::ptrdiff_t>(l.arity), addrs.end());
            fail("update-update", update_update(m, k, l, k2, l2, tol));
        }
        rep.instances += 3;
    }
    return rep;
}

}  // namespace memgoi::testing

#endif  // MEMGOI_TESTS_MEMORY_LAWS_H
