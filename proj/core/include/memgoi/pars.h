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

#ifndef MEMGOI_PARS_H
#define MEMGOI_PARS_H

#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace memgoi::pars {

inline constexpr double kTolerance = 1e-9;
inline constexpr double kPruneBelow = 1e-15;

// Finite-support sub-probability distribution. Elements need operator<.
template <class E>
class Distribution {
   public:
    using Map = std::map<E, double>;
    using value_type = typename Map::value_type;

    Distribution() = default;

    static Distribution dirac(E e) {
        Distribution d;
        d.add(std::move(e), 1.0);
        return d;
    }

    void add(E e, double p) {
        if (!(p > 0.0)) return;
        auto [it, inserted] = entries_.try_emplace(std::move(e), p);
        if (!inserted) it->second += p;
        if (it->second > 1.0) it->second = 1.0;
    }

    void add_all(const Distribution& other, double scale = 1.0) {
        for (const auto& [e, p] : other.entries_) add(e, p * scale);
    }

    double at(const E& e) const {
        auto it = entries_.find(e);
        return it == entries_.end() ? 0.0 : it->second;
    }

    double mass() const {
        double s = 0.0;
        for (const auto& kv : entries_) s += kv.second;
        return s;
    }

    void prune(double below = kPruneBelow) {
        std::erase_if(entries_, [below](const value_type& kv) { return kv.second < below; });
    }

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const Map& entries() const { return entries_; }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    template <class F>
    auto map(F&& f) const {
        using R = std::decay_t<decltype(f(std::declval<const E&>()))>;
        Distribution<R> out;
        for (const auto& [e, p] : entries_) out.add(f(e), p);
        return out;
    }

    bool approx_equal(const Distribution& o, double tol = kTolerance) const {
        auto a = entries_.begin();
        auto b = o.entries_.begin();
        while (a != entries_.end() || b != o.entries_.end()) {
            if (b == o.entries_.end() || (a != entries_.end() && a->first < b->first)) {
                if (a->second > tol) return false;
                ++a;
            } else if (a == entries_.end() || b->first < a->first) {
                if (b->second > tol) return false;
                ++b;
            } else {
                if (std::abs(a->second - b->second) > tol) return false;
                ++a;
                ++b;
            }
        }
        return true;
    }

   private:
    Map entries_;
};

template <class S>
concept RewriteSystem = requires(const S& s, const typename S::Element& e, const typename S::Redex& r) {
    { s.enumerate_redexes(e) } -> std::convertible_to<std::vector<typename S::Redex>>;
    { s.apply(e, r) } -> std::convertible_to<Distribution<typename S::Element>>;
    { s.is_terminal(e) } -> std::convertible_to<bool>;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic redex selection. The random kind hashes the element with the
// seed, so the same element always gets the same choice within one policy.
class Policy {
   public:
    enum class Kind { Leftmost, Rightmost, Random };

    static Policy leftmost() { return Policy(Kind::Leftmost, 0); }
    static Policy rightmost() { return Policy(Kind::Rightmost, 0); }
    static Policy random(std::uint64_t seed) { return Policy(Kind::Random, seed); }

    Kind kind() const { return kind_; }
    std::uint64_t seed() const { return seed_; }

    template <class E>
    std::size_t choose(const E& e, std::size_t n) const {
        if (n == 0) return 0;
        switch (kind_) {
            case Kind::Leftmost:
                return 0;
            case Kind::Rightmost:
                return n - 1;
            case Kind::Random:
                return static_cast<std::size_t>(splitmix64(std::hash<E>{}(e) ^ splitmix64(seed_)) % n);
        }
        return 0;
    }

    std::string name() const {
        switch (kind_) {
            case Kind::Leftmost:
                return "leftmost";
            case Kind::Rightmost:
                return "rightmost";
            case Kind::Random:
                return "random(" + std::to_string(seed_) + ")";
        }
        return "?";
    }

   private:
    Policy(Kind k, std::uint64_t seed) : kind_(k), seed_(seed) {}
    Kind kind_;
    std::uint64_t seed_;
};

template <RewriteSystem S>
std::pair<Distribution<typename S::Element>, Distribution<typename S::Element>> terminal_split(
    const Distribution<typename S::Element>& mu, const S& sys) {
    Distribution<typename S::Element> term, rest;
    for (const auto& [e, p] : mu) {
        if (sys.is_terminal(e)) {
            term.add(e, p);
        } else {
            rest.add(e, p);
        }
    }
    return {std::move(term), std::move(rest)};
}

template <RewriteSystem S>
double degree_of_termination(const Distribution<typename S::Element>& mu, const S& sys) {
    double s = 0.0;
    for (const auto& [e, p] : mu) {
        if (sys.is_terminal(e)) s += p;
    }
    return s;
}

template <RewriteSystem S>
Distribution<typename S::Element> lift_step(const Distribution<typename S::Element>& mu, const S& sys,
                                            const Policy& policy) {
    Distribution<typename S::Element> out;
    for (const auto& [e, p] : mu) {
        if (sys.is_terminal(e)) {
            out.add(e, p);
            continue;
        }
        auto rs = sys.enumerate_redexes(e);
        auto rho = sys.apply(e, rs[policy.choose(e, rs.size())]);
        out.add_all(rho, p);
    }
    out.prune();
    return out;
}

template <RewriteSystem S>
Distribution<typename S::Element> iterate(Distribution<typename S::Element> mu, std::size_t n, const S& sys,
                                          const Policy& policy) {
    for (std::size_t i = 0; i < n; ++i) mu = lift_step(mu, sys, policy);
    return mu;
}

template <class E>
struct ConvergeResult {
    double probability = 0.0;
    bool reached_horizon = false;
    std::size_t steps = 0;
    Distribution<E> final;
};

template <class E>
using StepObserver = std::function<void(std::size_t, const Distribution<E>&)>;

// Stops once the degree of termination moved by less than tol and the mass
// still reducible is below tol; otherwise runs to the horizon.
template <RewriteSystem S>
ConvergeResult<typename S::Element> converge(Distribution<typename S::Element> mu, const S& sys,
                                             const Policy& policy, std::size_t horizon, double tol,
                                             const StepObserver<typename S::Element>& observe = {}) {
    ConvergeResult<typename S::Element> res;
    double deg = degree_of_termination(mu, sys);
    for (std::size_t k = 1; k <= horizon; ++k) {
        mu = lift_step(mu, sys, policy);
        if (observe) observe(k, mu);
        double nd = degree_of_termination(mu, sys);
        double rest = mu.mass() - nd;
        res.steps = k;
        if (std::abs(nd - deg) < tol && rest < tol) {
            res.probability = nd;
            res.reached_horizon = false;
            res.final = std::move(mu);
            return res;
        }
        deg = nd;
    }
    res.probability = deg;
    res.reached_horizon = horizon == 0 ? (mu.mass() - deg) >= tol : true;
    res.final = std::move(mu);
    return res;
}

struct DiamondReport {
    bool ok = true;
    std::size_t steps_checked = 0;
    std::size_t local_divergences = 0;
    std::size_t joins_skipped = 0;
    std::string counterexample;
};

namespace detail {

template <class S, class E>
std::string describe(const S& sys, const E& e) {
    if constexpr (requires { sys.describe(e); }) {
        return sys.describe(e);
    } else {
        return "<element>";
    }
}

template <class S, class E>
std::string describe(const S& sys, const Distribution<E>& d) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [e, p] : d) {
        if (!first) os << ", ";
        first = false;
        os << describe(sys, e) << ": " << p;
    }
    os << "}";
    return os.str();
}

// All distributions reachable from mu by one lifted step, up to `budget`.
template <RewriteSystem S>
std::vector<Distribution<typename S::Element>> one_step_successors(const Distribution<typename S::Element>& mu,
                                                                   const S& sys, std::size_t budget,
                                                                   bool& truncated) {
    using E = typename S::Element;
    std::vector<Distribution<E>> acc(1);
    for (const auto& [e, p] : mu) {
        if (sys.is_terminal(e)) {
            for (auto& d : acc) d.add(e, p);
            continue;
        }
        auto rs = sys.enumerate_redexes(e);
        std::vector<Distribution<E>> options;
        for (const auto& r : rs) options.push_back(sys.apply(e, r));
        std::vector<Distribution<E>> next;
        for (const auto& d : acc) {
            for (const auto& o : options) {
                if (next.size() >= budget) {
                    truncated = true;
                    break;
                }
                Distribution<E> nd = d;
                nd.add_all(o, p);
                next.push_back(std::move(nd));
            }
        }
        acc = std::move(next);
    }
    for (auto& d : acc) d.prune();
    return acc;
}

}  // namespace detail

// Bounded diamond harness: two independent traces under the two policies must
// agree on terminal parts at each step, and every one-step divergence met on
// the first trace must close in one more step.
template <RewriteSystem S>
DiamondReport check_diamond(const S& sys, const std::vector<typename S::Element>& seeds, std::size_t depth,
                            const std::pair<Policy, Policy>& policies, double tol = kTolerance,
                            std::size_t join_budget = 64) {
    using E = typename S::Element;
    DiamondReport rep;
    const auto& [p1, p2] = policies;
    for (std::size_t si = 0; si < seeds.size(); ++si) {
        auto nu = Distribution<E>::dirac(seeds[si]);
        auto xi = nu;
        for (std::size_t k = 1; k <= depth; ++k) {
            for (const auto& [a, pa] : nu) {
                if (sys.is_terminal(a)) continue;
                auto rs = sys.enumerate_redexes(a);
                if (rs.size() < 2) continue;
                std::size_t i1 = p1.choose(a, rs.size());
                std::size_t i2 = p2.choose(a, rs.size());
                if (i1 == i2) i2 = (i1 + 1) % rs.size();
                ++rep.local_divergences;
                auto m1 = sys.apply(a, rs[i1]);
                auto m2 = sys.apply(a, rs[i2]);
                m1.prune();
                m2.prune();
                auto t1 = terminal_split(m1, sys).first;
                auto t2 = terminal_split(m2, sys).first;
                if (!t1.approx_equal(t2, tol)) {
                    rep.ok = false;
                    rep.counterexample = "seed " + std::to_string(si) + " step " + std::to_string(k) +
                                         ": terminal parts differ after one step from " + detail::describe(sys, a) +
                                         ": " + detail::describe(sys, t1) + " vs " + detail::describe(sys, t2);
                    return rep;
                }
                bool trunc = false;
                auto j1 = detail::one_step_successors(m1, sys, join_budget, trunc);
                auto j2 = detail::one_step_successors(m2, sys, join_budget, trunc);
                bool joined = false;
                for (const auto& x : j1) {
                    for (const auto& y : j2) {
                        if (x.approx_equal(y, tol)) {
                            joined = true;
                            break;
                        }
                    }
                    if (joined) break;
                }
                if (!joined) {
                    if (trunc) {
                        ++rep.joins_skipped;
                        continue;
                    }
                    rep.ok = false;
                    rep.counterexample = "seed " + std::to_string(si) + " step " + std::to_string(k) +
                                         ": divergence from " + detail::describe(sys, a) +
                                         " does not close: " + detail::describe(sys, m1) + " vs " +
                                         detail::describe(sys, m2);
                    return rep;
                }
            }
            nu = lift_step(nu, sys, p1);
            xi = lift_step(xi, sys, p2);
            ++rep.steps_checked;
            auto t1 = terminal_split(nu, sys).first;
            auto t2 = terminal_split(xi, sys).first;
            if (!t1.approx_equal(t2, tol)) {
                rep.ok = false;
                rep.counterexample = "seed " + std::to_string(si) + " step " + std::to_string(k) + ": " +
                                     p1.name() + " gives " + detail::describe(sys, t1) + ", " + p2.name() +
                                     " gives " + detail::describe(sys, t2);
                return rep;
            }
        }
    }
    return rep;
}

}  // namespace memgoi::pars

#endif  // MEMGOI_PARS_H
