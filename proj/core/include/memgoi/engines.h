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

// Running a program under the three engines: the PCF abstract machine,
// program-net reduction and the token machine.

#ifndef MEMGOI_ENGINES_H
#define MEMGOI_ENGINES_H

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "memgoi/memory.h"
#include "memgoi/msiam.h"
#include "memgoi/pars.h"
#include "memgoi/pcfll.h"
#include "memgoi/program_net.h"

namespace memgoi {

inline constexpr std::size_t kDefaultCloseCap = 5000;

// Wraps a system so that one step fires one branching redex and then every
// non-branching redex it enables. Elements handed to it must be closed
// (see prepare).
template <pars::RewriteSystem S>
class Fused {
   public:
    using Element = typename S::Element;

    struct Redex {
        bool resume = false;  // closing was cut short by the cap
        typename S::Redex inner{};

        bool operator==(const Redex& o) const { return resume == o.resume && (resume || inner == o.inner); }
        bool operator<(const Redex& o) const {
            if (resume != o.resume) return resume;
            return !resume && inner < o.inner;
        }
    };

    explicit Fused(const S& sys, std::size_t cap = kDefaultCloseCap) : sys_(sys), cap_(cap) {}

    Element close(const Element& e) const {
        if constexpr (requires { sys_.close(e, cap_); }) {
            return sys_.close(e, cap_);
        } else {
            Element cur = e;
            for (std::size_t n = 0; n < cap_; ++n) {
                auto rs = sys_.enumerate_redexes(cur);
                auto it = std::find_if(rs.begin(), rs.end(), [&](const auto& r) { return !sys_.is_branching(r); });
                if (it == rs.end()) break;
                auto d = sys_.apply(cur, *it);
                cur = d.begin()->first;
            }
            return cur;
        }
    }

    pars::Distribution<Element> prepare(const pars::Distribution<Element>& mu) const {
        pars::Distribution<Element> out;
        for (const auto& [e, p] : mu) out.add(close(e), p);
        return out;
    }

    std::vector<Redex> enumerate_redexes(const Element& e) const {
        auto rs = sys_.enumerate_redexes(e);
        std::vector<Redex> out;
        for (const auto& r : rs) {
            if (!sys_.is_branching(r)) return {Redex{true, {}}};
            out.push_back(Redex{false, r});
        }
        return out;
    }

    pars::Distribution<Element> apply(const Element& e, const Redex& r) const {
        if (r.resume) return pars::Distribution<Element>::dirac(close(e));
        pars::Distribution<Element> out;
        for (const auto& [x, p] : sys_.apply(e, r.inner)) out.add(close(x), p);
        return out;
    }

    bool is_terminal(const Element& e) const { return sys_.is_terminal(e); }
    bool is_branching(const Redex& r) const { return !r.resume; }
    std::string describe(const Element& e) const { return pars::detail::describe(sys_, e); }

    const S& inner() const { return sys_; }

   private:
    const S& sys_;
    std::size_t cap_;
};

enum class Engine { Pcf, Net, Msiam };

std::string engine_name(Engine e);
std::optional<Engine> parse_engine(const std::string& s);

struct Program {
    std::string source;
    Backend backend = Backend::Quantum;
    Memory memory;
    pcfll::TermPtr term;
    pcfll::Typing typing;
    ProgramNet net;
};

// Parses, typechecks and translates. Throws pcfll::ParseError or
// pcfll::TypeError.
Program load_program(const std::string& source, Backend backend, std::shared_ptr<const GateSet> gates = nullptr);

// The value of a `-- backend: <name>` header line, if any.
std::optional<Backend> backend_hint(const std::string& source);

struct RunOptions {
    std::size_t horizon = 200;  // macro-steps when fused, raw steps otherwise
    double tol = pars::kTolerance;
    bool fused = true;
    std::size_t close_cap = kDefaultCloseCap;
    std::ostream* trace = nullptr;
    bool check_each_step = false;  // net engine: verify correctness after each step
};

struct EngineResult {
    Engine engine = Engine::Pcf;
    double probability = 0.0;
    bool reached_horizon = false;
    std::size_t steps = 0;
    std::size_t terminal_states = 0;
    pars::Distribution<std::string> outcomes;  // observed terminal mass
    std::vector<std::string> violations;       // deadlocks or stuck nets
};

EngineResult run(Engine engine, const Program& prog, const RunOptions& opts = {});

}  // namespace memgoi

#endif  // MEMGOI_ENGINES_H
