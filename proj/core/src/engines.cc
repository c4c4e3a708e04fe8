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

#include "memgoi/engines.h"

#include <regex>

namespace memgoi {

std::string engine_name(Engine e) {
    switch (e) {
        case Engine::Pcf:
            return "pcf";
        case Engine::Net:
            return "net";
        case Engine::Msiam:
            return "msiam";
    }
    return "?";
}

std::optional<Engine> parse_engine(const std::string& s) {
    if (s == "pcf") return Engine::Pcf;
    if (s == "net") return Engine::Net;
    if (s == "msiam") return Engine::Msiam;
    return std::nullopt;
}

std::optional<Backend> backend_hint(const std::string& source) {
    static const std::regex re(R"(--\s*backend:\s*([A-Za-z]+))");
    std::smatch m;
    if (std::regex_search(source, m, re)) return parse_backend(m[1].str());
    return std::nullopt;
}

Program load_program(const std::string& source, Backend backend, std::shared_ptr<const GateSet> gates) {
    Program p;
    p.source = source;
    p.backend = backend;
    p.memory = Memory::make(backend, std::move(gates));
    p.term = pcfll::parse(source, p.memory.labels());
    p.typing = pcfll::typecheck(p.term);
    p.net = pcfll::translate(pcfll::make_closure(p.term, p.memory), p.typing);
    return p;
}

namespace {

template <class S, class Observe, class Check>
EngineResult drive(Engine engine, const S& sys, const typename S::Element& init, const RunOptions& opts,
                   Observe&& observe, Check&& check) {
    using E = typename S::Element;
    EngineResult res;
    res.engine = engine;
    auto finish = [&](const pars::ConvergeResult<E>& cr, const auto& terminal) {
        res.probability = cr.probability;
        res.reached_horizon = cr.reached_horizon;
        res.steps = cr.steps;
        for (const auto& [e, p] : cr.final) {
            if (!terminal(e)) continue;
            ++res.terminal_states;
            res.outcomes.add(observe(e), p);
        }
    };
    auto mu = pars::Distribution<E>::dirac(init);
    if (opts.fused) {
        Fused<S> fused(sys, opts.close_cap);
        mu = fused.prepare(mu);
        auto cr = pars::converge(mu, fused, pars::Policy::leftmost(), opts.horizon, opts.tol,
                                 [&](std::size_t, const pars::Distribution<E>& d) { check(d, res); });
        check(mu, res);
        finish(cr, [&](const E& e) { return fused.is_terminal(e); });
    } else {
        auto cr = pars::converge(mu, sys, pars::Policy::leftmost(), opts.horizon, opts.tol,
                                 [&](std::size_t, const pars::Distribution<E>& d) { check(d, res); });
        finish(cr, [&](const E& e) { return sys.is_terminal(e); });
    }
    return res;
}

}  // namespace

EngineResult run(Engine engine, const Program& prog, const RunOptions& opts) {
    switch (engine) {
        case Engine::Pcf: {
            pcfll::PcfSystem sys;
            sys.trace = opts.trace;
            return drive(
                engine, sys, pcfll::make_closure(prog.term, prog.memory), opts,
                [](const pcfll::Closure& c) { return pcfll::observe(c); },
                [](const pars::Distribution<pcfll::Closure>&, EngineResult&) {});
        }
        case Engine::Net: {
            ProgramNetSystem sys;
            sys.check_each_step = opts.check_each_step;
            return drive(
                engine, sys, prog.net, opts, [](const ProgramNet& pn) { return observe(pn); },
                [&](const pars::Distribution<ProgramNet>& d, EngineResult& res) {
                    for (const auto& [pn, p] : d) {
                        if (has_cut(pn.net) && sys.is_terminal(pn) && res.violations.size() < 10) {
                            res.violations.push_back("stuck net with cuts: " + pn.key.substr(0, 200));
                        }
                        if (opts.trace) *opts.trace << "net " << p << "\n" << dump(pn.net) << "\n";
                    }
                });
        }
        case Engine::Msiam: {
            msiam::MsiamSystem sys(prog.net);
            sys.trace = opts.trace;
            return drive(
                engine, sys, sys.initial_state(), opts,
                [&](const msiam::MachineState& s) { return sys.observe(s); },
                [&](const pars::Distribution<msiam::MachineState>& d, EngineResult& res) {
                    for (const auto& [s, p] : d) {
                        if (sys.classify(s) == msiam::Status::Deadlock && res.violations.size() < 10) {
                            res.violations.push_back("deadlock: " + sys.describe(s).substr(0, 400));
                        }
                    }
                });
        }
    }
    return {};
}

}  // namespace memgoi
