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

// memgoi: run a PCF^LL program under the abstract machine, net reduction and
// the token machine, and report the terminal distributions.
//
// Exit codes: 0 ok, 1 usage or I/O, 2 parse error, 3 type error,
// 4 engines disagree, 5 diamond check failed.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "memgoi/engines.h"

namespace {

using namespace memgoi;

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void print_result(const EngineResult& r) {
    const std::string e = engine_name(r.engine);
    std::cout << "engine: " << e << "\n";
    std::cout << e << ".probability: " << fmt(r.probability) << "\n";
    std::cout << e << ".steps: " << r.steps << "\n";
    std::cout << e << ".reached_horizon: " << (r.reached_horizon ? "yes" : "no") << "\n";
    std::cout << e << ".terminal_states: " << r.terminal_states << "\n";
    std::cout << e << ".violations: " << r.violations.size() << "\n";
    for (const auto& v : r.violations) std::cout << "  " << v << "\n";

    std::vector<std::pair<std::string, double>> rows(r.outcomes.begin(), r.outcomes.end());
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    std::size_t w = 7;
    for (const auto& [o, p] : rows) w = std::max(w, o.size());
    std::cout << "  " << std::string("outcome").append(w - 7, ' ') << "  probability\n";
    for (const auto& [o, p] : rows) {
        std::cout << "  " << o << std::string(w - o.size(), ' ') << "  " << fmt(p) << "\n";
    }
}

template <class S>
bool diamond(const std::string& name, const S& sys, const typename S::Element& seed, std::size_t depth,
             std::uint64_t rseed, double tol) {
    auto rep = pars::check_diamond(sys, {seed}, depth, {pars::Policy::leftmost(), pars::Policy::random(rseed)}, tol);
    std::cout << "diamond." << name << ": " << (rep.ok ? "ok" : "FAIL") << " (steps " << rep.steps_checked
              << ", divergences " << rep.local_divergences << ", joins skipped " << rep.joins_skipped << ")\n";
    if (!rep.ok) std::cout << "  " << rep.counterexample << "\n";
    return rep.ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Run PCF^LL programs on the abstract machine, program nets and the token machine"};
    std::string file;
    std::string engine_arg = "all";
    std::string backend_arg;
    std::string gates_file;
    std::size_t horizon = 200;
    double tol = pars::kTolerance;
    bool trace = false, dump_net = false, raw = false;
    std::size_t diamond_depth = 0;
    std::size_t close_cap = kDefaultCloseCap;

    app.add_option("file", file, "program file, or - for stdin")->required();
    app.add_option("--engine", engine_arg, "pcf, net, msiam or all")
        ->check(CLI::IsMember({"pcf", "net", "msiam", "all"}));
    app.add_option("--backend", backend_arg, "quantum, int or prob (default: header line, else quantum)")
        ->check(CLI::IsMember({"quantum", "int", "prob"}));
    app.add_option("--horizon", horizon, "number of steps")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--tol", tol, "convergence tolerance")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--gates", gates_file, "extra gate definitions")->check(CLI::ExistingFile);
    app.add_flag("--trace", trace, "print every reduction step to stderr");
    app.add_flag("--dump-net", dump_net, "print the translated net");
    app.add_flag("--raw", raw, "count single steps instead of macro-steps");
    app.add_option("--close-cap", close_cap, "silent steps per macro-step")->capture_default_str();
    app.add_option("--check-diamond", diamond_depth, "check leftmost against random(MSIAM_SEED) up to this depth");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    std::string source;
    try {
        source = read_file(file);
    } catch (const std::exception& e) {
        std::cerr << "memgoi: " << e.what() << "\n";
        return 1;
    }

    Backend backend = Backend::Quantum;
    if (!backend_arg.empty()) {
        backend = *parse_backend(backend_arg);
    } else if (auto b = backend_hint(source)) {
        backend = *b;
    }

    std::shared_ptr<const GateSet> gates;
    if (!gates_file.empty()) {
        try {
            gates = std::make_shared<const GateSet>(GateSet::parse(read_file(gates_file), GateSet::builtin()));
        } catch (const std::exception& e) {
            std::cerr << "memgoi: " << gates_file << ": " << e.what() << "\n";
            return 1;
        }
    }

    Program prog;
    try {
        prog = load_program(source, backend, gates);
    } catch (const pcfll::ParseError& e) {
        std::cerr << file << ":" << e.line << ":" << e.col << ": parse error: " << e.what() << "\n";
        return 2;
    } catch (const pcfll::TypeError& e) {
        std::cerr << file << ": type error: " << e.what() << "\n";
        return 3;
    }

    std::cout << "program: " << file << "\n";
    std::cout << "backend: " << backend_name(backend) << "\n";
    std::cout << "type: " << pcfll::to_string(*prog.typing.type) << "\n";
    std::cout << "horizon: " << horizon << "\n";
    std::cout << "steps: " << (raw ? "raw" : "macro") << "\n";
    std::cout << "tol: " << fmt(tol) << "\n";
    if (dump_net) std::cout << "net:\n" << dump(prog.net.net, 1);

    RunOptions opts;
    opts.horizon = horizon;
    opts.tol = tol;
    opts.fused = !raw;
    opts.close_cap = close_cap;
    if (trace) opts.trace = &std::cerr;

    std::vector<Engine> engines;
    if (engine_arg == "all") {
        engines = {Engine::Pcf, Engine::Net, Engine::Msiam};
    } else {
        engines = {*parse_engine(engine_arg)};
    }

    std::vector<EngineResult> results;
    for (Engine e : engines) {
        results.push_back(run(e, prog, opts));
        print_result(results.back());
    }

    int status = 0;
    for (const auto& r : results) {
        if (!r.violations.empty()) status = 4;
    }
    for (std::size_t i = 0; i < results.size(); ++i) {
        for (std::size_t j = i + 1; j < results.size(); ++j) {
            double d = std::fabs(results[i].probability - results[j].probability);
            bool same = d <= tol && results[i].outcomes.approx_equal(results[j].outcomes, tol);
            std::cout << "delta." << engine_name(results[i].engine) << "-" << engine_name(results[j].engine) << ": "
                      << fmt(d) << (same ? "" : " (disagree)") << "\n";
            if (!same) status = 4;
        }
    }

    if (diamond_depth > 0) {
        std::uint64_t rseed = 1;
        if (const char* s = std::getenv("MSIAM_SEED")) rseed = std::strtoull(s, nullptr, 10);
        std::cout << "diamond.seed: " << rseed << "\n";
        bool ok = true;
        for (Engine e : engines) {
            if (e == Engine::Net) {
                ProgramNetSystem sys;
                ok = diamond("net", sys, prog.net, diamond_depth, rseed, tol) && ok;
            } else if (e == Engine::Msiam) {
                msiam::MsiamSystem sys(prog.net);
                ok = diamond("msiam", sys, sys.initial_state(), diamond_depth, rseed, tol) && ok;
            }
        }
        if (!ok && status == 0) status = 5;
    }
    return status;
}
