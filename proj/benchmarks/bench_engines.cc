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

#include <benchmark/benchmark.h>

#include "memgoi/engines.h"

namespace {

using namespace memgoi;

const char* kCoin = "letrec f x = if x then new else f (H new) in f (H new)";
const char* kBell = "let <x, y> = CNOT <new, H new> in <if x then X new else new, if y then X new else new>";

void run_engine(benchmark::State& state, Engine e, const char* src, Backend b, std::size_t horizon) {
    auto prog = load_program(src, b);
    RunOptions opts;
    opts.horizon = horizon;
    for (auto _ : state) {
        auto r = run(e, prog, opts);
        benchmark::DoNotOptimize(r.probability);
    }
}

void BM_CoinToss(benchmark::State& state) {
    run_engine(state, static_cast<Engine>(state.range(0)), kCoin, Backend::Quantum, 200);
}
BENCHMARK(BM_CoinToss)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_Bell(benchmark::State& state) {
    run_engine(state, static_cast<Engine>(state.range(0)), kBell, Backend::Quantum, 200);
}
BENCHMARK(BM_Bell)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

// One macro-step of a divergent program, by number of silent steps.
void BM_MsiamClose(benchmark::State& state) {
    auto prog = load_program("letrec f x = f x in f new", Backend::Quantum);
    msiam::MsiamSystem sys(prog.net);
    auto init = sys.initial_state();
    for (auto _ : state) {
        auto st = sys.close(init, static_cast<std::size_t>(state.range(0)));
        benchmark::DoNotOptimize(st.key);
    }
}
BENCHMARK(BM_MsiamClose)->RangeMultiplier(4)->Range(64, 4096)->Unit(benchmark::kMillisecond);

void BM_Translate(benchmark::State& state) {
    Memory m = Memory::make(Backend::Quantum);
    auto t = pcfll::parse(kCoin, m.labels());
    auto ty = pcfll::typecheck(t);
    for (auto _ : state) {
        auto pn = pcfll::translate(pcfll::make_closure(t, m), ty);
        benchmark::DoNotOptimize(pn.key);
    }
}
BENCHMARK(BM_Translate);

void BM_QuantumTest(benchmark::State& state) {
    Memory m = Memory::make(Backend::Quantum);
    const int n = static_cast<int>(state.range(0));
    for (int a = 0; a < n; ++a) m = m.update({static_cast<Address>(a)}, {"H", 1});
    for (auto _ : state) {
        auto d = m.test(0);
        benchmark::DoNotOptimize(d.size());
    }
}
BENCHMARK(BM_QuantumTest)->DenseRange(2, 12, 5);

}  // namespace

BENCHMARK_MAIN();
