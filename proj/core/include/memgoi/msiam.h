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

// The memory-based synchronous interaction abstract machine: many tokens
// travel a program net, synchronize at sync nodes and choose at bot-boxes by
// testing the memory.

#ifndef MEMGOI_MSIAM_H
#define MEMGOI_MSIAM_H

#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "memgoi/formula.h"
#include "memgoi/memory.h"
#include "memgoi/net.h"
#include "memgoi/pars.h"
#include "memgoi/program_net.h"

namespace memgoi::msiam {

// Exponential signatures, plus the two formula-stack markers l and r.
enum class SigKind { Star, L, R, Pair, Y, Left, Right };

struct Sig;
using SigPtr = std::shared_ptr<const Sig>;

struct Sig {
    SigKind kind = SigKind::Star;
    SigPtr a, b;
    std::string text;

    bool is_exponential() const { return kind != SigKind::Left && kind != SigKind::Right; }

    static SigPtr star();
    static SigPtr l(SigPtr s);
    static SigPtr r(SigPtr s);
    static SigPtr pair(SigPtr s, SigPtr t);
    static SigPtr y(SigPtr s, SigPtr t);
    static SigPtr left();   // formula stack item l
    static SigPtr right();  // formula stack item r
};

// A formula stack. The head is items.back(); `delta` marks a δ tail.
struct Stack {
    std::vector<SigPtr> items;
    bool delta = false;

    bool is_delta() const { return delta && items.empty(); }
    bool is_empty() const { return !delta && items.empty(); }
    std::string str() const;
};

struct Position {
    int edge = -1;
    Stack f;                   // formula stack
    std::vector<SigPtr> b;     // box stack, head at back
    std::string key;

    static Position make(int edge, Stack f, std::vector<SigPtr> b);
    bool operator<(const Position& o) const { return edge != o.edge ? edge < o.edge : key < o.key; }
    bool operator==(const Position& o) const { return edge == o.edge && key == o.key; }
};

std::string box_stack_str(const std::vector<SigPtr>& b);

// The occurrence in `a` that `s` points to, or null.
const Formula* indicated(const Stack& s, const Formula& a);
// Its connective.
std::optional<Connective> indicator(const Stack& s, const Formula& a);

// A net flattened across box contents, with global node and edge ids.
struct Graph {
    struct GNode {
        NodeKind kind;
        std::vector<int> premises, conclusions;
        OperationLabel label;
        int structure = 0;
        std::vector<int> contents;  // structure ids
    };
    struct GEdge {
        Formula type;
        int src = -1, src_port = 0;
        int dst = -1, dst_port = 0;  // dst < 0: conclusion of `structure`
        int structure = 0;
        int door = -1;  // conclusion index in `structure`, or -1
    };
    struct GStructure {
        int box = -1;  // enclosing box node, -1 for the net itself
        int index = 0;
        int parent = -1;
        int depth = 0;
        std::vector<int> conclusions;
        std::vector<int> ones, ders, syncs;
    };

    std::vector<GNode> nodes;
    std::vector<GEdge> edges;
    std::vector<GStructure> structures;
    std::map<int, int> root_node;  // node id of the source net -> global id

    static Graph build(const Net& net);
};

enum class Direction { Up, Down, Stable, Invalid };

Direction direction(const Graph& g, const Position& p);

struct MachineState {
    std::map<Position, Position> tokens;  // position -> origin
    std::set<Position> origins;
    std::map<Position, Address> ind;  // origin -> address
    Memory memory;
    std::string key;

    bool operator<(const MachineState& o) const { return key < o.key; }
    bool operator==(const MachineState& o) const { return key == o.key; }
};

enum class TransitionKind { Move, Spawn, Sync, Test };

struct Transition {
    TransitionKind kind;
    Position pos;   // the token, the spawned origin, or a sync leaf
    int node = -1;  // sync node

    bool operator==(const Transition& o) const { return kind == o.kind && pos == o.pos && node == o.node; }
    bool operator<(const Transition& o) const {
        if (kind != o.kind) return kind < o.kind;
        if (!(pos == o.pos)) return pos < o.pos;
        return node < o.node;
    }
};

std::string describe(const Transition& t);

enum class Status { Running, Final, Deadlock };

class MsiamSystem {
   public:
    using Element = MachineState;
    using Redex = Transition;

    explicit MsiamSystem(const ProgramNet& pn);

    MachineState initial_state() const;

    std::vector<Transition> enumerate_redexes(const MachineState& st) const;
    pars::Distribution<MachineState> apply(const MachineState& st, const Transition& t) const;
    bool is_terminal(const MachineState& st) const { return enumerate_redexes(st).empty(); }
    bool is_branching(const Transition& t) const { return t.kind == TransitionKind::Test; }
    std::string describe(const MachineState& st) const;

    // Fires non-branching transitions until only tests remain or `cap` is spent.
    MachineState close(const MachineState& st, std::size_t cap) const;

    Status classify(const MachineState& st) const;
    // Copies(S) for a structure id.
    std::vector<std::vector<SigPtr>> copies(const MachineState& st, int structure) const;
    std::string observe(const MachineState& st) const;

    const Graph& graph() const { return *graph_; }

    std::ostream* trace = nullptr;

   private:
    struct Outcome;
    Outcome outcome(const MachineState& st, const Position& p) const;
    std::vector<Position> sync_leaves(const MachineState& st, int node, const std::vector<SigPtr>& t) const;
    std::vector<Position> spawn_candidates(const MachineState& st) const;
    void spawn_candidates_in(const MachineState& st, int structure, const std::vector<SigPtr>& t,
                             std::vector<Position>& out) const;
    void spawn(MachineState& st, const Position& p, std::set<Address>* used = nullptr) const;
    void fire_sync(MachineState& st, int node, const std::vector<Position>& leaves) const;
    void move(MachineState& st, const Position& from, const Position& to) const;
    void log(const std::string& what, const MachineState& st) const;
    MachineState canonical(MachineState st) const;

    std::shared_ptr<const Graph> graph_;
    std::map<int, Address> active_;  // global one node -> address
    Memory memory_;
};

}  // namespace memgoi::msiam

template <>
struct std::hash<memgoi::msiam::MachineState> {
    std::size_t operator()(const memgoi::msiam::MachineState& s) const noexcept {
        return std::hash<std::string>{}(s.key);
    }
};

#endif  // MEMGOI_MSIAM_H
