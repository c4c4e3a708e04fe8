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

#ifndef MEMGOI_PROGRAM_NET_H
#define MEMGOI_PROGRAM_NET_H

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "memgoi/memory.h"
#include "memgoi/net.h"
#include "memgoi/pars.h"

namespace memgoi {

// A net with a partial injective map from its surface one nodes to memory
// addresses (the active ones) and a memory.
struct ProgramNet {
    Net net;
    std::map<int, Address> ind;  // one-node id -> address
    Memory memory;
    std::string key;  // set by canonicalize()

    bool operator<(const ProgramNet& o) const { return key < o.key; }
    bool operator==(const ProgramNet& o) const { return key == o.key; }
};

// Renumbers nodes in traversal order and addresses in the order their one
// nodes are met; leftover memory addresses follow in ascending order.
ProgramNet canonicalize(ProgramNet pn);
ProgramNet make_program_net(Net net, Memory memory, std::map<int, Address> ind = {});

enum class PnRedexKind { Link, Update, Test, Pure };

struct PnRedex {
    PnRedexKind kind;
    int node;  // one node (Link), sync (Update), cut (Test, Pure)
    RedexKind net_kind = RedexKind::Ax;
    auto operator<=>(const PnRedex&) const = default;
};

std::string describe(const PnRedex& r);

// Readout of a cut-free net whose conclusions are ⊗-trees of one nodes.
std::string observe(const ProgramNet& pn);

class ProgramNetSystem {
   public:
    using Element = ProgramNet;
    using Redex = PnRedex;

    std::vector<PnRedex> enumerate_redexes(const ProgramNet& pn) const;
    pars::Distribution<ProgramNet> apply(const ProgramNet& pn, const PnRedex& r) const;
    bool is_terminal(const ProgramNet& pn) const { return enumerate_redexes(pn).empty(); }
    bool is_branching(const PnRedex& r) const { return r.kind == PnRedexKind::Test; }
    std::string describe(const ProgramNet& pn) const;

    // When set, every produced net is checked for well-formedness and
    // switching acyclicity; violations throw NetError.
    bool check_each_step = false;
};

}  // namespace memgoi

template <>
struct std::hash<memgoi::ProgramNet> {
    std::size_t operator()(const memgoi::ProgramNet& pn) const noexcept { return std::hash<std::string>{}(pn.key); }
};

#endif  // MEMGOI_PROGRAM_NET_H
