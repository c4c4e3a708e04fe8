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

#ifndef MEMGOI_NET_H
#define MEMGOI_NET_H

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "memgoi/formula.h"
#include "memgoi/memory.h"

namespace memgoi {

enum class NodeKind { Ax, Cut, Tensor, Par, One, Bot, Der, Weak, Contr, Sync, BangBox, YBox, BotBox };

const char* node_kind_name(NodeKind k);
bool is_exp_box(NodeKind k);  // !-box or Y-box
bool is_box(NodeKind k);

class Net;
using NetPtr = std::shared_ptr<const Net>;

// Port layout per kind:
//   ax      conclusions [A^, A]
//   cut     premises [A, A^]
//   ⊗ / ⅋   premises [A, B], conclusion [A⊗B] / [A⅋B]
//   ?d      premise [A], conclusion [?A]
//   ?w      conclusion [?A]
//   ?c      premises [?A, ?A], conclusion [?A]
//   sync    premises [P1..Pn], conclusions [P1..Pn]
//   !-box   conclusions [!A, ?Γ]        content conclusions [A, ?Γ]
//   Y-box   conclusions [!A, ?Γ]        content conclusions [A, ?A^, ?Γ]
//   ⊥-box   conclusions [⊥, Γ]          contents[0] (false), contents[1] (true),
//                                       each with conclusions [⊥, Γ], the ⊥
//                                       being the conclusion of a bot node
struct Node {
    NodeKind kind = NodeKind::Ax;
    std::vector<int> premises;
    std::vector<int> conclusions;
    std::vector<NetPtr> contents;
    OperationLabel label;  // sync only
};

inline constexpr int kNetConclusion = -1;
inline constexpr int kDangling = -2;

struct Edge {
    Formula type;
    int src = -1;
    int src_port = 0;
    int dst = kDangling;  // node id, kNetConclusion, or kDangling while building
    int dst_port = 0;     // premise index, or conclusion index of the net
};

class NetError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class Net {
   public:
    std::map<int, Node> nodes;
    std::map<int, Edge> edges;
    std::vector<int> conclusions;
    int next_id = 0;

    // Adds a node whose premises are the given dangling edges and creates one
    // fresh dangling conclusion edge per entry of `types`.
    int add_node(NodeKind kind, const std::vector<int>& premises, const std::vector<Formula>& types,
                 std::vector<NetPtr> contents = {}, OperationLabel label = {});
    int concl(int node, int port = 0) const { return nodes.at(node).conclusions.at(static_cast<std::size_t>(port)); }

    // Makes the dangling edge `e` a conclusion of the net.
    void add_conclusion(int e);
    // Attaches a dangling edge to a node premise slot.
    void attach(int e, int node, int port);
    // Gives `e` the destination of `old`, then deletes `old`.
    void take_over(int e, int old);
    void detach(int e);  // makes e dangling again
    void erase_node(int n);  // erases node and its conclusion edges
    void erase_edge(int e);

    // Copies `content` into this net with fresh ids; returns the copies of its
    // conclusions, dangling, in order.
    std::vector<int> splice(const Net& content);

    const Node& node(int id) const { return nodes.at(id); }
    const Edge& edge(int id) const { return edges.at(id); }
    std::vector<Formula> conclusion_types() const;
    std::size_t size() const { return nodes.size(); }
    std::size_t total_size() const;  // counts box contents

    // Canonical structural key; isomorphic nets get equal keys.
    std::string key() const;
    // Text of this exact numbering; equals key() on canonical nets.
    std::string serialize() const;
    // Same as key(), memoized; only for nets no longer mutated (box contents).
    const std::string& frozen_key() const;
    // Renumbers ids in canonical traversal order. `node_map` gets old -> new.
    Net canonical(std::map<int, int>* node_map = nullptr) const;
    // Node ids in canonical traversal order.
    std::vector<int> traversal_order() const;

   private:
    mutable std::shared_ptr<const std::string> key_cache_;
};

// Type and arity constraints of each node; throws NetError.
void check_wellformed(const Net& net, bool recursive = true);

// Switching acyclicity, recursively. Returns an empty string when correct,
// otherwise a description of a cycle.
std::string check_correct(const Net& net);

// ------------------------------------------------------------- reduction

enum class RedexKind { Ax, TensorPar, DBox, YUnfold, WBox, CBox, BoxComm, BotLeft, BotRight, Sync };

const char* redex_kind_name(RedexKind k);

struct Redex {
    RedexKind kind;
    int node;  // the cut, or the sync node
    auto operator<=>(const Redex&) const = default;
};

std::vector<Redex> find_redexes(const Net& net);
Net reduce(const Net& net, const Redex& r);

// Source node of the ⊥-box / one pair of a bot cut.
struct BotCut {
    int one = -1;
    int box = -1;
};
std::optional<BotCut> bot_cut(const Net& net, int cut);

// The one nodes whose 1-leaves feed the premises of a ready sync node, in
// left-to-right leaf order; nullopt if the sync is not ready.
std::optional<std::vector<int>> sync_leaves(const Net& net, int sync);

bool has_cut(const Net& net);

// Structured text dump: node list, edge list, box nesting.
std::string dump(const Net& net, int indent = 0);

}  // namespace memgoi

#endif  // MEMGOI_NET_H
