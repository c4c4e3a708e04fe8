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

#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "memgoi/net.h"

namespace memgoi {

namespace {

struct Link {
    int u, v, edge;
};

class UnionFind {
   public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[a] = b;
        return true;
    }

   private:
    std::vector<std::size_t> parent_;
};

constexpr std::uint64_t kMaxSwitchings = std::uint64_t{1} << 22;

std::string check_level(const Net& net) {
    std::vector<Link> links;
    for (const auto& [id, e] : net.edges) {
        if (e.dst >= 0) links.push_back({e.src, e.dst, id});
    }
    // Prune to the 2-core: vertices of degree <= 1 lie on no cycle.
    std::map<int, int> degree;
    for (const auto& l : links) {
        ++degree[l.u];
        ++degree[l.v];
    }
    std::vector<bool> alive(links.size(), true);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t k = 0; k < links.size(); ++k) {
            if (!alive[k]) continue;
            if (degree[links[k].u] <= 1 || degree[links[k].v] <= 1) {
                alive[k] = false;
                --degree[links[k].u];
                --degree[links[k].v];
                changed = true;
            }
        }
    }
    std::map<int, std::size_t> link_of_edge;
    std::vector<Link> core;
    for (std::size_t k = 0; k < links.size(); ++k) {
        if (alive[k]) {
            link_of_edge[links[k].edge] = core.size();
            core.push_back(links[k]);
        }
    }
    if (core.empty()) return "";

    // Switch groups: exactly one member kept per ⅋ / ?c premise pair and per
    // sync conclusion list. Option -1 stands for a member outside the core.
    std::vector<std::vector<int>> options;
    std::vector<int> memberships(core.size(), 0);
    for (const auto& [id, n] : net.nodes) {
        const std::vector<int>* group = nullptr;
        if (n.kind == NodeKind::Par || n.kind == NodeKind::Contr) group = &n.premises;
        if (n.kind == NodeKind::Sync) group = &n.conclusions;
        if (!group) continue;
        std::vector<int> opt;
        bool outside = false;
        for (int e : *group) {
            auto it = link_of_edge.find(e);
            if (it == link_of_edge.end()) {
                outside = true;
            } else {
                opt.push_back(static_cast<int>(it->second));
                ++memberships[it->second];
            }
        }
        if (opt.empty()) continue;
        if (outside) opt.push_back(-1);
        options.push_back(std::move(opt));
    }
    std::map<int, std::size_t> index;
    for (const auto& l : core) {
        index.try_emplace(l.u, index.size());
        index.try_emplace(l.v, index.size());
    }
    // Keeping more edges only adds cycles, so a group never needs the
    // "outside" option; branch and bound over the remaining choices.
    for (auto& o : options) std::erase(o, -1);
    std::vector<int> choice(options.size(), -1);
    std::string found;
    std::uint64_t visited = 0;
    // mode 0: only decided picks; mode 1: undecided groups keep everything.
    auto cycle_edge = [&](bool optimistic) -> int {
        std::vector<int> picked(core.size(), 0);
        for (std::size_t g = 0; g < options.size(); ++g) {
            if (choice[g] >= 0) {
                ++picked[static_cast<std::size_t>(choice[g])];
            } else if (optimistic) {
                for (int c : options[g]) ++picked[static_cast<std::size_t>(c)];
            }
        }
        UnionFind uf(index.size());
        for (std::size_t k = 0; k < core.size(); ++k) {
            if (picked[k] != memberships[k]) continue;
            if (!uf.unite(index[core[k].u], index[core[k].v])) return static_cast<int>(k);
        }
        return -1;
    };
    std::function<bool(std::size_t)> search = [&](std::size_t g) -> bool {
        if (++visited > kMaxSwitchings) {
            found = "too many switchings to check";
            return true;
        }
        int k = cycle_edge(false);
        if (k >= 0) {
            found = "switching cycle through edge e" + std::to_string(core[static_cast<std::size_t>(k)].edge) +
                    " between n" + std::to_string(core[static_cast<std::size_t>(k)].u) + " and n" +
                    std::to_string(core[static_cast<std::size_t>(k)].v);
            return true;
        }
        if (g == options.size() || cycle_edge(true) < 0) return false;
        for (int c : options[g]) {
            choice[g] = c;
            if (search(g + 1)) return true;
        }
        choice[g] = -1;
        return false;
    };
    search(0);
    return found;
}

}  // namespace

std::string check_correct(const Net& net) {
    std::string err = check_level(net);
    if (!err.empty()) return err;
    for (const auto& [id, n] : net.nodes) {
        for (std::size_t k = 0; k < n.contents.size(); ++k) {
            err = check_correct(*n.contents[k]);
            if (!err.empty()) return "inside n" + std::to_string(id) + " content " + std::to_string(k) + ": " + err;
        }
    }
    return "";
}

}  // namespace memgoi
