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

#include "memgoi/program_net.h"

#include <cassert>
#include <set>

namespace memgoi {

ProgramNet canonicalize(ProgramNet pn) {
    std::map<int, int> nmap;
    Net c = pn.net.canonical(&nmap);
    std::map<int, Address> ind;
    for (const auto& [n, a] : pn.ind) ind[nmap.at(n)] = a;
    Renaming sigma;
    Address next = 0;
    for (const auto& [n, a] : ind) sigma[a] = next++;
    for (Address a : pn.memory.support()) {
        if (!sigma.count(a)) sigma[a] = next++;
    }
    ProgramNet out;
    out.memory = pn.memory.rename(sigma);
    for (auto& [n, a] : ind) a = sigma.at(a);
    out.ind = std::move(ind);
    out.net = std::move(c);
    std::string k = out.net.serialize();
    k += "\nI";
    for (const auto& [n, a] : out.ind) k += std::to_string(n) + ">" + std::to_string(a) + ",";
    k += "\nM" + out.memory.key();
    out.key = std::move(k);
    return out;
}

ProgramNet make_program_net(Net net, Memory memory, std::map<int, Address> ind) {
    ProgramNet pn;
    pn.net = std::move(net);
    pn.memory = std::move(memory);
    pn.ind = std::move(ind);
    return canonicalize(std::move(pn));
}

std::string describe(const PnRedex& r) {
    switch (r.kind) {
        case PnRedexKind::Link:
            return "link n" + std::to_string(r.node);
        case PnRedexKind::Update:
            return "update n" + std::to_string(r.node);
        case PnRedexKind::Test:
            return "test n" + std::to_string(r.node);
        case PnRedexKind::Pure:
            return std::string(redex_kind_name(r.net_kind)) + " n" + std::to_string(r.node);
    }
    return "?";
}

namespace {

void leaves_of(const ProgramNet& pn, int e, std::vector<std::string>& out) {
    const Edge& ed = pn.net.edge(e);
    const Node& n = pn.net.node(ed.src);
    if (n.kind == NodeKind::One) {
        auto it = pn.ind.find(ed.src);
        if (it != pn.ind.end()) {
            out.push_back(pn.memory.readout(it->second));
        } else {
            std::set<Address> used;
            for (const auto& kv : pn.ind) used.insert(kv.second);
            out.push_back(pn.memory.readout(pn.memory.fresh(used)));
        }
    } else if (n.kind == NodeKind::Tensor) {
        leaves_of(pn, n.premises[0], out);
        leaves_of(pn, n.premises[1], out);
    } else {
        out.push_back("<" + std::string(node_kind_name(n.kind)) + ">");
    }
}

}  // namespace

std::string observe(const ProgramNet& pn) {
    std::vector<std::string> parts;
    for (int c : pn.net.conclusions) leaves_of(pn, c, parts);
    return join_readouts(parts);
}

std::vector<PnRedex> ProgramNetSystem::enumerate_redexes(const ProgramNet& pn) const {
    std::map<int, std::vector<memgoi::Redex>> by_node;
    for (const auto& r : find_redexes(pn.net)) by_node[r.node].push_back(r);
    std::vector<PnRedex> out;
    for (const auto& [id, n] : pn.net.nodes) {
        if (n.kind == NodeKind::One) {
            if (!pn.ind.count(id)) out.push_back({PnRedexKind::Link, id});
            continue;
        }
        auto it = by_node.find(id);
        if (it == by_node.end()) continue;
        const memgoi::Redex& r = it->second.front();
        if (r.kind == RedexKind::BotLeft || r.kind == RedexKind::BotRight) {
            if (pn.ind.count(bot_cut(pn.net, id)->one)) out.push_back({PnRedexKind::Test, id});
        } else if (r.kind == RedexKind::Sync) {
            auto leaves = sync_leaves(pn.net, id);
            bool active = true;
            for (int l : *leaves) active = active && pn.ind.count(l);
            if (active) out.push_back({PnRedexKind::Update, id});
        } else {
            out.push_back({PnRedexKind::Pure, id, r.kind});
        }
    }
    return out;
}

pars::Distribution<ProgramNet> ProgramNetSystem::apply(const ProgramNet& pn, const PnRedex& r) const {
    pars::Distribution<ProgramNet> out;
    auto emit = [&](ProgramNet next, double p) {
        if (check_each_step) {
            check_wellformed(next.net);
            std::string err = check_correct(next.net);
            if (!err.empty()) throw NetError("reduction broke correctness: " + err);
        }
        out.add(canonicalize(std::move(next)), p);
    };
    switch (r.kind) {
        case PnRedexKind::Link: {
            std::set<Address> used;
            for (const auto& kv : pn.ind) used.insert(kv.second);
            ProgramNet next = pn;
            next.ind[r.node] = pn.memory.fresh(used);
            emit(std::move(next), 1.0);
            break;
        }
        case PnRedexKind::Update: {
            auto leaves = sync_leaves(pn.net, r.node);
            if (!leaves) throw NetError("update on a sync node that is not ready");
            std::vector<Address> addrs;
            for (int l : *leaves) addrs.push_back(pn.ind.at(l));
            ProgramNet next;
            next.memory = pn.memory.update(addrs, pn.net.node(r.node).label);
            next.net = reduce(pn.net, {RedexKind::Sync, r.node});
            next.ind = pn.ind;
            emit(std::move(next), 1.0);
            break;
        }
        case PnRedexKind::Test: {
            auto bc = bot_cut(pn.net, r.node);
            if (!bc) throw NetError("test on a cut that is not a bot-box test");
            Address i = pn.ind.at(bc->one);
            std::map<int, Address> ind = pn.ind;
            ind.erase(bc->one);
            for (const auto& [branch, p] : pn.memory.test(i)) {
                ProgramNet next;
                next.net = reduce(pn.net, {branch.outcome ? RedexKind::BotRight : RedexKind::BotLeft, r.node});
                next.ind = ind;
                next.memory = *branch.memory;
                emit(std::move(next), p);
            }
            break;
        }
        case PnRedexKind::Pure: {
            ProgramNet next;
            next.net = reduce(pn.net, {r.net_kind, r.node});
            next.ind = pn.ind;
            next.memory = pn.memory;
            emit(std::move(next), 1.0);
            break;
        }
    }
    return out;
}

std::string ProgramNetSystem::describe(const ProgramNet& pn) const {
    std::string s = "net(" + std::to_string(pn.net.size()) + " nodes";
    if (!has_cut(pn.net)) s += ", value " + observe(pn);
    s += ", " + pn.memory.to_string() + ")";
    return s;
}

}  // namespace memgoi
