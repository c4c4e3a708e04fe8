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

#include "memgoi/net.h"

namespace memgoi {

const char* node_kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::Ax:
            return "ax";
        case NodeKind::Cut:
            return "cut";
        case NodeKind::Tensor:
            return "tensor";
        case NodeKind::Par:
            return "par";
        case NodeKind::One:
            return "one";
        case NodeKind::Bot:
            return "bot";
        case NodeKind::Der:
            return "der";
        case NodeKind::Weak:
            return "weak";
        case NodeKind::Contr:
            return "contr";
        case NodeKind::Sync:
            return "sync";
        case NodeKind::BangBox:
            return "bang-box";
        case NodeKind::YBox:
            return "y-box";
        case NodeKind::BotBox:
            return "bot-box";
    }
    return "?";
}

bool is_exp_box(NodeKind k) { return k == NodeKind::BangBox || k == NodeKind::YBox; }
bool is_box(NodeKind k) { return is_exp_box(k) || k == NodeKind::BotBox; }

int Net::add_node(NodeKind kind, const std::vector<int>& premises, const std::vector<Formula>& types,
                  std::vector<NetPtr> contents, OperationLabel label) {
    int id = next_id++;
    Node n;
    n.kind = kind;
    n.contents = std::move(contents);
    n.label = std::move(label);
    for (std::size_t k = 0; k < premises.size(); ++k) {
        Edge& e = edges.at(premises[k]);
        if (e.dst != kDangling) throw NetError("add_node: premise edge is already attached");
        e.dst = id;
        e.dst_port = static_cast<int>(k);
        n.premises.push_back(premises[k]);
    }
    for (std::size_t k = 0; k < types.size(); ++k) {
        int eid = next_id++;
        edges.emplace(eid, Edge{types[k], id, static_cast<int>(k), kDangling, 0});
        n.conclusions.push_back(eid);
    }
    nodes.emplace(id, std::move(n));
    return id;
}

void Net::add_conclusion(int e) {
    Edge& ed = edges.at(e);
    if (ed.dst != kDangling) throw NetError("add_conclusion: edge is already attached");
    ed.dst = kNetConclusion;
    ed.dst_port = static_cast<int>(conclusions.size());
    conclusions.push_back(e);
}

void Net::attach(int e, int node, int port) {
    Edge& ed = edges.at(e);
    if (ed.dst != kDangling) throw NetError("attach: edge is already attached");
    Node& n = nodes.at(node);
    if (static_cast<std::size_t>(port) >= n.premises.size()) n.premises.resize(static_cast<std::size_t>(port) + 1, -1);
    n.premises[static_cast<std::size_t>(port)] = e;
    ed.dst = node;
    ed.dst_port = port;
}

void Net::take_over(int e, int old) {
    Edge o = edges.at(old);
    Edge& ed = edges.at(e);
    if (ed.dst != kDangling) detach(e);
    ed.dst = o.dst;
    ed.dst_port = o.dst_port;
    if (o.dst == kNetConclusion) {
        conclusions[static_cast<std::size_t>(o.dst_port)] = e;
    } else if (o.dst >= 0) {
        nodes.at(o.dst).premises[static_cast<std::size_t>(o.dst_port)] = e;
    }
    // `old` loses its destination before being erased.
    edges.at(old).dst = kDangling;
    erase_edge(old);
}

void Net::detach(int e) {
    Edge& ed = edges.at(e);
    if (ed.dst >= 0) {
        auto it = nodes.find(ed.dst);
        if (it != nodes.end()) it->second.premises[static_cast<std::size_t>(ed.dst_port)] = -1;
    } else if (ed.dst == kNetConclusion) {
        conclusions[static_cast<std::size_t>(ed.dst_port)] = -1;
    }
    ed.dst = kDangling;
}

void Net::erase_edge(int e) {
    auto it = edges.find(e);
    if (it == edges.end()) return;
    const Edge& ed = it->second;
    if (ed.dst >= 0) {
        auto nit = nodes.find(ed.dst);
        if (nit != nodes.end()) nit->second.premises[static_cast<std::size_t>(ed.dst_port)] = -1;
    }
    auto sit = nodes.find(ed.src);
    if (sit != nodes.end()) sit->second.conclusions[static_cast<std::size_t>(ed.src_port)] = -1;
    edges.erase(it);
}

void Net::erase_node(int n) {
    auto it = nodes.find(n);
    if (it == nodes.end()) return;
    for (int c : it->second.conclusions) {
        if (c >= 0) erase_edge(c);
    }
    for (int p : it->second.premises) {
        if (p < 0) continue;
        auto eit = edges.find(p);
        if (eit != edges.end()) eit->second.dst = kDangling;
    }
    nodes.erase(n);
}

std::vector<int> Net::splice(const Net& content) {
    std::map<int, int> remap;
    for (const auto& [id, n] : content.nodes) remap[id] = next_id++;
    for (const auto& [id, e] : content.edges) remap[id] = next_id++;
    for (const auto& [id, n] : content.nodes) {
        Node m = n;
        for (int& p : m.premises) p = remap.at(p);
        for (int& c : m.conclusions) c = remap.at(c);
        nodes.emplace(remap.at(id), std::move(m));
    }
    for (const auto& [id, e] : content.edges) {
        Edge f = e;
        f.src = remap.at(e.src);
        if (e.dst >= 0) {
            f.dst = remap.at(e.dst);
        } else {
            f.dst = kDangling;
            f.dst_port = 0;
        }
        edges.emplace(remap.at(id), std::move(f));
    }
    std::vector<int> out;
    out.reserve(content.conclusions.size());
    for (int c : content.conclusions) out.push_back(remap.at(c));
    return out;
}

std::vector<Formula> Net::conclusion_types() const {
    std::vector<Formula> out;
    for (int c : conclusions) out.push_back(edges.at(c).type);
    return out;
}

std::size_t Net::total_size() const {
    std::size_t s = nodes.size();
    for (const auto& [id, n] : nodes) {
        for (const auto& c : n.contents) s += c->total_size();
    }
    return s;
}

// ------------------------------------------------------------ well-formed

namespace {

[[noreturn]] void bad(int node, const std::string& what) {
    throw NetError("node " + std::to_string(node) + ": " + what);
}

}  // namespace

void check_wellformed(const Net& net, bool recursive) {
    for (std::size_t k = 0; k < net.conclusions.size(); ++k) {
        int c = net.conclusions[k];
        auto it = net.edges.find(c);
        if (it == net.edges.end()) throw NetError("net conclusion " + std::to_string(k) + " is missing");
        if (it->second.dst != kNetConclusion || it->second.dst_port != static_cast<int>(k)) {
            throw NetError("net conclusion " + std::to_string(k) + " is not marked as such");
        }
    }
    for (const auto& [id, e] : net.edges) {
        auto sit = net.nodes.find(e.src);
        if (sit == net.nodes.end() || sit->second.conclusions.size() <= static_cast<std::size_t>(e.src_port) ||
            sit->second.conclusions[static_cast<std::size_t>(e.src_port)] != id) {
            throw NetError("edge " + std::to_string(id) + " has a broken source");
        }
        if (e.dst == kDangling) throw NetError("edge " + std::to_string(id) + " is dangling");
        if (e.dst >= 0) {
            auto dit = net.nodes.find(e.dst);
            if (dit == net.nodes.end() || dit->second.premises.size() <= static_cast<std::size_t>(e.dst_port) ||
                dit->second.premises[static_cast<std::size_t>(e.dst_port)] != id) {
                throw NetError("edge " + std::to_string(id) + " has a broken target");
            }
        }
    }
    auto ty = [&](int e) -> const Formula& { return net.edges.at(e).type; };
    for (const auto& [id, n] : net.nodes) {
        auto arity = [&](std::size_t p, std::size_t c) {
            if (n.premises.size() != p || n.conclusions.size() != c) bad(id, "wrong number of ports");
        };
        for (int e : n.premises) {
            if (e < 0 || !net.edges.count(e)) bad(id, "missing premise");
        }
        for (int e : n.conclusions) {
            if (e < 0 || !net.edges.count(e)) bad(id, "missing conclusion");
        }
        switch (n.kind) {
            case NodeKind::Ax:
                arity(0, 2);
                if (!(ty(n.conclusions[0]) == ty(n.conclusions[1]).neg())) bad(id, "ax conclusions not dual");
                break;
            case NodeKind::Cut:
                arity(2, 0);
                if (!(ty(n.premises[0]) == ty(n.premises[1]).neg())) bad(id, "cut premises not dual");
                break;
            case NodeKind::Tensor:
                arity(2, 1);
                if (!(ty(n.conclusions[0]) == Formula::tensor(ty(n.premises[0]), ty(n.premises[1]))))
                    bad(id, "tensor typing");
                break;
            case NodeKind::Par:
                arity(2, 1);
                if (!(ty(n.conclusions[0]) == Formula::par(ty(n.premises[0]), ty(n.premises[1])))) bad(id, "par typing");
                break;
            case NodeKind::One:
                arity(0, 1);
                if (ty(n.conclusions[0]).kind() != Connective::One) bad(id, "one typing");
                break;
            case NodeKind::Bot:
                arity(0, 1);
                if (ty(n.conclusions[0]).kind() != Connective::Bot) bad(id, "bot typing");
                break;
            case NodeKind::Der:
                arity(1, 1);
                if (!(ty(n.conclusions[0]) == Formula::whynot(ty(n.premises[0])))) bad(id, "dereliction typing");
                break;
            case NodeKind::Weak:
                arity(0, 1);
                if (ty(n.conclusions[0]).kind() != Connective::WhyNot) bad(id, "weakening typing");
                break;
            case NodeKind::Contr:
                arity(2, 1);
                if (!(ty(n.premises[0]) == ty(n.conclusions[0])) || !(ty(n.premises[1]) == ty(n.conclusions[0])) ||
                    ty(n.conclusions[0]).kind() != Connective::WhyNot)
                    bad(id, "contraction typing");
                break;
            case NodeKind::Sync: {
                if (n.premises.size() != n.conclusions.size() || n.premises.empty()) bad(id, "sync arity");
                std::size_t ones = 0;
                for (std::size_t k = 0; k < n.premises.size(); ++k) {
                    const Formula& f = ty(n.premises[k]);
                    if (!(f == ty(n.conclusions[k]))) bad(id, "sync conclusion types differ from premises");
                    if (!f.is_positive() || f.kind() == Connective::OfCourse) bad(id, "sync premise not a tensor of 1");
                    ones += f.count_ones();
                }
                if (ones != n.label.arity) bad(id, "sync label arity mismatch");
                break;
            }
            case NodeKind::BangBox:
            case NodeKind::YBox: {
                if (!n.premises.empty() || n.conclusions.empty() || n.contents.size() != 1) bad(id, "box ports");
                const Net& c = *n.contents[0];
                std::size_t extra = n.kind == NodeKind::YBox ? 1 : 0;
                if (c.conclusions.size() != n.conclusions.size() + extra) bad(id, "box content interface");
                const Formula& a = ty(n.conclusions[0]);
                if (a.kind() != Connective::OfCourse || !(c.edge(c.conclusions[0]).type == a.body()))
                    bad(id, "box principal typing");
                if (extra && !(c.edge(c.conclusions[1]).type == Formula::whynot(a.body().neg())))
                    bad(id, "Y-box recursion door typing");
                for (std::size_t k = 1; k < n.conclusions.size(); ++k) {
                    const Formula& g = ty(n.conclusions[k]);
                    if (g.kind() != Connective::WhyNot || !(c.edge(c.conclusions[k + extra]).type == g))
                        bad(id, "box auxiliary door typing");
                }
                if (recursive) check_wellformed(c, true);
                break;
            }
            case NodeKind::BotBox: {
                if (!n.premises.empty() || n.conclusions.size() < 2 || n.contents.size() != 2) bad(id, "bot-box ports");
                if (ty(n.conclusions[0]).kind() != Connective::Bot) bad(id, "bot-box principal typing");
                for (const auto& cp : n.contents) {
                    const Net& c = *cp;
                    if (c.conclusions.size() != n.conclusions.size()) bad(id, "bot-box content interface");
                    const Edge& b = c.edge(c.conclusions[0]);
                    if (c.node(b.src).kind != NodeKind::Bot) bad(id, "bot-box content lacks its bot node");
                    for (std::size_t k = 1; k < n.conclusions.size(); ++k) {
                        if (!(c.edge(c.conclusions[k]).type == ty(n.conclusions[k])))
                            bad(id, "bot-box auxiliary typing");
                    }
                    if (recursive) check_wellformed(c, true);
                }
                break;
            }
        }
    }
}

bool has_cut(const Net& net) {
    for (const auto& [id, n] : net.nodes) {
        if (n.kind == NodeKind::Cut) return true;
    }
    return false;
}

}  // namespace memgoi
