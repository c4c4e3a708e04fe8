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

const char* redex_kind_name(RedexKind k) {
    switch (k) {
        case RedexKind::Ax:
            return "ax";
        case RedexKind::TensorPar:
            return "tensor-par";
        case RedexKind::DBox:
            return "der-box";
        case RedexKind::YUnfold:
            return "y-unfold";
        case RedexKind::WBox:
            return "weak-box";
        case RedexKind::CBox:
            return "contr-box";
        case RedexKind::BoxComm:
            return "box-box";
        case RedexKind::BotLeft:
            return "bot-false";
        case RedexKind::BotRight:
            return "bot-true";
        case RedexKind::Sync:
            return "sync";
    }
    return "?";
}

namespace {

struct Side {
    int edge;
    int node;
    int port;
    NodeKind kind;
};

Side side_of(const Net& net, int e) {
    const Edge& ed = net.edge(e);
    return {e, ed.src, ed.src_port, net.node(ed.src).kind};
}

bool closed_box(const Net& net, int n) {
    const Node& b = net.node(n);
    return is_exp_box(b.kind) && b.conclusions.size() == 1;
}

std::optional<RedexKind> classify_cut(const Net& net, int cut) {
    const Node& c = net.node(cut);
    Side a = side_of(net, c.premises[0]);
    Side b = side_of(net, c.premises[1]);
    if (a.kind == NodeKind::Ax || b.kind == NodeKind::Ax) {
        if (a.node == b.node) return std::nullopt;
        return RedexKind::Ax;
    }
    if ((a.kind == NodeKind::Tensor && b.kind == NodeKind::Par) ||
        (a.kind == NodeKind::Par && b.kind == NodeKind::Tensor))
        return RedexKind::TensorPar;
    if (is_exp_box(b.kind) && b.port == 0) std::swap(a, b);
    if (is_exp_box(a.kind) && a.port == 0) {
        if (!closed_box(net, a.node)) return std::nullopt;
        switch (b.kind) {
            case NodeKind::Der:
                return a.kind == NodeKind::YBox ? RedexKind::YUnfold : RedexKind::DBox;
            case NodeKind::Weak:
                return RedexKind::WBox;
            case NodeKind::Contr:
                return RedexKind::CBox;
            case NodeKind::BangBox:
            case NodeKind::YBox:
                if (b.port >= 1) return RedexKind::BoxComm;
                return std::nullopt;
            default:
                return std::nullopt;
        }
    }
    return std::nullopt;
}

void collect_leaves(const Net& net, int e, std::vector<int>& out, bool& ok) {
    const Edge& ed = net.edge(e);
    const Node& n = net.node(ed.src);
    if (n.kind == NodeKind::One) {
        out.push_back(ed.src);
    } else if (n.kind == NodeKind::Tensor) {
        collect_leaves(net, n.premises[0], out, ok);
        collect_leaves(net, n.premises[1], out, ok);
    } else {
        ok = false;
    }
}

// Removes conclusion slot `k` of a net whose edge there has been detached.
void drop_conclusion_slot(Net& net, std::size_t k) {
    net.conclusions.erase(net.conclusions.begin() + static_cast<std::ptrdiff_t>(k));
    for (std::size_t j = k; j < net.conclusions.size(); ++j) net.edges.at(net.conclusions[j]).dst_port = static_cast<int>(j);
}

}  // namespace

std::optional<BotCut> bot_cut(const Net& net, int cut) {
    const Node& c = net.node(cut);
    if (c.kind != NodeKind::Cut) return std::nullopt;
    Side a = side_of(net, c.premises[0]);
    Side b = side_of(net, c.premises[1]);
    if (b.kind == NodeKind::One) std::swap(a, b);
    if (a.kind == NodeKind::One && b.kind == NodeKind::BotBox && b.port == 0) return BotCut{a.node, b.node};
    return std::nullopt;
}

std::optional<std::vector<int>> sync_leaves(const Net& net, int sync) {
    const Node& s = net.node(sync);
    if (s.kind != NodeKind::Sync) return std::nullopt;
    std::vector<int> out;
    bool ok = true;
    for (int p : s.premises) collect_leaves(net, p, out, ok);
    if (!ok || out.size() != s.label.arity) return std::nullopt;
    return out;
}

std::vector<Redex> find_redexes(const Net& net) {
    std::vector<Redex> out;
    for (const auto& [id, n] : net.nodes) {
        if (n.kind == NodeKind::Cut) {
            if (bot_cut(net, id)) {
                out.push_back({RedexKind::BotLeft, id});
                out.push_back({RedexKind::BotRight, id});
            } else if (auto k = classify_cut(net, id)) {
                out.push_back({*k, id});
            }
        } else if (n.kind == NodeKind::Sync) {
            if (sync_leaves(net, id)) out.push_back({RedexKind::Sync, id});
        }
    }
    return out;
}

Net reduce(const Net& net, const Redex& r) {
    Net m = net;
    if (r.kind == RedexKind::Sync) {
        if (!sync_leaves(net, r.node)) throw NetError("sync node is not ready");
        Node s = m.node(r.node);
        for (std::size_t k = 0; k < s.premises.size(); ++k) m.take_over(s.premises[k], s.conclusions[k]);
        m.erase_node(r.node);
        return m;
    }
    const Node& cut = net.node(r.node);
    if (cut.kind != NodeKind::Cut) throw NetError("redex is not a cut");
    if (r.kind == RedexKind::BotLeft || r.kind == RedexKind::BotRight) {
        auto bc = bot_cut(net, r.node);
        if (!bc) throw NetError("not a bot-box test");
        Node box = net.node(bc->box);
        m.erase_node(r.node);
        m.erase_node(bc->one);
        const Net& content = *box.contents[r.kind == RedexKind::BotLeft ? 0 : 1];
        auto c = m.splice(content);
        m.erase_node(m.edge(c[0]).src);
        for (std::size_t k = 1; k < c.size(); ++k) m.take_over(c[k], box.conclusions[k]);
        m.erase_node(bc->box);
        return m;
    }
    auto kind = classify_cut(net, r.node);
    if (!kind || *kind != r.kind) throw NetError(std::string("not a ") + redex_kind_name(r.kind) + " redex");
    Side a = side_of(net, cut.premises[0]);
    Side b = side_of(net, cut.premises[1]);
    switch (r.kind) {
        case RedexKind::Ax: {
            if (a.kind != NodeKind::Ax) std::swap(a, b);
            int other = net.node(a.node).conclusions[static_cast<std::size_t>(1 - a.port)];
            m.erase_node(r.node);
            m.take_over(b.edge, other);
            m.erase_node(a.node);
            return m;
        }
        case RedexKind::TensorPar: {
            if (a.kind != NodeKind::Tensor) std::swap(a, b);
            Node t = net.node(a.node);
            Node p = net.node(b.node);
            m.erase_node(r.node);
            m.erase_node(a.node);
            m.erase_node(b.node);
            m.add_node(NodeKind::Cut, {t.premises[0], p.premises[0]}, {});
            m.add_node(NodeKind::Cut, {t.premises[1], p.premises[1]}, {});
            return m;
        }
        default:
            break;
    }
    if (!(is_exp_box(a.kind) && a.port == 0)) std::swap(a, b);
    Node box = net.node(a.node);
    Node other = net.node(b.node);
    switch (r.kind) {
        case RedexKind::DBox:
        case RedexKind::YUnfold: {
            m.erase_node(r.node);
            m.erase_node(a.node);
            m.erase_node(b.node);
            auto c = m.splice(*box.contents[0]);
            m.add_node(NodeKind::Cut, {c[0], other.premises[0]}, {});
            if (r.kind == RedexKind::YUnfold) {
                Formula bang = net.edge(a.edge).type;
                int copy = m.add_node(NodeKind::YBox, {}, {bang}, box.contents);
                m.add_node(NodeKind::Cut, {m.concl(copy), c[1]}, {});
            }
            return m;
        }
        case RedexKind::WBox:
            m.erase_node(r.node);
            m.erase_node(a.node);
            m.erase_node(b.node);
            return m;
        case RedexKind::CBox: {
            m.erase_node(r.node);
            m.erase_node(a.node);
            m.erase_node(b.node);
            Formula bang = net.edge(a.edge).type;
            for (int k = 0; k < 2; ++k) {
                int copy = m.add_node(box.kind, {}, {bang}, box.contents);
                m.add_node(NodeKind::Cut, {m.concl(copy), other.premises[static_cast<std::size_t>(k)]}, {});
            }
            return m;
        }
        case RedexKind::BoxComm: {
            // a: closed box, principal door; b: auxiliary door b.port of the host.
            std::size_t slot = static_cast<std::size_t>(b.port) + (other.kind == NodeKind::YBox ? 1 : 0);
            Net inner = *other.contents[0];
            int ce = inner.conclusions[slot];
            inner.detach(ce);
            drop_conclusion_slot(inner, slot);
            Formula bang = net.edge(a.edge).type;
            int moved = inner.add_node(box.kind, {}, {bang}, box.contents);
            inner.add_node(NodeKind::Cut, {inner.concl(moved), ce}, {});

            m.erase_node(r.node);
            m.erase_node(a.node);
            m.erase_edge(b.edge);
            Node& host = m.nodes.at(b.node);
            host.conclusions.erase(host.conclusions.begin() + b.port);
            for (std::size_t j = 0; j < host.conclusions.size(); ++j) m.edges.at(host.conclusions[j]).src_port = static_cast<int>(j);
            host.contents[0] = std::make_shared<const Net>(std::move(inner));
            return m;
        }
        default:
            break;
    }
    throw NetError("unhandled redex");
}

}  // namespace memgoi
