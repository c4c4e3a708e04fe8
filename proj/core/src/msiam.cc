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

#include "memgoi/msiam.h"

#include <deque>
#include <stdexcept>

namespace memgoi::msiam {

// ---------------------------------------------------------------- stacks

namespace {

SigPtr make_sig(SigKind k, SigPtr a, SigPtr b, std::string text) {
    auto s = std::make_shared<Sig>();
    s->kind = k;
    s->a = std::move(a);
    s->b = std::move(b);
    s->text = std::move(text);
    return s;
}

}  // namespace

SigPtr Sig::star() {
    static const SigPtr s = make_sig(SigKind::Star, nullptr, nullptr, "*");
    return s;
}
SigPtr Sig::l(SigPtr s) {
    std::string t = "l(" + s->text + ")";
    return make_sig(SigKind::L, std::move(s), nullptr, std::move(t));
}
SigPtr Sig::r(SigPtr s) {
    std::string t = "r(" + s->text + ")";
    return make_sig(SigKind::R, std::move(s), nullptr, std::move(t));
}
SigPtr Sig::pair(SigPtr s, SigPtr t) {
    std::string x = "<" + s->text + "," + t->text + ">";
    return make_sig(SigKind::Pair, std::move(s), std::move(t), std::move(x));
}
SigPtr Sig::y(SigPtr s, SigPtr t) {
    std::string x = "y(" + s->text + "," + t->text + ")";
    return make_sig(SigKind::Y, std::move(s), std::move(t), std::move(x));
}
SigPtr Sig::left() {
    static const SigPtr s = make_sig(SigKind::Left, nullptr, nullptr, "l");
    return s;
}
SigPtr Sig::right() {
    static const SigPtr s = make_sig(SigKind::Right, nullptr, nullptr, "r");
    return s;
}

std::string Stack::str() const {
    if (items.empty()) return delta ? "δ" : "ε";
    std::string s;
    for (auto it = items.rbegin(); it != items.rend(); ++it) {
        if (!s.empty()) s += ".";
        s += (*it)->text;
    }
    if (delta) s += ".δ";
    return s;
}

std::string box_stack_str(const std::vector<SigPtr>& b) {
    if (b.empty()) return "ε";
    std::string s;
    for (auto it = b.rbegin(); it != b.rend(); ++it) {
        if (!s.empty()) s += ".";
        s += (*it)->text;
    }
    return s;
}

Position Position::make(int edge, Stack f, std::vector<SigPtr> b) {
    Position p;
    p.edge = edge;
    p.key = f.str() + "|" + box_stack_str(b);
    p.f = std::move(f);
    p.b = std::move(b);
    return p;
}

const Formula* indicated(const Stack& s, const Formula& a) {
    const Formula* f = &a;
    std::size_t idx = s.items.size();
    while (true) {
        Connective k = f->kind();
        if (idx == 0) {
            if (s.delta) return nullptr;
            return f->is_unit() ? f : nullptr;
        }
        const SigPtr& head = s.items[idx - 1];
        switch (k) {
            case Connective::Tensor:
            case Connective::Par:
                if (head->kind == SigKind::Left) {
                    f = &f->left();
                } else if (head->kind == SigKind::Right) {
                    f = &f->right();
                } else {
                    return nullptr;
                }
                --idx;
                break;
            case Connective::OfCourse:
            case Connective::WhyNot:
                if (!head->is_exponential()) return nullptr;
                --idx;
                if (idx == 0 && s.delta) return f;
                f = &f->body();
                break;
            default:
                return nullptr;
        }
    }
}

std::optional<Connective> indicator(const Stack& s, const Formula& a) {
    const Formula* f = indicated(s, a);
    if (!f) return std::nullopt;
    return f->kind();
}

// ----------------------------------------------------------------- graph

namespace {

struct GraphBuilder {
    Graph g;

    int add(const Net& net, int parent, int box, int index, int depth, std::map<int, int>* node_map) {
        int sid = static_cast<int>(g.structures.size());
        g.structures.push_back({});
        g.structures[static_cast<std::size_t>(sid)].box = box;
        g.structures[static_cast<std::size_t>(sid)].index = index;
        g.structures[static_cast<std::size_t>(sid)].parent = parent;
        g.structures[static_cast<std::size_t>(sid)].depth = depth;
        std::map<int, int> nmap, emap;
        for (const auto& [id, n] : net.nodes) {
            nmap[id] = static_cast<int>(g.nodes.size());
            g.nodes.push_back({n.kind, {}, {}, n.label, sid, {}});
        }
        for (const auto& [id, e] : net.edges) {
            emap[id] = static_cast<int>(g.edges.size());
            Graph::GEdge ge{e.type};
            ge.src = nmap.at(e.src);
            ge.src_port = e.src_port;
            ge.dst = e.dst >= 0 ? nmap.at(e.dst) : -1;
            ge.dst_port = e.dst_port;
            ge.structure = sid;
            ge.door = e.dst == kNetConclusion ? e.dst_port : -1;
            g.edges.push_back(ge);
        }
        for (const auto& [id, n] : net.nodes) {
            auto& gn = g.nodes[static_cast<std::size_t>(nmap.at(id))];
            for (int e : n.premises) gn.premises.push_back(emap.at(e));
            for (int e : n.conclusions) gn.conclusions.push_back(emap.at(e));
        }
        for (int c : net.conclusions) g.structures[static_cast<std::size_t>(sid)].conclusions.push_back(emap.at(c));
        for (const auto& [id, n] : net.nodes) {
            int gid = nmap.at(id);
            auto& st = g.structures[static_cast<std::size_t>(sid)];
            if (n.kind == NodeKind::One) st.ones.push_back(gid);
            if (n.kind == NodeKind::Der) st.ders.push_back(gid);
            if (n.kind == NodeKind::Sync) st.syncs.push_back(gid);
            if (!n.contents.empty()) {
                int d = is_exp_box(n.kind) ? depth + 1 : depth;
                std::vector<int> cs;
                for (std::size_t k = 0; k < n.contents.size(); ++k) {
                    cs.push_back(add(*n.contents[k], sid, gid, static_cast<int>(k), d, nullptr));
                }
                g.nodes[static_cast<std::size_t>(gid)].contents = cs;
            }
        }
        if (node_map) *node_map = nmap;
        return sid;
    }
};

std::vector<SigPtr> pushed(std::vector<SigPtr> v, SigPtr s) {
    v.push_back(std::move(s));
    return v;
}

std::vector<SigPtr> popped(std::vector<SigPtr> v) {
    v.pop_back();
    return v;
}

Stack push(Stack s, SigPtr x) {
    s.items.push_back(std::move(x));
    return s;
}

Stack pop(Stack s) {
    s.items.pop_back();
    return s;
}

// Formula-stack paths to every 1 leaf of a ⊗-tree of units.
std::vector<Stack> leaf_paths(const Formula& f) {
    if (f.kind() != Connective::Tensor) return {Stack{}};
    std::vector<Stack> out;
    for (auto& s : leaf_paths(f.left())) out.push_back(push(std::move(s), Sig::left()));
    for (auto& s : leaf_paths(f.right())) out.push_back(push(std::move(s), Sig::right()));
    return out;
}

}  // namespace

Graph Graph::build(const Net& net) {
    GraphBuilder b;
    b.add(net, -1, -1, 0, 0, &b.g.root_node);
    return std::move(b.g);
}

Direction direction(const Graph& g, const Position& p) {
    const auto& e = g.edges.at(static_cast<std::size_t>(p.edge));
    if (p.f.is_delta()) return Direction::Stable;
    if (g.nodes[static_cast<std::size_t>(e.src)].kind == NodeKind::Bot) return Direction::Stable;
    auto k = indicator(p.f, e.type);
    if (!k) return Direction::Invalid;
    switch (*k) {
        case Connective::One:
        case Connective::WhyNot:
            return Direction::Down;
        case Connective::Bot:
        case Connective::OfCourse:
            return Direction::Up;
        default:
            return Direction::Invalid;
    }
}

std::string describe(const Transition& t) {
    std::string what;
    switch (t.kind) {
        case TransitionKind::Move:
            what = "move";
            break;
        case TransitionKind::Spawn:
            what = "spawn";
            break;
        case TransitionKind::Sync:
            what = "sync n" + std::to_string(t.node);
            break;
        case TransitionKind::Test:
            what = "test";
            break;
    }
    return what + " e" + std::to_string(t.pos.edge) + " " + t.pos.key;
}

// --------------------------------------------------------------- machine

struct MsiamSystem::Outcome {
    enum Kind { Move, Test, SyncWait, BotWait, Stuck, Final, Stable } kind;
    Position next;
};

MsiamSystem::MsiamSystem(const ProgramNet& pn)
    : graph_(std::make_shared<const Graph>(Graph::build(pn.net))), memory_(pn.memory) {
    for (const auto& [n, a] : pn.ind) active_[graph_->root_node.at(n)] = a;
}

MachineState MsiamSystem::initial_state() const {
    MachineState st;
    st.memory = memory_;
    const auto& root = graph_->structures.front();
    for (int c : root.conclusions) {
        const Formula& f = graph_->edges[static_cast<std::size_t>(c)].type;
        if (f.str().find_first_of("!?") != std::string::npos) {
            throw std::invalid_argument("conclusions with exponentials have no finite initial state");
        }
        // Upward positions are the paths to ⊥ leaves.
        std::vector<std::pair<const Formula*, Stack>> todo{{&f, Stack{}}};
        while (!todo.empty()) {
            auto [g, s] = todo.back();
            todo.pop_back();
            if (g->kind() == Connective::Tensor || g->kind() == Connective::Par) {
                Stack sl = s, sr = s;
                sl.items.insert(sl.items.begin(), Sig::left());
                sr.items.insert(sr.items.begin(), Sig::right());
                todo.push_back({&g->left(), sl});
                todo.push_back({&g->right(), sr});
            } else if (g->kind() == Connective::Bot) {
                Position p = Position::make(c, s, {});
                st.tokens[p] = p;
                st.origins.insert(p);
            }
        }
    }
    for (const auto& [n, a] : active_) {
        Position p = Position::make(graph_->nodes[static_cast<std::size_t>(n)].conclusions[0], Stack{}, {});
        st.ind[p] = a;
    }
    return canonical(std::move(st));
}

std::vector<std::vector<SigPtr>> MsiamSystem::copies(const MachineState& st, int structure) const {
    const auto& s = graph_->structures.at(static_cast<std::size_t>(structure));
    if (s.box < 0) return {{}};
    const auto& box = graph_->nodes[static_cast<std::size_t>(s.box)];
    int e = s.conclusions[0];
    bool exp = is_exp_box(box.kind);
    std::vector<std::vector<SigPtr>> out;
    Position lo;
    lo.edge = e;
    for (auto it = st.tokens.lower_bound(lo); it != st.tokens.end() && it->first.edge == e; ++it) {
        const Stack& f = it->first.f;
        if (exp ? f.is_delta() : f.is_empty()) out.push_back(it->first.b);
    }
    return out;
}

MsiamSystem::Outcome MsiamSystem::outcome(const MachineState& st, const Position& p) const {
    const Graph& g = *graph_;
    const auto& e = g.edges[static_cast<std::size_t>(p.edge)];
    auto move_to = [](int edge, Stack f, std::vector<SigPtr> b) {
        return Outcome{Outcome::Move, Position::make(edge, std::move(f), std::move(b))};
    };
    const Outcome stuck{Outcome::Stuck, {}};
    Direction d = direction(g, p);
    if (d == Direction::Stable) return {Outcome::Stable, {}};
    if (d == Direction::Invalid) return stuck;
    const Stack& f = p.f;
    const auto& b = p.b;
    if (d == Direction::Down) {
        if (e.dst < 0) {
            const auto& s = g.structures[static_cast<std::size_t>(e.structure)];
            if (s.box < 0) return {Outcome::Final, {}};
            const auto& box = g.nodes[static_cast<std::size_t>(s.box)];
            int j = e.door;
            if (box.kind == NodeKind::BotBox) {
                return move_to(box.conclusions[static_cast<std::size_t>(j)], f, b);
            }
            bool y = box.kind == NodeKind::YBox;
            if (b.empty()) return stuck;
            const SigPtr& top = b.back();
            if (j == 0) {
                if (y && top->kind == SigKind::Y) {
                    return move_to(s.conclusions[1], push(f, top->b), pushed(popped(b), top->a));
                }
                return move_to(box.conclusions[0], push(f, top), popped(b));
            }
            if (f.items.empty() || !f.items.back()->is_exponential()) return stuck;
            const SigPtr& rho = f.items.back();
            if (y && j == 1) {
                return move_to(s.conclusions[0], pop(f), pushed(popped(b), Sig::y(top, rho)));
            }
            int out = y ? j - 1 : j;
            return move_to(box.conclusions[static_cast<std::size_t>(out)], push(pop(f), Sig::pair(top, rho)),
                           popped(b));
        }
        const auto& n = g.nodes[static_cast<std::size_t>(e.dst)];
        switch (n.kind) {
            case NodeKind::Cut:
                return move_to(n.premises[e.dst_port == 0 ? 1 : 0], f, b);
            case NodeKind::Tensor:
            case NodeKind::Par:
                return move_to(n.conclusions[0], push(f, e.dst_port == 0 ? Sig::left() : Sig::right()), b);
            case NodeKind::Der:
                return move_to(n.conclusions[0], push(f, Sig::star()), b);
            case NodeKind::Contr: {
                if (f.items.empty() || !f.items.back()->is_exponential()) return stuck;
                SigPtr s = e.dst_port == 0 ? Sig::l(f.items.back()) : Sig::r(f.items.back());
                return move_to(n.conclusions[0], push(pop(f), s), b);
            }
            case NodeKind::Sync:
                return {Outcome::SyncWait, {}};
            default:
                return stuck;
        }
    }
    // Up: cross the source node from its conclusion side.
    const auto& n = g.nodes[static_cast<std::size_t>(e.src)];
    int c = e.src_port;
    const SigPtr* head = f.items.empty() ? nullptr : &f.items.back();
    switch (n.kind) {
        case NodeKind::Ax:
            return move_to(n.conclusions[c == 0 ? 1 : 0], f, b);
        case NodeKind::Tensor:
        case NodeKind::Par:
            if (!head) return stuck;
            if ((*head)->kind == SigKind::Left) return move_to(n.premises[0], pop(f), b);
            if ((*head)->kind == SigKind::Right) return move_to(n.premises[1], pop(f), b);
            return stuck;
        case NodeKind::Der:
            if (!head || (*head)->kind != SigKind::Star) return stuck;
            return move_to(n.premises[0], pop(f), b);
        case NodeKind::Contr:
            if (!head) return stuck;
            if ((*head)->kind == SigKind::L) return move_to(n.premises[0], push(pop(f), (*head)->a), b);
            if ((*head)->kind == SigKind::R) return move_to(n.premises[1], push(pop(f), (*head)->a), b);
            return stuck;
        case NodeKind::BangBox:
        case NodeKind::YBox: {
            const auto& s = g.structures[static_cast<std::size_t>(n.contents[0])];
            if (!head || !(*head)->is_exponential()) return stuck;
            if (c == 0) return move_to(s.conclusions[0], pop(f), pushed(b, *head));
            if ((*head)->kind != SigKind::Pair) return stuck;
            int in = n.kind == NodeKind::YBox ? c + 1 : c;
            return move_to(s.conclusions[static_cast<std::size_t>(in)], push(pop(f), (*head)->b),
                           pushed(b, (*head)->a));
        }
        case NodeKind::BotBox: {
            if (c == 0) return {Outcome::Test, {}};
            for (int sid : n.contents) {
                const auto& s = g.structures[static_cast<std::size_t>(sid)];
                if (st.tokens.count(Position::make(s.conclusions[0], Stack{}, b))) {
                    return move_to(s.conclusions[static_cast<std::size_t>(c)], f, b);
                }
            }
            return {Outcome::BotWait, {}};
        }
        default:
            return stuck;
    }
}

std::vector<Position> MsiamSystem::sync_leaves(const MachineState& st, int node,
                                               const std::vector<SigPtr>& t) const {
    const auto& n = graph_->nodes[static_cast<std::size_t>(node)];
    std::vector<Position> out;
    for (int e : n.premises) {
        for (auto& s : leaf_paths(graph_->edges[static_cast<std::size_t>(e)].type)) {
            Position p = Position::make(e, std::move(s), t);
            if (!st.tokens.count(p)) return {};
            out.push_back(std::move(p));
        }
    }
    return out;
}

void MsiamSystem::spawn_candidates_in(const MachineState& st, int structure, const std::vector<SigPtr>& t,
                                      std::vector<Position>& out) const {
    const auto& s = graph_->structures[static_cast<std::size_t>(structure)];
    for (int n : s.ones) {
        Position p = Position::make(graph_->nodes[static_cast<std::size_t>(n)].conclusions[0], Stack{}, t);
        if (!st.origins.count(p)) out.push_back(std::move(p));
    }
    for (int n : s.ders) {
        Stack f{{Sig::star()}, true};
        Position p = Position::make(graph_->nodes[static_cast<std::size_t>(n)].conclusions[0], f, t);
        if (!st.origins.count(p)) out.push_back(std::move(p));
    }
}

std::vector<Position> MsiamSystem::spawn_candidates(const MachineState& st) const {
    std::vector<Position> out;
    for (std::size_t sid = 0; sid < graph_->structures.size(); ++sid) {
        const auto& s = graph_->structures[sid];
        if (s.ones.empty() && s.ders.empty()) continue;
        for (const auto& t : copies(st, static_cast<int>(sid))) spawn_candidates_in(st, static_cast<int>(sid), t, out);
    }
    return out;
}

void MsiamSystem::spawn(MachineState& st, const Position& p, std::set<Address>* used) const {
    if (st.tokens.count(p)) throw std::logic_error("msiam: spawn on an occupied position");
    st.tokens[p] = p;
    st.origins.insert(p);
    const auto& src = graph_->nodes[static_cast<std::size_t>(graph_->edges[static_cast<std::size_t>(p.edge)].src)];
    if (src.kind == NodeKind::One && !st.ind.count(p)) {
        std::set<Address> local;
        if (!used) {
            for (const auto& kv : st.ind) local.insert(kv.second);
            used = &local;
        }
        Address a = st.memory.fresh(*used);
        st.ind[p] = a;
        used->insert(a);
    }
    log("spawn e" + std::to_string(p.edge) + " " + p.key, st);
}

void MsiamSystem::move(MachineState& st, const Position& from, const Position& to) const {
    auto it = st.tokens.find(from);
    Position orig = it->second;
    st.tokens.erase(it);
    auto [jt, inserted] = st.tokens.emplace(to, orig);
    if (!inserted) throw std::logic_error("msiam: two tokens on one position e" + std::to_string(to.edge));
    if (trace) log("move e" + std::to_string(from.edge) + " " + from.key + " -> e" + std::to_string(to.edge) + " " +
                   to.key, st);
}

void MsiamSystem::fire_sync(MachineState& st, int node, const std::vector<Position>& leaves) const {
    const auto& n = graph_->nodes[static_cast<std::size_t>(node)];
    std::vector<Address> tuple;
    for (const auto& p : leaves) tuple.push_back(st.ind.at(st.tokens.at(p)));
    st.memory = st.memory.update(tuple, n.label);
    for (const auto& p : leaves) {
        int out = n.conclusions[static_cast<std::size_t>(graph_->edges[static_cast<std::size_t>(p.edge)].dst_port)];
        Position q = Position::make(out, p.f, p.b);
        auto it = st.tokens.find(p);
        Position orig = it->second;
        st.tokens.erase(it);
        st.tokens.emplace(q, orig);
    }
    log("sync " + n.label.name + " n" + std::to_string(node), st);
}

void MsiamSystem::log(const std::string& what, const MachineState& st) const {
    if (trace) *trace << what << "  [" << st.tokens.size() << " tokens] " << st.memory.to_string() << "\n";
}

MachineState MsiamSystem::canonical(MachineState st) const {
    Renaming sigma;
    Address next = 0;
    for (const auto& [o, a] : st.ind) {
        if (!sigma.count(a)) sigma[a] = next++;
    }
    for (Address a : st.memory.support()) {
        if (!sigma.count(a)) sigma[a] = next++;
    }
    for (auto& [o, a] : st.ind) a = sigma.at(a);
    st.memory = st.memory.rename(sigma);
    std::string k;
    for (const auto& [p, o] : st.tokens) {
        k += std::to_string(p.edge) + ":" + p.key + "<" + std::to_string(o.edge) + ":" + o.key + ";";
    }
    k += "\nO";
    for (const auto& o : st.origins) k += std::to_string(o.edge) + ":" + o.key + ";";
    k += "\nI";
    for (const auto& [o, a] : st.ind) k += std::to_string(o.edge) + ":" + o.key + ">" + std::to_string(a) + ";";
    k += "\nM" + st.memory.key();
    st.key = std::move(k);
    return st;
}

std::vector<Transition> MsiamSystem::enumerate_redexes(const MachineState& st) const {
    std::vector<Transition> out;
    std::set<std::pair<int, std::string>> syncs;
    for (const auto& [p, o] : st.tokens) {
        Outcome oc = outcome(st, p);
        if (oc.kind == Outcome::Move) {
            out.push_back({TransitionKind::Move, p});
        } else if (oc.kind == Outcome::Test) {
            if (st.ind.count(o)) out.push_back({TransitionKind::Test, p});
        } else if (oc.kind == Outcome::SyncWait) {
            int node = graph_->edges[static_cast<std::size_t>(p.edge)].dst;
            if (!syncs.insert({node, box_stack_str(p.b)}).second) continue;
            auto leaves = sync_leaves(st, node, p.b);
            if (!leaves.empty()) out.push_back({TransitionKind::Sync, leaves.front(), node});
        }
    }
    for (auto& p : spawn_candidates(st)) out.push_back({TransitionKind::Spawn, std::move(p)});
    return out;
}

pars::Distribution<MachineState> MsiamSystem::apply(const MachineState& st, const Transition& t) const {
    pars::Distribution<MachineState> out;
    MachineState next = st;
    switch (t.kind) {
        case TransitionKind::Move: {
            Outcome oc = outcome(st, t.pos);
            if (oc.kind != Outcome::Move) throw std::invalid_argument("msiam: token cannot move");
            move(next, t.pos, oc.next);
            break;
        }
        case TransitionKind::Spawn:
            spawn(next, t.pos);
            break;
        case TransitionKind::Sync: {
            auto leaves = sync_leaves(st, t.node, t.pos.b);
            if (leaves.empty()) throw std::invalid_argument("msiam: sync is not ready");
            fire_sync(next, t.node, leaves);
            break;
        }
        case TransitionKind::Test: {
            const Position& orig = st.tokens.at(t.pos);
            Address i = st.ind.at(orig);
            const auto& box = graph_->nodes[static_cast<std::size_t>(
                graph_->edges[static_cast<std::size_t>(t.pos.edge)].src)];
            for (const auto& [br, p] : st.memory.test(i)) {
                MachineState s = st;
                s.tokens.erase(t.pos);
                const auto& content = graph_->structures[static_cast<std::size_t>(box.contents[br.outcome ? 1 : 0])];
                s.tokens[Position::make(content.conclusions[0], Stack{}, t.pos.b)] = orig;
                s.memory = *br.memory;
                log(std::string("test ") + (br.outcome ? "true" : "false") + " p=" + std::to_string(p), s);
                out.add(canonical(std::move(s)), p);
            }
            return out;
        }
    }
    out.add(canonical(std::move(next)), 1.0);
    return out;
}

MachineState MsiamSystem::close(const MachineState& start, std::size_t cap) const {
    MachineState st = start;
    std::size_t fired = 0;
    std::deque<Position> work;
    for (const auto& [p, o] : st.tokens) work.push_back(p);
    std::set<Address> used;
    for (const auto& kv : st.ind) used.insert(kv.second);
    auto spawn_all = [&](const std::vector<Position>& cands) {
        for (const auto& p : cands) {
            if (fired >= cap) return;
            spawn(st, p, &used);
            ++fired;
            work.push_back(p);
        }
    };
    spawn_all(spawn_candidates(st));
    while (!work.empty() && fired < cap) {
        Position p = std::move(work.front());
        work.pop_front();
        if (!st.tokens.count(p)) continue;
        Outcome oc = outcome(st, p);
        if (oc.kind == Outcome::Move) {
            move(st, p, oc.next);
            ++fired;
            const auto& e = graph_->edges[static_cast<std::size_t>(oc.next.edge)];
            bool opened = oc.next.f.is_delta() && e.dst < 0 && e.door == 0 &&
                          graph_->structures[static_cast<std::size_t>(e.structure)].box >= 0;
            work.push_back(oc.next);
            if (opened) {
                std::vector<Position> cands;
                spawn_candidates_in(st, e.structure, oc.next.b, cands);
                spawn_all(cands);
            }
        } else if (oc.kind == Outcome::SyncWait) {
            int node = graph_->edges[static_cast<std::size_t>(p.edge)].dst;
            auto leaves = sync_leaves(st, node, p.b);
            if (leaves.empty()) continue;
            fire_sync(st, node, leaves);
            ++fired;
            const auto& n = graph_->nodes[static_cast<std::size_t>(node)];
            for (const auto& l : leaves) {
                int out = n.conclusions[static_cast<std::size_t>(graph_->edges[static_cast<std::size_t>(l.edge)].dst_port)];
                work.push_back(Position::make(out, l.f, l.b));
            }
        }
    }
    return canonical(std::move(st));
}

Status MsiamSystem::classify(const MachineState& st) const {
    bool final = true;
    for (const auto& [p, o] : st.tokens) {
        auto k = outcome(st, p).kind;
        if (k != Outcome::Final && k != Outcome::Stable) final = false;
    }
    if (final && spawn_candidates(st).empty()) return Status::Final;
    return enumerate_redexes(st).empty() ? Status::Deadlock : Status::Running;
}

std::string MsiamSystem::observe(const MachineState& st) const {
    std::vector<std::string> parts;
    for (int c : graph_->structures.front().conclusions) {
        for (auto& s : leaf_paths(graph_->edges[static_cast<std::size_t>(c)].type)) {
            auto it = st.tokens.find(Position::make(c, std::move(s), {}));
            if (it == st.tokens.end() || !st.ind.count(it->second)) {
                parts.push_back("<?>");
            } else {
                parts.push_back(st.memory.readout(st.ind.at(it->second)));
            }
        }
    }
    return join_readouts(parts);
}

std::string MsiamSystem::describe(const MachineState& st) const {
    std::string s = "{";
    bool first = true;
    for (const auto& [p, o] : st.tokens) {
        if (!first) s += ", ";
        first = false;
        s += "e" + std::to_string(p.edge) + " " + p.key;
    }
    return s + "} " + st.memory.to_string();
}

}  // namespace memgoi::msiam
