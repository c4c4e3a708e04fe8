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

#include <optional>

#include "memgoi/pcfll.h"

namespace memgoi::pcfll {

namespace {

bool is_linked(const std::string& x) { return !x.empty() && x[0] == kLinkedPrefix; }

void linked_in_order(const Term& t, std::vector<std::string>& out, std::set<std::string>& seen) {
    if (t.kind == TermKind::Var) {
        if (is_linked(t.x) && seen.insert(t.x).second) out.push_back(t.x);
        return;
    }
    for (const TermPtr* c : {&t.a, &t.b, &t.c}) {
        if (*c) linked_in_order(**c, out, seen);
    }
}

TermPtr rename_linked(const TermPtr& t, const std::map<std::string, std::string>& names) {
    switch (t->kind) {
        case TermKind::Var: {
            auto it = names.find(t->x);
            return it == names.end() || it->second == t->x ? t : Term::var(it->second);
        }
        case TermKind::New:
        case TermKind::Const:
            return t;
        default:
            break;
    }
    auto copy = std::make_shared<Term>(*t);
    bool changed = false;
    for (TermPtr* c : {&copy->a, &copy->b, &copy->c}) {
        if (!*c) continue;
        TermPtr r = rename_linked(*c, names);
        changed = changed || r != *c;
        *c = std::move(r);
    }
    return changed ? TermPtr(copy) : t;
}

// Head redex position: the path of child indices (0 = a, 1 = b, 2 = c).
struct Head {
    PcfRedexKind kind;
    std::vector<int> path;
    const Term* node;
};

std::optional<Head> find_head(const Term& t, std::vector<int>& path) {
    auto into = [&](int k, const Term& sub) -> std::optional<Head> {
        path.push_back(k);
        auto h = find_head(sub, path);
        path.pop_back();
        return h;
    };
    auto here = [&](PcfRedexKind k) { return std::optional<Head>(Head{k, path, &t}); };
    switch (t.kind) {
        case TermKind::Var:
        case TermKind::Lam:
        case TermKind::Const:
            return std::nullopt;
        case TermKind::New:
            return here(PcfRedexKind::Link);
        case TermKind::LetRec:
            return here(PcfRedexKind::LetRec);
        case TermKind::Pair:
            if (!is_value(*t.a)) return into(0, *t.a);
            if (!is_value(*t.b)) return into(1, *t.b);
            return std::nullopt;
        case TermKind::App:
            if (!is_value(*t.a)) return into(0, *t.a);
            if (!is_value(*t.b)) return into(1, *t.b);
            if (t.a->kind == TermKind::Lam) return here(PcfRedexKind::Beta);
            if (t.a->kind == TermKind::Const) return here(PcfRedexKind::Update);
            return std::nullopt;
        case TermKind::LetPair:
            if (!is_value(*t.a)) return into(0, *t.a);
            if (t.a->kind == TermKind::Pair) return here(PcfRedexKind::LetPair);
            return std::nullopt;
        case TermKind::If:
            if (!is_value(*t.a)) return into(0, *t.a);
            if (t.a->kind == TermKind::Var && is_linked(t.a->x)) return here(PcfRedexKind::Test);
            return std::nullopt;
    }
    return std::nullopt;
}

std::optional<Head> find_head(const Term& t) {
    std::vector<int> path;
    return find_head(t, path);
}

TermPtr plug(const TermPtr& t, const std::vector<int>& path, std::size_t depth, const TermPtr& sub) {
    if (depth == path.size()) return sub;
    auto copy = std::make_shared<Term>(*t);
    TermPtr* slot = path[depth] == 0 ? &copy->a : path[depth] == 1 ? &copy->b : &copy->c;
    *slot = plug(*slot, path, depth + 1, sub);
    return copy;
}

void flatten(const Term& t, std::vector<const Term*>& out) {
    if (t.kind == TermKind::Pair) {
        flatten(*t.a, out);
        flatten(*t.b, out);
    } else {
        out.push_back(&t);
    }
}

std::string make_key(const Closure& cl) {
    std::string k = to_string(*cl.term);
    k += "\nI";
    for (const auto& [x, a] : cl.ind) k += x + ">" + std::to_string(a) + ",";
    k += "\nM" + cl.memory.key();
    return k;
}

}  // namespace

Closure canonicalize(Closure cl) {
    std::vector<std::string> order;
    std::set<std::string> seen;
    linked_in_order(*cl.term, order, seen);
    for (const auto& [x, a] : cl.ind) {
        if (seen.insert(x).second) order.push_back(x);
    }
    std::map<std::string, std::string> names;
    Renaming sigma;
    Address next = 0;
    std::map<std::string, Address> ind;
    for (std::size_t k = 0; k < order.size(); ++k) {
        std::string nx = std::string(1, kLinkedPrefix) + std::to_string(k);
        names[order[k]] = nx;
        auto it = cl.ind.find(order[k]);
        if (it == cl.ind.end()) continue;
        if (!sigma.count(it->second)) sigma[it->second] = next++;
        ind[nx] = sigma.at(it->second);
    }
    for (Address a : cl.memory.support()) {
        if (!sigma.count(a)) sigma[a] = next++;
    }
    Closure out;
    out.term = rename_linked(cl.term, names);
    out.ind = std::move(ind);
    out.memory = cl.memory.rename(sigma);
    out.key = make_key(out);
    return out;
}

Closure make_closure(TermPtr term, Memory memory) {
    Closure cl;
    cl.term = std::move(term);
    cl.memory = std::move(memory);
    return canonicalize(std::move(cl));
}

std::string describe(const PcfRedex& r) {
    switch (r.kind) {
        case PcfRedexKind::Link:
            return "link";
        case PcfRedexKind::Update:
            return "update";
        case PcfRedexKind::Test:
            return "test";
        case PcfRedexKind::Beta:
            return "beta";
        case PcfRedexKind::LetPair:
            return "let-pair";
        case PcfRedexKind::LetRec:
            return "letrec";
    }
    return "?";
}

std::string observe(const Closure& cl) {
    std::vector<const Term*> leaves;
    flatten(*cl.term, leaves);
    std::vector<std::string> parts;
    for (const Term* l : leaves) {
        auto it = l->kind == TermKind::Var ? cl.ind.find(l->x) : cl.ind.end();
        if (it != cl.ind.end()) {
            parts.push_back(cl.memory.readout(it->second));
        } else {
            parts.push_back("<" + to_string(*l) + ">");
        }
    }
    return join_readouts(parts);
}

std::vector<PcfRedex> PcfSystem::enumerate_redexes(const Closure& cl) const {
    auto h = find_head(*cl.term);
    if (!h) return {};
    return {PcfRedex{h->kind}};
}

pars::Distribution<Closure> PcfSystem::apply(const Closure& cl, const PcfRedex& r) const {
    auto h = find_head(*cl.term);
    if (!h || h->kind != r.kind) throw std::invalid_argument("redex does not match the closure");
    const Term& t = *h->node;
    pars::Distribution<Closure> out;
    auto emit = [&](TermPtr sub, std::map<std::string, Address> ind, Memory m, double p) {
        Closure next;
        next.term = plug(cl.term, h->path, 0, sub);
        next.ind = std::move(ind);
        next.memory = std::move(m);
        out.add(canonicalize(std::move(next)), p);
    };
    switch (r.kind) {
        case PcfRedexKind::Link: {
            std::set<Address> used;
            for (const auto& kv : cl.ind) used.insert(kv.second);
            std::string x;
            for (std::size_t k = cl.ind.size();; ++k) {
                x = std::string(1, kLinkedPrefix) + std::to_string(k);
                if (!cl.ind.count(x)) break;
            }
            auto ind = cl.ind;
            ind[x] = cl.memory.fresh(used);
            emit(Term::var(x), std::move(ind), cl.memory, 1.0);
            break;
        }
        case PcfRedexKind::Update: {
            std::vector<const Term*> args;
            flatten(*t.b, args);
            std::vector<Address> tuple;
            for (const Term* a : args) {
                auto it = a->kind == TermKind::Var ? cl.ind.find(a->x) : cl.ind.end();
                if (it == cl.ind.end()) throw std::invalid_argument("update argument is not a linked variable");
                tuple.push_back(it->second);
            }
            emit(t.b, cl.ind, cl.memory.update(tuple, t.a->label), 1.0);
            break;
        }
        case PcfRedexKind::Test: {
            Address i = cl.ind.at(t.a->x);
            auto ind = cl.ind;
            ind.erase(t.a->x);
            for (const auto& [b, p] : cl.memory.test(i)) {
                emit(b.outcome ? t.b : t.c, ind, *b.memory, p);
            }
            break;
        }
        case PcfRedexKind::Beta:
            emit(substitute(t.a->a, t.a->x, t.b), cl.ind, cl.memory, 1.0);
            break;
        case PcfRedexKind::LetPair:
            emit(substitute(substitute(t.b, t.x, t.a->a), t.y, t.a->b), cl.ind, cl.memory, 1.0);
            break;
        case PcfRedexKind::LetRec: {
            TermPtr fix = Term::lam(t.x, Term::let_rec(t.y, t.x, t.a, t.a));
            emit(substitute(t.b, t.y, fix), cl.ind, cl.memory, 1.0);
            break;
        }
    }
    if (trace) {
        *trace << pcfll::describe(r) << " at " << to_string(*cl.term) << "\n";
    }
    return out;
}

std::string PcfSystem::describe(const Closure& cl) const {
    std::string s = to_string(*cl.term);
    if (!cl.ind.empty()) {
        s += " [";
        bool first = true;
        for (const auto& [x, a] : cl.ind) {
            if (!first) s += ", ";
            first = false;
            s += x + ":" + std::to_string(a);
        }
        s += "]";
    }
    return s + " " + cl.memory.to_string();
}

}  // namespace memgoi::pcfll
