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

#include "memgoi/pcfll.h"

namespace memgoi::pcfll {

namespace {

bool is_bang(const TypePtr& t) { return t->kind == TypeKind::Bang; }

// A translated subterm: its output edge and one dangling edge per free
// variable, typed (A†)^⊥.
struct Frag {
    int out = -1;
    std::map<std::string, int> vars;
};

class Translator {
   public:
    Translator(const Typing& ty, const std::map<std::string, Address>& ind) : ty_(ty), ind_(ind) {}

    std::map<int, Address> linked;  // one node -> address, top level only

    Frag build(Net& net, const TermPtr& t, std::map<std::string, TypePtr>& env, bool top) {
        if (!ty_.promoted.count(t.get())) return raw(net, t, env, top);
        Net content;
        Frag inner = raw(content, t, env, false);
        content.add_conclusion(inner.out);
        std::vector<Formula> types{Formula::ofcourse(content.edge(inner.out).type)};
        std::vector<std::string> names;
        for (const auto& [x, e] : inner.vars) {
            content.add_conclusion(e);
            types.push_back(content.edge(e).type);
            names.push_back(x);
        }
        int box = net.add_node(NodeKind::BangBox, {}, types, {std::make_shared<const Net>(std::move(content))});
        Frag f;
        f.out = net.concl(box, 0);
        for (std::size_t k = 0; k < names.size(); ++k) f.vars[names[k]] = net.concl(box, static_cast<int>(k + 1));
        return f;
    }

    // Closes a binder: returns its edge, weakening an unused !-variable.
    int take(Net& net, Frag& f, const std::string& x, const TypePtr& type) {
        auto it = f.vars.find(x);
        if (it != f.vars.end()) {
            int e = it->second;
            f.vars.erase(it);
            return e;
        }
        if (!is_bang(type)) throw TypeError("linear variable '" + x + "' is unused");
        return net.concl(net.add_node(NodeKind::Weak, {}, {dagger(type).neg()}));
    }

    std::map<std::string, int> merge(Net& net, std::map<std::string, int> a, const std::map<std::string, int>& b) {
        for (const auto& [x, e] : b) {
            auto it = a.find(x);
            if (it == a.end()) {
                a[x] = e;
                continue;
            }
            Formula f = net.edge(e).type;
            if (f.kind() != Connective::WhyNot) throw TypeError("linear variable '" + x + "' is shared");
            it->second = net.concl(net.add_node(NodeKind::Contr, {it->second, e}, {f}));
        }
        return a;
    }

   private:
    template <class F>
    Frag scoped(std::map<std::string, TypePtr>& env, const std::vector<std::pair<std::string, TypePtr>>& binds,
                F&& body) {
        auto saved = env;
        for (const auto& [n, ty] : binds) env[n] = ty;
        Frag f = body();
        env = std::move(saved);
        return f;
    }

    // A box content whose conclusions are `first`, then the free variables
    // sorted by name; returns the variable names in that order.
    std::vector<std::string> close_content(Net& content, const std::vector<int>& first, const Frag& f) {
        for (int e : first) content.add_conclusion(e);
        std::vector<std::string> names;
        for (const auto& [x, e] : f.vars) {
            content.add_conclusion(e);
            names.push_back(x);
        }
        return names;
    }

    Frag raw(Net& net, const TermPtr& t, std::map<std::string, TypePtr>& env, bool top) {
        Frag f;
        switch (t->kind) {
            case TermKind::Var: {
                auto ind = ind_.find(t->x);
                if (ind != ind_.end()) {
                    if (!top) throw TypeError("linked variable '" + t->x + "' occurs inside a box");
                    int one = net.add_node(NodeKind::One, {}, {Formula::one()});
                    linked[one] = ind->second;
                    f.out = net.concl(one);
                    break;
                }
                TypePtr b = env.at(t->x);
                if (is_bang(b)) {
                    Formula s = dagger(b->a);
                    int ax = net.add_node(NodeKind::Ax, {}, {s.neg(), s});
                    int der = net.add_node(NodeKind::Der, {net.concl(ax, 0)}, {Formula::whynot(s.neg())});
                    f.vars[t->x] = net.concl(der);
                    f.out = net.concl(ax, 1);
                } else {
                    Formula s = dagger(b);
                    int ax = net.add_node(NodeKind::Ax, {}, {s.neg(), s});
                    f.vars[t->x] = net.concl(ax, 0);
                    f.out = net.concl(ax, 1);
                }
                break;
            }
            case TermKind::New: {
                f.out = net.concl(net.add_node(NodeKind::One, {}, {Formula::one()}));
                break;
            }
            case TermKind::Const: {
                std::size_t n = t->label.arity;
                std::vector<int> bots, ones;
                for (std::size_t k = 0; k < n; ++k) {
                    int ax = net.add_node(NodeKind::Ax, {}, {Formula::bot(), Formula::one()});
                    bots.push_back(net.concl(ax, 0));
                    ones.push_back(net.concl(ax, 1));
                }
                int sync = net.add_node(NodeKind::Sync, ones, std::vector<Formula>(n, Formula::one()), {}, t->label);
                int bot_tree = bots.back();
                int one_tree = net.concl(sync, static_cast<int>(n - 1));
                for (std::size_t k = n - 1; k-- > 0;) {
                    Formula bt = Formula::par(Formula::bot(), net.edge(bot_tree).type);
                    bot_tree = net.concl(net.add_node(NodeKind::Par, {bots[k], bot_tree}, {bt}));
                    Formula ot = Formula::tensor(Formula::one(), net.edge(one_tree).type);
                    one_tree = net.concl(
                        net.add_node(NodeKind::Tensor, {net.concl(sync, static_cast<int>(k)), one_tree}, {ot}));
                }
                Formula ft = Formula::par(net.edge(bot_tree).type, net.edge(one_tree).type);
                f.out = net.concl(net.add_node(NodeKind::Par, {bot_tree, one_tree}, {ft}));
                break;
            }
            case TermKind::Lam: {
                TypePtr p = ty_.binder.at(t.get());
                Frag body = scoped(env, {{t->x, p}}, [&] { return build(net, t->a, env, false); });
                int xe = take(net, body, t->x, p);
                Formula ft = Formula::par(net.edge(xe).type, net.edge(body.out).type);
                f.out = net.concl(net.add_node(NodeKind::Par, {xe, body.out}, {ft}));
                f.vars = std::move(body.vars);
                break;
            }
            case TermKind::App: {
                Frag m = build(net, t->a, env, top);
                Frag n = build(net, t->b, env, top);
                Formula b = dagger(ty_.outer(t.get()));
                int ax = net.add_node(NodeKind::Ax, {}, {b.neg(), b});
                Formula tt = Formula::tensor(net.edge(n.out).type, b.neg());
                int tensor = net.add_node(NodeKind::Tensor, {n.out, net.concl(ax, 0)}, {tt});
                net.add_node(NodeKind::Cut, {m.out, net.concl(tensor)}, {});
                f.out = net.concl(ax, 1);
                f.vars = merge(net, std::move(m.vars), n.vars);
                break;
            }
            case TermKind::Pair: {
                Frag a = build(net, t->a, env, top);
                Frag b = build(net, t->b, env, top);
                Formula tt = Formula::tensor(net.edge(a.out).type, net.edge(b.out).type);
                f.out = net.concl(net.add_node(NodeKind::Tensor, {a.out, b.out}, {tt}));
                f.vars = merge(net, std::move(a.vars), b.vars);
                break;
            }
            case TermKind::LetPair: {
                Frag m = build(net, t->a, env, top);
                TypePtr px = ty_.binder.at(t.get()), py = ty_.binder2.at(t.get());
                Frag n = scoped(env, {{t->x, px}, {t->y, py}}, [&] { return build(net, t->b, env, top); });
                int xe = take(net, n, t->x, px);
                int ye = take(net, n, t->y, py);
                Formula pt = Formula::par(net.edge(xe).type, net.edge(ye).type);
                int par = net.add_node(NodeKind::Par, {xe, ye}, {pt});
                net.add_node(NodeKind::Cut, {m.out, net.concl(par)}, {});
                f.out = n.out;
                f.vars = merge(net, std::move(m.vars), n.vars);
                break;
            }
            case TermKind::LetRec: {
                TypePtr a = ty_.binder.at(t.get()), ft = ty_.binder2.at(t.get());
                Net content;
                Frag body = scoped(env, {{t->y, ft}, {t->x, a}}, [&] { return build(content, t->a, env, false); });
                int xe = take(content, body, t->x, a);
                Formula lt = Formula::par(content.edge(xe).type, content.edge(body.out).type);
                int lam = content.concl(content.add_node(NodeKind::Par, {xe, body.out}, {lt}));
                int fe = take(content, body, t->y, ft);
                auto names = close_content(content, {lam, fe}, body);
                std::vector<Formula> types{Formula::ofcourse(lt)};
                for (const auto& x : names) types.push_back(content.edge(body.vars.at(x)).type);
                int box = net.add_node(NodeKind::YBox, {}, types, {std::make_shared<const Net>(std::move(content))});
                Frag n = scoped(env, {{t->y, ft}}, [&] { return build(net, t->b, env, top); });
                int fn = take(net, n, t->y, ft);
                net.add_node(NodeKind::Cut, {net.concl(box, 0), fn}, {});
                std::map<std::string, int> gamma;
                for (std::size_t k = 0; k < names.size(); ++k) gamma[names[k]] = net.concl(box, static_cast<int>(k + 1));
                f.out = n.out;
                f.vars = merge(net, std::move(n.vars), gamma);
                break;
            }
            case TermKind::If: {
                Frag p = build(net, t->a, env, top);
                std::set<std::string> gamma_names;
                for (const TermPtr* br : {&t->b, &t->c}) {
                    for (const auto& v : free_vars(**br)) {
                        if (env.count(v)) gamma_names.insert(v);
                    }
                }
                // content 0 is the false branch, content 1 the true branch
                std::vector<NetPtr> contents;
                Formula result;
                for (const TermPtr* br : {&t->c, &t->b}) {
                    Net content;
                    int bot = content.add_node(NodeKind::Bot, {}, {Formula::bot()});
                    Frag bf = build(content, *br, env, false);
                    content.add_conclusion(content.concl(bot));
                    for (const auto& x : gamma_names) content.add_conclusion(take(content, bf, x, env.at(x)));
                    content.add_conclusion(bf.out);
                    result = content.edge(bf.out).type;
                    contents.push_back(std::make_shared<const Net>(std::move(content)));
                }
                std::vector<Formula> types{Formula::bot()};
                for (const auto& x : gamma_names) types.push_back(dagger(env.at(x)).neg());
                types.push_back(result);
                int box = net.add_node(NodeKind::BotBox, {}, types, contents);
                net.add_node(NodeKind::Cut, {p.out, net.concl(box, 0)}, {});
                std::map<std::string, int> gamma;
                int k = 1;
                for (const auto& x : gamma_names) gamma[x] = net.concl(box, k++);
                f.out = net.concl(box, k);
                f.vars = merge(net, std::move(p.vars), gamma);
                break;
            }
        }
        return f;
    }

    const Typing& ty_;
    const std::map<std::string, Address>& ind_;
};

}  // namespace

ProgramNet translate(const TermPtr& term, const Typing& typing, const std::map<std::string, TypePtr>& context,
                     const std::map<std::string, Address>& ind, const Memory& memory) {
    Translator tr(typing, ind);
    Net net;
    std::map<std::string, TypePtr> env;
    for (const auto& [x, ty] : context) {
        if (!ind.count(x)) env[x] = ty;
    }
    Frag f = tr.build(net, term, env, true);
    for (const auto& [x, ty] : env) net.add_conclusion(tr.take(net, f, x, ty));
    if (!f.vars.empty()) throw TypeError("unbound variable '" + f.vars.begin()->first + "'");
    net.add_conclusion(f.out);
    check_wellformed(net);
    return make_program_net(std::move(net), memory, tr.linked);
}

ProgramNet translate(const Closure& cl, const Typing& typing) {
    std::map<std::string, TypePtr> context;
    for (const auto& [x, a] : cl.ind) context[x] = Type::base();
    return translate(cl.term, typing, context, cl.ind, cl.memory);
}

}  // namespace memgoi::pcfll
