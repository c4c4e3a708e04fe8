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
#include <optional>

#include "memgoi/pcfll.h"

namespace memgoi::pcfll {

TypePtr Type::base() {
    static const TypePtr b = std::make_shared<const Type>();
    return b;
}

TypePtr Type::lolli(TypePtr a, TypePtr b) {
    auto t = std::make_shared<Type>();
    t->kind = TypeKind::Lolli;
    t->a = std::move(a);
    t->b = std::move(b);
    return t;
}

TypePtr Type::tensor(TypePtr a, TypePtr b) {
    auto t = std::make_shared<Type>();
    t->kind = TypeKind::Tensor;
    t->a = std::move(a);
    t->b = std::move(b);
    return t;
}

TypePtr Type::bang(TypePtr a) {
    auto t = std::make_shared<Type>();
    t->kind = TypeKind::Bang;
    t->a = std::move(a);
    return t;
}

namespace {

void print_type(const Type& t, std::string& out, int prec) {
    // prec 0: right of -o, 1: operand of *, 2: operand of !
    switch (t.kind) {
        case TypeKind::Base:
            out += "a";
            break;
        case TypeKind::Meta:
            out += "?" + std::to_string(t.meta);
            break;
        case TypeKind::Bang:
            out += "!";
            print_type(*t.a, out, 2);
            break;
        case TypeKind::Lolli:
            if (prec > 0) out += "(";
            print_type(*t.a, out, 1);
            out += " -o ";
            print_type(*t.b, out, 0);
            if (prec > 0) out += ")";
            break;
        case TypeKind::Tensor:
            if (prec > 1) out += "(";
            print_type(*t.a, out, 2);
            out += " * ";
            print_type(*t.b, out, 1);
            if (prec > 1) out += ")";
            break;
    }
}

}  // namespace

std::string to_string(const Type& t) {
    std::string s;
    print_type(t, s, 0);
    return s;
}

bool equal(const TypePtr& a, const TypePtr& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case TypeKind::Base:
            return true;
        case TypeKind::Meta:
            return a->meta == b->meta;
        case TypeKind::Bang:
            return equal(a->a, b->a);
        default:
            return equal(a->a, b->a) && equal(a->b, b->b);
    }
}

Formula dagger(const TypePtr& t) {
    switch (t->kind) {
        case TypeKind::Base:
            return Formula::one();
        case TypeKind::Lolli:
            return Formula::lolli(dagger(t->a), dagger(t->b));
        case TypeKind::Tensor:
            return Formula::tensor(dagger(t->a), dagger(t->b));
        case TypeKind::Bang:
            return Formula::ofcourse(dagger(t->a));
        case TypeKind::Meta:
            break;
    }
    throw TypeError("unresolved type variable");
}

TypePtr Typing::outer(const Term* t) const {
    const TypePtr& ty = types.at(t);
    return promoted.count(t) ? Type::bang(ty) : ty;
}

namespace {

bool is_bang(const TypePtr& t) { return t->kind == TypeKind::Bang; }

class Elaborator {
   public:
    explicit Elaborator(Typing& out) : out_(out) {}

    TypePtr meta() {
        auto t = std::make_shared<Type>();
        t->kind = TypeKind::Meta;
        t->meta = static_cast<int>(subst_.size());
        subst_.push_back(nullptr);
        return t;
    }

    TypePtr resolve(TypePtr t) const {
        while (t->kind == TypeKind::Meta && subst_[static_cast<std::size_t>(t->meta)]) {
            t = subst_[static_cast<std::size_t>(t->meta)];
        }
        return t;
    }

    TypePtr zonk(const TypePtr& t) const {
        TypePtr r = resolve(t);
        switch (r->kind) {
            case TypeKind::Base:
                return r;
            case TypeKind::Meta:
                return Type::base();
            case TypeKind::Bang:
                return Type::bang(zonk(r->a));
            case TypeKind::Lolli:
                return Type::lolli(zonk(r->a), zonk(r->b));
            case TypeKind::Tensor:
                return Type::tensor(zonk(r->a), zonk(r->b));
        }
        return r;
    }

    void unify(const TypePtr& x, const TypePtr& y) {
        TypePtr a = resolve(x), b = resolve(y);
        if (a == b) return;
        if (a->kind == TypeKind::Meta) {
            bind(a, b);
            return;
        }
        if (b->kind == TypeKind::Meta) {
            bind(b, a);
            return;
        }
        if (a->kind != b->kind) {
            throw TypeError("cannot match " + to_string(*zonk_show(a)) + " with " + to_string(*zonk_show(b)));
        }
        if (a->kind == TypeKind::Base) return;
        unify(a->a, b->a);
        if (a->kind != TypeKind::Bang) unify(a->b, b->b);
    }

    TypePtr infer(const TermPtr& t, std::map<std::string, TypePtr>& env) {
        const Term* key = t.get();
        TypePtr ty;
        switch (t->kind) {
            case TermKind::Var: {
                auto it = env.find(t->x);
                if (it == env.end()) throw TypeError("unbound variable '" + t->x + "'");
                ty = meta();
                occs_.push_back({it->second, ty});
                break;
            }
            case TermKind::New:
                ty = Type::base();
                break;
            case TermKind::Const: {
                TypePtr tuple = Type::base();
                for (std::size_t k = 1; k < t->label.arity; ++k) tuple = Type::tensor(Type::base(), tuple);
                ty = Type::lolli(tuple, tuple);
                break;
            }
            case TermKind::Lam: {
                TypePtr p = param_type(t->annot, count_free(*t->a, t->x));
                out_.binder[key] = p;
                TypePtr body = with(env, {{t->x, p}}, [&] { return infer(t->a, env); });
                ty = Type::lolli(p, body);
                break;
            }
            case TermKind::App: {
                TypePtr f = infer(t->a, env);
                TypePtr arg = infer(t->b, env);
                TypePtr a = meta(), b = meta();
                unify(f, Type::lolli(a, b));
                coerce(arg, a, t->b.get());
                ty = b;
                break;
            }
            case TermKind::Pair: {
                TypePtr l = infer(t->a, env);
                TypePtr r = infer(t->b, env);
                TypePtr ol = meta(), orr = meta();
                coerce(l, ol, t->a.get());
                coerce(r, orr, t->b.get());
                ty = Type::tensor(ol, orr);
                break;
            }
            case TermKind::LetPair: {
                TypePtr m = infer(t->a, env);
                TypePtr px = param_type(nullptr, count_free(*t->b, t->x));
                TypePtr py = param_type(nullptr, count_free(*t->b, t->y));
                out_.binder[key] = px;
                out_.binder2[key] = py;
                unify(m, Type::tensor(px, py));
                ty = with(env, {{t->x, px}, {t->y, py}}, [&] { return infer(t->b, env); });
                break;
            }
            case TermKind::LetRec: {
                TypePtr a = param_type(nullptr, count_free(*t->a, t->x));
                TypePtr b = meta();
                TypePtr f = Type::bang(Type::lolli(a, b));
                out_.binder[key] = a;
                out_.binder2[key] = f;
                TypePtr m = with(env, {{t->y, f}, {t->x, a}}, [&] { return infer(t->a, env); });
                coerce(m, b, t->a.get());
                ty = with(env, {{t->y, f}}, [&] { return infer(t->b, env); });
                break;
            }
            case TermKind::If: {
                unify(infer(t->a, env), Type::base());
                TypePtr m = infer(t->b, env);
                TypePtr n = infer(t->c, env);
                ty = meta();
                coerce(m, ty, t->b.get());
                coerce(n, ty, t->c.get());
                break;
            }
        }
        out_.types[key] = ty;
        return ty;
    }

    void solve() {
        while (true) {
            bool progress = step(false);
            if (progress) continue;
            if (!step(true)) break;
        }
    }

    void finish() {
        for (auto& [k, v] : out_.types) v = zonk(v);
        for (auto& [k, v] : out_.binder) v = zonk(v);
        for (auto& [k, v] : out_.binder2) v = zonk(v);
        for (const auto& c : coerces_) {
            if (c.promoted) out_.promoted.insert(c.node);
        }
    }

   private:
    struct Occ {
        TypePtr binder, use;
        bool done = false;
    };
    struct Coerce {
        TypePtr in, out;
        const Term* node;
        bool done = false;
        bool promoted = false;
    };

    void bind(const TypePtr& m, const TypePtr& t) {
        if (occurs(m->meta, t)) throw TypeError("recursive type");
        subst_[static_cast<std::size_t>(m->meta)] = t;
    }

    bool occurs(int id, const TypePtr& t) const {
        TypePtr r = resolve(t);
        if (r->kind == TypeKind::Meta) return r->meta == id;
        if (r->a && occurs(id, r->a)) return true;
        return r->b && occurs(id, r->b);
    }

    TypePtr zonk_show(const TypePtr& t) const {
        TypePtr r = resolve(t);
        if (r->kind == TypeKind::Meta || r->kind == TypeKind::Base) return r;
        if (r->kind == TypeKind::Bang) return Type::bang(zonk_show(r->a));
        auto c = std::make_shared<Type>(*r);
        c->a = zonk_show(r->a);
        c->b = zonk_show(r->b);
        return c;
    }

    TypePtr param_type(const TypePtr& annot, std::size_t uses) {
        if (annot) return annot;
        if (uses != 1) return Type::bang(Type::lolli(meta(), meta()));
        return meta();
    }

    template <class F>
    TypePtr with(std::map<std::string, TypePtr>& env, const std::vector<std::pair<std::string, TypePtr>>& binds,
                 F&& body) {
        std::vector<std::pair<std::string, std::optional<TypePtr>>> saved;
        for (const auto& [n, ty] : binds) {
            auto it = env.find(n);
            saved.emplace_back(n, it == env.end() ? std::nullopt : std::optional<TypePtr>(it->second));
            env[n] = ty;
        }
        TypePtr r = body();
        for (auto it = saved.rbegin(); it != saved.rend(); ++it) {
            if (it->second) {
                env[it->first] = *it->second;
            } else {
                env.erase(it->first);
            }
        }
        return r;
    }

    void coerce(const TypePtr& in, const TypePtr& out, const Term* node) {
        coerces_.push_back({in, out, node});
    }

    // One pass over pending constraints; with `force`, the first stuck one is
    // resolved by plain unification.
    bool step(bool force) {
        bool progress = false;
        for (auto& o : occs_) {
            if (o.done) continue;
            TypePtr p = resolve(o.binder);
            if (p->kind == TypeKind::Bang) {
                unify(o.use, p->a);
            } else if (p->kind != TypeKind::Meta || force) {
                unify(o.use, p);
            } else {
                continue;
            }
            o.done = true;
            progress = true;
            if (force) return true;
        }
        for (auto& c : coerces_) {
            if (c.done) continue;
            TypePtr in = resolve(c.in), out = resolve(c.out);
            if (out->kind == TypeKind::Bang && in->kind != TypeKind::Bang && in->kind != TypeKind::Meta) {
                unify(in, out->a);
                c.promoted = true;
            } else if (out->kind != TypeKind::Bang && out->kind != TypeKind::Meta) {
                unify(in, out);
            } else if (in->kind == TypeKind::Bang && out->kind == TypeKind::Meta) {
                unify(in, out);
            } else if (force) {
                unify(in, out);
            } else {
                continue;
            }
            c.done = true;
            progress = true;
            if (force) return true;
        }
        return progress;
    }

    Typing& out_;
    std::vector<TypePtr> subst_;
    std::vector<Occ> occs_;
    std::vector<Coerce> coerces_;
};

// Checks linearity and the closedness conditions on an elaborated term.
class Checker {
   public:
    explicit Checker(const Typing& ty) : ty_(ty) {}

    void check(const TermPtr& t, std::map<std::string, TypePtr> env) {
        for (const auto& [n, ty] : env) check_binder(n, ty, count_free(*t, n), "context variable");
        walk(t, env);
    }

   private:
    void check_binder(const std::string& x, const TypePtr& ty, std::size_t uses, const char* what) {
        if (is_bang(ty)) {
            if (ty->a->kind != TypeKind::Lolli) {
                throw TypeError(std::string(what) + " '" + x + "' has type " + to_string(*ty) +
                                "; only function types may be duplicated");
            }
            return;
        }
        if (uses != 1) {
            throw TypeError("linear " + std::string(what) + " '" + x + "' is used " + std::to_string(uses) +
                            " times");
        }
    }

    void only_bang_free(const Term& t, const std::map<std::string, TypePtr>& env, const std::set<std::string>& allow,
                        const char* where) {
        for (const auto& v : free_vars(t)) {
            if (allow.count(v)) continue;
            auto it = env.find(v);
            if (it != env.end() && !is_bang(it->second)) {
                throw TypeError("linear variable '" + v + "' is used inside " + where);
            }
        }
    }

    void walk(const TermPtr& t, std::map<std::string, TypePtr>& env) {
        if (ty_.promoted.count(t.get())) {
            if (!is_value(*t)) throw TypeError("cannot promote a non-value: " + to_string(*t));
            only_bang_free(*t, env, {}, "a duplicable value");
        }
        switch (t->kind) {
            case TermKind::Var:
            case TermKind::New:
            case TermKind::Const:
                break;
            case TermKind::Lam: {
                TypePtr p = ty_.binder.at(t.get());
                check_binder(t->x, p, count_free(*t->a, t->x), "variable");
                scoped(env, {{t->x, p}}, [&] { walk(t->a, env); });
                break;
            }
            case TermKind::App:
            case TermKind::Pair:
                walk(t->a, env);
                walk(t->b, env);
                break;
            case TermKind::LetPair: {
                walk(t->a, env);
                TypePtr px = ty_.binder.at(t.get()), py = ty_.binder2.at(t.get());
                check_binder(t->x, px, count_free(*t->b, t->x), "variable");
                check_binder(t->y, py, count_free(*t->b, t->y), "variable");
                scoped(env, {{t->x, px}, {t->y, py}}, [&] { walk(t->b, env); });
                break;
            }
            case TermKind::LetRec: {
                TypePtr a = ty_.binder.at(t.get()), f = ty_.binder2.at(t.get());
                check_binder(t->x, a, count_free(*t->a, t->x), "variable");
                only_bang_free(*t->a, env, {t->x, t->y}, "a recursive definition");
                scoped(env, {{t->y, f}, {t->x, a}}, [&] { walk(t->a, env); });
                scoped(env, {{t->y, f}}, [&] { walk(t->b, env); });
                break;
            }
            case TermKind::If:
                walk(t->a, env);
                only_bang_free(*t->b, env, {}, "a conditional branch");
                only_bang_free(*t->c, env, {}, "a conditional branch");
                walk(t->b, env);
                walk(t->c, env);
                break;
        }
    }

    template <class F>
    void scoped(std::map<std::string, TypePtr>& env, const std::vector<std::pair<std::string, TypePtr>>& binds,
                F&& body) {
        auto saved = env;
        for (const auto& [n, ty] : binds) env[n] = ty;
        body();
        env = std::move(saved);
    }

    const Typing& ty_;
};

}  // namespace

Typing typecheck(const TermPtr& t, const std::map<std::string, TypePtr>& context) {
    Typing out;
    Elaborator el(out);
    std::map<std::string, TypePtr> env = context;
    TypePtr ty = el.infer(t, env);
    el.solve();
    el.finish();
    out.type = out.types.at(t.get());
    (void)ty;
    Checker(out).check(t, context);
    return out;
}

}  // namespace memgoi::pcfll
