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

#include <cctype>
#include <functional>

#include "memgoi/pcfll.h"

namespace memgoi::pcfll {

TermPtr Term::var(std::string name) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::Var;
    t->x = std::move(name);
    return t;
}

TermPtr Term::lam(std::string x, TermPtr body, TypePtr annot) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::Lam;
    t->x = std::move(x);
    t->a = std::move(body);
    t->annot = std::move(annot);
    return t;
}

TermPtr Term::app(TermPtr f, TermPtr arg) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::App;
    t->a = std::move(f);
    t->b = std::move(arg);
    return t;
}

TermPtr Term::pair(TermPtr l, TermPtr r) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::Pair;
    t->a = std::move(l);
    t->b = std::move(r);
    return t;
}

TermPtr Term::let_pair(std::string x, std::string y, TermPtr m, TermPtr n) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::LetPair;
    t->x = std::move(x);
    t->y = std::move(y);
    t->a = std::move(m);
    t->b = std::move(n);
    return t;
}

TermPtr Term::let_rec(std::string f, std::string x, TermPtr m, TermPtr n) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::LetRec;
    t->y = std::move(f);
    t->x = std::move(x);
    t->a = std::move(m);
    t->b = std::move(n);
    return t;
}

TermPtr Term::fresh() {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::New;
    return t;
}

TermPtr Term::constant(OperationLabel l) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::Const;
    t->label = std::move(l);
    return t;
}

TermPtr Term::ite(TermPtr p, TermPtr m, TermPtr n) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::If;
    t->a = std::move(p);
    t->b = std::move(m);
    t->c = std::move(n);
    return t;
}

bool is_value(const Term& t) {
    switch (t.kind) {
        case TermKind::Var:
        case TermKind::Lam:
        case TermKind::Const:
            return true;
        case TermKind::Pair:
            return is_value(*t.a) && is_value(*t.b);
        default:
            return false;
    }
}

namespace {

void print(const Term& t, std::string& out, int prec) {
    // prec 0: binder position, 1: application function, 2: argument
    auto open = [&](int need) {
        if (prec > need) out += "(";
    };
    auto close = [&](int need) {
        if (prec > need) out += ")";
    };
    switch (t.kind) {
        case TermKind::Var:
            out += t.x;
            break;
        case TermKind::New:
            out += "new";
            break;
        case TermKind::Const:
            out += t.label.name;
            break;
        case TermKind::Pair:
            out += "<";
            print(*t.a, out, 0);
            out += ", ";
            print(*t.b, out, 0);
            out += ">";
            break;
        case TermKind::App:
            open(1);
            print(*t.a, out, 1);
            out += " ";
            print(*t.b, out, 2);
            close(1);
            break;
        case TermKind::Lam:
            open(0);
            out += "\\" + t.x;
            if (t.annot) out += " : " + to_string(*t.annot);
            out += ". ";
            print(*t.a, out, 0);
            close(0);
            break;
        case TermKind::LetPair:
            open(0);
            out += "let <" + t.x + ", " + t.y + "> = ";
            print(*t.a, out, 0);
            out += " in ";
            print(*t.b, out, 0);
            close(0);
            break;
        case TermKind::LetRec:
            open(0);
            out += "letrec " + t.y + " " + t.x + " = ";
            print(*t.a, out, 0);
            out += " in ";
            print(*t.b, out, 0);
            close(0);
            break;
        case TermKind::If:
            open(0);
            out += "if ";
            print(*t.a, out, 0);
            out += " then ";
            print(*t.b, out, 0);
            out += " else ";
            print(*t.c, out, 0);
            close(0);
            break;
    }
}

void collect_free(const Term& t, std::set<std::string>& bound, std::set<std::string>& out) {
    auto with = [&](const std::vector<std::string>& names, const Term& body) {
        std::vector<std::string> added;
        for (const auto& n : names) {
            if (bound.insert(n).second) added.push_back(n);
        }
        collect_free(body, bound, out);
        for (const auto& n : added) bound.erase(n);
    };
    switch (t.kind) {
        case TermKind::Var:
            if (!bound.count(t.x)) out.insert(t.x);
            break;
        case TermKind::New:
        case TermKind::Const:
            break;
        case TermKind::Lam:
            with({t.x}, *t.a);
            break;
        case TermKind::App:
        case TermKind::Pair:
            collect_free(*t.a, bound, out);
            collect_free(*t.b, bound, out);
            break;
        case TermKind::LetPair:
            collect_free(*t.a, bound, out);
            with({t.x, t.y}, *t.b);
            break;
        case TermKind::LetRec:
            with({t.y, t.x}, *t.a);
            with({t.y}, *t.b);
            break;
        case TermKind::If:
            collect_free(*t.a, bound, out);
            collect_free(*t.b, bound, out);
            collect_free(*t.c, bound, out);
            break;
    }
}

}  // namespace

std::string to_string(const Term& t) {
    std::string s;
    print(t, s, 0);
    return s;
}

std::set<std::string> free_vars(const Term& t) {
    std::set<std::string> bound, out;
    collect_free(t, bound, out);
    return out;
}

std::size_t count_free(const Term& t, const std::string& x) {
    switch (t.kind) {
        case TermKind::Var:
            return t.x == x ? 1 : 0;
        case TermKind::New:
        case TermKind::Const:
            return 0;
        case TermKind::Lam:
            return t.x == x ? 0 : count_free(*t.a, x);
        case TermKind::App:
        case TermKind::Pair:
            return count_free(*t.a, x) + count_free(*t.b, x);
        case TermKind::LetPair:
            return count_free(*t.a, x) + (t.x == x || t.y == x ? 0 : count_free(*t.b, x));
        case TermKind::LetRec:
            return (t.y == x || t.x == x ? 0 : count_free(*t.a, x)) + (t.y == x ? 0 : count_free(*t.b, x));
        case TermKind::If:
            return count_free(*t.a, x) + count_free(*t.b, x) + count_free(*t.c, x);
    }
    return 0;
}

TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& v) {
    switch (t->kind) {
        case TermKind::Var:
            return t->x == x ? v : t;
        case TermKind::New:
        case TermKind::Const:
            return t;
        case TermKind::Lam:
            if (t->x == x) return t;
            return Term::lam(t->x, substitute(t->a, x, v), t->annot);
        case TermKind::App:
            return Term::app(substitute(t->a, x, v), substitute(t->b, x, v));
        case TermKind::Pair:
            return Term::pair(substitute(t->a, x, v), substitute(t->b, x, v));
        case TermKind::LetPair: {
            auto m = substitute(t->a, x, v);
            auto n = (t->x == x || t->y == x) ? t->b : substitute(t->b, x, v);
            return Term::let_pair(t->x, t->y, m, n);
        }
        case TermKind::LetRec: {
            auto m = (t->y == x || t->x == x) ? t->a : substitute(t->a, x, v);
            auto n = t->y == x ? t->b : substitute(t->b, x, v);
            return Term::let_rec(t->y, t->x, m, n);
        }
        case TermKind::If:
            return Term::ite(substitute(t->a, x, v), substitute(t->b, x, v), substitute(t->c, x, v));
    }
    return t;
}

// ------------------------------------------------------------------ parser

ParseError::ParseError(const std::string& msg, int l, int c)
    : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), col(c) {}

namespace {

enum class Tok { Ident, Lambda, Dot, LParen, RParen, LAngle, RAngle, Comma, Eq, Colon, Lolli, Star, Bang, End };

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

const std::set<std::string> kKeywords = {"let", "in", "letrec", "if", "then", "else", "new"};

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
                ++col;
            }
            ++i;
        }
    };
    auto starts = [&](const char* s) { return src.compare(i, std::char_traits<char>::length(s), s) == 0; };
    while (i < src.size()) {
        unsigned char ch = static_cast<unsigned char>(src[i]);
        if (std::isspace(ch)) {
            advance(1);
            continue;
        }
        if (starts("--")) {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        int l = line, c = col;
        auto push = [&](Tok k, std::size_t n, std::string text = {}) {
            out.push_back({k, std::move(text), l, c});
            advance(n);
        };
        if (std::isalpha(ch) || ch == '_') {
            std::size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\'')) {
                ++j;
            }
            push(Tok::Ident, j - i, src.substr(i, j - i));
        } else if (ch == '\\') {
            push(Tok::Lambda, 1);
        } else if (starts("λ")) {
            push(Tok::Lambda, 2);
        } else if (starts("-o")) {
            push(Tok::Lolli, 2);
        } else if (starts("⊸")) {
            push(Tok::Lolli, 3);
        } else if (starts("⊗")) {
            push(Tok::Star, 3);
        } else if (starts("α")) {
            push(Tok::Ident, 2, "a");
        } else if (starts("⟨")) {
            push(Tok::LAngle, 3);
        } else if (starts("⟩")) {
            push(Tok::RAngle, 3);
        } else {
            switch (ch) {
                case '.':
                    push(Tok::Dot, 1);
                    break;
                case '(':
                    push(Tok::LParen, 1);
                    break;
                case ')':
                    push(Tok::RParen, 1);
                    break;
                case '<':
                    push(Tok::LAngle, 1);
                    break;
                case '>':
                    push(Tok::RAngle, 1);
                    break;
                case ',':
                    push(Tok::Comma, 1);
                    break;
                case '=':
                    push(Tok::Eq, 1);
                    break;
                case ':':
                    push(Tok::Colon, 1);
                    break;
                case '*':
                    push(Tok::Star, 1);
                    break;
                case '!':
                    push(Tok::Bang, 1);
                    break;
                default:
                    throw ParseError(std::string("unexpected character '") + src[i] + "'", l, c);
            }
        }
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class Parser {
   public:
    Parser(std::vector<Token> toks, const std::vector<OperationLabel>& constants) : toks_(std::move(toks)) {
        for (const auto& l : constants) constants_[l.name] = l;
    }

    TermPtr program() {
        TermPtr t = term();
        expect(Tok::End, "end of input");
        return t;
    }

    TypePtr type_only() {
        TypePtr t = type();
        expect(Tok::End, "end of input");
        return t;
    }

   private:
    const Token& peek() const { return toks_[pos_]; }
    bool at(Tok k) const { return peek().kind == k; }
    bool at_kw(const char* kw) const { return at(Tok::Ident) && peek().text == kw; }
    Token next() { return toks_[pos_++]; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().col); }

    Token expect(Tok k, const char* what) {
        if (!at(k)) fail(std::string("expected ") + what);
        return next();
    }
    void expect_kw(const char* kw) {
        if (!at_kw(kw)) fail(std::string("expected '") + kw + "'");
        next();
    }

    std::string binder() {
        if (!at(Tok::Ident)) fail("expected a variable name");
        const Token& t = peek();
        if (kKeywords.count(t.text)) fail("keyword '" + t.text + "' cannot be bound");
        if (constants_.count(t.text)) fail("constant '" + t.text + "' cannot be bound");
        return next().text;
    }

    bool starts_binder_form() const {
        return at(Tok::Lambda) || at_kw("let") || at_kw("letrec") || at_kw("if");
    }

    bool starts_atom() const {
        if (at(Tok::LParen) || at(Tok::LAngle)) return true;
        if (!at(Tok::Ident)) return false;
        const auto& s = peek().text;
        return s == "new" || !kKeywords.count(s);
    }

    TermPtr term() {
        if (at(Tok::Lambda)) {
            next();
            std::string x = binder();
            TypePtr annot;
            if (at(Tok::Colon)) {
                next();
                annot = type();
            }
            expect(Tok::Dot, "'.'");
            return Term::lam(x, term(), annot);
        }
        if (at_kw("letrec")) {
            next();
            std::string f = binder();
            std::string x = binder();
            if (f == x) fail("letrec function and parameter must differ");
            expect(Tok::Eq, "'='");
            TermPtr m = term();
            expect_kw("in");
            return Term::let_rec(f, x, m, term());
        }
        if (at_kw("let")) {
            next();
            expect(Tok::LAngle, "'<'");
            std::string x = binder();
            expect(Tok::Comma, "','");
            std::string y = binder();
            if (x == y) fail("pair binders must differ");
            expect(Tok::RAngle, "'>'");
            expect(Tok::Eq, "'='");
            TermPtr m = term();
            expect_kw("in");
            return Term::let_pair(x, y, m, term());
        }
        if (at_kw("if")) {
            next();
            TermPtr p = term();
            expect_kw("then");
            TermPtr m = term();
            expect_kw("else");
            return Term::ite(p, m, term());
        }
        return application();
    }

    TermPtr application() {
        if (!starts_atom()) fail("expected a term");
        TermPtr t = atom();
        while (true) {
            if (starts_atom()) {
                t = Term::app(t, atom());
            } else if (starts_binder_form()) {
                t = Term::app(t, term());
                break;
            } else {
                break;
            }
        }
        return t;
    }

    TermPtr atom() {
        if (at(Tok::LParen)) {
            next();
            TermPtr t = term();
            expect(Tok::RParen, "')'");
            return t;
        }
        if (at(Tok::LAngle)) {
            next();
            std::vector<TermPtr> items{term()};
            while (at(Tok::Comma)) {
                next();
                items.push_back(term());
            }
            expect(Tok::RAngle, "'>'");
            if (items.size() < 2) fail("a tuple needs at least two components");
            TermPtr t = items.back();
            for (std::size_t k = items.size() - 1; k-- > 0;) t = Term::pair(items[k], t);
            return t;
        }
        Token id = expect(Tok::Ident, "a term");
        if (id.text == "new") return Term::fresh();
        auto c = constants_.find(id.text);
        if (c != constants_.end()) return Term::constant(c->second);
        return Term::var(id.text);
    }

    // T ::= U [-o T] ; U ::= V [* U] ; V ::= !V | a | (T)
    TypePtr type() {
        TypePtr l = tensor_type();
        if (at(Tok::Lolli)) {
            next();
            return Type::lolli(l, type());
        }
        return l;
    }
    TypePtr tensor_type() {
        TypePtr l = prefix_type();
        if (at(Tok::Star)) {
            next();
            return Type::tensor(l, tensor_type());
        }
        return l;
    }
    TypePtr prefix_type() {
        if (at(Tok::Bang)) {
            next();
            return Type::bang(prefix_type());
        }
        if (at(Tok::LParen)) {
            next();
            TypePtr t = type();
            expect(Tok::RParen, "')'");
            return t;
        }
        if (at(Tok::Ident) && (peek().text == "a" || peek().text == "alpha")) {
            next();
            return Type::base();
        }
        fail("expected a type");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::map<std::string, OperationLabel> constants_;
};

}  // namespace

TermPtr parse(const std::string& text, const std::vector<OperationLabel>& constants) {
    return Parser(lex(text), constants).program();
}

TypePtr parse_type(const std::string& text) { return Parser(lex(text), {}).type_only(); }

}  // namespace memgoi::pcfll
