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

// PCF^LL: a linearly typed call-by-value language over a memory structure.
//
//   M ::= x | \x. M | \x : T. M | M N | <M, N> | let <x, y> = M in N
//       | letrec f x = M in N | new | c | if P then M else N
//   T ::= a | T -o T | T * T | !T
//
// Constants are the operation names of the chosen memory. `<a, b, c>` is
// sugar for `<a, <b, c>>`.

#ifndef MEMGOI_PCFLL_H
#define MEMGOI_PCFLL_H

#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "memgoi/formula.h"
#include "memgoi/memory.h"
#include "memgoi/pars.h"
#include "memgoi/program_net.h"

namespace memgoi::pcfll {

// ------------------------------------------------------------------ syntax

enum class TermKind { Var, Lam, App, LetPair, Pair, LetRec, New, Const, If };

struct Type;
using TypePtr = std::shared_ptr<const Type>;
struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
    TermKind kind = TermKind::New;
    std::string x;  // Var name, Lam / LetRec parameter, first LetPair binder
    std::string y;  // LetPair second binder, LetRec function name
    TermPtr a, b, c;
    OperationLabel label;  // Const
    TypePtr annot;         // optional Lam parameter type

    static TermPtr var(std::string name);
    static TermPtr lam(std::string x, TermPtr body, TypePtr annot = nullptr);
    static TermPtr app(TermPtr f, TermPtr arg);
    static TermPtr pair(TermPtr l, TermPtr r);
    static TermPtr let_pair(std::string x, std::string y, TermPtr m, TermPtr n);
    static TermPtr let_rec(std::string f, std::string x, TermPtr m, TermPtr n);
    static TermPtr fresh();
    static TermPtr constant(OperationLabel l);
    static TermPtr ite(TermPtr p, TermPtr m, TermPtr n);
};

bool is_value(const Term& t);
std::string to_string(const Term& t);
std::set<std::string> free_vars(const Term& t);
std::size_t count_free(const Term& t, const std::string& x);
// Replaces free occurrences of x by v, which must be closed up to linked
// variables.
TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& v);

class ParseError : public std::runtime_error {
   public:
    ParseError(const std::string& msg, int line, int col);
    int line = 0;
    int col = 0;
};

TermPtr parse(const std::string& text, const std::vector<OperationLabel>& constants);

// ------------------------------------------------------------------- types

enum class TypeKind { Base, Lolli, Tensor, Bang, Meta };

struct Type {
    TypeKind kind = TypeKind::Base;
    TypePtr a, b;
    int meta = -1;

    static TypePtr base();
    static TypePtr lolli(TypePtr a, TypePtr b);
    static TypePtr tensor(TypePtr a, TypePtr b);
    static TypePtr bang(TypePtr a);
};

std::string to_string(const Type& t);
bool equal(const TypePtr& a, const TypePtr& b);
// a† : base -> 1, -o -> ⅋ with the dual argument, ⊗ -> ⊗, ! -> !.
Formula dagger(const TypePtr& t);
TypePtr parse_type(const std::string& text);

class TypeError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// Result of elaborating a term: every occurrence and binder gets a type, and
// value occurrences that are promoted to !(A -o B) are marked.
struct Typing {
    TypePtr type;
    std::map<const Term*, TypePtr> types;    // occurrence type, before promotion
    std::map<const Term*, TypePtr> binder;   // Lam x, LetPair x, LetRec x
    std::map<const Term*, TypePtr> binder2;  // LetPair y, LetRec f
    std::set<const Term*> promoted;

    TypePtr outer(const Term* t) const;  // type after promotion
};

// Infers and checks the type of `t` in a context of linear variables.
Typing typecheck(const TermPtr& t, const std::map<std::string, TypePtr>& context = {});

// ----------------------------------------------------------------- machine

inline constexpr char kLinkedPrefix = '%';

struct Closure {
    TermPtr term;
    std::map<std::string, Address> ind;  // linked variables
    Memory memory;
    std::string key;

    bool operator<(const Closure& o) const { return key < o.key; }
    bool operator==(const Closure& o) const { return key == o.key; }
};

// Linked variables renamed %0, %1, ... in order of first occurrence; their
// addresses follow the same order, then the rest of the memory support.
Closure canonicalize(Closure cl);
Closure make_closure(TermPtr term, Memory memory);

enum class PcfRedexKind { Link, Update, Test, Beta, LetPair, LetRec };

struct PcfRedex {
    PcfRedexKind kind;
    auto operator<=>(const PcfRedex&) const = default;
};

std::string describe(const PcfRedex& r);
std::string observe(const Closure& cl);

class PcfSystem {
   public:
    using Element = Closure;
    using Redex = PcfRedex;

    std::vector<PcfRedex> enumerate_redexes(const Closure& cl) const;
    pars::Distribution<Closure> apply(const Closure& cl, const PcfRedex& r) const;
    bool is_terminal(const Closure& cl) const { return enumerate_redexes(cl).empty(); }
    bool is_branching(const PcfRedex& r) const { return r.kind == PcfRedexKind::Test; }
    std::string describe(const Closure& cl) const;

    std::ostream* trace = nullptr;
};

// ------------------------------------------------------------- translation

// Translates a typed closure. Free non-linked variables of the context become
// conclusions (A†)^⊥ in name order, followed by B†; linked variables become
// active one nodes.
ProgramNet translate(const TermPtr& term, const Typing& typing, const std::map<std::string, TypePtr>& context,
                     const std::map<std::string, Address>& ind, const Memory& memory);
ProgramNet translate(const Closure& cl, const Typing& typing);

}  // namespace memgoi::pcfll

template <>
struct std::hash<memgoi::pcfll::Closure> {
    std::size_t operator()(const memgoi::pcfll::Closure& c) const noexcept { return std::hash<std::string>{}(c.key); }
};

#endif  // MEMGOI_PCFLL_H
