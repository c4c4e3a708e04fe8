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

#include <gtest/gtest.h>

using namespace memgoi;
using namespace memgoi::pcfll;

namespace {

std::vector<OperationLabel> quantum_labels() { return Memory::make(Backend::Quantum).labels(); }

TermPtr q(const std::string& src) { return parse(src, quantum_labels()); }

std::string type_of(const std::string& src, Backend b = Backend::Quantum) {
    auto t = parse(src, Memory::make(b).labels());
    return to_string(*typecheck(t).type);
}

pars::ConvergeResult<Closure> run_pcf(const std::string& src, Backend b, std::size_t horizon) {
    Memory m = Memory::make(b);
    auto t = parse(src, m.labels());
    typecheck(t);
    PcfSystem sys;
    return pars::converge(pars::Distribution<Closure>::dirac(make_closure(t, m)), sys, pars::Policy::leftmost(),
                          horizon, 1e-12);
}

const char* kCoin = "letrec f x = if x then new else f (H new) in f (H new)";

}  // namespace

TEST(Syntax, ParsesAndPrints) {
    EXPECT_EQ(to_string(*q("\\x. x")), "\\x. x");
    EXPECT_EQ(to_string(*q("(\\x. x) new")), "(\\x. x) new");
    EXPECT_EQ(to_string(*q("<new, new, new>")), "<new, <new, new>>");
    EXPECT_EQ(to_string(*q("f a b")), "f a b");
    EXPECT_EQ(to_string(*q("f (a b)")), "f (a b)");
    EXPECT_EQ(to_string(*q("H \\x. x -- comment")), "H (\\x. x)");
    EXPECT_EQ(to_string(*q(kCoin)), "letrec f x = if x then new else f (H new) in f (H new)");
    EXPECT_EQ(to_string(*q("λx : !(α ⊸ α). ⟨x new, x new⟩")), "\\x : !(a -o a). <x new, x new>");
}

TEST(Syntax, Errors) {
    EXPECT_THROW(q("\\H. H"), ParseError);
    EXPECT_THROW(q("let <x, x> = new in x"), ParseError);
    EXPECT_THROW(q("(new"), ParseError);
    EXPECT_THROW(q("<new>"), ParseError);
    EXPECT_THROW(q("new $"), ParseError);
    try {
        q("\n  (new");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line, 2);
    }
}

TEST(Syntax, SubstitutionAvoidsShadowedBinders) {
    auto t = q("<x, \\x. x>");
    auto s = substitute(t, "x", Term::fresh());
    EXPECT_EQ(to_string(*s), "<new, \\x. x>");
    EXPECT_EQ(count_free(*t, "x"), 1u);
    EXPECT_EQ(free_vars(*q("letrec f x = f (g x) in f y")), (std::set<std::string>{"g", "y"}));
}

TEST(Types, Examples) {
    EXPECT_EQ(type_of("new"), "a");
    EXPECT_EQ(type_of("\\x. x"), "a -o a");
    EXPECT_EQ(type_of("H"), "a -o a");
    EXPECT_EQ(type_of("CNOT"), "a * a -o a * a");
    EXPECT_EQ(type_of(kCoin), "a");
    EXPECT_EQ(type_of("(\\g. <g new, g new>) H"), "a * a");
    EXPECT_EQ(type_of("let <x, y> = CNOT <new, H new> in <H x, X y>"), "a * a");
    EXPECT_EQ(type_of("\\x : !(a -o a). new"), "!(a -o a) -o a");
}

TEST(Types, RejectsLinearityViolations) {
    EXPECT_THROW(typecheck(q("<x, x>"), {{"x", Type::base()}}), TypeError);
    EXPECT_THROW(typecheck(q("(\\x. <x, x>) new")), TypeError);
    EXPECT_THROW(typecheck(q("(\\x. new) new")), TypeError);
    EXPECT_THROW(typecheck(q("x")), TypeError);
    EXPECT_THROW(typecheck(q("\\y. if new then y else new")), TypeError);
    EXPECT_THROW(typecheck(q("H <new, new>")), TypeError);
    EXPECT_THROW(typecheck(q("(\\g. <g new, g new>) (\\y. if new then y else y)")), TypeError);
    EXPECT_NO_THROW(typecheck(q("x"), {{"x", Type::base()}}));
}

TEST(Types, PromotesValuesOnly) {
    EXPECT_THROW(typecheck(q("(\\g. <g new, g new>) ((\\h. h) H)")), TypeError);
    auto t = q("(\\g. <g new, g new>) H");
    auto ty = typecheck(t);
    EXPECT_TRUE(ty.promoted.count(t->b.get()));
    EXPECT_EQ(to_string(*ty.outer(t->b.get())), "!(a -o a)");
}

TEST(Machine, IdentityTakesTwoSteps) {
    auto r = run_pcf("(\\x. x) new", Backend::Int, 10);
    EXPECT_DOUBLE_EQ(r.probability, 1.0);
    ASSERT_EQ(r.final.size(), 1u);
    EXPECT_EQ(observe(r.final.begin()->first), "0");
    PcfSystem sys;
    auto c0 = make_closure(q("(\\x. x) new"), Memory::make(Backend::Quantum));
    auto c1 = sys.apply(c0, sys.enumerate_redexes(c0).at(0)).begin()->first;
    EXPECT_EQ(sys.enumerate_redexes(c1).at(0).kind, PcfRedexKind::Beta);
    auto c2 = sys.apply(c1, sys.enumerate_redexes(c1).at(0)).begin()->first;
    EXPECT_TRUE(sys.is_terminal(c2));
}

TEST(Machine, TestOnOneTakesFalseBranch) {
    Memory m(IntRegisterMemory{}.with(0, 1));
    Closure cl;
    cl.term = substitute(parse("if x then new else S new", m.labels()), "x", Term::var("%0"));
    cl.ind = {{"%0", 0}};
    cl.memory = m;
    cl = canonicalize(cl);
    PcfSystem sys;
    auto d = sys.apply(cl, sys.enumerate_redexes(cl).at(0));
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(to_string(*d.begin()->first.term), "S new");
    EXPECT_DOUBLE_EQ(d.begin()->second, 1.0);
}

TEST(Machine, LetRecUnfolds) {
    PcfSystem sys;
    auto cl = make_closure(q("letrec f x = f x in f"), Memory::make(Backend::Quantum));
    auto d = sys.apply(cl, {PcfRedexKind::LetRec});
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(to_string(*d.begin()->first.term), "\\x. letrec f x = f x in f x");
}

TEST(Machine, CanonicalizeRenumbers) {
    Closure a;
    a.term = Term::pair(Term::var("%7"), Term::var("%3"));
    a.ind = {{"%7", 5}, {"%3", 2}};
    a.memory = Memory(IntRegisterMemory{}.with(5, 1));
    Closure ca = canonicalize(a);
    EXPECT_EQ(to_string(*ca.term), "<%0, %1>");
    EXPECT_EQ(ca.ind.at("%0"), 0u);
    EXPECT_EQ(ca.ind.at("%1"), 1u);
    EXPECT_EQ(canonicalize(ca).key, ca.key);
    Closure b = a;
    b.ind = {{"%7", 9}, {"%3", 4}};
    b.memory = Memory(IntRegisterMemory{}.with(9, 1));
    EXPECT_EQ(canonicalize(b).key, ca.key);
}

TEST(Machine, CoinTossConverges) {
    auto r = run_pcf(kCoin, Backend::Quantum, 2000);
    EXPECT_NEAR(r.probability, 1.0, 1e-9);
    auto omega = run_pcf("letrec f x = f x in f new", Backend::Quantum, 200);
    EXPECT_EQ(omega.probability, 0.0);
}

TEST(Machine, SubjectReduction) {
    PcfSystem sys;
    auto mu = pars::Distribution<Closure>::dirac(make_closure(q(kCoin), Memory::make(Backend::Quantum)));
    for (int k = 0; k < 40; ++k) {
        for (const auto& [cl, p] : mu) {
            std::map<std::string, TypePtr> ctx;
            for (const auto& [x, a] : cl.ind) ctx[x] = Type::base();
            EXPECT_EQ(to_string(*typecheck(cl.term, ctx).type), "a") << to_string(*cl.term);
        }
        mu = pars::lift_step(mu, sys, pars::Policy::leftmost());
    }
}

TEST(Translate, NewIsAnInactiveOne) {
    auto t = q("new");
    auto pn = translate(make_closure(t, Memory::make(Backend::Quantum)), typecheck(t));
    ASSERT_EQ(pn.net.size(), 1u);
    EXPECT_EQ(pn.net.nodes.begin()->second.kind, NodeKind::One);
    EXPECT_TRUE(pn.ind.empty());
    EXPECT_EQ(pn.net.conclusion_types().at(0), Formula::one());
}

TEST(Translate, LinearVariableIsAnAxiom) {
    auto t = q("x");
    auto lolli = Type::lolli(Type::base(), Type::base());
    auto pn = translate(t, typecheck(t, {{"x", lolli}}), {{"x", lolli}}, {}, Memory::make(Backend::Quantum));
    ASSERT_EQ(pn.net.size(), 1u);
    EXPECT_EQ(pn.net.nodes.begin()->second.kind, NodeKind::Ax);
}

TEST(Translate, CoinTossShape) {
    auto t = q(kCoin);
    auto pn = translate(make_closure(t, Memory::make(Backend::Quantum)), typecheck(t));
    EXPECT_EQ(check_correct(pn.net), "");
    const Node* ybox = nullptr;
    for (const auto& [id, n] : pn.net.nodes) {
        if (n.kind == NodeKind::YBox) ybox = &n;
    }
    ASSERT_NE(ybox, nullptr);
    EXPECT_EQ(pn.net.edge(ybox->conclusions[0]).type.str(), Formula::ofcourse(Formula::lolli(Formula::one(), Formula::one())).str());
    bool has_bot_box = false;
    for (const auto& [id, n] : ybox->contents[0]->nodes) has_bot_box = has_bot_box || n.kind == NodeKind::BotBox;
    EXPECT_TRUE(has_bot_box);
}
