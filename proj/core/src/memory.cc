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

#include "memgoi/memory.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace memgoi {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void check_tuple(const std::vector<Address>& tuple, const OperationLabel& label) {
    if (tuple.size() != label.arity) {
        throw PartialityError("update " + label.name + ": expected " + std::to_string(label.arity) +
                              " addresses, got " + std::to_string(tuple.size()));
    }
    std::vector<Address> sorted = tuple;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw PartialityError("update " + label.name + ": repeated address");
    }
}

std::string fmt_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

Address apply_renaming(const Renaming& sigma, Address a) {
    auto it = sigma.find(a);
    return it == sigma.end() ? a : it->second;
}

// ---------------------------------------------------------------- integers

std::uint64_t IntRegisterMemory::get(Address a) const {
    auto it = values.find(a);
    return it == values.end() ? 0 : it->second;
}

IntRegisterMemory IntRegisterMemory::with(Address a, std::uint64_t v) const {
    IntRegisterMemory r = *this;
    if (v == 0) {
        r.values.erase(a);
    } else {
        r.values[a] = v;
    }
    return r;
}

std::vector<OperationLabel> IntRegisterMemory::labels() { return {{"S", 1}, {"P", 1}, {"max", 2}}; }

std::vector<std::tuple<bool, IntRegisterMemory, double>> IntRegisterMemory::test(Address i) const {
    return {{get(i) == 0, *this, 1.0}};
}

IntRegisterMemory IntRegisterMemory::update(const std::vector<Address>& tuple, const OperationLabel& label) const {
    if (label.name == "S" && label.arity == 1) {
        check_tuple(tuple, label);
        return with(tuple[0], get(tuple[0]) + 1);
    }
    if (label.name == "P" && label.arity == 1) {
        check_tuple(tuple, label);
        auto v = get(tuple[0]);
        return with(tuple[0], v == 0 ? 0 : v - 1);
    }
    if (label.name == "max" && label.arity == 2) {
        check_tuple(tuple, label);
        return with(tuple[0], std::max(get(tuple[0]), get(tuple[1])));
    }
    for (const auto& l : labels()) {
        if (l.name == label.name) check_tuple(tuple, l);
    }
    throw std::invalid_argument("unknown integer-register operation: " + label.name);
}

std::set<Address> IntRegisterMemory::support() const {
    std::set<Address> s;
    for (const auto& kv : values) s.insert(kv.first);
    return s;
}

IntRegisterMemory IntRegisterMemory::rename(const Renaming& sigma) const {
    IntRegisterMemory r;
    for (const auto& [a, v] : values) r.values[apply_renaming(sigma, a)] = v;
    return r;
}

std::string IntRegisterMemory::key() const {
    std::string s = "I";
    for (const auto& [a, v] : values) s += std::to_string(a) + "=" + std::to_string(v) + ";";
    return s;
}

std::string IntRegisterMemory::readout(Address a) const { return std::to_string(get(a)); }

// ----------------------------------------------------------- probabilistic

double ProbRegisterMemory::get(Address a) const {
    auto it = values.find(a);
    return it == values.end() ? 0.0 : it->second;
}

ProbRegisterMemory ProbRegisterMemory::with(Address a, double v) const {
    ProbRegisterMemory r = *this;
    if (v <= 0.0) {
        r.values.erase(a);
    } else {
        r.values[a] = std::min(v, 1.0);
    }
    return r;
}

std::vector<OperationLabel> ProbRegisterMemory::labels() { return {{"c", 1}}; }

std::vector<std::tuple<bool, ProbRegisterMemory, double>> ProbRegisterMemory::test(Address i) const {
    double p = get(i);
    std::vector<std::tuple<bool, ProbRegisterMemory, double>> out;
    if (1.0 - p >= pars::kPruneBelow) out.emplace_back(false, with(i, 0.0), 1.0 - p);
    if (p >= pars::kPruneBelow) out.emplace_back(true, with(i, 1.0), p);
    return out;
}

ProbRegisterMemory ProbRegisterMemory::update(const std::vector<Address>& tuple, const OperationLabel& label) const {
    if (label.name != "c") throw std::invalid_argument("unknown probabilistic-register operation: " + label.name);
    check_tuple(tuple, {"c", 1});
    if (label.arity != 1) throw PartialityError("update c: arity is 1");
    return with(tuple[0], 0.5);
}

std::set<Address> ProbRegisterMemory::support() const {
    std::set<Address> s;
    for (const auto& kv : values) s.insert(kv.first);
    return s;
}

ProbRegisterMemory ProbRegisterMemory::rename(const Renaming& sigma) const {
    ProbRegisterMemory r;
    for (const auto& [a, v] : values) r.values[apply_renaming(sigma, a)] = v;
    return r;
}

std::string ProbRegisterMemory::key() const {
    std::string s = "P";
    for (const auto& [a, v] : values) s += std::to_string(a) + "=" + fmt_real(v) + ";";
    return s;
}

std::string ProbRegisterMemory::readout(Address a) const { return fmt_real(get(a)); }

// ------------------------------------------------------------------ Memory

std::optional<Backend> parse_backend(const std::string& s) {
    if (s == "int") return Backend::Int;
    if (s == "prob") return Backend::Prob;
    if (s == "quantum") return Backend::Quantum;
    return std::nullopt;
}

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::Int:
            return "int";
        case Backend::Prob:
            return "prob";
        case Backend::Quantum:
            return "quantum";
    }
    return "?";
}

Memory::Memory() : state_(IntRegisterMemory{}) {}

Memory::Memory(State s) : state_(std::move(s)) {}

Memory Memory::make(Backend b, std::shared_ptr<const GateSet> gates) {
    switch (b) {
        case Backend::Int:
            return Memory(IntRegisterMemory{});
        case Backend::Prob:
            return Memory(ProbRegisterMemory{});
        case Backend::Quantum:
            if (!gates) gates = std::make_shared<const GateSet>(GateSet::builtin());
            return Memory(QuantumMemory(std::move(gates)));
    }
    return Memory();
}

Backend Memory::backend() const { return static_cast<Backend>(state_.index()); }

std::vector<OperationLabel> Memory::labels() const {
    return std::visit([](const auto& m) { return m.labels(); }, state_);
}

std::optional<OperationLabel> Memory::label(const std::string& name) const {
    for (auto& l : labels()) {
        if (l.name == name) return l;
    }
    return std::nullopt;
}

pars::Distribution<TestBranch> Memory::test(Address i) const {
    pars::Distribution<TestBranch> d;
    std::visit(
        [&](const auto& m) {
            for (auto& [b, mm, p] : m.test(i)) {
                auto mem = std::make_shared<const Memory>(State(std::move(mm)));
                std::string k = mem->key();
                d.add(TestBranch{b, std::move(mem), std::move(k)}, p);
            }
        },
        state_);
    return d;
}

Memory Memory::update(const std::vector<Address>& tuple, const OperationLabel& label) const {
    return std::visit([&](const auto& m) { return Memory(State(m.update(tuple, label))); }, state_);
}

std::set<Address> Memory::support() const {
    return std::visit([](const auto& m) { return m.support(); }, state_);
}

Address Memory::fresh(const std::set<Address>& used) const {
    auto sup = support();
    Address a = 0;
    while (sup.count(a) || used.count(a)) ++a;
    return a;
}

Memory Memory::rename(const Renaming& sigma) const {
    return std::visit([&](const auto& m) { return Memory(State(m.rename(sigma))); }, state_);
}

std::string Memory::key() const {
    return std::visit([](const auto& m) { return m.key(); }, state_);
}

std::string Memory::to_string() const {
    return std::visit(
        overloaded{
            [](const IntRegisterMemory& m) {
                std::string s = "int[";
                bool first = true;
                for (const auto& [a, v] : m.values) {
                    if (!first) s += ", ";
                    first = false;
                    s += std::to_string(a) + ":" + std::to_string(v);
                }
                return s + "]";
            },
            [](const ProbRegisterMemory& m) {
                std::string s = "prob[";
                bool first = true;
                for (const auto& [a, v] : m.values) {
                    if (!first) s += ", ";
                    first = false;
                    s += std::to_string(a) + ":" + fmt_real(v);
                }
                return s + "]";
            },
            [](const QuantumMemory& m) {
                std::ostringstream os;
                os << "quantum[";
                for (std::size_t k = 0; k < m.bound().size(); ++k) os << (k ? "," : "") << m.bound()[k];
                os << "]";
                const auto& amp = m.amplitudes();
                std::size_t n = m.bound().size();
                bool first = true;
                for (std::size_t idx = 0; idx < amp.size(); ++idx) {
                    if (std::abs(amp[idx]) < 1e-12) continue;
                    os << (first ? " " : " + ");
                    first = false;
                    char buf[96];
                    if (std::abs(amp[idx].imag()) < 1e-12) {
                        std::snprintf(buf, sizeof buf, "%.6g", amp[idx].real());
                    } else {
                        std::snprintf(buf, sizeof buf, "(%.6g%+.6gi)", amp[idx].real(), amp[idx].imag());
                    }
                    os << buf << "|";
                    for (std::size_t q = 0; q < n; ++q) os << ((idx >> (n - 1 - q)) & 1);
                    os << ">";
                }
                return os.str();
            },
        },
        state_);
}

std::string Memory::readout(Address a) const {
    return std::visit([&](const auto& m) { return m.readout(a); }, state_);
}

bool Memory::approx_equal(const Memory& o, double tol) const {
    if (state_.index() != o.state_.index()) return false;
    return std::visit(
        overloaded{
            [&](const IntRegisterMemory& m) { return m == std::get<IntRegisterMemory>(o.state_); },
            [&](const ProbRegisterMemory& m) {
                const auto& n = std::get<ProbRegisterMemory>(o.state_);
                for (auto a : m.support()) {
                    if (std::abs(m.get(a) - n.get(a)) > tol) return false;
                }
                for (auto a : n.support()) {
                    if (std::abs(m.get(a) - n.get(a)) > tol) return false;
                }
                return true;
            },
            [&](const QuantumMemory& m) { return m.approx_equal(std::get<QuantumMemory>(o.state_), tol); },
        },
        state_);
}

std::string join_readouts(const std::vector<std::string>& parts) {
    bool compact = true;
    for (const auto& p : parts) compact = compact && p.size() == 1;
    std::string s;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (k && !compact) s += ",";
        s += parts[k];
    }
    return s;
}

bool operator<(const Memory& a, const Memory& b) { return a.key() < b.key(); }
bool operator==(const Memory& a, const Memory& b) { return a.key() == b.key(); }

}  // namespace memgoi
