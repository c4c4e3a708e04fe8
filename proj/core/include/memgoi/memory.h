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

#ifndef MEMGOI_MEMORY_H
#define MEMGOI_MEMORY_H

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "memgoi/pars.h"

namespace memgoi {

using Address = std::uint64_t;
using Renaming = std::map<Address, Address>;  // finite permutation; identity elsewhere

struct OperationLabel {
    std::string name;
    std::size_t arity = 0;
    auto operator<=>(const OperationLabel&) const = default;
};

// update() outside its domain: wrong arity or repeated addresses.
class PartialityError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

Address apply_renaming(const Renaming& sigma, Address a);

// Applies sigma to every address: a memory `m` becomes `sigma . m`.
class IntRegisterMemory {
   public:
    std::map<Address, std::uint64_t> values;  // zero entries are never stored

    std::uint64_t get(Address a) const;
    IntRegisterMemory with(Address a, std::uint64_t v) const;

    static std::vector<OperationLabel> labels();
    std::vector<std::tuple<bool, IntRegisterMemory, double>> test(Address i) const;
    IntRegisterMemory update(const std::vector<Address>& tuple, const OperationLabel& label) const;
    std::set<Address> support() const;
    IntRegisterMemory rename(const Renaming& sigma) const;
    std::string key() const;
    std::string readout(Address a) const;

    bool operator==(const IntRegisterMemory&) const = default;
};

class ProbRegisterMemory {
   public:
    std::map<Address, double> values;  // entries in (0,1]

    double get(Address a) const;
    ProbRegisterMemory with(Address a, double v) const;

    static std::vector<OperationLabel> labels();
    std::vector<std::tuple<bool, ProbRegisterMemory, double>> test(Address i) const;
    ProbRegisterMemory update(const std::vector<Address>& tuple, const OperationLabel& label) const;
    std::set<Address> support() const;
    ProbRegisterMemory rename(const Renaming& sigma) const;
    std::string key() const;
    std::string readout(Address a) const;

    bool operator==(const ProbRegisterMemory&) const = default;
};

using Complex = std::complex<double>;

struct Gate {
    std::string name;
    std::size_t arity = 0;
    std::vector<Complex> matrix;  // row-major, 2^arity x 2^arity
};

class GateSet {
   public:
    // H, X, Z and CNOT. CNOT acts on (target, control): |x y> -> |x^y y>.
    static GateSet builtin();
    // Built-ins plus the entries of a gate file. Throws std::runtime_error.
    static GateSet load_file(const std::string& path);
    static GateSet parse(const std::string& text, GateSet base);

    void add(Gate g);  // throws std::invalid_argument if not unitary
    const Gate* find(const std::string& name) const;
    std::vector<OperationLabel> labels() const;

   private:
    std::map<std::string, Gate> gates_;
};

bool is_unitary(const Gate& g, double tol = pars::kTolerance);
Complex parse_complex(const std::string& text);

class QuantumMemory {
   public:
    QuantumMemory();
    explicit QuantumMemory(std::shared_ptr<const GateSet> gates);

    // Qubit k of the vector is bound[k]; bound[0] is the most significant bit.
    const std::vector<Address>& bound() const { return bound_; }
    const std::vector<Complex>& amplitudes() const { return amp_; }
    const std::shared_ptr<const GateSet>& gates() const { return gates_; }

    static QuantumMemory from_state(std::shared_ptr<const GateSet> gates, std::vector<Address> bound,
                                    std::vector<Complex> amp);

    std::vector<OperationLabel> labels() const;
    std::vector<std::tuple<bool, QuantumMemory, double>> test(Address i) const;
    QuantumMemory update(const std::vector<Address>& tuple, const OperationLabel& label) const;
    std::set<Address> support() const;
    QuantumMemory rename(const Renaming& sigma) const;
    std::string key() const;
    std::string readout(Address a) const;

    QuantumMemory bind(Address a) const;  // tensor with a fresh |0>
    double norm2() const;
    double prob_one(Address a) const;
    bool approx_equal(const QuantumMemory& o, double tol = pars::kTolerance) const;

   private:
    std::shared_ptr<const GateSet> gates_;
    std::vector<Address> bound_;
    std::vector<Complex> amp_;
};

enum class Backend { Int, Prob, Quantum };

std::optional<Backend> parse_backend(const std::string& s);
std::string backend_name(Backend b);

class Memory;

struct TestBranch {
    bool outcome;
    std::shared_ptr<const Memory> memory;
    std::string memory_key;

    bool operator<(const TestBranch& o) const {
        return std::tie(outcome, memory_key) < std::tie(o.outcome, o.memory_key);
    }
};

// A memory state of one of the three structures, as an immutable value.
class Memory {
   public:
    using State = std::variant<IntRegisterMemory, ProbRegisterMemory, QuantumMemory>;

    Memory();
    explicit Memory(State s);
    static Memory make(Backend b, std::shared_ptr<const GateSet> gates = nullptr);

    Backend backend() const;
    const State& state() const { return state_; }

    std::vector<OperationLabel> labels() const;
    std::optional<OperationLabel> label(const std::string& name) const;

    pars::Distribution<TestBranch> test(Address i) const;
    Memory update(const std::vector<Address>& tuple, const OperationLabel& label) const;
    std::set<Address> support() const;
    Address fresh(const std::set<Address>& used) const;
    Memory rename(const Renaming& sigma) const;

    std::string key() const;
    std::string to_string() const;
    std::string readout(Address a) const;
    bool approx_equal(const Memory& o, double tol = pars::kTolerance) const;

   private:
    State state_;
};

bool operator<(const Memory& a, const Memory& b);

// Concatenates single-character readouts; longer ones are comma-separated.
std::string join_readouts(const std::vector<std::string>& parts);
bool operator==(const Memory& a, const Memory& b);

}  // namespace memgoi

#endif  // MEMGOI_MEMORY_H
