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

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "memgoi/memory.h"

namespace memgoi {

namespace {

std::size_t index_of(const std::vector<Address>& bound, Address a) {
    auto it = std::lower_bound(bound.begin(), bound.end(), a);
    if (it == bound.end() || *it != a) return bound.size();
    return static_cast<std::size_t>(it - bound.begin());
}

void append_rounded(std::string& s, double v) {
    double r = std::round(v * 1e10) / 1e10;
    if (r == 0.0) r = 0.0;  // drops the sign of negative zero
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10f", r);
    s += buf;
}

}  // namespace

QuantumMemory::QuantumMemory() : QuantumMemory(std::make_shared<const GateSet>(GateSet::builtin())) {}

QuantumMemory::QuantumMemory(std::shared_ptr<const GateSet> gates) : gates_(std::move(gates)), amp_{Complex(1.0)} {}

QuantumMemory QuantumMemory::from_state(std::shared_ptr<const GateSet> gates, std::vector<Address> bound,
                                        std::vector<Complex> amp) {
    if (amp.size() != (std::size_t{1} << bound.size())) {
        throw std::invalid_argument("quantum state: amplitude count does not match bound qubits");
    }
    QuantumMemory m(std::move(gates));
    // Sort the bound list, permuting the basis accordingly.
    std::size_t n = bound.size();
    std::vector<std::size_t> order(n);
    for (std::size_t k = 0; k < n; ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return bound[a] < bound[b]; });
    std::vector<Address> sorted(n);
    for (std::size_t k = 0; k < n; ++k) sorted[k] = bound[order[k]];
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("quantum state: duplicate bound address");
    }
    std::vector<Complex> out(amp.size());
    for (std::size_t idx = 0; idx < amp.size(); ++idx) {
        std::size_t nidx = 0;
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t bit = (idx >> (n - 1 - order[k])) & 1;
            nidx |= bit << (n - 1 - k);
        }
        out[nidx] = amp[idx];
    }
    m.bound_ = std::move(sorted);
    m.amp_ = std::move(out);
    return m;
}

std::vector<OperationLabel> QuantumMemory::labels() const { return gates_->labels(); }

QuantumMemory QuantumMemory::bind(Address a) const {
    std::size_t pos = static_cast<std::size_t>(std::lower_bound(bound_.begin(), bound_.end(), a) - bound_.begin());
    if (pos < bound_.size() && bound_[pos] == a) return *this;
    QuantumMemory r(gates_);
    r.bound_ = bound_;
    r.bound_.insert(r.bound_.begin() + static_cast<std::ptrdiff_t>(pos), a);
    std::size_t n = bound_.size();
    std::size_t low_bits = n - pos;  // qubits after the inserted one
    r.amp_.assign(amp_.size() * 2, Complex(0.0));
    for (std::size_t idx = 0; idx < amp_.size(); ++idx) {
        std::size_t hi = idx >> low_bits;
        std::size_t lo = idx & ((std::size_t{1} << low_bits) - 1);
        r.amp_[(hi << (low_bits + 1)) | lo] = amp_[idx];
    }
    return r;
}

std::vector<std::tuple<bool, QuantumMemory, double>> QuantumMemory::test(Address i) const {
    std::size_t q = index_of(bound_, i);
    if (q == bound_.size()) return {{false, *this, 1.0}};
    std::size_t n = bound_.size();
    std::size_t b = n - 1 - q;
    double p[2] = {0.0, 0.0};
    for (std::size_t idx = 0; idx < amp_.size(); ++idx) p[(idx >> b) & 1] += std::norm(amp_[idx]);
    double total = p[0] + p[1];
    std::vector<std::tuple<bool, QuantumMemory, double>> out;
    for (int o = 0; o < 2; ++o) {
        double po = p[o] / total;
        if (po < pars::kPruneBelow) continue;
        QuantumMemory r(gates_);
        r.bound_ = bound_;
        r.bound_.erase(r.bound_.begin() + static_cast<std::ptrdiff_t>(q));
        r.amp_.assign(amp_.size() / 2, Complex(0.0));
        double scale = 1.0 / std::sqrt(p[o]);
        for (std::size_t idx = 0; idx < amp_.size(); ++idx) {
            if (((idx >> b) & 1) != static_cast<std::size_t>(o)) continue;
            std::size_t hi = idx >> (b + 1);
            std::size_t lo = idx & ((std::size_t{1} << b) - 1);
            r.amp_[(hi << b) | lo] = amp_[idx] * scale;
        }
        out.emplace_back(o == 1, std::move(r), po);
    }
    return out;
}

QuantumMemory QuantumMemory::update(const std::vector<Address>& tuple, const OperationLabel& label) const {
    const Gate* g = gates_->find(label.name);
    if (!g) throw std::invalid_argument("unknown gate: " + label.name);
    if (tuple.size() != g->arity || label.arity != g->arity) {
        throw PartialityError("update " + label.name + ": expected " + std::to_string(g->arity) + " addresses, got " +
                              std::to_string(tuple.size()));
    }
    for (std::size_t a = 0; a < tuple.size(); ++a) {
        for (std::size_t b = a + 1; b < tuple.size(); ++b) {
            if (tuple[a] == tuple[b]) throw PartialityError("update " + label.name + ": repeated address");
        }
    }
    QuantumMemory r = *this;
    for (Address a : tuple) r = r.bind(a);
    std::size_t n = r.bound_.size();
    std::size_t k = tuple.size();
    std::vector<std::size_t> bits(k);
    std::size_t mask = 0;
    for (std::size_t t = 0; t < k; ++t) {
        bits[t] = n - 1 - index_of(r.bound_, tuple[t]);
        mask |= std::size_t{1} << bits[t];
    }
    std::size_t dim = std::size_t{1} << k;
    std::vector<std::size_t> offs(dim);
    for (std::size_t s = 0; s < dim; ++s) {
        std::size_t off = 0;
        for (std::size_t t = 0; t < k; ++t) {
            if ((s >> (k - 1 - t)) & 1) off |= std::size_t{1} << bits[t];
        }
        offs[s] = off;
    }
    std::vector<Complex> in(dim), out(dim);
    for (std::size_t base = 0; base < r.amp_.size(); ++base) {
        if (base & mask) continue;
        for (std::size_t s = 0; s < dim; ++s) in[s] = r.amp_[base | offs[s]];
        for (std::size_t row = 0; row < dim; ++row) {
            Complex acc(0.0);
            for (std::size_t col = 0; col < dim; ++col) acc += g->matrix[row * dim + col] * in[col];
            out[row] = acc;
        }
        for (std::size_t s = 0; s < dim; ++s) r.amp_[base | offs[s]] = out[s];
    }
    return r;
}

std::set<Address> QuantumMemory::support() const { return {bound_.begin(), bound_.end()}; }

QuantumMemory QuantumMemory::rename(const Renaming& sigma) const {
    std::vector<Address> nb;
    nb.reserve(bound_.size());
    for (Address a : bound_) nb.push_back(apply_renaming(sigma, a));
    return from_state(gates_, std::move(nb), amp_);
}

std::string QuantumMemory::key() const {
    std::string s = "Q";
    for (Address a : bound_) s += std::to_string(a) + ",";
    s += "|";
    for (const auto& c : amp_) {
        append_rounded(s, c.real());
        s += ",";
        append_rounded(s, c.imag());
        s += ";";
    }
    return s;
}

double QuantumMemory::norm2() const {
    double s = 0.0;
    for (const auto& c : amp_) s += std::norm(c);
    return s;
}

double QuantumMemory::prob_one(Address a) const {
    std::size_t q = index_of(bound_, a);
    if (q == bound_.size()) return 0.0;
    std::size_t b = bound_.size() - 1 - q;
    double p = 0.0;
    for (std::size_t idx = 0; idx < amp_.size(); ++idx) {
        if ((idx >> b) & 1) p += std::norm(amp_[idx]);
    }
    return p;
}

std::string QuantumMemory::readout(Address a) const {
    double p = prob_one(a);
    if (p < pars::kTolerance) return "0";
    if (p > 1.0 - pars::kTolerance) return "1";
    return "?";
}

bool QuantumMemory::approx_equal(const QuantumMemory& o, double tol) const {
    if (bound_ != o.bound_ || amp_.size() != o.amp_.size()) return false;
    for (std::size_t k = 0; k < amp_.size(); ++k) {
        if (std::abs(amp_[k] - o.amp_[k]) > tol) return false;
    }
    return true;
}

}  // namespace memgoi
