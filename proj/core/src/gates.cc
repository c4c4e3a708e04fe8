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
#include <cmath>
#include <fstream>
#include <sstream>

#include "memgoi/memory.h"

namespace memgoi {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_real(const std::string& s, const std::string& whole) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad complex literal: " + whole);
    }
    if (used != s.size()) throw std::invalid_argument("bad complex literal: " + whole);
    return v;
}

}  // namespace

Complex parse_complex(const std::string& text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, text), 0.0};
    s.pop_back();
    // Split at the last sign that is not an exponent sign.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    std::string re = split == std::string::npos ? "" : s.substr(0, split);
    std::string im = split == std::string::npos ? s : s.substr(split);
    double imv;
    if (im.empty() || im == "+") {
        imv = 1.0;
    } else if (im == "-") {
        imv = -1.0;
    } else {
        imv = parse_real(im, text);
    }
    return {re.empty() ? 0.0 : parse_real(re, text), imv};
}

bool is_unitary(const Gate& g, double tol) {
    std::size_t dim = std::size_t{1} << g.arity;
    if (g.matrix.size() != dim * dim) return false;
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            Complex acc(0.0);
            for (std::size_t k = 0; k < dim; ++k) acc += std::conj(g.matrix[k * dim + r]) * g.matrix[k * dim + c];
            if (std::abs(acc - Complex(r == c ? 1.0 : 0.0)) > tol) return false;
        }
    }
    return true;
}

GateSet GateSet::builtin() {
    const double h = std::sqrt(0.5);
    GateSet gs;
    gs.add({"H", 1, {h, h, h, -h}});
    gs.add({"X", 1, {0, 1, 1, 0}});
    gs.add({"Z", 1, {1, 0, 0, -1}});
    gs.add({"CNOT", 2, {1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0}});
    return gs;
}

void GateSet::add(Gate g) {
    if (g.arity == 0) throw std::invalid_argument("gate " + g.name + ": arity must be at least 1");
    std::size_t dim = std::size_t{1} << g.arity;
    if (g.matrix.size() != dim * dim) {
        throw std::invalid_argument("gate " + g.name + ": expected " + std::to_string(dim * dim) + " entries, got " +
                                    std::to_string(g.matrix.size()));
    }
    if (!is_unitary(g)) throw std::invalid_argument("gate " + g.name + " is not unitary");
    gates_[g.name] = std::move(g);
}

const Gate* GateSet::find(const std::string& name) const {
    auto it = gates_.find(name);
    return it == gates_.end() ? nullptr : &it->second;
}

std::vector<OperationLabel> GateSet::labels() const {
    std::vector<OperationLabel> out;
    for (const auto& [name, g] : gates_) out.push_back({name, g.arity});
    return out;
}

// One gate per line: `name, arity, e_00, e_01, ...`. Brackets are ignored,
// `#` starts a comment.
GateSet GateSet::parse(const std::string& text, GateSet base) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        for (char& c : line) {
            if (c == '[' || c == ']' || c == '(' || c == ')') c = ' ';
        }
        if (trim(line).empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) fields.push_back(trim(field));
        if (fields.size() < 3) {
            throw std::runtime_error("gate file line " + std::to_string(lineno) + ": expected name, arity, entries");
        }
        Gate g;
        g.name = fields[0];
        try {
            g.arity = static_cast<std::size_t>(std::stoul(fields[1]));
            for (std::size_t k = 2; k < fields.size(); ++k) {
                if (!fields[k].empty()) g.matrix.push_back(parse_complex(fields[k]));
            }
            base.add(std::move(g));
        } catch (const std::exception& e) {
            throw std::runtime_error("gate file line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return base;
}

GateSet GateSet::load_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open gate file " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse(ss.str(), builtin());
}

}  // namespace memgoi
