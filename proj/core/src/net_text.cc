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
#include <deque>
#include <set>
#include <sstream>

#include "memgoi/net.h"

namespace memgoi {

namespace {

std::string local_signature(const Net& net, const Node& n) {
    std::string s = node_kind_name(n.kind);
    s += "/" + n.label.name;
    for (int p : n.premises) s += "|" + (p >= 0 ? net.edge(p).type.str() : std::string("-"));
    s += "=>";
    for (int c : n.conclusions) s += "|" + (c >= 0 ? net.edge(c).type.str() : std::string("-"));
    for (const auto& c : n.contents) s += "{" + c->frozen_key() + "}";
    return s;
}

}  // namespace

std::vector<int> Net::traversal_order() const {
    std::vector<int> order;
    std::set<int> seen;
    std::deque<int> queue;
    auto push = [&](int n) {
        if (n >= 0 && seen.insert(n).second) queue.push_back(n);
    };
    auto drain = [&] {
        while (!queue.empty()) {
            int id = queue.front();
            queue.pop_front();
            order.push_back(id);
            const Node& n = nodes.at(id);
            for (int p : n.premises) {
                if (p >= 0) push(edges.at(p).src);
            }
            for (int c : n.conclusions) {
                if (c >= 0) push(edges.at(c).dst);
            }
        }
    };
    for (int c : conclusions) {
        if (c >= 0) push(edges.at(c).src);
    }
    drain();
    if (order.size() < nodes.size()) {
        std::vector<std::pair<std::string, int>> rest;
        for (const auto& [id, n] : nodes) {
            if (!seen.count(id)) rest.emplace_back(local_signature(*this, n), id);
        }
        std::sort(rest.begin(), rest.end());
        for (const auto& [sig, id] : rest) {
            push(id);
            drain();
        }
    }
    return order;
}

Net Net::canonical(std::map<int, int>* node_map) const {
    auto order = traversal_order();
    std::map<int, int> nmap, emap;
    int next = 0;
    for (int id : order) nmap[id] = next++;
    auto number_edge = [&](int e) {
        if (e >= 0 && !emap.count(e)) emap[e] = next++;
    };
    for (int c : conclusions) number_edge(c);
    for (int id : order) {
        const Node& n = nodes.at(id);
        for (int p : n.premises) number_edge(p);
        for (int c : n.conclusions) number_edge(c);
    }
    for (const auto& [id, e] : edges) number_edge(id);
    Net out;
    out.next_id = next;
    for (const auto& [id, n] : nodes) {
        Node m = n;
        for (int& p : m.premises) p = p >= 0 ? emap.at(p) : -1;
        for (int& c : m.conclusions) c = c >= 0 ? emap.at(c) : -1;
        out.nodes.emplace(nmap.at(id), std::move(m));
    }
    for (const auto& [id, e] : edges) {
        Edge f = e;
        f.src = nmap.at(e.src);
        if (e.dst >= 0) f.dst = nmap.at(e.dst);
        out.edges.emplace(emap.at(id), std::move(f));
    }
    for (int c : conclusions) out.conclusions.push_back(c >= 0 ? emap.at(c) : -1);
    if (node_map) *node_map = std::move(nmap);
    return out;
}

std::string Net::key() const { return canonical().serialize(); }

std::string Net::serialize() const {
    const Net& c = *this;
    std::string s = "C";
    for (int e : c.conclusions) s += std::to_string(e) + ",";
    for (const auto& [id, n] : c.nodes) {
        s += "\n";
        s += std::to_string(id);
        s += ':';
        s += node_kind_name(n.kind);
        if (n.kind == NodeKind::Sync) s += "/" + n.label.name;
        s += '(';
        for (int p : n.premises) s += std::to_string(p) + ",";
        s += ")(";
        for (int q : n.conclusions) s += std::to_string(q) + ",";
        s += ')';
        for (const auto& ct : n.contents) s += "{" + ct->frozen_key() + "}";
    }
    s += "\nE";
    for (const auto& [id, e] : c.edges) s += std::to_string(id) + ":" + e.type.str() + ";";
    return s;
}

const std::string& Net::frozen_key() const {
    if (!key_cache_) key_cache_ = std::make_shared<const std::string>(key());
    return *key_cache_;
}

std::string dump(const Net& net, int indent) {
    std::ostringstream os;
    std::string pad(static_cast<std::size_t>(indent), ' ');
    os << pad << "conclusions:";
    for (int c : net.conclusions) os << " e" << c;
    os << "\n";
    for (const auto& [id, n] : net.nodes) {
        os << pad << "n" << id << " " << node_kind_name(n.kind);
        if (n.kind == NodeKind::Sync) os << "[" << n.label.name << "/" << n.label.arity << "]";
        os << " in(";
        for (std::size_t k = 0; k < n.premises.size(); ++k) os << (k ? " " : "") << "e" << n.premises[k];
        os << ") out(";
        for (std::size_t k = 0; k < n.conclusions.size(); ++k) os << (k ? " " : "") << "e" << n.conclusions[k];
        os << ")\n";
        for (std::size_t k = 0; k < n.contents.size(); ++k) {
            os << pad << "  content";
            if (n.kind == NodeKind::BotBox) os << (k == 0 ? " false" : " true");
            os << " {\n" << dump(*n.contents[k], indent + 4) << pad << "  }\n";
        }
    }
    for (const auto& [id, e] : net.edges) {
        os << pad << "e" << id << " : " << e.type.str() << "  n" << e.src << "." << e.src_port << " -> ";
        if (e.dst == kNetConclusion) {
            os << "conclusion " << e.dst_port;
        } else if (e.dst == kDangling) {
            os << "dangling";
        } else {
            os << "n" << e.dst << "." << e.dst_port;
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace memgoi
