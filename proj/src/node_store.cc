// Copyright 2026 The TDD Authors
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

#include "tdd/node_store.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "tdd/error.h"

namespace tdd {

namespace {

std::atomic<std::uint64_t> next_store_id{1};

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9E3779B97F4A7C15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

std::vector<IndexLabel> Tdd::index_list() const {
    std::vector<IndexLabel> out;
    out.reserve(labels.size());
    for (const auto &lc : labels) {
        out.push_back(lc.label);
    }
    return out;
}

bool NodeStore::UniqueKey::operator==(const UniqueKey &o) const {
    return level == o.level && low == o.low && high == o.high && same_bits(low_w, o.low_w) &&
           same_bits(high_w, o.high_w);
}

std::size_t NodeStore::UniqueKeyHash::operator()(const UniqueKey &k) const {
    std::size_t h = std::hash<Level>{}(k.level);
    h = mix(h, k.low.value);
    h = mix(h, hash_weight(k.low_w));
    h = mix(h, k.high.value);
    h = mix(h, hash_weight(k.high_w));
    return h;
}

bool NodeStore::AddKey::operator==(const AddKey &o) const {
    return a == o.a && b == o.b && same_bits(ratio, o.ratio);
}

std::size_t NodeStore::AddKeyHash::operator()(const AddKey &k) const {
    return mix(mix(k.a.value, k.b.value), hash_weight(k.ratio));
}

std::size_t NodeStore::ContKeyHash::operator()(const ContKey &k) const {
    return mix(mix(k.f.value, k.g.value), k.var);
}

NodeStore::NodeStore(IndexOrder order, ToleranceConfig tol)
    : order_(order), tol_(tol), id_(next_store_id.fetch_add(1)) {
    nodes_.push_back(Node{});
    alive_.push_back(1);
}

Weight NodeStore::snap(Weight w) const {
    return tol_.is_zero(w) ? Weight{0, 0} : w;
}

Edge NodeStore::terminal_edge(Weight w) const {
    return Edge{snap(w), kTerminal};
}

Edge NodeStore::make_node(Level x, Edge low, Edge high) {
    if (!(x < level_of(low.node)) || !(x < level_of(high.node))) {
        throw TddError(ErrorKind::Ordering, "node index must precede the indices of its successors");
    }
    Weight w0 = snap(low.weight);
    Weight w1 = snap(high.weight);
    bool z0 = w0 == Weight{0, 0};
    bool z1 = w1 == Weight{0, 0};
    if (z0 && z1) {
        return terminal_edge(0);
    }
    // Stored weights keep full precision; only the table key is rounded, so
    // rounding error does not feed back into later arithmetic.
    bool by_low = !z0 && (z1 || std::abs(w0) >= std::abs(w1) - tol_.eps());
    Weight divisor = by_low ? w0 : w1;
    Edge nl = z0 ? Edge{{0, 0}, kTerminal} : Edge{by_low ? Weight{1, 0} : snap(w0 / divisor), low.node};
    Edge nh = z1 ? Edge{{0, 0}, kTerminal} : Edge{by_low ? snap(w1 / divisor) : Weight{1, 0}, high.node};
    UniqueKey key{x, nl.node, tol_.canonical(nl.weight), nh.node, tol_.canonical(nh.weight)};
    if (nl.node == nh.node && same_bits(key.low_w, key.high_w)) {
        return Edge{divisor, nl.node};
    }
    auto it = unique_.find(key);
    if (it != unique_.end()) {
        stats_.unique_hits++;
        return Edge{divisor, it->second};
    }
    NodeId id;
    if (!free_.empty()) {
        id = NodeId{free_.back()};
        free_.pop_back();
        nodes_[id.value] = Node{x, nl, nh};
        alive_[id.value] = 1;
    } else {
        id = NodeId{static_cast<std::uint32_t>(nodes_.size())};
        nodes_.push_back(Node{x, nl, nh});
        alive_.push_back(1);
    }
    unique_.emplace(key, id);
    return Edge{divisor, id};
}

Tdd NodeStore::trivial(Weight c) const {
    return Tdd{terminal_edge(c), {}, id_};
}

void NodeStore::check_same_store(const Tdd &t) const {
    if (t.store_id != id_) {
        throw TddError(ErrorKind::Usage, "decision diagram belongs to a different node store");
    }
}

void NodeStore::tick() {
    if (!deadline_) {
        return;
    }
    if (++ticks_ % 1024 == 0 && std::chrono::steady_clock::now() > *deadline_) {
        throw TddError(ErrorKind::Timeout, "deadline exceeded");
    }
}

std::uint32_t NodeStore::intern_var(std::vector<Level> levels) {
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    std::string key(reinterpret_cast<const char *>(levels.data()), levels.size() * sizeof(Level));
    auto it = var_ids_.find(key);
    if (it != var_ids_.end()) {
        return it->second;
    }
    auto id = static_cast<std::uint32_t>(var_sets_.size());
    var_sets_.push_back(std::move(levels));
    var_ids_.emplace(std::move(key), id);
    return id;
}

std::size_t NodeStore::var_count_between(std::uint32_t var, std::optional<Level> lo, Level hi) const {
    const auto &v = var_sets_[var];
    auto begin = lo ? std::upper_bound(v.begin(), v.end(), *lo) : v.begin();
    auto end = std::lower_bound(v.begin(), v.end(), hi);
    return end > begin ? static_cast<std::size_t>(end - begin) : 0;
}

bool NodeStore::var_contains(std::uint32_t var, Level x) const {
    const auto &v = var_sets_[var];
    return std::binary_search(v.begin(), v.end(), x);
}

std::size_t NodeStore::size(const Tdd &f) const {
    check_same_store(f);
    Edge roots[] = {f.root};
    return count_reachable(roots);
}

std::size_t NodeStore::count_reachable(std::span<const Edge> roots) const {
    std::unordered_set<std::uint32_t> seen;
    std::vector<NodeId> stack;
    for (const auto &e : roots) {
        if (e.node != kTerminal && seen.insert(e.node.value).second) {
            stack.push_back(e.node);
        }
    }
    while (!stack.empty()) {
        NodeId id = stack.back();
        stack.pop_back();
        const Node &n = nodes_[id.value];
        for (NodeId child : {n.low.node, n.high.node}) {
            if (child != kTerminal && seen.insert(child.value).second) {
                stack.push_back(child);
            }
        }
    }
    return seen.size();
}

std::vector<std::string> NodeStore::audit() const {
    std::vector<std::string> problems;
    double bound = 1 + 2 * tol_.eps();
    std::unordered_map<UniqueKey, NodeId, UniqueKeyHash> rebuilt;
    for (std::uint32_t i = 1; i < nodes_.size(); i++) {
        if (!alive_[i]) {
            continue;
        }
        const Node &n = nodes_[i];
        auto where = [&] { return "node " + std::to_string(i) + ": "; };
        if (!alive_[n.low.node.value] || !alive_[n.high.node.value]) {
            problems.push_back(where() + "successor is not live");
            continue;
        }
        if (!(n.level < level_of(n.low.node)) || !(n.level < level_of(n.high.node))) {
            problems.push_back(where() + "order violated");
        }
        if (!tol_.is_one(n.low.weight) && !tol_.is_one(n.high.weight)) {
            problems.push_back(where() + "no unit edge weight");
        }
        if (std::abs(n.low.weight) > bound || std::abs(n.high.weight) > bound) {
            problems.push_back(where() + "edge weight magnitude above 1");
        }
        if (n.low.node == n.high.node && tol_.weights_equal(n.low.weight, n.high.weight)) {
            problems.push_back(where() + "redundant test (identical successors)");
        }
        if (tol_.is_zero(n.low.weight) && tol_.is_zero(n.high.weight)) {
            problems.push_back(where() + "represents the zero tensor");
        }
        for (const Edge &e : {n.low, n.high}) {
            if (tol_.is_zero(e.weight) && e.node != kTerminal) {
                problems.push_back(where() + "zero-weight edge not pointing at the terminal");
            }
        }
        UniqueKey key{n.level, n.low.node, tol_.canonical(n.low.weight), n.high.node, tol_.canonical(n.high.weight)};
        auto found = unique_.find(key);
        if (found == unique_.end() || found->second != NodeId{i}) {
            problems.push_back(where() + "not registered under its rounded weights");
        }
        if (!rebuilt.emplace(key, NodeId{i}).second) {
            problems.push_back(where() + "duplicate of node " + std::to_string(rebuilt[key].value));
        }
    }
    if (rebuilt.size() != unique_.size()) {
        problems.push_back("unique table size does not match live node count");
    }
    return problems;
}

void NodeStore::pin(const Edge &e) {
    if (e.node != kTerminal) {
        pinned_[e.node.value]++;
    }
}

void NodeStore::unpin(const Edge &e) {
    auto it = pinned_.find(e.node.value);
    if (it != pinned_.end() && --it->second == 0) {
        pinned_.erase(it);
    }
}

void NodeStore::collect_garbage(std::span<const Edge> roots) {
    std::vector<std::uint8_t> mark(nodes_.size(), 0);
    mark[0] = 1;
    std::vector<NodeId> stack;
    auto visit = [&](NodeId id) {
        if (!mark[id.value]) {
            mark[id.value] = 1;
            stack.push_back(id);
        }
    };
    for (const auto &e : roots) {
        visit(e.node);
    }
    for (const auto &[id, count] : pinned_) {
        visit(NodeId{id});
    }
    while (!stack.empty()) {
        const Node n = nodes_[stack.back().value];
        stack.pop_back();
        visit(n.low.node);
        visit(n.high.node);
    }
    for (std::uint32_t i = 1; i < nodes_.size(); i++) {
        if (alive_[i] && !mark[i]) {
            const Node &n = nodes_[i];
            unique_.erase(UniqueKey{n.level, n.low.node, tol_.canonical(n.low.weight), n.high.node,
                                    tol_.canonical(n.high.weight)});
            alive_[i] = 0;
            free_.push_back(i);
        }
    }
    add_cache_.clear();
    cont_cache_.clear();
}

void NodeStore::sample_peak() {
    stats_.peak_nodes = std::max<std::uint64_t>(stats_.peak_nodes, unique_.size());
}

StoreStats NodeStore::stats() const {
    StoreStats s = stats_;
    s.live_nodes = unique_.size();
    s.peak_nodes = std::max<std::uint64_t>(s.peak_nodes, s.live_nodes);
    return s;
}

}  // namespace tdd
