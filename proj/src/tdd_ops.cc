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

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "tdd/error.h"
#include "tdd/node_store.h"

namespace tdd {

namespace {

LabelCounts merge_labels(const LabelCounts &a, const LabelCounts &b, std::span<const IndexLabel> var) {
    std::map<IndexLabel, std::uint32_t> acc;
    for (const auto &lc : a) {
        acc[lc.label] += lc.multiplicity;
    }
    for (const auto &lc : b) {
        acc[lc.label] += lc.multiplicity;
    }
    for (const auto &x : var) {
        acc.erase(x);
    }
    LabelCounts out;
    out.reserve(acc.size());
    for (const auto &[label, m] : acc) {
        out.push_back({label, m});
    }
    return out;
}

bool is_zero_edge(const Edge &e) {
    return e.weight == Weight{0, 0};
}

}  // namespace

Tdd NodeStore::generate(const DenseTensor &phi, const LabelCounts &multiplicities) {
    const auto &idx = phi.indices();
    std::size_t r = idx.size();
    // Slots sorted by level; perm[d] is the tensor slot decided at depth d.
    std::vector<std::size_t> perm(r);
    for (std::size_t i = 0; i < r; i++) {
        perm[i] = i;
    }
    std::sort(perm.begin(), perm.end(),
              [&](std::size_t a, std::size_t b) { return order_.level(idx[a]) < order_.level(idx[b]); });
    std::vector<Level> levels(r);
    for (std::size_t d = 0; d < r; d++) {
        levels[d] = order_.level(idx[perm[d]]);
    }
    std::vector<Weight> vals(phi.values().size());
    for (std::size_t flat = 0; flat < vals.size(); flat++) {
        std::size_t src = 0;
        for (std::size_t d = 0; d < r; d++) {
            std::size_t bit = (flat >> (r - 1 - d)) & 1;
            src |= bit << (r - 1 - perm[d]);
        }
        vals[flat] = phi[src];
    }
    auto build = [&](auto &&self, std::size_t lo, std::size_t len, std::size_t depth) -> Edge {
        if (depth == r) {
            return terminal_edge(vals[lo]);
        }
        Edge l = self(self, lo, len / 2, depth + 1);
        Edge h = self(self, lo + len / 2, len / 2, depth + 1);
        return make_node(levels[depth], l, h);
    };
    Tdd out;
    out.root = build(build, 0, vals.size(), 0);
    out.store_id = id_;
    for (const auto &x : idx) {
        std::uint32_t m = 1;
        for (const auto &lc : multiplicities) {
            if (lc.label == x) {
                m = lc.multiplicity;
            }
        }
        out.labels.push_back({x, m});
    }
    return out;
}

Edge NodeStore::add_edges(Edge a, Edge b) {
    tick();
    if (is_zero_edge(a)) {
        return b;
    }
    if (is_zero_edge(b)) {
        return a;
    }
    if (a.node == b.node) {
        Weight w = snap(a.weight + b.weight);
        return tol_.is_zero(w) ? terminal_edge(0) : Edge{w, a.node};
    }
    if (b.node < a.node) {
        std::swap(a, b);
    }
    Weight ratio = b.weight / a.weight;
    AddKey key{a.node, b.node, tol_.canonical(ratio)};
    Edge res;
    auto it = add_cache_.find(key);
    if (it != add_cache_.end()) {
        stats_.cache_hits_add++;
        res = it->second;
    } else {
        Level x = std::min(level_of(a.node), level_of(b.node));
        auto cofactor = [&](NodeId n, Weight w, bool high) {
            if (level_of(n) != x) {
                return Edge{w, n};
            }
            const Edge &c = high ? nodes_[n.value].high : nodes_[n.value].low;
            return Edge{snap(w * c.weight), c.node};
        };
        Edge l = add_edges(cofactor(a.node, 1, false), cofactor(b.node, ratio, false));
        Edge h = add_edges(cofactor(a.node, 1, true), cofactor(b.node, ratio, true));
        res = make_node(x, l, h);
        add_cache_.emplace(key, res);
    }
    Weight w = snap(a.weight * res.weight);
    return tol_.is_zero(w) ? terminal_edge(0) : Edge{w, res.node};
}

Tdd NodeStore::add(const Tdd &f, const Tdd &g) {
    check_same_store(f);
    check_same_store(g);
    Tdd out;
    out.root = add_edges(f.root, g.root);
    out.store_id = id_;
    // Sum keeps the union of indices; a shared index is still one index.
    std::map<IndexLabel, std::uint32_t> acc;
    for (const auto *t : {&f, &g}) {
        for (const auto &lc : t->labels) {
            acc[lc.label] = std::max(acc[lc.label], lc.multiplicity);
        }
    }
    for (const auto &[label, m] : acc) {
        out.labels.push_back({label, m});
    }
    return out;
}

Edge NodeStore::contract_edges(Edge f, Edge g, std::uint32_t var, std::optional<Level> above) {
    if (is_zero_edge(f) || is_zero_edge(g)) {
        return terminal_edge(0);
    }
    Level top = std::min(level_of(f.node), level_of(g.node));
    std::size_t skipped = var_count_between(var, above, top);
    Edge r = contract_nodes(f.node, g.node, var);
    Weight w = f.weight * g.weight * r.weight * std::ldexp(1.0, static_cast<int>(skipped));
    return tol_.is_zero(w) ? terminal_edge(0) : Edge{w, r.node};
}

Edge NodeStore::contract_nodes(NodeId f, NodeId g, std::uint32_t var) {
    tick();
    if (f == kTerminal && g == kTerminal) {
        return Edge{{1, 0}, kTerminal};
    }
    ContKey key{std::min(f, g), std::max(f, g), var};
    auto it = cont_cache_.find(key);
    if (it != cont_cache_.end()) {
        stats_.cache_hits_cont++;
        return it->second;
    }
    Level x = std::min(level_of(f), level_of(g));
    auto cofactor = [&](NodeId n, bool high) {
        if (level_of(n) != x) {
            return Edge{{1, 0}, n};
        }
        return high ? nodes_[n.value].high : nodes_[n.value].low;
    };
    Edge l = contract_edges(cofactor(f, false), cofactor(g, false), var, x);
    Edge h = contract_edges(cofactor(f, true), cofactor(g, true), var, x);
    Edge res = var_contains(var, x) ? add_edges(l, h) : make_node(x, l, h);
    cont_cache_.emplace(key, res);
    return res;
}

Tdd NodeStore::contract(const Tdd &f, const Tdd &g, std::span<const IndexLabel> var) {
    check_same_store(f);
    check_same_store(g);
    std::vector<Level> levels;
    levels.reserve(var.size());
    for (const auto &x : var) {
        levels.push_back(order_.level(x));
    }
    std::uint32_t vid = intern_var(std::move(levels));
    Tdd out;
    out.root = contract_edges(f.root, g.root, vid, std::nullopt);
    out.store_id = id_;
    out.labels = merge_labels(f.labels, g.labels, var);
    return out;
}

Tdd NodeStore::tensor_product(const Tdd &f, const Tdd &g) {
    check_same_store(f);
    check_same_store(g);
    bool ordered = true;
    if (!f.labels.empty() && !g.labels.empty()) {
        Level f_max = 0;
        Level g_min = kTerminalLevel;
        for (const auto &lc : f.labels) {
            f_max = std::max(f_max, order_.level(lc.label));
        }
        for (const auto &lc : g.labels) {
            g_min = std::min(g_min, order_.level(lc.label));
        }
        ordered = f_max < g_min;
    }
    if (!ordered) {
        return contract(f, g, {});
    }
    Tdd out;
    out.store_id = id_;
    out.labels = merge_labels(f.labels, g.labels, {});
    if (is_zero_edge(f.root) || is_zero_edge(g.root)) {
        out.root = terminal_edge(0);
        return out;
    }
    std::unordered_map<std::uint32_t, Edge> memo;
    auto rebuild = [&](auto &&self, NodeId n) -> Edge {
        if (n == kTerminal) {
            return Edge{{1, 0}, g.root.node};
        }
        auto it = memo.find(n.value);
        if (it != memo.end()) {
            return it->second;
        }
        tick();
        Node node = nodes_[n.value];
        auto child = [&](const Edge &e) {
            if (is_zero_edge(e)) {
                return e;
            }
            Edge r = self(self, e.node);
            return Edge{snap(e.weight * r.weight), r.node};
        };
        Edge l = child(node.low);
        Edge h = child(node.high);
        Edge res = make_node(node.level, l, h);
        memo.emplace(n.value, res);
        return res;
    };
    Edge r = rebuild(rebuild, f.root.node);
    Weight w = snap(f.root.weight * g.root.weight * r.weight);
    out.root = tol_.is_zero(w) ? terminal_edge(0) : Edge{w, r.node};
    return out;
}

Tdd NodeStore::slice(const Tdd &f, IndexLabel x, int c) {
    check_same_store(f);
    if (c != 0 && c != 1) {
        throw TddError(ErrorKind::Usage, "slice value must be 0 or 1");
    }
    Level lx = order_.level(x);
    Level lr = level_of(f.root.node);
    if (lx > lr) {
        throw TddError(ErrorKind::Usage, "slice index " + x.str() + " succeeds the root index");
    }
    Tdd out = f;
    std::erase_if(out.labels, [&](const LabelCount &lc) { return lc.label == x; });
    if (lx == lr) {
        const Node &n = nodes_[f.root.node.value];
        const Edge &e = c ? n.high : n.low;
        Weight w = snap(f.root.weight * e.weight);
        out.root = tol_.is_zero(w) ? terminal_edge(0) : Edge{w, e.node};
    }
    return out;
}

Tdd NodeStore::scale(const Tdd &f, Weight c) const {
    check_same_store(f);
    Tdd out = f;
    Weight w = snap(f.root.weight * c);
    out.root = tol_.is_zero(w) ? terminal_edge(0) : Edge{w, f.root.node};
    return out;
}

Tdd NodeStore::relabel(const Tdd &f, const std::vector<std::pair<IndexLabel, IndexLabel>> &renames) {
    check_same_store(f);
    std::map<IndexLabel, IndexLabel> map(renames.begin(), renames.end());
    auto target = [&](IndexLabel x) {
        auto it = map.find(x);
        return it == map.end() ? x : it->second;
    };
    std::vector<std::pair<Level, Level>> level_map;
    for (const auto &lc : f.labels) {
        level_map.emplace_back(order_.level(lc.label), order_.level(target(lc.label)));
    }
    std::sort(level_map.begin(), level_map.end());
    for (std::size_t i = 1; i < level_map.size(); i++) {
        if (!(level_map[i - 1].second < level_map[i].second)) {
            throw TddError(ErrorKind::Ordering, "relabeling does not preserve the index order");
        }
    }
    std::unordered_map<Level, Level> lmap(level_map.begin(), level_map.end());
    std::unordered_map<std::uint32_t, Edge> memo;
    auto rebuild = [&](auto &&self, NodeId n) -> Edge {
        if (n == kTerminal) {
            return Edge{{1, 0}, kTerminal};
        }
        auto it = memo.find(n.value);
        if (it != memo.end()) {
            return it->second;
        }
        Node node = nodes_[n.value];
        auto child = [&](const Edge &e) {
            if (is_zero_edge(e)) {
                return e;
            }
            Edge r = self(self, e.node);
            return Edge{snap(e.weight * r.weight), r.node};
        };
        auto lit = lmap.find(node.level);
        if (lit == lmap.end()) {
            throw TddError(ErrorKind::IndexNotFound, "diagram node index not among the declared indices");
        }
        Edge res = make_node(lit->second, child(node.low), child(node.high));
        memo.emplace(n.value, res);
        return res;
    };
    Tdd out;
    out.store_id = id_;
    Edge r = rebuild(rebuild, f.root.node);
    Weight w = snap(f.root.weight * r.weight);
    out.root = tol_.is_zero(w) ? terminal_edge(0) : Edge{w, r.node};
    std::map<IndexLabel, std::uint32_t> acc;
    for (const auto &lc : f.labels) {
        acc[target(lc.label)] += lc.multiplicity;
    }
    for (const auto &[label, m] : acc) {
        out.labels.push_back({label, m});
    }
    return out;
}

Weight NodeStore::evaluate(const Tdd &f, const Assignment &a) const {
    check_same_store(f);
    for (const auto &lc : f.labels) {
        if (!a.count(lc.label)) {
            throw TddError(ErrorKind::Usage, "assignment misses index " + lc.label.str());
        }
    }
    Weight w = f.root.weight;
    NodeId n = f.root.node;
    while (n != kTerminal) {
        const Node &node = nodes_[n.value];
        auto it = a.find(order_.label(node.level));
        if (it == a.end()) {
            throw TddError(ErrorKind::Usage, "assignment misses index " + order_.label(node.level).str());
        }
        const Edge &e = it->second ? node.high : node.low;
        w *= e.weight;
        n = e.node;
    }
    return w;
}

DenseTensor NodeStore::to_dense(const Tdd &f, std::vector<IndexLabel> indices) const {
    check_same_store(f);
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    if (indices.size() > kMaxDenseRank) {
        throw TddError(ErrorKind::RankOverflow, "dense export rank " + std::to_string(indices.size()) + " exceeds " +
                                                    std::to_string(kMaxDenseRank));
    }
    std::unordered_map<Level, std::size_t> slot;
    for (std::size_t i = 0; i < indices.size(); i++) {
        slot[order_.level(indices[i])] = i;
    }
    std::size_t r = indices.size();
    std::vector<Weight> values(std::size_t{1} << r);
    for (std::size_t flat = 0; flat < values.size(); flat++) {
        Weight w = f.root.weight;
        NodeId n = f.root.node;
        while (n != kTerminal && w != Weight{0, 0}) {
            const Node &node = nodes_[n.value];
            auto it = slot.find(node.level);
            if (it == slot.end()) {
                throw TddError(ErrorKind::IndexNotFound,
                               "index " + order_.label(node.level).str() + " is essential but not exported");
            }
            const Edge &e = ((flat >> (r - 1 - it->second)) & 1) ? node.high : node.low;
            w *= e.weight;
            n = e.node;
        }
        values[flat] = w;
    }
    return DenseTensor(std::move(indices), std::move(values));
}

}  // namespace tdd
