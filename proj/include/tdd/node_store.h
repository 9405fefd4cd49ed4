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

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tdd/dense_tensor.h"
#include "tdd/index.h"
#include "tdd/numerics.h"

namespace tdd {

struct NodeId {
    std::uint32_t value = 0;

    auto operator<=>(const NodeId &) const = default;
    bool operator==(const NodeId &) const = default;
};

/// The unique terminal node. Its value is 1; any other constant lives in the
/// weight of the edge pointing at it.
inline constexpr NodeId kTerminal{0};

struct Edge {
    Weight weight{0, 0};
    NodeId node = kTerminal;
};

struct Node {
    Level level = kTerminalLevel;
    Edge low;
    Edge high;
};

/// Number of tensor slots an index occupies. Diagonal gates give an index
/// multiplicity 2; the diagram still branches on it only once.
struct LabelCount {
    IndexLabel label;
    std::uint32_t multiplicity = 1;

    bool operator==(const LabelCount &) const = default;
};
using LabelCounts = std::vector<LabelCount>;

/// A decision diagram handle: root edge plus the indices the tensor is over.
/// The tensor is `root.weight * Phi(root.node)`. Handles are only meaningful
/// together with the store that produced them.
struct Tdd {
    Edge root;
    LabelCounts labels;
    std::uint64_t store_id = 0;

    bool is_trivial() const {
        return root.node == kTerminal;
    }
    std::vector<IndexLabel> index_list() const;
};

struct StoreStats {
    std::uint64_t live_nodes = 0;
    std::uint64_t peak_nodes = 0;
    std::uint64_t unique_hits = 0;
    std::uint64_t cache_hits_add = 0;
    std::uint64_t cache_hits_cont = 0;

    bool operator==(const StoreStats &) const = default;
};

/// Owns every node, the unique table and the computed caches.
///
/// Every node is created through `make_node`, which normalises the two edge
/// weights, drops redundant tests and hash-conses the result, so each diagram
/// reachable from the store is reduced at all times. A store is a
/// single-threaded mutation domain.
class NodeStore {
   public:
    explicit NodeStore(IndexOrder order = {}, ToleranceConfig tol = {});
    NodeStore(const NodeStore &) = delete;
    NodeStore &operator=(const NodeStore &) = delete;

    const ToleranceConfig &tolerance() const {
        return tol_;
    }
    const IndexOrder &order() const {
        return order_;
    }
    std::uint64_t id() const {
        return id_;
    }

    Edge terminal_edge(Weight w) const;
    Edge make_node(Level x, Edge low, Edge high);
    Edge make_node(IndexLabel x, Edge low, Edge high) {
        return make_node(order_.level(x), low, high);
    }
    const Node &node(NodeId id) const {
        return nodes_[id.value];
    }
    Level level_of(NodeId id) const {
        return nodes_[id.value].level;
    }

    Tdd trivial(Weight c) const;
    Tdd generate(const DenseTensor &phi, const LabelCounts &multiplicities = {});
    Tdd add(const Tdd &f, const Tdd &g);
    Tdd contract(const Tdd &f, const Tdd &g, std::span<const IndexLabel> var);
    Tdd tensor_product(const Tdd &f, const Tdd &g);
    Tdd slice(const Tdd &f, IndexLabel x, int c);
    Tdd scale(const Tdd &f, Weight c) const;
    /// Renames indices; the map must preserve the variable order among the
    /// indices present in `f`.
    Tdd relabel(const Tdd &f, const std::vector<std::pair<IndexLabel, IndexLabel>> &renames);

    Weight evaluate(const Tdd &f, const Assignment &a) const;
    DenseTensor to_dense(const Tdd &f, std::vector<IndexLabel> indices) const;
    DenseTensor to_dense(const Tdd &f) const {
        return to_dense(f, f.index_list());
    }

    std::size_t size(const Tdd &f) const;
    std::size_t edge_count(const Tdd &f) const {
        return 1 + 2 * size(f);
    }
    std::size_t count_reachable(std::span<const Edge> roots) const;

    /// Checks every live node against the reduced-form invariants. Returns one
    /// message per violation.
    std::vector<std::string> audit() const;

    /// Frees nodes unreachable from `roots` and from pinned edges, and clears
    /// the computed caches.
    void collect_garbage(std::span<const Edge> roots);
    void pin(const Edge &e);
    void unpin(const Edge &e);

    std::size_t live_nodes() const {
        return unique_.size();
    }
    void sample_peak();
    StoreStats stats() const;

    void set_deadline(std::optional<std::chrono::steady_clock::time_point> deadline) {
        deadline_ = deadline;
    }

   private:
    struct UniqueKey {
        Level level;
        NodeId low;
        Weight low_w;
        NodeId high;
        Weight high_w;
        bool operator==(const UniqueKey &o) const;
    };
    struct UniqueKeyHash {
        std::size_t operator()(const UniqueKey &k) const;
    };
    struct AddKey {
        NodeId a;
        NodeId b;
        Weight ratio;
        bool operator==(const AddKey &o) const;
    };
    struct AddKeyHash {
        std::size_t operator()(const AddKey &k) const;
    };
    struct ContKey {
        NodeId f;
        NodeId g;
        std::uint32_t var;
        bool operator==(const ContKey &) const = default;
    };
    struct ContKeyHash {
        std::size_t operator()(const ContKey &k) const;
    };

    /// Exact zero for weights that round to zero, otherwise `w` unchanged.
    Weight snap(Weight w) const;
    void check_same_store(const Tdd &t) const;
    void tick();
    std::uint32_t intern_var(std::vector<Level> levels);
    std::size_t var_count_between(std::uint32_t var, std::optional<Level> lo, Level hi) const;
    bool var_contains(std::uint32_t var, Level x) const;

    Edge add_edges(Edge a, Edge b);
    Edge contract_edges(Edge f, Edge g, std::uint32_t var, std::optional<Level> above);
    Edge contract_nodes(NodeId f, NodeId g, std::uint32_t var);

    IndexOrder order_;
    ToleranceConfig tol_;
    std::uint64_t id_;

    std::vector<Node> nodes_;
    std::vector<std::uint8_t> alive_;
    std::vector<std::uint32_t> free_;
    std::unordered_map<UniqueKey, NodeId, UniqueKeyHash> unique_;
    std::unordered_map<AddKey, Edge, AddKeyHash> add_cache_;
    std::unordered_map<ContKey, Edge, ContKeyHash> cont_cache_;
    std::vector<std::vector<Level>> var_sets_;
    std::unordered_map<std::string, std::uint32_t> var_ids_;
    std::unordered_map<std::uint32_t, std::uint32_t> pinned_;

    StoreStats stats_;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
    std::uint32_t ticks_ = 0;
};

/// Graphviz rendering: dashed low edges, solid high edges, weights printed
/// with six significant digits and a free arrow carrying the root weight.
std::string export_dot(const NodeStore &store, const Tdd &f);

std::string format_weight(Weight w);

}  // namespace tdd
