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
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "tdd/circuit.h"
#include "tdd/network.h"
#include "tdd/node_store.h"

namespace tdd {

enum class Scheme { Sequential, SchemeI, SchemeII };

const char *scheme_name(Scheme s);
/// Accepts "seq", "p1", "p2".
bool scheme_from_name(const std::string &name, Scheme *out);

struct PartitionConfig {
    Scheme scheme = Scheme::Sequential;
    /// Zero means "use the default for the circuit": k = k1 = n/2, k2 = n/2 + 1,
    /// boundary = n/2 (qubits below the boundary form the top half).
    std::uint32_t k = 0;
    std::uint32_t k1 = 0;
    std::uint32_t k2 = 0;
    std::uint32_t boundary = 0;

    /// Fills zero fields from `n_qubits` and checks k, k1 >= 1 and k2 >= 2.
    PartitionConfig resolved(std::uint32_t n_qubits) const;
};

enum class Region { A, B, C };

struct Part {
    Region region = Region::A;
    std::size_t segment = 0;
    /// Indices into Network::tensors, in circuit order.
    std::vector<std::size_t> tensors;
};

struct Partitioned {
    Network network;
    std::vector<Part> parts;
    std::size_t segments = 1;
};

/// Whole circuit as one part.
Partitioned partition_sequential(const Circuit &c, const NetworkOptions &opts = {});
Partitioned partition_scheme1(const Circuit &c, const PartitionConfig &cfg, const NetworkOptions &opts = {});
Partitioned partition_scheme2(const Circuit &c, const PartitionConfig &cfg, const NetworkOptions &opts = {});
Partitioned partition(const Circuit &c, const PartitionConfig &cfg, const NetworkOptions &opts = {});

/// Operand of a plan step: a network tensor or the result of an earlier step.
struct Operand {
    bool is_step = false;
    std::size_t id = 0;

    bool operator==(const Operand &) const = default;
};

struct PlanStep {
    Operand left;
    Operand right;
    std::vector<IndexLabel> var;
    std::string tag;
    std::size_t rank_left = 0;
    std::size_t rank_right = 0;
    std::size_t shared = 0;
};

struct Plan {
    std::vector<PlanStep> steps;
    /// Unset for a network with no tensors (the result is the scalar 1).
    std::optional<Operand> result;
    std::vector<IndexLabel> open;
    std::size_t parts = 0;
};

Plan plan_from_parts(const Partitioned &p);

/// (m, n, r): ranks of the two operands and the number of indices they share,
/// with m >= n.
using RankTriple = std::tuple<std::size_t, std::size_t, std::size_t>;

struct PlanStats {
    std::map<RankTriple, std::size_t> histogram;
    /// Steps whose two operands both have rank <= 4.
    std::size_t small = 0;
    std::size_t steps = 0;
};
PlanStats plan_stats(const Plan &plan);

std::string plan_to_json(const Plan &plan);

struct ExecOptions {
    std::optional<std::chrono::steady_clock::time_point> deadline;
    /// Collect garbage when the store holds more than this many nodes and more
    /// than twice the nodes reachable from live intermediates. Zero disables.
    std::size_t gc_threshold = std::size_t{1} << 20;
};

struct ExecResult {
    Tdd result;
    std::size_t final_nodes = 0;
    std::size_t peak_nodes = 0;
    std::size_t steps = 0;
};

/// Runs the plan in `store`, whose order must be the network's order. The
/// result root is pinned against later garbage collections in the store.
ExecResult execute_plan(const Plan &plan, const Network &net, NodeStore &store, const ExecOptions &opts = {});

/// Renames each output index to (q, kOutputPosition) and, on wires whose input
/// and output share an index, multiplies by the identity between the two, so
/// that results from different circuits over n qubits are comparable.
Tdd functionality(NodeStore &store, const Tdd &raw, const Network &net);

}  // namespace tdd
