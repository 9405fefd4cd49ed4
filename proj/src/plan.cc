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
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "tdd/error.h"
#include "tdd/planner.h"

namespace tdd {

namespace {

using HolderCounts = std::map<IndexLabel, std::size_t>;

struct PlanBuilder {
    Plan plan;
    std::map<IndexLabel, std::size_t> total;
    std::set<IndexLabel> open;
    std::vector<HolderCounts> step_labels;
    const Network *net = nullptr;

    HolderCounts labels_of(const Operand &o) const {
        if (o.is_step) {
            return step_labels[o.id];
        }
        HolderCounts h;
        for (const auto &l : net->tensors[o.id].tensor.indices()) {
            h[l] = 1;
        }
        return h;
    }

    Operand merge(const Operand &l, const Operand &r, const std::string &tag) {
        HolderCounts a = labels_of(l);
        HolderCounts b = labels_of(r);
        PlanStep step{l, r, {}, tag, a.size(), b.size(), 0};
        HolderCounts merged = a;
        for (const auto &[label, n] : b) {
            step.shared += a.count(label);
            merged[label] += n;
        }
        for (auto it = merged.begin(); it != merged.end();) {
            if (it->second == total.at(it->first) && !open.count(it->first)) {
                step.var.push_back(it->first);
                it = merged.erase(it);
            } else {
                ++it;
            }
        }
        plan.steps.push_back(std::move(step));
        step_labels.push_back(std::move(merged));
        return Operand{true, plan.steps.size() - 1};
    }

    std::optional<Operand> fold(const std::vector<Operand> &ops, const std::string &tag) {
        if (ops.empty()) {
            return std::nullopt;
        }
        Operand acc = ops[0];
        for (std::size_t i = 1; i < ops.size(); i++) {
            acc = merge(acc, ops[i], tag);
        }
        return acc;
    }
};

const char *region_name(Region r) {
    switch (r) {
        case Region::A:
            return "A";
        case Region::B:
            return "B";
        case Region::C:
            return "C";
    }
    return "?";
}

std::string operand_name(const Operand &o) {
    return (o.is_step ? "s" : "t") + std::to_string(o.id);
}

}  // namespace

Plan plan_from_parts(const Partitioned &p) {
    const Network &net = p.network;
    PlanBuilder b;
    b.net = &net;
    b.plan.open = net.open();
    b.plan.parts = p.parts.size();
    b.open.insert(b.plan.open.begin(), b.plan.open.end());
    std::vector<std::size_t> seen(net.tensors.size(), 0);
    for (const auto &part : p.parts) {
        for (std::size_t t : part.tensors) {
            if (t >= net.tensors.size()) {
                throw TddError(ErrorKind::PlanConsistency, "part refers to an unknown tensor");
            }
            seen[t]++;
        }
    }
    for (std::size_t t = 0; t < net.tensors.size(); t++) {
        if (seen[t] != 1) {
            throw TddError(ErrorKind::PlanConsistency,
                           "tensor " + std::to_string(t) + " is covered " + std::to_string(seen[t]) + " times by the parts");
        }
        for (const auto &l : net.tensors[t].tensor.indices()) {
            b.total[l]++;
        }
    }
    for (const auto &[label, n] : b.total) {
        if (n < 2 && !b.open.count(label)) {
            throw TddError(ErrorKind::PlanConsistency, "index " + label.str() + " has a single holder and is not open");
        }
    }
    std::size_t segments = 0;
    for (const auto &part : p.parts) {
        segments = std::max(segments, part.segment + 1);
    }
    std::vector<Operand> segment_results;
    for (std::size_t s = 0; s < segments; s++) {
        std::vector<Operand> part_results;
        for (const auto &part : p.parts) {
            if (part.segment != s) {
                continue;
            }
            std::vector<Operand> leaves;
            for (std::size_t t : part.tensors) {
                leaves.push_back(Operand{false, t});
            }
            std::string tag = std::string(region_name(part.region)) + std::to_string(s);
            if (auto r = b.fold(leaves, tag)) {
                part_results.push_back(*r);
            }
        }
        if (auto r = b.fold(part_results, "seg" + std::to_string(s))) {
            segment_results.push_back(*r);
        }
    }
    b.plan.result = b.fold(segment_results, "join");
    // Every index that is not open must have been summed by now.
    if (b.plan.result) {
        for (const auto &[label, n] : b.labels_of(*b.plan.result)) {
            if (!b.open.count(label)) {
                throw TddError(ErrorKind::PlanConsistency, "index " + label.str() + " survives the plan");
            }
        }
    }
    return std::move(b.plan);
}

PlanStats plan_stats(const Plan &plan) {
    PlanStats s;
    for (const auto &step : plan.steps) {
        std::size_t m = std::max(step.rank_left, step.rank_right);
        std::size_t n = std::min(step.rank_left, step.rank_right);
        if (m <= 4) {
            s.small++;
        } else {
            s.histogram[{m, n, step.shared}]++;
        }
        s.steps++;
    }
    return s;
}

std::string plan_to_json(const Plan &plan) {
    nlohmann::json j;
    j["parts"] = plan.parts;
    j["result"] = plan.result ? operand_name(*plan.result) : "scalar";
    j["open"] = nlohmann::json::array();
    for (const auto &l : plan.open) {
        j["open"].push_back(l.str());
    }
    j["steps"] = nlohmann::json::array();
    for (const auto &step : plan.steps) {
        nlohmann::json s;
        s["left"] = operand_name(step.left);
        s["right"] = operand_name(step.right);
        s["tag"] = step.tag;
        s["var"] = step.var.size();
        s["mnr"] = {std::max(step.rank_left, step.rank_right), std::min(step.rank_left, step.rank_right), step.shared};
        j["steps"].push_back(std::move(s));
    }
    return j.dump(2);
}

ExecResult execute_plan(const Plan &plan, const Network &net, NodeStore &store, const ExecOptions &opts) {
    if (!(store.order() == net.order)) {
        throw TddError(ErrorKind::Usage, "store order differs from the network order");
    }
    store.set_deadline(opts.deadline);
    ExecResult out;
    std::vector<std::optional<Tdd>> held(plan.steps.size());
    auto leaf = [&](std::size_t t) { return store.generate(net.tensors[t].tensor, net.tensors[t].labels); };
    auto take = [&](const Operand &o) {
        if (!o.is_step) {
            return leaf(o.id);
        }
        if (!held[o.id]) {
            throw TddError(ErrorKind::PlanConsistency, "step " + std::to_string(o.id) + " used twice");
        }
        Tdd t = std::move(*held[o.id]);
        held[o.id].reset();
        return t;
    };
    auto held_roots = [&] {
        std::vector<Edge> roots;
        for (const auto &h : held) {
            if (h) {
                roots.push_back(h->root);
            }
        }
        return roots;
    };
    try {
        for (std::size_t s = 0; s < plan.steps.size(); s++) {
            const PlanStep &step = plan.steps[s];
            Tdd l = take(step.left);
            Tdd r = take(step.right);
            held[s] = step.var.empty() ? store.tensor_product(l, r) : store.contract(l, r, step.var);
            auto roots = held_roots();
            std::size_t reachable = store.count_reachable(roots);
            out.peak_nodes = std::max(out.peak_nodes, reachable);
            store.sample_peak();
            if (opts.gc_threshold && store.live_nodes() > opts.gc_threshold && store.live_nodes() > 2 * reachable) {
                store.collect_garbage(roots);
            }
        }
        if (!plan.result) {
            out.result = store.trivial(1);
        } else {
            out.result = take(*plan.result);
        }
    } catch (...) {
        store.set_deadline(std::nullopt);
        throw;
    }
    store.set_deadline(std::nullopt);
    store.pin(out.result.root);
    out.steps = plan.steps.size();
    out.final_nodes = store.size(out.result);
    out.peak_nodes = std::max(out.peak_nodes, out.final_nodes);
    return out;
}

Tdd functionality(NodeStore &store, const Tdd &raw, const Network &net) {
    std::vector<std::pair<IndexLabel, IndexLabel>> renames;
    for (std::uint32_t q = 0; q < net.n_qubits; q++) {
        if (net.outputs[q] != net.inputs[q]) {
            renames.emplace_back(net.outputs[q], IndexLabel{q, kOutputPosition});
        }
    }
    Tdd f = store.relabel(raw, renames);
    for (std::uint32_t q = 0; q < net.n_qubits; q++) {
        if (net.outputs[q] == net.inputs[q]) {
            IndexLabel in = net.inputs[q];
            IndexLabel out{q, kOutputPosition};
            Tdd delta = store.generate(DenseTensor({in, out}, {1, 0, 0, 1}));
            f = store.contract(f, delta, {});
        }
    }
    return f;
}

}  // namespace tdd
