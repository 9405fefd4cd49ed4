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

#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_map>

#include "tdd/node_store.h"

namespace tdd {

namespace {

std::string g6(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", x == 0 ? 0.0 : x);
    return buf;
}

}  // namespace

std::string format_weight(Weight w) {
    if (w.imag() == 0) {
        return g6(w.real());
    }
    if (w.real() == 0) {
        return g6(w.imag()) + "i";
    }
    std::string im = g6(w.imag());
    if (im[0] != '-') {
        im = "+" + im;
    }
    return "(" + g6(w.real()) + im + "i)";
}

std::string export_dot(const NodeStore &store, const Tdd &f) {
    std::ostringstream out;
    out << "digraph tdd {\n";
    out << "  root [shape=point];\n";
    out << "  t [shape=box,label=\"1\"];\n";
    std::unordered_map<std::uint32_t, std::size_t> names;
    std::vector<NodeId> visit_order;
    auto name = [&](NodeId n) -> std::string {
        return n == kTerminal ? "t" : "n" + std::to_string(names.at(n.value));
    };
    auto walk = [&](auto &&self, NodeId n) -> void {
        if (n == kTerminal || names.count(n.value)) {
            return;
        }
        names.emplace(n.value, names.size());
        visit_order.push_back(n);
        const Node &node = store.node(n);
        if (node.low.weight != Weight{0, 0}) {
            self(self, node.low.node);
        }
        if (node.high.weight != Weight{0, 0}) {
            self(self, node.high.node);
        }
    };
    if (f.root.weight != Weight{0, 0}) {
        walk(walk, f.root.node);
    }
    for (NodeId n : visit_order) {
        out << "  " << name(n) << " [shape=circle,label=\"" << store.order().label(store.node(n).level).str()
            << "\"];\n";
    }
    out << "  root -> " << name(f.root.node) << " [label=\"" << format_weight(f.root.weight) << "\"];\n";
    for (NodeId n : visit_order) {
        const Node &node = store.node(n);
        out << "  " << name(n) << " -> " << name(node.low.node) << " [style=dashed,label=\""
            << format_weight(node.low.weight) << "\"];\n";
        out << "  " << name(n) << " -> " << name(node.high.node) << " [style=solid,label=\""
            << format_weight(node.high.weight) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace tdd
