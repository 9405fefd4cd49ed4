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

#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "tdd/error.h"
#include "test_util.h"

using namespace tdd;
using tdd::testing::random_boolean_tensor;
using tdd::testing::random_tensor;
using tdd::testing::wire_labels;

namespace {

const double kR = 1 / std::numbers::sqrt2;
const IndexLabel kX{0, 0};
const IndexLabel kY{0, 1};
const IndexLabel kZ{0, 2};

DenseTensor hadamard(IndexLabel in, IndexLabel out) {
    return DenseTensor({in, out}, {kR, kR, kR, -kR});
}

void expect_clean(const NodeStore &s) {
    auto problems = s.audit();
    EXPECT_TRUE(problems.empty()) << problems.front();
}

void expect_dense(const NodeStore &s, const Tdd &f, const DenseTensor &phi, double tol = 1e-9) {
    DenseTensor d = s.to_dense(f, phi.indices());
    EXPECT_LE(d.max_deviation(phi), tol);
}

bool same_edge(const NodeStore &s, const Edge &a, const Edge &b) {
    return a.node == b.node && s.tolerance().weights_equal(a.weight, b.weight);
}

}  // namespace

TEST(node_store, terminal_edge) {
    NodeStore s;
    EXPECT_EQ(s.terminal_edge(1).node, kTerminal);
    EXPECT_EQ(s.terminal_edge(1).weight, Weight(1));
    EXPECT_EQ(s.terminal_edge(0).weight, Weight(0));
    EXPECT_EQ(s.terminal_edge(Weight(0, -1)).weight, Weight(0, -1));
}

TEST(node_store, make_node_examples) {
    NodeStore s;
    Edge c = s.make_node(kX, s.terminal_edge(1), s.terminal_edge(1));
    EXPECT_EQ(c.node, kTerminal);
    EXPECT_EQ(c.weight, Weight(1));

    Edge e = s.make_node(kX, s.terminal_edge(2), s.terminal_edge(Weight(0, 2)));
    EXPECT_EQ(e.weight, Weight(2));
    const Node &n = s.node(e.node);
    EXPECT_EQ(n.low.weight, Weight(1));
    EXPECT_EQ(n.high.weight, Weight(0, 1));
    EXPECT_EQ(n.low.node, kTerminal);

    Edge again = s.make_node(kX, s.terminal_edge(2), s.terminal_edge(Weight(0, 2)));
    EXPECT_EQ(again.node, e.node);
    EXPECT_EQ(s.live_nodes(), 1u);
    expect_clean(s);
}

TEST(node_store, make_node_divisor_and_zero_rules) {
    NodeStore s;
    // The larger magnitude is the divisor; zero edges go to the terminal.
    Edge e = s.make_node(kX, s.terminal_edge(0.5), s.terminal_edge(-2));
    EXPECT_EQ(e.weight, Weight(-2));
    EXPECT_EQ(s.node(e.node).low.weight, Weight(-0.25));
    EXPECT_EQ(s.node(e.node).high.weight, Weight(1));

    Edge z = s.make_node(kX, s.terminal_edge(0), s.terminal_edge(0));
    EXPECT_EQ(z.weight, Weight(0));
    EXPECT_EQ(z.node, kTerminal);

    Edge inner = s.make_node(kY, s.terminal_edge(1), s.terminal_edge(-1));
    Edge half = s.make_node(kX, Edge{Weight(0), inner.node}, s.terminal_edge(3));
    EXPECT_EQ(s.node(half.node).low.node, kTerminal);
    EXPECT_EQ(half.weight, Weight(3));
    expect_clean(s);
}

TEST(node_store, make_node_rejects_order_violation) {
    NodeStore s;
    Edge y = s.make_node(kY, s.terminal_edge(1), s.terminal_edge(-1));
    EXPECT_THROW(s.make_node(kZ, y, s.terminal_edge(1)), TddError);
    EXPECT_THROW(s.make_node(kY, y, s.terminal_edge(1)), TddError);
}

TEST(node_store, generate_examples) {
    NodeStore s;
    Tdd c = s.generate(DenseTensor::scalar(Weight(0, 3)));
    EXPECT_TRUE(c.is_trivial());
    EXPECT_EQ(c.root.weight, Weight(0, 3));
    EXPECT_EQ(s.size(c), 0u);
    EXPECT_EQ(s.edge_count(c), 1u);

    Tdd h = s.generate(hadamard(kX, kY));
    EXPECT_EQ(s.size(h), 2u);
    EXPECT_EQ(s.edge_count(h), 5u);
    EXPECT_TRUE(s.tolerance().weights_equal(h.root.weight, kR));
    const Node &root = s.node(h.root.node);
    EXPECT_EQ(root.level, s.order().level(kX));
    EXPECT_EQ(root.low.node, kTerminal);
    const Node &y = s.node(root.high.node);
    EXPECT_EQ(y.level, s.order().level(kY));
    EXPECT_EQ(y.low.weight, Weight(1));
    EXPECT_EQ(y.high.weight, Weight(-1));
    expect_dense(s, h, hadamard(kX, kY));
    expect_clean(s);
}

TEST(node_store, hyper_cnot_has_five_nodes) {
    // Control x0 appears twice in the gate but once as an index; target y1 -> y2.
    IndexLabel x0{0, 0}, y1{1, 0}, y2{1, 1};
    DenseTensor cx = DenseTensor::from_function({x0, y1, y2}, [&](const Assignment &a) {
        return Weight(a.at(y2) == (a.at(y1) ^ a.at(x0)) ? 1 : 0);
    });
    NodeStore s;
    Tdd f = s.generate(cx, {{x0, 2}, {y1, 1}, {y2, 1}});
    EXPECT_EQ(s.size(f), 5u);
    EXPECT_EQ(s.edge_count(f), 11u);
    EXPECT_EQ(f.labels.front().multiplicity, 2u);
    expect_dense(s, f, cx);
}

TEST(node_store, add_examples) {
    NodeStore s;
    Tdd h = s.generate(hadamard(kX, kY));
    Tdd hh = s.add(h, h);
    EXPECT_EQ(hh.root.node, h.root.node);
    EXPECT_TRUE(s.tolerance().weights_equal(hh.root.weight, 2.0 * h.root.weight));

    Tdd zero = s.generate(DenseTensor::zeros({kX, kY}));
    Tdd same = s.add(h, zero);
    EXPECT_TRUE(same_edge(s, same.root, h.root));

    Tdd a = s.generate(DenseTensor({kX}, {1, 0}));
    Tdd b = s.generate(DenseTensor({kX}, {0, 1}));
    Tdd one = s.add(a, b);
    EXPECT_TRUE(one.is_trivial());
    EXPECT_EQ(one.root.weight, Weight(1));
    expect_clean(s);
}

TEST(node_store, add_rejects_foreign_store) {
    NodeStore s, t;
    Tdd a = s.generate(DenseTensor({kX}, {1, 2}));
    Tdd b = t.generate(DenseTensor({kX}, {1, 2}));
    EXPECT_THROW(s.add(a, b), TddError);
}

TEST(node_store, contract_examples) {
    NodeStore s;
    IndexLabel two[] = {IndexLabel{4, 0}, IndexLabel{5, 0}};
    Tdd c = s.contract(s.trivial(3), s.trivial(5), two);
    EXPECT_TRUE(c.is_trivial());
    EXPECT_EQ(c.root.weight, Weight(60));

    Tdd h1 = s.generate(hadamard(kX, kY));
    Tdd h2 = s.generate(hadamard(kY, kZ));
    IndexLabel vy[] = {kY};
    Tdd id = s.contract(h1, h2, vy);
    Tdd direct = s.generate(DenseTensor({kX, kZ}, {1, 0, 0, 1}));
    EXPECT_TRUE(same_edge(s, id.root, direct.root));
    EXPECT_EQ(s.size(id), 3u);
    EXPECT_EQ(id.index_list(), (std::vector<IndexLabel>{kX, kZ}));

    Tdd u = s.generate(DenseTensor({kX}, {0, 1}));
    Tdd v = s.generate(DenseTensor({IndexLabel{1, 0}}, {1, 0}));
    EXPECT_TRUE(same_edge(s, s.contract(u, v, {}).root, s.tensor_product(u, v).root));
    expect_clean(s);
}

TEST(node_store, tensor_product_examples) {
    NodeStore s;
    IndexLabel y{1, 0};
    Tdd f = s.generate(hadamard(kX, kY));
    Tdd same = s.tensor_product(f, s.trivial(1));
    EXPECT_TRUE(same_edge(s, same.root, f.root));

    Tdd scaled = s.tensor_product(s.trivial(Weight(0, 2)), f);
    EXPECT_EQ(scaled.root.node, f.root.node);
    EXPECT_TRUE(s.tolerance().weights_equal(scaled.root.weight, Weight(0, 2) * f.root.weight));

    Tdd u = s.generate(DenseTensor({kX}, {0, 1}));
    Tdd v = s.generate(DenseTensor({y}, {1, 0}));
    Tdd p = s.tensor_product(u, v);
    DenseTensor d = s.to_dense(p);
    EXPECT_EQ(d.values(), (std::vector<Weight>{0, 0, 1, 0}));

    // Wrong operand order falls back to a general contraction.
    Tdd q = s.tensor_product(v, u);
    EXPECT_TRUE(same_edge(s, q.root, p.root));
    expect_clean(s);
}

TEST(node_store, slice_examples) {
    NodeStore s;
    Tdd h = s.generate(hadamard(kX, kY));
    Tdd below = s.slice(h, IndexLabel{0, 0}, 0);
    Tdd row = s.slice(h, kX, 0);
    DenseTensor d = s.to_dense(row, {kY});
    EXPECT_LE(d.max_deviation(DenseTensor({kY}, {kR, kR})), 1e-15);
    EXPECT_TRUE(row.is_trivial());

    Tdd y_only = s.generate(DenseTensor({kY}, {Weight(0.5), Weight(2)}));
    EXPECT_TRUE(same_edge(s, s.slice(y_only, kX, 1).root, y_only.root));

    Tdd w = s.scale(y_only, Weight(0, 1));
    Tdd lo = s.slice(w, kY, 0);
    EXPECT_TRUE(s.tolerance().weights_equal(lo.root.weight, w.root.weight * s.node(w.root.node).low.weight));
    EXPECT_THROW(s.slice(y_only, kZ, 0), TddError);
    (void)below;
}

TEST(node_store, evaluate_examples) {
    NodeStore s;
    EXPECT_EQ(s.evaluate(s.trivial(Weight(2, 1)), {}), Weight(2, 1));
    Tdd h = s.generate(hadamard(kX, kY));
    EXPECT_NEAR(std::abs(s.evaluate(h, {{kX, 1}, {kY, 1}}) + kR), 0, 1e-10);
    EXPECT_THROW(s.evaluate(h, {{kX, 1}}), TddError);
}

TEST(node_store, to_dense_superset_replicates) {
    NodeStore s;
    Tdd f = s.generate(DenseTensor({kY}, {2, 3}));
    DenseTensor d = s.to_dense(f, {kX, kY});
    EXPECT_EQ(d.values(), (std::vector<Weight>{2, 3, 2, 3}));
    EXPECT_THROW(s.to_dense(f, {kX}), TddError);
    EXPECT_EQ(s.to_dense(s.trivial(7), {})[0], Weight(7));
}

TEST(node_store, export_dot_examples) {
    NodeStore s;
    std::string t = export_dot(s, s.trivial(1));
    EXPECT_NE(t.find("root -> t [label=\"1\"]"), std::string::npos);
    EXPECT_EQ(t.find("shape=circle"), std::string::npos);

    Tdd h = s.generate(hadamard(kX, kY));
    std::string d = export_dot(s, h);
    EXPECT_EQ(d, export_dot(s, h));
    EXPECT_NE(d.find("root -> n0 [label=\"0.707107\"]"), std::string::npos);
    EXPECT_NE(d.find("n0 [shape=circle"), std::string::npos);
    EXPECT_NE(d.find("n1 [shape=circle"), std::string::npos);
    EXPECT_EQ(d.find("n2 "), std::string::npos);
    EXPECT_NE(d.find("style=dashed"), std::string::npos);
}

TEST(node_store, format_weight_forms) {
    EXPECT_EQ(format_weight(Weight(1)), "1");
    EXPECT_EQ(format_weight(Weight(0, -1)), "-1i");
    EXPECT_EQ(format_weight(Weight(0.5, 0.25)), "(0.5+0.25i)");
    EXPECT_EQ(format_weight(Weight(0.5, -0.25)), "(0.5-0.25i)");
}

TEST(node_store, generate_round_trip_and_norm_law) {
    std::mt19937_64 rng(21);
    NodeStore s;
    for (int trial = 0; trial < 200; trial++) {
        DenseTensor phi = random_tensor(rng, wire_labels(trial % 9));
        Tdd f = s.generate(phi);
        expect_dense(s, f, phi);
        EXPECT_NEAR(std::abs(f.root.weight), max_norm(phi), 1e-9);
        EXPECT_EQ(s.edge_count(f), 1 + 2 * s.size(f));
    }
    expect_clean(s);
}

TEST(node_store, nodes_carry_essential_indices) {
    std::mt19937_64 rng(22);
    NodeStore s;
    for (int trial = 0; trial < 50; trial++) {
        auto idx = wire_labels(1 + trial % 6);
        // Make one index inessential by copying the x=0 half.
        DenseTensor phi = random_tensor(rng, idx);
        IndexLabel dead = idx[trial % idx.size()];
        DenseTensor lo = slice(phi, dead, 0);
        DenseTensor flat = DenseTensor::from_function(idx, [&](const Assignment &a) {
            Assignment rest = a;
            rest.erase(dead);
            return lo.at(rest);
        });
        Tdd f = s.generate(flat);
        std::vector<NodeId> stack{f.root.node};
        while (!stack.empty()) {
            NodeId n = stack.back();
            stack.pop_back();
            if (n == kTerminal) {
                continue;
            }
            EXPECT_NE(s.node(n).level, s.order().level(dead));
            stack.push_back(s.node(n).low.node);
            stack.push_back(s.node(n).high.node);
        }
    }
}

TEST(node_store, canonicity_across_construction_routes) {
    std::mt19937_64 rng(23);
    NodeStore s;
    for (int trial = 0; trial < 100; trial++) {
        auto idx = wire_labels(1 + trial % 8);
        DenseTensor phi = random_tensor(rng, idx);
        Tdd direct = s.generate(phi);
        // Route 2: generate both cofactors of the first index and join them.
        IndexLabel x = idx.front();
        Tdd lo = s.generate(slice(phi, x, 0));
        Tdd hi = s.generate(slice(phi, x, 1));
        Edge joined = s.make_node(x, lo.root, hi.root);
        EXPECT_TRUE(same_edge(s, joined, direct.root));
        // Route 3: the sum of the two halves, each padded with a selector.
        Tdd sel0 = s.generate(DenseTensor({x}, {1, 0}));
        Tdd sel1 = s.generate(DenseTensor({x}, {0, 1}));
        Tdd sum = s.add(s.contract(sel0, lo, {}), s.contract(sel1, hi, {}));
        EXPECT_TRUE(same_edge(s, sum.root, direct.root));
    }
    expect_clean(s);
}

TEST(node_store, contraction_tree_canonicity) {
    std::mt19937_64 rng(24);
    NodeStore s;
    for (int trial = 0; trial < 60; trial++) {
        // phi = A(a,b) B(b,c) C(c,d) summed over b and c, by two trees.
        IndexLabel a{0, 0}, b{1, 0}, c{2, 0}, d{3, 0};
        DenseTensor ta = random_tensor(rng, {a, b}, 0);
        DenseTensor tb = random_tensor(rng, {b, c}, 0);
        DenseTensor tc = random_tensor(rng, {c, d}, 0);
        Tdd fa = s.generate(ta), fb = s.generate(tb), fc = s.generate(tc);
        IndexLabel vb[] = {b}, vc[] = {c};
        Tdd left = s.contract(s.contract(fa, fb, vb), fc, vc);
        Tdd right = s.contract(fa, s.contract(fb, fc, vc), vb);
        EXPECT_TRUE(same_edge(s, left.root, right.root)) << "trial " << trial;
        Tdd direct = s.generate(contract_dense(contract_dense(ta, tb, vb), tc, vc));
        EXPECT_TRUE(same_edge(s, left.root, direct.root)) << "trial " << trial;
    }
    expect_clean(s);
}

TEST(node_store, add_and_contract_match_dense) {
    std::mt19937_64 rng(25);
    NodeStore s;
    std::uniform_int_distribution<int> coin(0, 1);
    for (int trial = 0; trial < 200; trial++) {
        auto all = wire_labels(6);
        std::vector<IndexLabel> ia, ib, var;
        for (const auto &l : all) {
            if (coin(rng)) {
                ia.push_back(l);
            }
            if (coin(rng)) {
                ib.push_back(l);
            }
            if (coin(rng) && coin(rng)) {
                var.push_back(l);
            }
        }
        DenseTensor ta = random_tensor(rng, ia), tb = random_tensor(rng, ib);
        Tdd fa = s.generate(ta), fb = s.generate(tb);
        DenseTensor expect = contract_dense(ta, tb, var);
        expect_dense(s, s.contract(fa, fb, var), expect);
        if (ia == ib) {
            std::vector<Weight> sum = ta.values();
            for (std::size_t k = 0; k < sum.size(); k++) {
                sum[k] += tb.values()[k];
            }
            expect_dense(s, s.add(fa, fb), DenseTensor(ia, sum));
        }
    }
    expect_clean(s);
}

TEST(node_store, add_commutative_associative) {
    std::mt19937_64 rng(26);
    NodeStore s;
    for (int trial = 0; trial < 100; trial++) {
        auto idx = wire_labels(1 + trial % 6);
        Tdd a = s.generate(random_tensor(rng, idx));
        Tdd b = s.generate(random_tensor(rng, idx));
        Tdd c = s.generate(random_tensor(rng, idx));
        EXPECT_TRUE(same_edge(s, s.add(a, b).root, s.add(b, a).root));
        Tdd l = s.add(s.add(a, b), c), r = s.add(a, s.add(b, c));
        EXPECT_LE(s.to_dense(l, idx).max_deviation(s.to_dense(r, idx)), 1e-9);
    }
}

TEST(node_store, contract_bilinear_in_root_weight) {
    std::mt19937_64 rng(27);
    NodeStore s;
    for (int trial = 0; trial < 50; trial++) {
        IndexLabel a{0, 0}, b{1, 0}, c{2, 0};
        Tdd f = s.generate(random_tensor(rng, {a, b}, 0));
        Tdd g = s.generate(random_tensor(rng, {b, c}, 0));
        IndexLabel vb[] = {b};
        Tdd base = s.contract(f, g, vb);
        Tdd scaled = s.contract(s.scale(f, Weight(0, 3)), g, vb);
        EXPECT_EQ(scaled.root.node, base.root.node);
        EXPECT_TRUE(s.tolerance().weights_equal(scaled.root.weight, Weight(0, 3) * base.root.weight));
    }
}

TEST(node_store, boolean_closure) {
    std::mt19937_64 rng(28);
    NodeStore s;
    auto boolean = [](Weight w) { return w == Weight(0) || w == Weight(1); };
    for (int trial = 0; trial < 100; trial++) {
        Tdd f = s.generate(random_boolean_tensor(rng, wire_labels(trial % 9)));
        EXPECT_TRUE(boolean(f.root.weight));
        std::vector<NodeId> stack{f.root.node};
        while (!stack.empty()) {
            NodeId n = stack.back();
            stack.pop_back();
            if (n == kTerminal) {
                continue;
            }
            EXPECT_TRUE(boolean(s.node(n).low.weight));
            EXPECT_TRUE(boolean(s.node(n).high.weight));
            stack.push_back(s.node(n).low.node);
            stack.push_back(s.node(n).high.node);
        }
    }
    expect_clean(s);
}

TEST(node_store, relabel_preserves_structure) {
    NodeStore s;
    Tdd h = s.generate(hadamard(kX, kY));
    Tdd r = s.relabel(h, {{kY, IndexLabel{0, kOutputPosition}}});
    EXPECT_EQ(s.size(r), 2u);
    DenseTensor d = s.to_dense(r);
    EXPECT_LE(d.max_deviation(hadamard(kX, IndexLabel{0, kOutputPosition})), 1e-12);
    EXPECT_THROW(s.relabel(h, {{kX, IndexLabel{0, 7}}}), TddError);
}

TEST(node_store, garbage_collection_keeps_roots_and_pins) {
    std::mt19937_64 rng(29);
    NodeStore s;
    Tdd keep = s.generate(random_tensor(rng, wire_labels(6)));
    Tdd pinned = s.generate(random_tensor(rng, wire_labels(5)));
    Tdd drop = s.generate(random_tensor(rng, wire_labels(7)));
    DenseTensor keep_dense = s.to_dense(keep);
    DenseTensor pinned_dense = s.to_dense(pinned);
    s.pin(pinned.root);
    std::size_t before = s.live_nodes();
    Edge roots[] = {keep.root};
    s.collect_garbage(roots);
    EXPECT_LT(s.live_nodes(), before);
    EXPECT_LE(s.to_dense(keep).max_deviation(keep_dense), 0);
    EXPECT_LE(s.to_dense(pinned).max_deviation(pinned_dense), 0);
    expect_clean(s);
    // Rebuilding a collected diagram reuses freed slots and stays canonical.
    Tdd again = s.generate(random_tensor(rng, wire_labels(6)));
    (void)again;
    (void)drop;
    expect_clean(s);
}

TEST(node_store, stats_count_hits) {
    NodeStore s;
    Tdd h = s.generate(hadamard(kX, kY));
    s.generate(hadamard(kX, kY));
    StoreStats st = s.stats();
    EXPECT_EQ(st.live_nodes, 2u);
    EXPECT_GE(st.unique_hits, 2u);
    EXPECT_GE(st.peak_nodes, st.live_nodes);
    s.add(h, s.scale(h, 2));
    (void)h;
}
