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

#include "tdd/dense_tensor.h"

#include <algorithm>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "tdd/error.h"
#include "test_util.h"

using namespace tdd;
using tdd::testing::random_tensor;

namespace {

const double kR = 1 / std::numbers::sqrt2;
const IndexLabel kX{0, 0};
const IndexLabel kY{0, 1};
const IndexLabel kZ{0, 2};

DenseTensor hadamard(IndexLabel in, IndexLabel out) {
    return DenseTensor({in, out}, {kR, kR, kR, -kR});
}

}  // namespace

TEST(dense_tensor, construction_checks) {
    EXPECT_THROW(DenseTensor({kY, kX}, {1, 2, 3, 4}), TddError);
    EXPECT_THROW(DenseTensor({kX, kX}, {1, 2, 3, 4}), TddError);
    EXPECT_THROW(DenseTensor({kX}, {1, 2, 3}), TddError);
    EXPECT_THROW(DenseTensor({kX}, {1, NAN}), TddError);
    std::vector<IndexLabel> big;
    for (std::uint32_t i = 0; i <= kMaxDenseRank; i++) {
        big.push_back({i, 0});
    }
    EXPECT_THROW(DenseTensor::zeros(big), TddError);
}

TEST(dense_tensor, value_layout_is_msb_first) {
    DenseTensor t({kX, kY}, {1, 2, 3, 4});
    EXPECT_EQ(t.at({{kX, 1}, {kY, 0}}), Weight(3));
    EXPECT_EQ(t.at({{kX, 0}, {kY, 1}}), Weight(2));
    DenseTensor f = DenseTensor::from_function({kY, kX}, [](const Assignment &a) {
        return Weight(2 * a.at(kX) + a.at(kY) + 1);
    });
    EXPECT_EQ(f.indices(), (std::vector<IndexLabel>{kX, kY}));
    EXPECT_EQ(f.values(), t.values());
}

TEST(dense_tensor, slice_examples) {
    DenseTensor xor2 = DenseTensor::from_function({kX, kY}, [](const Assignment &a) {
        return Weight(a.at(kX) ^ a.at(kY));
    });
    DenseTensor s = slice(xor2, kX, 0);
    EXPECT_EQ(s.indices(), std::vector<IndexLabel>{kY});
    EXPECT_EQ(s.values(), (std::vector<Weight>{0, 1}));

    DenseTensor row = slice(hadamard(kX, kY), kX, 1);
    EXPECT_EQ(row.values(), (std::vector<Weight>{kR, -kR}));

    EXPECT_THROW(slice(DenseTensor::scalar(3), kX, 0), TddError);
}

TEST(dense_tensor, contract_examples) {
    DenseTensor ones({kX}, {1, 1});
    IndexLabel vx[] = {kX};
    DenseTensor two = contract_dense(ones, ones, vx);
    EXPECT_EQ(two.rank(), 0u);
    EXPECT_EQ(two[0], Weight(2));

    IndexLabel vy[] = {kY};
    DenseTensor id = contract_dense(hadamard(kX, kY), hadamard(kY, kZ), vy);
    EXPECT_TRUE(id.approx_equal(DenseTensor({kX, kZ}, {1, 0, 0, 1}), {}));

    // Absent summed labels contribute a factor of two each.
    IndexLabel absent[] = {IndexLabel{5, 0}, IndexLabel{6, 0}};
    DenseTensor c = contract_dense(DenseTensor::scalar(3), DenseTensor::scalar(5), absent);
    EXPECT_EQ(c[0], Weight(60));
}

TEST(dense_tensor, contract_shared_label_outside_var_is_diagonal) {
    DenseTensor a({kX}, {2, 3});
    DenseTensor b({kX}, {5, 7});
    DenseTensor c = contract_dense(a, b, {});
    EXPECT_EQ(c.indices(), std::vector<IndexLabel>{kX});
    EXPECT_EQ(c.values(), (std::vector<Weight>{10, 21}));
}

TEST(dense_tensor, t_h_cx_network) {
    // T on wire 0 (hyper), H on wire 1, CX, T on wire 0, H on wire 1. Labels:
    // wire 0 keeps x0 throughout; wire 1 goes x1 -> a -> b -> y1.
    using std::numbers::pi;
    IndexLabel w0{0, 0}, i1{1, 0}, a{1, 1}, b{1, 2}, o1{1, 3};
    Weight t = std::polar(1.0, pi / 4);
    std::vector<DenseTensor> net{
        DenseTensor({w0}, {1, t}),
        hadamard(i1, a),
        DenseTensor::from_function({w0, a, b}, [&](const Assignment &s) {
            return Weight(s.at(b) == (s.at(a) ^ s.at(w0)) ? 1 : 0);
        }),
        DenseTensor({w0}, {1, t}),
        hadamard(b, o1),
    };
    IndexLabel open[] = {w0, i1, o1};
    DenseTensor phi = network_to_dense(net, open);
    EXPECT_NEAR(std::abs(phi.at({{w0, 1}, {i1, 1}, {o1, 1}}) - Weight(0, -1)), 0, 1e-12);
}

TEST(dense_tensor, network_examples) {
    DenseTensor h = hadamard(kX, kY);
    IndexLabel open[] = {kX, kY};
    EXPECT_TRUE(network_to_dense(std::vector<DenseTensor>{h}, open).approx_equal(h, {}));

    DenseTensor u({kX}, {2, 3});
    DenseTensor v({kY}, {5, 7});
    DenseTensor outer = network_to_dense(std::vector<DenseTensor>{u, v}, open);
    EXPECT_EQ(outer.values(), (std::vector<Weight>{10, 14, 15, 21}));

    IndexLabel only_x[] = {kX};
    EXPECT_THROW(network_to_dense(std::vector<DenseTensor>{h}, only_x), TddError);
    IndexLabel missing[] = {kX, kY, kZ};
    EXPECT_THROW(network_to_dense(std::vector<DenseTensor>{h}, missing), TddError);
}

TEST(dense_tensor, norm_pivot_normalize) {
    ToleranceConfig tol;
    DenseTensor h = hadamard(kX, kY);
    EXPECT_NEAR(max_norm(h), kR, 1e-15);
    EXPECT_EQ(max_norm(DenseTensor::zeros({kX})), 0);
    Assignment p = pivot(h, tol);
    EXPECT_EQ(p.at(kX), 0);
    EXPECT_EQ(p.at(kY), 0);
    EXPECT_THROW(pivot(DenseTensor::zeros({kX}), tol), TddError);

    Normalized nh = normalize_tensor(h, tol);
    EXPECT_NEAR(std::abs(nh.p - kR), 0, 1e-15);
    EXPECT_TRUE(nh.normal.approx_equal(DenseTensor({kX, kY}, {1, 1, 1, -1}), tol));

    Normalized n3 = normalize_tensor(DenseTensor({kX}, {0, Weight(0, 3)}), tol);
    EXPECT_EQ(n3.p, Weight(0, 3));
    EXPECT_TRUE(n3.normal.approx_equal(DenseTensor({kX}, {0, 1}), tol));

    Normalized nz = normalize_tensor(DenseTensor::zeros({kX}), tol);
    EXPECT_EQ(nz.p, Weight(0));
    EXPECT_TRUE(nz.normal.approx_equal(DenseTensor::zeros({kX}), tol));
}

TEST(dense_tensor, essential_examples) {
    ToleranceConfig tol;
    DenseTensor z({kX}, {1, -1});
    EXPECT_TRUE(is_essential(z, kX, tol));
    DenseTensor ones({kX, kY}, {1, 1, 1, 1});
    EXPECT_FALSE(is_essential(ones, kX, tol));
    EXPECT_FALSE(is_essential(ones, kY, tol));
    DenseTensor id({kX, kY}, {1, 0, 0, 1});
    EXPECT_TRUE(is_essential(id, kX, tol));
    EXPECT_TRUE(is_essential(id, kY, tol));
    EXPECT_THROW(is_essential(id, kZ, tol), TddError);
}

TEST(dense_tensor, shannon_expansion_property) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; trial++) {
        auto idx = tdd::testing::wire_labels(1 + trial % 6);
        DenseTensor phi = random_tensor(rng, idx);
        IndexLabel x = idx[trial % idx.size()];
        DenseTensor lo = slice(phi, x, 0), hi = slice(phi, x, 1);
        DenseTensor rebuilt = DenseTensor::from_function(idx, [&](const Assignment &a) {
            Assignment rest = a;
            rest.erase(x);
            return a.at(x) ? hi.at(rest) : lo.at(rest);
        });
        EXPECT_TRUE(rebuilt.approx_equal(phi, {}));
    }
}

TEST(dense_tensor, normalize_property) {
    ToleranceConfig tol;
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 50; trial++) {
        DenseTensor phi = random_tensor(rng, tdd::testing::wire_labels(1 + trial % 6));
        Normalized n = normalize_tensor(phi, tol);
        if (n.p == Weight(0)) {
            continue;
        }
        EXPECT_TRUE(tol.is_one(n.normal.at(pivot(phi, tol))));
        EXPECT_NEAR(max_norm(n.normal), 1, 1e-12);
        std::vector<Weight> back = n.normal.values();
        for (auto &v : back) {
            v *= n.p;
        }
        EXPECT_LE(DenseTensor(phi.indices(), back).max_deviation(phi), 1e-12);
    }
}

TEST(dense_tensor, network_order_independence) {
    std::mt19937_64 rng(13);
    ToleranceConfig tol(1e-8, 1e-8);
    for (int trial = 0; trial < 20; trial++) {
        // A chain a-b-c-d with open ends plus a hyper label shared by all.
        IndexLabel h{9, 0};
        std::vector<IndexLabel> chain{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}};
        std::vector<DenseTensor> net;
        for (std::size_t i = 0; i + 1 < chain.size(); i++) {
            net.push_back(random_tensor(rng, {chain[i], chain[i + 1], h}, 0));
        }
        std::vector<IndexLabel> open{chain.front(), chain.back()};
        DenseTensor ref = network_to_dense(net, open, std::vector<IndexLabel>{h});
        std::sort(net.begin(), net.end(), [](const DenseTensor &a, const DenseTensor &b) {
            return a.indices() > b.indices();
        });
        DenseTensor rev = network_to_dense(net, open, std::vector<IndexLabel>{h});
        EXPECT_LE(rev.max_deviation(ref), 1e-9);
    }
}
