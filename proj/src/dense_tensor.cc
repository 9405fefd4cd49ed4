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
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "tdd/error.h"

namespace tdd {

std::string IndexLabel::str() const {
    std::ostringstream out;
    if (position == kOutputPosition) {
        out << "q" << qubit << ".out";
    } else if (position >= kBondPositionBase) {
        out << "q" << qubit << ".b" << (position - kBondPositionBase);
    } else {
        out << "q" << qubit << "." << position;
    }
    return out.str();
}

IndexOrder::IndexOrder(std::uint32_t n_qubits, bool reverse_qubits) : n_qubits_(n_qubits), reverse_(reverse_qubits) {
}

Level IndexOrder::level(IndexLabel label) const {
    std::uint32_t q = label.qubit;
    if (reverse_) {
        if (q >= n_qubits_) {
            throw TddError(ErrorKind::Ordering, "qubit " + std::to_string(q) + " outside the reversed order");
        }
        q = n_qubits_ - 1 - q;
    }
    return (Level{q} << 32) | label.position;
}

IndexLabel IndexOrder::label(Level level) const {
    auto q = static_cast<std::uint32_t>(level >> 32);
    if (reverse_) {
        q = n_qubits_ - 1 - q;
    }
    return {q, static_cast<std::uint32_t>(level & 0xFFFFFFFFu)};
}

namespace {

void check_rank(std::size_t rank) {
    if (rank > kMaxDenseRank) {
        throw TddError(ErrorKind::RankOverflow,
                       "dense rank " + std::to_string(rank) + " exceeds the cap of " + std::to_string(kMaxDenseRank));
    }
}

std::size_t stride_of(std::size_t rank, std::size_t slot) {
    return std::size_t{1} << (rank - 1 - slot);
}

}  // namespace

DenseTensor::DenseTensor() : values_{Weight{0, 0}} {
}

DenseTensor::DenseTensor(std::vector<IndexLabel> indices, std::vector<Weight> values)
    : indices_(std::move(indices)), values_(std::move(values)) {
    check_rank(indices_.size());
    for (std::size_t k = 1; k < indices_.size(); k++) {
        if (!(indices_[k - 1] < indices_[k])) {
            throw TddError(ErrorKind::NetworkShape, "dense tensor indices must be distinct and sorted");
        }
    }
    if (values_.size() != (std::size_t{1} << indices_.size())) {
        throw TddError(ErrorKind::NetworkShape, "dense tensor value count does not match its rank");
    }
    for (const auto &v : values_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw TddError(ErrorKind::NumericDomain, "dense tensor contains a non-finite value");
        }
    }
}

DenseTensor DenseTensor::scalar(Weight c) {
    return DenseTensor({}, {c});
}

DenseTensor DenseTensor::zeros(std::vector<IndexLabel> indices) {
    std::sort(indices.begin(), indices.end());
    check_rank(indices.size());
    std::size_t n = std::size_t{1} << indices.size();
    return DenseTensor(std::move(indices), std::vector<Weight>(n, Weight{0, 0}));
}

DenseTensor DenseTensor::from_function(std::vector<IndexLabel> indices,
                                       const std::function<Weight(const Assignment &)> &fn) {
    std::sort(indices.begin(), indices.end());
    check_rank(indices.size());
    std::size_t rank = indices.size();
    std::vector<Weight> values(std::size_t{1} << rank);
    Assignment a;
    for (std::size_t flat = 0; flat < values.size(); flat++) {
        for (std::size_t k = 0; k < rank; k++) {
            a[indices[k]] = static_cast<std::uint8_t>((flat >> (rank - 1 - k)) & 1);
        }
        values[flat] = fn(a);
    }
    return DenseTensor(std::move(indices), std::move(values));
}

bool DenseTensor::has_index(IndexLabel x) const {
    return std::binary_search(indices_.begin(), indices_.end(), x);
}

std::size_t DenseTensor::slot_of(IndexLabel x) const {
    auto it = std::lower_bound(indices_.begin(), indices_.end(), x);
    if (it == indices_.end() || *it != x) {
        throw TddError(ErrorKind::IndexNotFound, "index " + x.str() + " not in tensor");
    }
    return static_cast<std::size_t>(it - indices_.begin());
}

Weight DenseTensor::at(const Assignment &a) const {
    std::size_t flat = 0;
    for (const auto &label : indices_) {
        auto it = a.find(label);
        if (it == a.end()) {
            throw TddError(ErrorKind::Usage, "assignment does not cover index " + label.str());
        }
        flat = (flat << 1) | (it->second & 1);
    }
    return values_[flat];
}

bool DenseTensor::approx_equal(const DenseTensor &other, const ToleranceConfig &tol) const {
    if (indices_ != other.indices_) {
        return false;
    }
    for (std::size_t k = 0; k < values_.size(); k++) {
        if (!tol.weights_equal(values_[k], other.values_[k])) {
            return false;
        }
    }
    return true;
}

double DenseTensor::max_deviation(const DenseTensor &other) const {
    if (indices_ != other.indices_) {
        throw TddError(ErrorKind::NetworkShape, "cannot compare tensors over different indices");
    }
    double worst = 0;
    for (std::size_t k = 0; k < values_.size(); k++) {
        worst = std::max(worst, std::abs(values_[k] - other.values_[k]));
    }
    return worst;
}

DenseTensor slice(const DenseTensor &phi, IndexLabel x, int c) {
    std::size_t slot = phi.slot_of(x);
    std::size_t rank = phi.rank();
    std::vector<IndexLabel> rest;
    rest.reserve(rank - 1);
    for (std::size_t k = 0; k < rank; k++) {
        if (k != slot) {
            rest.push_back(phi.indices()[k]);
        }
    }
    std::size_t low_bits = rank - 1 - slot;
    std::size_t low_mask = (std::size_t{1} << low_bits) - 1;
    std::vector<Weight> values(std::size_t{1} << (rank - 1));
    for (std::size_t r = 0; r < values.size(); r++) {
        std::size_t high = r >> low_bits;
        std::size_t low = r & low_mask;
        std::size_t src = (((high << 1) | static_cast<std::size_t>(c & 1)) << low_bits) | low;
        values[r] = phi[src];
    }
    return DenseTensor(std::move(rest), std::move(values));
}

DenseTensor contract_dense(const DenseTensor &gamma, const DenseTensor &xi, std::span<const IndexLabel> var) {
    std::vector<IndexLabel> all;
    std::set_union(gamma.indices().begin(), gamma.indices().end(), xi.indices().begin(), xi.indices().end(),
                   std::back_inserter(all));
    std::set<IndexLabel> var_set(var.begin(), var.end());
    std::size_t absent = 0;
    for (const auto &v : var_set) {
        if (!std::binary_search(all.begin(), all.end(), v)) {
            absent++;
        }
    }
    std::vector<IndexLabel> out_labels;
    for (const auto &l : all) {
        if (!var_set.count(l)) {
            out_labels.push_back(l);
        }
    }
    check_rank(out_labels.size());
    if (all.size() > 40) {
        throw TddError(ErrorKind::RankOverflow, "dense contraction touches too many indices");
    }

    std::size_t n = all.size();
    std::vector<std::size_t> stride_a(n, 0), stride_b(n, 0), stride_o(n, 0);
    for (std::size_t k = 0; k < n; k++) {
        const auto &l = all[k];
        if (gamma.has_index(l)) {
            stride_a[k] = stride_of(gamma.rank(), gamma.slot_of(l));
        }
        if (xi.has_index(l)) {
            stride_b[k] = stride_of(xi.rank(), xi.slot_of(l));
        }
        if (!var_set.count(l)) {
            auto it = std::lower_bound(out_labels.begin(), out_labels.end(), l);
            stride_o[k] = stride_of(out_labels.size(), static_cast<std::size_t>(it - out_labels.begin()));
        }
    }

    std::vector<Weight> out(std::size_t{1} << out_labels.size(), Weight{0, 0});
    std::vector<std::uint8_t> bits(n, 0);
    std::size_t ia = 0, ib = 0, io = 0;
    std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t step = 0; step < total; step++) {
        out[io] += gamma[ia] * xi[ib];
        // Odometer increment, least significant label last.
        std::size_t k = n;
        while (k > 0) {
            k--;
            if (bits[k]) {
                bits[k] = 0;
                ia -= stride_a[k];
                ib -= stride_b[k];
                io -= stride_o[k];
            } else {
                bits[k] = 1;
                ia += stride_a[k];
                ib += stride_b[k];
                io += stride_o[k];
                break;
            }
        }
    }
    if (absent > 0) {
        double factor = std::ldexp(1.0, static_cast<int>(absent));
        for (auto &v : out) {
            v *= factor;
        }
    }
    return DenseTensor(std::move(out_labels), std::move(out));
}

double max_norm(const DenseTensor &phi) {
    double m = 0;
    for (const auto &v : phi.values()) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

namespace {

// Flat indices of `phi` in the lexicographic order that `order` induces.
template <typename Visit>
void visit_in_order(const DenseTensor &phi, const IndexOrder &order, Visit &&visit) {
    std::size_t rank = phi.rank();
    std::vector<std::size_t> slots(rank);
    for (std::size_t k = 0; k < rank; k++) {
        slots[k] = k;
    }
    std::sort(slots.begin(), slots.end(), [&](std::size_t a, std::size_t b) {
        return order.level(phi.indices()[a]) < order.level(phi.indices()[b]);
    });
    std::size_t total = std::size_t{1} << rank;
    for (std::size_t t = 0; t < total; t++) {
        std::size_t flat = 0;
        for (std::size_t k = 0; k < rank; k++) {
            if ((t >> (rank - 1 - k)) & 1) {
                flat |= stride_of(rank, slots[k]);
            }
        }
        if (visit(flat)) {
            return;
        }
    }
}

}  // namespace

Assignment pivot(const DenseTensor &phi, const ToleranceConfig &tol, const IndexOrder &order) {
    double m = max_norm(phi);
    if (tol.is_zero(Weight{m, 0})) {
        throw TddError(ErrorKind::ZeroTensor, "the zero tensor has no pivot");
    }
    std::size_t found = 0;
    visit_in_order(phi, order, [&](std::size_t flat) {
        if (std::abs(phi[flat]) >= m - tol.eps()) {
            found = flat;
            return true;
        }
        return false;
    });
    Assignment a;
    for (std::size_t k = 0; k < phi.rank(); k++) {
        a[phi.indices()[k]] = static_cast<std::uint8_t>((found >> (phi.rank() - 1 - k)) & 1);
    }
    return a;
}

Normalized normalize_tensor(const DenseTensor &phi, const ToleranceConfig &tol, const IndexOrder &order) {
    double m = max_norm(phi);
    if (m < tol.eps() / 2) {
        return {Weight{0, 0}, DenseTensor::zeros(phi.indices())};
    }
    Weight p = phi.at(pivot(phi, tol, order));
    std::vector<Weight> values = phi.values();
    for (auto &v : values) {
        v /= p;
    }
    return {p, DenseTensor(phi.indices(), std::move(values))};
}

bool is_essential(const DenseTensor &phi, IndexLabel x, const ToleranceConfig &tol) {
    return !slice(phi, x, 0).approx_equal(slice(phi, x, 1), tol);
}

DenseTensor network_to_dense(std::span<const DenseTensor> net, std::span<const IndexLabel> open,
                             std::span<const IndexLabel> summed) {
    std::set<IndexLabel> open_set(open.begin(), open.end());
    std::set<IndexLabel> summed_set(summed.begin(), summed.end());
    std::map<IndexLabel, std::size_t> holders;
    std::map<IndexLabel, std::size_t> last_holder;
    for (std::size_t i = 0; i < net.size(); i++) {
        for (const auto &l : net[i].indices()) {
            holders[l]++;
            last_holder[l] = i;
        }
    }
    for (const auto &l : open_set) {
        if (!holders.count(l)) {
            throw TddError(ErrorKind::NetworkShape, "open index " + l.str() + " does not occur in the network");
        }
    }
    for (const auto &[l, count] : holders) {
        if (count < 2 && !open_set.count(l) && !summed_set.count(l)) {
            throw TddError(ErrorKind::NetworkShape, "index " + l.str() + " is dangling (one holder, not open)");
        }
    }
    if (net.empty()) {
        return DenseTensor::scalar(1);
    }
    auto var_for_step = [&](std::size_t i) {
        std::vector<IndexLabel> var;
        for (const auto &[l, last] : last_holder) {
            if (last == i && !open_set.count(l)) {
                var.push_back(l);
            }
        }
        return var;
    };
    DenseTensor acc = contract_dense(net[0], DenseTensor::scalar(1), var_for_step(0));
    for (std::size_t i = 1; i < net.size(); i++) {
        acc = contract_dense(acc, net[i], var_for_step(i));
    }
    std::vector<IndexLabel> expected(open_set.begin(), open_set.end());
    if (acc.indices() != expected) {
        throw TddError(ErrorKind::NetworkShape, "network result indices do not match the open set");
    }
    return acc;
}

}  // namespace tdd
