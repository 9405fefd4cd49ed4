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

#include "tdd/network.h"

#include <algorithm>
#include <map>

#include "tdd/error.h"

namespace tdd {

namespace {

LabelCounts count_slots(const std::vector<IndexLabel> &slots) {
    std::map<IndexLabel, std::uint32_t> acc;
    for (const auto &l : slots) {
        acc[l]++;
    }
    LabelCounts out;
    for (const auto &[l, m] : acc) {
        out.push_back({l, m});
    }
    return out;
}

std::vector<IndexLabel> distinct(std::vector<IndexLabel> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

DenseTensor rename_dense(const DenseTensor &phi, const std::map<IndexLabel, IndexLabel> &renames) {
    std::vector<IndexLabel> idx;
    std::map<IndexLabel, IndexLabel> back;
    for (const auto &l : phi.indices()) {
        auto it = renames.find(l);
        IndexLabel n = it == renames.end() ? l : it->second;
        idx.push_back(n);
        back[n] = l;
    }
    return DenseTensor::from_function(idx, [&](const Assignment &a) {
        Assignment orig;
        for (const auto &[l, v] : a) {
            orig[back.at(l)] = v;
        }
        return phi.at(orig);
    });
}

}  // namespace

LabeledTensor gate_tensor(const Gate &g, const std::vector<IndexLabel> &in, const std::vector<IndexLabel> &out) {
    std::size_t k = g.qubits.size();
    if (in.size() != k || out.size() != k) {
        throw TddError(ErrorKind::Usage, "gate_tensor: one input and one output index per wire expected");
    }
    for (std::size_t w = 0; w < k; w++) {
        if (in[w] == out[w] && !g.is_hyper_wire(w)) {
            throw TddError(ErrorKind::Usage, std::string("gate_tensor: wire ") + std::to_string(w) + " of " +
                                                 gate_kind_name(g.kind) + " cannot share its input and output index");
        }
    }
    std::vector<IndexLabel> slots(in);
    slots.insert(slots.end(), out.begin(), out.end());
    std::vector<Weight> m = gate_matrix(g);
    std::size_t dim = std::size_t{1} << k;
    LabeledTensor t;
    t.tensor = DenseTensor::from_function(distinct(slots), [&](const Assignment &a) {
        std::size_t row = 0, col = 0;
        for (std::size_t w = 0; w < k; w++) {
            col = (col << 1) | a.at(in[w]);
            row = (row << 1) | a.at(out[w]);
        }
        return m[row * dim + col];
    });
    t.labels = count_slots(slots);
    return t;
}

DenseTensor copy_tensor(IndexLabel a, IndexLabel b, IndexLabel c) {
    return DenseTensor::from_function({a, b, c}, [&](const Assignment &x) {
        return Weight(x.at(a) == x.at(b) && x.at(b) == x.at(c) ? 1 : 0);
    });
}

DenseTensor xor_tensor(IndexLabel a, IndexLabel b, IndexLabel c) {
    return DenseTensor::from_function({a, b, c},
                                      [&](const Assignment &x) { return Weight((x.at(a) ^ x.at(b) ^ x.at(c)) ? 0 : 1); });
}

IndexLabel bond_label(std::uint32_t control_qubit, std::size_t gate_index) {
    return {control_qubit, kBondPositionBase + static_cast<std::uint32_t>(gate_index)};
}

CutCnot cut_cnot(const Gate &g, std::size_t gate_index, const std::vector<IndexLabel> &in,
                 const std::vector<IndexLabel> &out) {
    if (g.kind != GateKind::CX) {
        throw TddError(ErrorKind::Usage, std::string("cut_cnot: expected cx, got ") + gate_kind_name(g.kind));
    }
    CutCnot cut;
    if (in[0] == out[0]) {
        cut.bond = in[0];
        cut.copy.labels = {};
        cut.copy.tensor = DenseTensor::scalar(1);
        cut.xor_half.labels = count_slots({in[0], in[0], in[1], out[1]});
    } else {
        cut.bond = bond_label(g.qubits[0], gate_index);
        cut.copy.tensor = copy_tensor(in[0], out[0], cut.bond);
        cut.copy.labels = count_slots({in[0], out[0], cut.bond});
        cut.xor_half.labels = count_slots({in[1], out[1], cut.bond});
    }
    cut.xor_half.tensor = xor_tensor(in[1], out[1], cut.bond);
    cut.copy.gate = cut.xor_half.gate = gate_index;
    cut.copy.role = TensorRole::Copy;
    cut.xor_half.role = TensorRole::Xor;
    return cut;
}

std::vector<IndexLabel> Network::open() const {
    std::vector<IndexLabel> v(inputs);
    v.insert(v.end(), outputs.begin(), outputs.end());
    return distinct(v);
}

std::vector<DenseTensor> Network::dense_tensors() const {
    std::vector<DenseTensor> out;
    out.reserve(tensors.size());
    for (const auto &t : tensors) {
        out.push_back(t.tensor);
    }
    return out;
}

Network allocate_indices(const Circuit &c, const NetworkOptions &opts) {
    c.validate();
    Network net;
    net.n_qubits = c.n_qubits;
    net.order = IndexOrder(c.n_qubits, opts.reverse_order);
    std::vector<IndexLabel> cur(c.n_qubits);
    for (std::uint32_t q = 0; q < c.n_qubits; q++) {
        cur[q] = {q, 0};
        net.inputs.push_back(cur[q]);
    }
    net.by_gate.resize(c.gates.size());
    for (std::size_t gi = 0; gi < c.gates.size(); gi++) {
        const Gate &g = c.gates[gi];
        std::vector<IndexLabel> in, out;
        for (std::size_t w = 0; w < g.qubits.size(); w++) {
            std::uint32_t q = g.qubits[w];
            in.push_back(cur[q]);
            if (!(opts.hyper && g.is_hyper_wire(w))) {
                cur[q].position++;
            }
            out.push_back(cur[q]);
        }
        auto push = [&](LabeledTensor t) {
            t.gate = gi;
            net.by_gate[gi].push_back(net.tensors.size());
            net.tensors.push_back(std::move(t));
        };
        if (g.kind == GateKind::CX && opts.cut_gates.count(gi)) {
            CutCnot cut = cut_cnot(g, gi, in, out);
            if (cut.copy.tensor.rank() > 0) {
                push(std::move(cut.copy));
            }
            push(std::move(cut.xor_half));
        } else {
            push(gate_tensor(g, in, out));
        }
    }
    net.outputs = cur;
    return net;
}

DenseTensor dense_functionality(const Network &net) {
    std::map<IndexLabel, IndexLabel> renames;
    std::vector<DenseTensor> tensors;
    std::vector<IndexLabel> open;
    for (std::uint32_t q = 0; q < net.n_qubits; q++) {
        IndexLabel out{q, kOutputPosition};
        open.push_back(net.inputs[q]);
        open.push_back(out);
        if (net.outputs[q] != net.inputs[q]) {
            renames[net.outputs[q]] = out;
        }
    }
    for (const auto &t : net.tensors) {
        tensors.push_back(rename_dense(t.tensor, renames));
    }
    for (std::uint32_t q = 0; q < net.n_qubits; q++) {
        if (net.outputs[q] == net.inputs[q]) {
            IndexLabel in = net.inputs[q];
            IndexLabel out{q, kOutputPosition};
            tensors.push_back(DenseTensor::from_function({in, out}, [&](const Assignment &a) {
                return Weight(a.at(in) == a.at(out) ? 1 : 0);
            }));
        }
    }
    return network_to_dense(tensors, open);
}

DenseTensor unitary_functionality(const Circuit &c) {
    std::uint32_t n = c.n_qubits;
    if (2 * n > kMaxDenseRank) {
        throw TddError(ErrorKind::RankOverflow, "unitary oracle limited to " + std::to_string(kMaxDenseRank / 2) + " qubits");
    }
    std::size_t dim = std::size_t{1} << n;
    // u[col] is the image of basis state col; qubit 0 is the most significant bit.
    std::vector<std::vector<Weight>> u(dim, std::vector<Weight>(dim, 0));
    for (std::size_t col = 0; col < dim; col++) {
        u[col][col] = 1;
    }
    for (const auto &g : c.gates) {
        std::vector<Weight> m = gate_matrix(g);
        std::size_t k = g.qubits.size();
        std::size_t gdim = std::size_t{1} << k;
        for (auto &v : u) {
            std::vector<Weight> nv(dim, 0);
            for (std::size_t b = 0; b < dim; b++) {
                if (v[b] == Weight{0, 0}) {
                    continue;
                }
                std::size_t sub = 0;
                for (std::size_t w = 0; w < k; w++) {
                    sub = (sub << 1) | ((b >> (n - 1 - g.qubits[w])) & 1);
                }
                for (std::size_t r = 0; r < gdim; r++) {
                    std::size_t nb = b;
                    for (std::size_t w = 0; w < k; w++) {
                        std::size_t bit = (r >> (k - 1 - w)) & 1;
                        std::size_t mask = std::size_t{1} << (n - 1 - g.qubits[w]);
                        nb = bit ? (nb | mask) : (nb & ~mask);
                    }
                    nv[nb] += m[r * gdim + sub] * v[b];
                }
            }
            v = std::move(nv);
        }
    }
    std::vector<IndexLabel> idx;
    for (std::uint32_t q = 0; q < n; q++) {
        idx.push_back({q, 0});
        idx.push_back({q, kOutputPosition});
    }
    return DenseTensor::from_function(idx, [&](const Assignment &a) {
        std::size_t in = 0, out = 0;
        for (std::uint32_t q = 0; q < n; q++) {
            in = (in << 1) | a.at({q, 0});
            out = (out << 1) | a.at({q, kOutputPosition});
        }
        return u[in][out];
    });
}

}  // namespace tdd
