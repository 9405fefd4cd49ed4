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

#include <cstdint>
#include <set>
#include <vector>

#include "tdd/circuit.h"
#include "tdd/dense_tensor.h"
#include "tdd/node_store.h"

namespace tdd {

enum class TensorRole { Gate, Copy, Xor };

/// A tensor of the circuit network. `labels` carries one entry per distinct
/// index with the number of wire slots it fills.
struct LabeledTensor {
    DenseTensor tensor;
    LabelCounts labels;
    std::size_t gate = 0;
    TensorRole role = TensorRole::Gate;
};

/// Tensor of `g` given the index on each wire before (`in`) and after (`out`)
/// the gate. Wires with in[k] == out[k] must be hyper wires of `g`.
LabeledTensor gate_tensor(const Gate &g, const std::vector<IndexLabel> &in, const std::vector<IndexLabel> &out);

/// COPY (1 on equal triples) over {a, b, c}.
DenseTensor copy_tensor(IndexLabel a, IndexLabel b, IndexLabel c);
/// XOR (1 on even-parity triples) over {a, b, c}.
DenseTensor xor_tensor(IndexLabel a, IndexLabel b, IndexLabel c);

struct CutCnot {
    LabeledTensor copy;
    LabeledTensor xor_half;
    IndexLabel bond;
};
/// Splits a CX with the given wire indices into COPY (control side) and XOR
/// (target side). In hyper form the COPY half is the identity on the control
/// index, so the bond is the control index itself and `copy` is empty.
CutCnot cut_cnot(const Gate &g, std::size_t gate_index, const std::vector<IndexLabel> &in,
                 const std::vector<IndexLabel> &out);

IndexLabel bond_label(std::uint32_t control_qubit, std::size_t gate_index);

struct NetworkOptions {
    /// Diagonal wires share one index for input and output.
    bool hyper = true;
    /// Reverse the qubit component of the variable order.
    bool reverse_order = false;
    /// Crossing CX gates to split into COPY/XOR halves.
    std::set<std::size_t> cut_gates;
};

struct Network {
    std::uint32_t n_qubits = 0;
    std::vector<LabeledTensor> tensors;
    /// Tensors produced by each gate, indices into `tensors`.
    std::vector<std::vector<std::size_t>> by_gate;
    IndexOrder order;
    std::vector<IndexLabel> inputs;
    std::vector<IndexLabel> outputs;

    std::vector<IndexLabel> open() const;
    std::vector<DenseTensor> dense_tensors() const;
};

Network allocate_indices(const Circuit &c, const NetworkOptions &opts = {});

/// The circuit functionality over inputs (q, 0) and outputs (q, kOutputPosition)
/// computed densely by folding the network. For testing; n must be small.
DenseTensor dense_functionality(const Network &net);

/// Naive oracle: multiplies gate matrices into a 2^n x 2^n unitary and returns
/// it as a tensor over inputs (q, 0) and outputs (q, kOutputPosition).
DenseTensor unitary_functionality(const Circuit &c);

}  // namespace tdd
