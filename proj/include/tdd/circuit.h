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
#include <string>
#include <string_view>
#include <vector>

#include "tdd/numerics.h"

namespace tdd {

enum class GateKind { X, Y, Z, H, S, SDG, T, TDG, RX, RY, RZ, U1, U2, U3, CX, CZ, CCX, SWAP };

const char *gate_kind_name(GateKind kind);
/// Lower-case qelib name lookup ("cx", "u3", ...). Returns false if unknown.
bool gate_kind_from_name(std::string_view name, GateKind *out);
std::size_t gate_arity(GateKind kind);
std::size_t gate_param_count(GateKind kind);
/// Diagonal in the computational basis on every wire.
bool is_diagonal(GateKind kind);

struct Gate {
    GateKind kind = GateKind::X;
    std::vector<std::uint32_t> qubits;
    std::vector<double> params;

    bool operator==(const Gate &) const = default;
    /// True for wires on which the gate is block diagonal: these can share one
    /// index for input and output.
    bool is_hyper_wire(std::size_t slot) const;
};

/// Full unitary of `g` on its own wires, row-major, first listed qubit is the
/// most significant bit of the row/column number.
std::vector<Weight> gate_matrix(const Gate &g);

struct Circuit {
    std::string name;
    std::uint32_t n_qubits = 0;
    std::vector<Gate> gates;
    std::vector<std::string> warnings;

    /// Throws if a gate has the wrong arity, repeats a qubit, refers to a
    /// qubit out of range or carries a non-finite angle.
    void validate() const;
    std::size_t crossing_count(std::uint32_t boundary) const;
};

Circuit parse_qasm(std::string_view text, std::string name = "");
Circuit load_qasm(const std::string &path);
std::string to_qasm(const Circuit &c);

}  // namespace tdd
