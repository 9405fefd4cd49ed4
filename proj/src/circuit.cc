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

#include "tdd/circuit.h"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "tdd/error.h"

namespace tdd {

namespace {

struct KindInfo {
    GateKind kind;
    const char *name;
    std::size_t arity;
    std::size_t params;
    bool diagonal;
};

constexpr KindInfo kKinds[] = {
    {GateKind::X, "x", 1, 0, false},     {GateKind::Y, "y", 1, 0, false},      {GateKind::Z, "z", 1, 0, true},
    {GateKind::H, "h", 1, 0, false},     {GateKind::S, "s", 1, 0, true},       {GateKind::SDG, "sdg", 1, 0, true},
    {GateKind::T, "t", 1, 0, true},      {GateKind::TDG, "tdg", 1, 0, true},   {GateKind::RX, "rx", 1, 1, false},
    {GateKind::RY, "ry", 1, 1, false},   {GateKind::RZ, "rz", 1, 1, true},     {GateKind::U1, "u1", 1, 1, true},
    {GateKind::U2, "u2", 1, 2, false},   {GateKind::U3, "u3", 1, 3, false},    {GateKind::CX, "cx", 2, 0, false},
    {GateKind::CZ, "cz", 2, 0, true},    {GateKind::CCX, "ccx", 3, 0, false},  {GateKind::SWAP, "swap", 2, 0, false},
};

const KindInfo &info(GateKind kind) {
    return kKinds[static_cast<int>(kind)];
}

std::vector<Weight> u3(double theta, double phi, double lambda) {
    double c = std::cos(theta / 2);
    double s = std::sin(theta / 2);
    return {c, -std::polar(1.0, lambda) * s, std::polar(1.0, phi) * s, std::polar(1.0, phi + lambda) * c};
}

}  // namespace

const char *gate_kind_name(GateKind kind) {
    return info(kind).name;
}

bool gate_kind_from_name(std::string_view name, GateKind *out) {
    if (name == "CX") {
        name = "cx";
    } else if (name == "U") {
        name = "u3";
    }
    for (const auto &k : kKinds) {
        if (name == k.name) {
            *out = k.kind;
            return true;
        }
    }
    return false;
}

std::size_t gate_arity(GateKind kind) {
    return info(kind).arity;
}

std::size_t gate_param_count(GateKind kind) {
    return info(kind).params;
}

bool is_diagonal(GateKind kind) {
    return info(kind).diagonal;
}

bool Gate::is_hyper_wire(std::size_t slot) const {
    if (is_diagonal(kind)) {
        return true;
    }
    switch (kind) {
        case GateKind::CX:
            return slot == 0;
        case GateKind::CCX:
            return slot < 2;
        default:
            return false;
    }
}

std::vector<Weight> gate_matrix(const Gate &g) {
    using std::numbers::pi;
    const Weight i{0, 1};
    const double r = 1 / std::numbers::sqrt2;
    auto p = [&](std::size_t k) { return g.params.at(k); };
    switch (g.kind) {
        case GateKind::X:
            return {0, 1, 1, 0};
        case GateKind::Y:
            return {0, -i, i, 0};
        case GateKind::Z:
            return {1, 0, 0, -1};
        case GateKind::H:
            return {r, r, r, -r};
        case GateKind::S:
            return {1, 0, 0, i};
        case GateKind::SDG:
            return {1, 0, 0, -i};
        case GateKind::T:
            return {1, 0, 0, std::polar(1.0, pi / 4)};
        case GateKind::TDG:
            return {1, 0, 0, std::polar(1.0, -pi / 4)};
        case GateKind::RX: {
            double c = std::cos(p(0) / 2), s = std::sin(p(0) / 2);
            return {c, -i * s, -i * s, c};
        }
        case GateKind::RY: {
            double c = std::cos(p(0) / 2), s = std::sin(p(0) / 2);
            return {c, -s, s, c};
        }
        case GateKind::RZ:
            return {std::polar(1.0, -p(0) / 2), 0, 0, std::polar(1.0, p(0) / 2)};
        case GateKind::U1:
            return {1, 0, 0, std::polar(1.0, p(0))};
        case GateKind::U2:
            return u3(pi / 2, p(0), p(1));
        case GateKind::U3:
            return u3(p(0), p(1), p(2));
        case GateKind::CX:
            return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0};
        case GateKind::CZ:
            return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1};
        case GateKind::SWAP:
            return {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1};
        case GateKind::CCX: {
            std::vector<Weight> m(64, 0);
            for (int k = 0; k < 8; k++) {
                int row = k >= 6 ? (k ^ 1) : k;
                m[row * 8 + k] = 1;
            }
            return m;
        }
    }
    throw TddError(ErrorKind::Usage, "unknown gate kind");
}

void Circuit::validate() const {
    for (std::size_t gi = 0; gi < gates.size(); gi++) {
        const Gate &g = gates[gi];
        std::string where = "gate " + std::to_string(gi) + " (" + gate_kind_name(g.kind) + ")";
        if (g.qubits.size() != gate_arity(g.kind)) {
            throw TddError(ErrorKind::Usage, where + ": wrong number of qubits");
        }
        if (g.params.size() != gate_param_count(g.kind)) {
            throw TddError(ErrorKind::Usage, where + ": wrong number of parameters");
        }
        std::set<std::uint32_t> seen;
        for (auto q : g.qubits) {
            if (q >= n_qubits) {
                throw TddError(ErrorKind::Usage, where + ": qubit " + std::to_string(q) + " out of range");
            }
            if (!seen.insert(q).second) {
                throw TddError(ErrorKind::Usage, where + ": repeated qubit " + std::to_string(q));
            }
        }
        for (double a : g.params) {
            if (!std::isfinite(a)) {
                throw TddError(ErrorKind::NumericDomain, where + ": non-finite angle");
            }
        }
    }
}

std::size_t Circuit::crossing_count(std::uint32_t boundary) const {
    std::size_t count = 0;
    for (const auto &g : gates) {
        bool top = false, bottom = false;
        for (auto q : g.qubits) {
            (q < boundary ? top : bottom) = true;
        }
        count += top && bottom;
    }
    return count;
}

Circuit load_qasm(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw TddError(ErrorKind::Io, "cannot open " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    std::string name = path;
    if (auto slash = name.find_last_of('/'); slash != std::string::npos) {
        name = name.substr(slash + 1);
    }
    if (name.size() > 5 && name.ends_with(".qasm")) {
        name.resize(name.size() - 5);
    }
    return parse_qasm(buf.str(), name);
}

std::string to_qasm(const Circuit &c) {
    std::ostringstream out;
    out.precision(17);
    out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" << c.n_qubits << "];\n";
    for (const auto &g : c.gates) {
        out << gate_kind_name(g.kind);
        if (!g.params.empty()) {
            out << "(";
            for (std::size_t k = 0; k < g.params.size(); k++) {
                out << (k ? "," : "") << g.params[k];
            }
            out << ")";
        }
        for (std::size_t k = 0; k < g.qubits.size(); k++) {
            out << (k ? "," : " ") << "q[" << g.qubits[k] << "]";
        }
        out << ";\n";
    }
    return out.str();
}

}  // namespace tdd
