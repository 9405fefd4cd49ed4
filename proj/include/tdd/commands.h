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

#include <iosfwd>
#include <string>
#include <vector>

#include "tdd/circuit.h"
#include "tdd/planner.h"
#include "tdd/report.h"

namespace tdd {

struct RunOptions {
    PartitionConfig partition;
    bool inverse_order = false;
    /// Hyper-edge indices for diagonal wires; off gives every wire segment its
    /// own index.
    bool hyper = true;
    ToleranceConfig tol;
    bool verify = false;
    double timeout_s = 3600;
    /// Contract every input with |0> after the plan.
    bool zero_state = false;
};

/// Parses nothing; builds, executes and optionally verifies `c`. Timeouts
/// are recorded in the report rather than thrown.
RunReport run_circuit(const Circuit &c, const RunOptions &opts);

/// Functionality TDD of `c` in `store`, whose order must cover c.n_qubits.
Tdd circuit_functionality(const Circuit &c, NodeStore &store, const RunOptions &opts);

/// <out|U|in>; character q of each bit string is qubit q.
Weight amplitude(const Circuit &c, const std::string &in, const std::string &out, const RunOptions &opts);

struct EquivResult {
    bool equivalent = false;
    Weight weight_a;
    Weight weight_b;
};
EquivResult check_equivalence(const Circuit &a, const Circuit &b, bool up_to_phase, const RunOptions &opts);

/// DOT text for the plan result of `c`.
std::string circuit_dot(const Circuit &c, const RunOptions &opts);

/// Runs every *.qasm file of `dir` (sorted by name) under each scheme.
std::vector<RunReport> run_bench(const std::string &dir, const std::vector<PartitionConfig> &schemes,
                                 const RunOptions &opts, unsigned jobs);

/// Entry point of the `tdd` tool. Returns the process exit code: 0 on success,
/// 1 when a verification or equivalence check fails, 2 on errors.
int cli_main(int argc, char **argv, std::ostream &out, std::ostream &err);

}  // namespace tdd
