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
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "tdd/node_store.h"

namespace tdd {

struct VerifyOutcome {
    double max_deviation = 0;
    bool passed = true;

    bool operator==(const VerifyOutcome &) const = default;
};

/// One circuit run. Node counts refer to the diagram produced by the plan,
/// before any output renaming.
struct RunReport {
    std::string circuit;
    std::uint32_t n_qubits = 0;
    std::uint64_t gate_count = 0;
    std::string scheme = "seq";
    std::uint32_t k = 0;
    std::uint32_t k1 = 0;
    std::uint32_t k2 = 0;
    bool inverse_order = false;
    std::uint64_t parts = 0;
    std::uint64_t steps = 0;
    double elapsed_ms = 0;
    /// Seconds with two decimals, or ">T" when the run hit the timeout T.
    std::string time;
    bool timed_out = false;
    std::uint64_t final_nodes = 0;
    std::uint64_t peak_nodes = 0;
    StoreStats stats;
    std::optional<VerifyOutcome> verify;
    std::string error;

    bool operator==(const RunReport &) const = default;
};

void to_json(nlohmann::json &j, const StoreStats &s);
void from_json(const nlohmann::json &j, StoreStats &s);
void to_json(nlohmann::json &j, const RunReport &r);
void from_json(const nlohmann::json &j, RunReport &r);

}  // namespace tdd
