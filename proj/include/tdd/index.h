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

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>

namespace tdd {

/// A tensor index attached to a circuit wire: `position` counts wire segments
/// left to right on `qubit`.
struct IndexLabel {
    std::uint32_t qubit = 0;
    std::uint32_t position = 0;

    auto operator<=>(const IndexLabel &) const = default;
    bool operator==(const IndexLabel &) const = default;

    std::string str() const;
};

/// Positions at or above this value are never produced by wire scanning; they
/// name bond indices introduced by cutting a CNOT.
inline constexpr std::uint32_t kBondPositionBase = 1u << 31;
/// Position of the canonical output index used when comparing functionalities.
inline constexpr std::uint32_t kOutputPosition = 0xFFFFFFFFu;

/// Variable order of a decision diagram: lexicographic on (qubit, position),
/// optionally with the qubit component reversed.
using Level = std::uint64_t;
inline constexpr Level kTerminalLevel = ~Level{0};

class IndexOrder {
   public:
    IndexOrder() = default;
    IndexOrder(std::uint32_t n_qubits, bool reverse_qubits);

    Level level(IndexLabel label) const;
    IndexLabel label(Level level) const;

    bool reversed() const {
        return reverse_;
    }
    std::uint32_t n_qubits() const {
        return n_qubits_;
    }
    bool operator==(const IndexOrder &) const = default;

   private:
    std::uint32_t n_qubits_ = 0;
    bool reverse_ = false;
};

using Assignment = std::map<IndexLabel, std::uint8_t>;

}  // namespace tdd

template <>
struct std::hash<tdd::IndexLabel> {
    std::size_t operator()(const tdd::IndexLabel &l) const noexcept {
        return std::hash<std::uint64_t>{}((std::uint64_t{l.qubit} << 32) | l.position);
    }
};
