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

#include <complex>
#include <cstddef>

namespace tdd {

using Weight = std::complex<double>;

/// Tolerances used across the library.
///
/// `eps` is the pitch of the grid that weights are rounded onto before they are
/// compared or hashed. `norm_eps` is the looser tolerance used when comparing
/// a decision diagram against a brute-force dense oracle.
class ToleranceConfig {
   public:
    ToleranceConfig();
    ToleranceConfig(double eps, double norm_eps);

    double eps() const {
        return eps_;
    }
    double norm_eps() const {
        return norm_eps_;
    }

    /// Rounds both components to the nearest multiple of eps. Negative zero is
    /// folded into positive zero so that the bit pattern is a valid hash key.
    Weight canonical(Weight w) const;
    bool weights_equal(Weight a, Weight b) const;
    bool is_zero(Weight w) const;
    bool is_one(Weight w) const;

   private:
    double canonical_component(double x) const;

    double eps_;
    double norm_eps_;
    double inv_eps_;
};

/// Exact (bitwise) equality on canonical weights.
inline bool same_bits(Weight a, Weight b) {
    return a.real() == b.real() && a.imag() == b.imag();
}

/// Hash of a canonical weight.
std::size_t hash_weight(Weight w);

}  // namespace tdd
