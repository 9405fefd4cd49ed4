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
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "tdd/index.h"
#include "tdd/numerics.h"

namespace tdd {

/// Largest rank a dense tensor may have. Dense tensors are a verification
/// oracle and are not meant to scale.
inline constexpr std::size_t kMaxDenseRank = 26;

/// Brute-force tensor over Boolean indices.
///
/// Indices are kept sorted lexicographically; the value of an assignment is
/// stored at the integer whose bits are the index values in list order, the
/// first index being the most significant bit.
class DenseTensor {
   public:
    DenseTensor();
    DenseTensor(std::vector<IndexLabel> indices, std::vector<Weight> values);

    static DenseTensor scalar(Weight c);
    static DenseTensor zeros(std::vector<IndexLabel> indices);
    /// Builds a tensor by evaluating `fn` on every assignment. `indices` need not be sorted.
    static DenseTensor from_function(std::vector<IndexLabel> indices, const std::function<Weight(const Assignment &)> &fn);

    const std::vector<IndexLabel> &indices() const {
        return indices_;
    }
    const std::vector<Weight> &values() const {
        return values_;
    }
    std::size_t rank() const {
        return indices_.size();
    }
    bool has_index(IndexLabel x) const;
    std::size_t slot_of(IndexLabel x) const;

    Weight at(const Assignment &a) const;
    Weight &operator[](std::size_t flat) {
        return values_[flat];
    }
    Weight operator[](std::size_t flat) const {
        return values_[flat];
    }

    /// Same labels, values tested with `weights_equal`.
    bool approx_equal(const DenseTensor &other, const ToleranceConfig &tol) const;
    /// Maximum elementwise deviation; throws if the index lists differ.
    double max_deviation(const DenseTensor &other) const;

   private:
    std::vector<IndexLabel> indices_;
    std::vector<Weight> values_;
};

DenseTensor slice(const DenseTensor &phi, IndexLabel x, int c);

/// Sums products over `var`. Labels shared by both operands but not in `var`
/// are identified (diagonal product). Labels of `var` absent from both
/// operands contribute a factor of 2 each.
DenseTensor contract_dense(const DenseTensor &gamma, const DenseTensor &xi, std::span<const IndexLabel> var);

double max_norm(const DenseTensor &phi);

/// First assignment (in the lexicographic order induced by `order`) whose
/// magnitude is within eps of the maximum norm.
Assignment pivot(const DenseTensor &phi, const ToleranceConfig &tol, const IndexOrder &order = {});

struct Normalized {
    Weight p;
    DenseTensor normal;
};
Normalized normalize_tensor(const DenseTensor &phi, const ToleranceConfig &tol, const IndexOrder &order = {});

bool is_essential(const DenseTensor &phi, IndexLabel x, const ToleranceConfig &tol);

/// Contracts a whole network by a left fold, summing each non-open label when
/// its last holder is merged. `summed` lists labels that may occur only once
/// and are still summed out.
DenseTensor network_to_dense(std::span<const DenseTensor> net, std::span<const IndexLabel> open,
                             std::span<const IndexLabel> summed = {});

}  // namespace tdd
