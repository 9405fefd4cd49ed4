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

#include "tdd/numerics.h"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "tdd/error.h"

namespace tdd {

const char *error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NumericDomain:
            return "numeric-domain";
        case ErrorKind::IndexNotFound:
            return "index-not-found";
        case ErrorKind::ZeroTensor:
            return "zero-tensor";
        case ErrorKind::RankOverflow:
            return "rank-overflow";
        case ErrorKind::NetworkShape:
            return "network-shape";
        case ErrorKind::Ordering:
            return "ordering";
        case ErrorKind::Usage:
            return "usage";
        case ErrorKind::Syntax:
            return "syntax";
        case ErrorKind::UnsupportedFeature:
            return "unsupported-feature";
        case ErrorKind::PlanConsistency:
            return "plan-consistency";
        case ErrorKind::Timeout:
            return "timeout";
        case ErrorKind::Io:
            return "io";
    }
    return "unknown";
}

TddError::TddError(ErrorKind kind, const std::string &message)
    : std::runtime_error(std::string(error_kind_name(kind)) + " error: " + message), kind_(kind) {
}

ToleranceConfig::ToleranceConfig() : ToleranceConfig(1e-10, 1e-9) {
}

ToleranceConfig::ToleranceConfig(double eps, double norm_eps) : eps_(eps), norm_eps_(norm_eps) {
    if (!(eps > 0) || !std::isfinite(eps)) {
        throw TddError(ErrorKind::NumericDomain, "eps must be a positive finite number");
    }
    if (!(norm_eps >= eps) || !std::isfinite(norm_eps)) {
        throw TddError(ErrorKind::NumericDomain, "norm_eps must be finite and at least eps");
    }
    inv_eps_ = 1.0 / eps;
}

double ToleranceConfig::canonical_component(double x) const {
    if (!std::isfinite(x)) {
        throw TddError(ErrorKind::NumericDomain, "non-finite weight component");
    }
    double r = std::round(x * inv_eps_) / inv_eps_;
    if (r == 0) {
        return 0.0;
    }
    return r;
}

Weight ToleranceConfig::canonical(Weight w) const {
    return {canonical_component(w.real()), canonical_component(w.imag())};
}

bool ToleranceConfig::weights_equal(Weight a, Weight b) const {
    return same_bits(canonical(a), canonical(b));
}

bool ToleranceConfig::is_zero(Weight w) const {
    return weights_equal(w, Weight{0, 0});
}

bool ToleranceConfig::is_one(Weight w) const {
    return weights_equal(w, Weight{1, 0});
}

std::size_t hash_weight(Weight w) {
    auto a = std::bit_cast<std::uint64_t>(w.real());
    auto b = std::bit_cast<std::uint64_t>(w.imag());
    std::uint64_t h = a * 0x9E3779B97F4A7C15ULL;
    h ^= b + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
}

}  // namespace tdd
