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

#include <algorithm>
#include <set>

#include "tdd/error.h"
#include "tdd/planner.h"

namespace tdd {

namespace {

// Where the tensors of one gate go: `whole` for an uncut gate, otherwise the
// parts of the COPY and XOR halves.
struct Placement {
    std::size_t whole = 0;
    std::size_t copy = 0;
    std::size_t xor_half = 0;
    bool cut = false;
};

struct Builder {
    std::vector<Part> parts;
    std::vector<Placement> placement;
    std::set<std::size_t> cut_gates;

    std::size_t add_part(Region r, std::size_t segment) {
        parts.push_back(Part{r, segment, {}});
        return parts.size() - 1;
    }

    Partitioned finish(const Circuit &c, NetworkOptions opts, std::size_t segments) {
        opts.cut_gates = cut_gates;
        Partitioned out;
        out.network = allocate_indices(c, opts);
        for (std::size_t gi = 0; gi < c.gates.size(); gi++) {
            for (std::size_t t : out.network.by_gate[gi]) {
                const auto &pl = placement[gi];
                std::size_t p = pl.whole;
                if (pl.cut) {
                    p = out.network.tensors[t].role == TensorRole::Copy ? pl.copy : pl.xor_half;
                }
                parts[p].tensors.push_back(t);
            }
        }
        out.parts = std::move(parts);
        out.segments = segments;
        return out;
    }
};

bool is_top(std::uint32_t q, std::uint32_t boundary) {
    return q < boundary;
}

bool crosses(const Gate &g, std::uint32_t boundary) {
    bool top = false, bottom = false;
    for (auto q : g.qubits) {
        (is_top(q, boundary) ? top : bottom) = true;
    }
    return top && bottom;
}

// Places a gate that lies on one side, or splits a crossing gate between the
// top part `a` and the bottom part `b`.
void place_sides(Builder &b, std::size_t gi, const Gate &g, std::uint32_t boundary, std::size_t pa, std::size_t pb) {
    auto side = [&](std::uint32_t q) { return is_top(q, boundary) ? pa : pb; };
    Placement &pl = b.placement[gi];
    if (crosses(g, boundary) && g.kind == GateKind::CX) {
        pl.cut = true;
        pl.copy = side(g.qubits[0]);
        pl.xor_half = side(g.qubits[1]);
        b.cut_gates.insert(gi);
    } else {
        pl.whole = side(g.qubits[0]);
    }
}

}  // namespace

const char *scheme_name(Scheme s) {
    switch (s) {
        case Scheme::Sequential:
            return "seq";
        case Scheme::SchemeI:
            return "p1";
        case Scheme::SchemeII:
            return "p2";
    }
    return "?";
}

bool scheme_from_name(const std::string &name, Scheme *out) {
    for (Scheme s : {Scheme::Sequential, Scheme::SchemeI, Scheme::SchemeII}) {
        if (name == scheme_name(s)) {
            *out = s;
            return true;
        }
    }
    return false;
}

PartitionConfig PartitionConfig::resolved(std::uint32_t n_qubits) const {
    PartitionConfig r = *this;
    std::uint32_t half = n_qubits / 2;
    if (r.k == 0) {
        r.k = std::max<std::uint32_t>(half, 1);
    }
    if (r.k1 == 0) {
        r.k1 = std::max<std::uint32_t>(half, 1);
    }
    if (r.k2 == 0) {
        r.k2 = std::max<std::uint32_t>(half + 1, 2);
    }
    if (r.boundary == 0) {
        r.boundary = half;
    }
    if (r.k2 < 2) {
        throw TddError(ErrorKind::Usage, "k2 must be at least 2");
    }
    return r;
}

Partitioned partition_sequential(const Circuit &c, const NetworkOptions &opts) {
    Builder b;
    b.add_part(Region::A, 0);
    b.placement.assign(c.gates.size(), Placement{});
    return b.finish(c, opts, 1);
}

Partitioned partition_scheme1(const Circuit &c, const PartitionConfig &cfg, const NetworkOptions &opts) {
    PartitionConfig r = cfg.resolved(c.n_qubits);
    Builder b;
    b.placement.resize(c.gates.size());
    std::size_t segment = 0;
    std::size_t pa = b.add_part(Region::A, 0);
    std::size_t pb = b.add_part(Region::B, 0);
    std::uint32_t counter = 0;
    for (std::size_t gi = 0; gi < c.gates.size(); gi++) {
        const Gate &g = c.gates[gi];
        if (crosses(g, r.boundary)) {
            if (counter == r.k) {
                segment++;
                pa = b.add_part(Region::A, segment);
                pb = b.add_part(Region::B, segment);
                counter = 0;
            }
            counter++;
        }
        place_sides(b, gi, g, r.boundary, pa, pb);
    }
    return b.finish(c, opts, segment + 1);
}

Partitioned partition_scheme2(const Circuit &c, const PartitionConfig &cfg, const NetworkOptions &opts) {
    PartitionConfig r = cfg.resolved(c.n_qubits);
    Builder b;
    b.placement.resize(c.gates.size());
    std::size_t segment = 0;
    std::size_t pa = b.add_part(Region::A, 0);
    std::size_t pb = b.add_part(Region::B, 0);
    std::optional<std::size_t> pc;
    std::set<std::uint32_t> c_qubits;
    std::uint32_t counter = 0;
    auto new_segment = [&] {
        segment++;
        pa = b.add_part(Region::A, segment);
        pb = b.add_part(Region::B, segment);
        pc.reset();
        c_qubits.clear();
        counter = 0;
    };
    for (std::size_t gi = 0; gi < c.gates.size(); gi++) {
        const Gate &g = c.gates[gi];
        bool inside_c = !c_qubits.empty() &&
                        std::all_of(g.qubits.begin(), g.qubits.end(), [&](auto q) { return c_qubits.count(q); });
        if (inside_c) {
            b.placement[gi].whole = *pc;
            continue;
        }
        if (!crosses(g, r.boundary)) {
            place_sides(b, gi, g, r.boundary, pa, pb);
            continue;
        }
        if (counter >= r.k1) {
            std::set<std::uint32_t> grown = c_qubits;
            grown.insert(g.qubits.begin(), g.qubits.end());
            if (grown.size() > r.k2) {
                new_segment();
            } else {
                if (!pc) {
                    pc = b.add_part(Region::C, segment);
                }
                c_qubits = std::move(grown);
                b.placement[gi].whole = *pc;
                if (c_qubits.size() == r.k2) {
                    new_segment();
                }
                continue;
            }
        }
        counter++;
        place_sides(b, gi, g, r.boundary, pa, pb);
    }
    // Parts are created A, B per segment and C on demand, so C already sits
    // after A and B of its segment.
    return b.finish(c, opts, segment + 1);
}

Partitioned partition(const Circuit &c, const PartitionConfig &cfg, const NetworkOptions &opts) {
    switch (cfg.scheme) {
        case Scheme::Sequential:
            return partition_sequential(c, opts);
        case Scheme::SchemeI:
            return partition_scheme1(c, cfg, opts);
        case Scheme::SchemeII:
            return partition_scheme2(c, cfg, opts);
    }
    throw TddError(ErrorKind::Usage, "unknown scheme");
}

}  // namespace tdd
