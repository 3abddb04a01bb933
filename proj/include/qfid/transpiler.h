// Copyright 2026 The qfid Authors
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

#ifndef QFID_TRANSPILER_H
#define QFID_TRANSPILER_H

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qfid/circuit.h"

namespace qfid {

/// Undirected physical connectivity. Edges are stored normalized (a < b),
/// sorted and deduplicated.
class CouplingMap {
   public:
    CouplingMap() = default;
    /// Throws CouplingMapError on self-pairs or out-of-range endpoints.
    CouplingMap(uint32_t num_physical_qubits, std::vector<std::pair<uint32_t, uint32_t>> edges);

    static CouplingMap linear(uint32_t n);
    /// Falls back to linear below 3 qubits.
    static CouplingMap ring(uint32_t n);
    static CouplingMap grid(uint32_t rows, uint32_t cols);
    /// 27-qubit heavy-hex patch (Falcon-class layout).
    static CouplingMap heavy_hex27();
    /// {"n": int, "edges": [[a,b], ...]}
    static CouplingMap from_json(std::string_view text);
    std::string to_json() const;

    uint32_t num_physical_qubits() const {
        return n_;
    }
    const std::vector<std::pair<uint32_t, uint32_t>> &edges() const {
        return edges_;
    }
    /// Neighbours of each physical qubit, ascending.
    const std::vector<std::vector<uint32_t>> &neighbors() const {
        return adj_;
    }
    bool adjacent(uint32_t a, uint32_t b) const;
    /// BFS hop distances from `source`; UINT32_MAX when unreachable.
    std::vector<uint32_t> distances_from(uint32_t source) const;

   private:
    uint32_t n_ = 0;
    std::vector<std::pair<uint32_t, uint32_t>> edges_;
    std::vector<std::vector<uint32_t>> adj_;
};

/// Resolves a CLI coupling spec: linear | ring | grid:RxC | heavyhex27 |
/// @file.json. linear and ring are sized to `num_logical_qubits`.
CouplingMap coupling_from_spec(std::string_view spec, uint32_t num_logical_qubits);

struct TranspileResult {
    /// Over physical qubits, in basis {rz, sx, x, cx} plus measures and barriers.
    Circuit circuit;
    /// logical -> physical.
    std::vector<uint32_t> initial_layout;
    std::vector<uint32_t> final_layout;
    std::size_t depth = 0;
    std::size_t swap_count = 0;
};

/// Rewrites into {rz, sx, x, cx} plus measures/barriers, then merges runs of
/// rz on a qubit and drops rz whose angle is 0 mod 2pi. Exact up to global
/// phase.
Circuit decompose_to_basis(const Circuit &c);

/// Greedy router. Identity initial layout; for each two-qubit gate on
/// non-adjacent physical qubits the first operand walks a shortest path toward
/// the second, one SWAP (3 cx) per hop. Among shortest paths the next hop is
/// always the lowest-index neighbour, so routing is fully determined by the
/// circuit and map; `seed` is accepted for interface stability.
///
/// Throws LayoutError, DisconnectedMapError, UnsupportedGateError (3+ qubit
/// gates).
TranspileResult route(const Circuit &c, const CouplingMap &map, uint64_t seed = 0);

/// decompose_to_basis followed by route.
TranspileResult transpile(const Circuit &c, const CouplingMap &map, uint64_t seed = 0);

/// Relabels the touched qubits of `c` to 0..m-1 in ascending order. Clbits are
/// unchanged.
Circuit compact_qubits(const Circuit &c);

}  // namespace qfid

#endif
