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

#ifndef QFID_DEFORMATION_H
#define QFID_DEFORMATION_H

#include <cstddef>

#include "qfid/dag.h"

namespace qfid {

/// Structural deformation between a logical gate graph and its transpiled
/// counterpart.
struct DeformationReport {
    /// Total-variation distance between total-degree distributions, in [0, 1].
    double delta_deg = 0;
    /// Relative growth of the longest dependency chain.
    double delta_path = 0;
    /// Relative growth of edge density |E|/|V|.
    double delta_conn = 0;
    /// Set when the logical graph has no edges and the absolute rule applied.
    bool path_degenerate = false;
    bool conn_degenerate = false;

    struct Raw {
        std::size_t nodes0 = 0;
        std::size_t edges0 = 0;
        std::size_t nodes_t = 0;
        std::size_t edges_t = 0;
        std::size_t depth0 = 0;
        std::size_t depth_t = 0;
        std::size_t longest0 = 0;
        std::size_t longest_t = 0;
    } raw;
};

/// 1/2 sum_d |p0(d) - pt(d)| over total degree. Throws EmptyGraphError.
double delta_deg(const GateDag &g0, const GateDag &gt);

struct RelativeChange {
    double value;
    bool degenerate;
};

/// (L_t - L_0) / L_0 on longest-path length in edges. When L_0 = 0 the value
/// is L_t (absolute growth) and `degenerate` is set.
RelativeChange delta_path(const GateDag &g0, const GateDag &gt);

/// (|E_t|/|V_t|) / (|E_0|/|V_0|) - 1. When |E_0| = 0 the value is |E_t|/|V_t|
/// and `degenerate` is set. Throws EmptyGraphError if either graph has no
/// nodes.
RelativeChange delta_conn(const GateDag &g0, const GateDag &gt);

/// All three metrics plus raw statistics. Depths are supplied by the caller
/// because they are circuit (not graph) properties.
DeformationReport measure_deformation(
    const GateDag &g0, const GateDag &gt, std::size_t depth0 = 0, std::size_t depth_t = 0);

}  // namespace qfid

#endif
