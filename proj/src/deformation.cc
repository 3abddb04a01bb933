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

#include "qfid/deformation.h"

#include <algorithm>
#include <cmath>

#include "qfid/error.h"

namespace qfid {

static void require_nonempty(const GateDag &g0, const GateDag &gt) {
    if (g0.num_nodes() == 0 || gt.num_nodes() == 0) {
        throw EmptyGraphError("deformation metrics need graphs with at least one node");
    }
}

double delta_deg(const GateDag &g0, const GateDag &gt) {
    require_nonempty(g0, gt);
    auto h0 = degree_histogram(g0, DegreeMode::TOTAL);
    auto ht = degree_histogram(gt, DegreeMode::TOTAL);
    double n0 = static_cast<double>(g0.num_nodes());
    double nt = static_cast<double>(gt.num_nodes());
    double total = 0;
    auto a = h0.begin();
    auto b = ht.begin();
    // Merge walk over the two sorted supports.
    while (a != h0.end() || b != ht.end()) {
        if (b == ht.end() || (a != h0.end() && a->first < b->first)) {
            total += a->second / n0;
            ++a;
        } else if (a == h0.end() || b->first < a->first) {
            total += b->second / nt;
            ++b;
        } else {
            total += std::abs(a->second / n0 - b->second / nt);
            ++a;
            ++b;
        }
    }
    return std::clamp(total / 2, 0.0, 1.0);
}

RelativeChange delta_path(const GateDag &g0, const GateDag &gt) {
    double l0 = static_cast<double>(g0.longest_path());
    double lt = static_cast<double>(gt.longest_path());
    if (l0 == 0) {
        return {lt, true};
    }
    return {(lt - l0) / l0, false};
}

RelativeChange delta_conn(const GateDag &g0, const GateDag &gt) {
    require_nonempty(g0, gt);
    double density_t = static_cast<double>(gt.num_edges()) / static_cast<double>(gt.num_nodes());
    if (g0.num_edges() == 0) {
        return {density_t, true};
    }
    double density0 = static_cast<double>(g0.num_edges()) / static_cast<double>(g0.num_nodes());
    return {density_t / density0 - 1, false};
}

DeformationReport measure_deformation(const GateDag &g0, const GateDag &gt, std::size_t depth0, std::size_t depth_t) {
    DeformationReport r;
    r.delta_deg = delta_deg(g0, gt);
    RelativeChange path = delta_path(g0, gt);
    RelativeChange conn = delta_conn(g0, gt);
    r.delta_path = path.value;
    r.path_degenerate = path.degenerate;
    r.delta_conn = conn.value;
    r.conn_degenerate = conn.degenerate;
    r.raw.nodes0 = g0.num_nodes();
    r.raw.edges0 = g0.num_edges();
    r.raw.nodes_t = gt.num_nodes();
    r.raw.edges_t = gt.num_edges();
    r.raw.depth0 = depth0;
    r.raw.depth_t = depth_t;
    r.raw.longest0 = g0.longest_path();
    r.raw.longest_t = gt.longest_path();
    return r;
}

}  // namespace qfid
