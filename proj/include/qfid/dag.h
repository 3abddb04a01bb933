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

#ifndef QFID_DAG_H
#define QFID_DAG_H

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qfid/circuit.h"

namespace qfid {

struct DagNode {
    uint32_t op_id;
    OpKind kind;
    std::vector<uint32_t> qubits;
    std::vector<double> params;
};

/// Directed dependency edge between node indices, carried by one qubit.
struct DagEdge {
    uint32_t src;
    uint32_t dst;
    uint32_t qubit;

    bool operator==(const DagEdge &) const = default;
};

enum class DegreeMode {
    IN,
    OUT,
    TOTAL,
};

/// Gate dependency multigraph: one node per non-barrier operation, and for
/// every qubit an edge between each pair of consecutive operations on it.
/// Two gates sharing k qubits consecutively are joined by k parallel edges.
///
/// Node indices follow op order, which is also a topological order.
class GateDag {
   public:
    GateDag() = default;

    std::size_t num_nodes() const {
        return nodes_.size();
    }
    std::size_t num_edges() const {
        return edges_.size();
    }
    const std::vector<DagNode> &nodes() const {
        return nodes_;
    }
    const std::vector<DagEdge> &edges() const {
        return edges_;
    }
    /// Edge indices leaving / entering a node.
    const std::vector<uint32_t> &out_edges(uint32_t node) const {
        return out_[node];
    }
    const std::vector<uint32_t> &in_edges(uint32_t node) const {
        return in_[node];
    }

    std::size_t in_degree(uint32_t node) const {
        return in_[node].size();
    }
    std::size_t out_degree(uint32_t node) const {
        return out_[node].size();
    }
    std::size_t degree(uint32_t node, DegreeMode mode) const;

    /// Kahn topological sort. Empty if the graph has a cycle (never happens for
    /// graphs built from circuits).
    std::vector<uint32_t> topological_order() const;

    /// Longest path (in edges) ending at each node.
    const std::vector<std::size_t> &longest_to() const {
        return longest_to_;
    }
    /// Longest path (in edges) starting at each node.
    const std::vector<std::size_t> &longest_from() const {
        return longest_from_;
    }
    std::size_t longest_path() const {
        return longest_path_;
    }

    std::string to_dot() const;

    /// Builds a graph from explicit nodes and edges. Edges must point forward in
    /// node order (src < dst); throws std::invalid_argument otherwise.
    static GateDag from_edges(std::vector<DagNode> nodes, std::vector<DagEdge> edges);

   private:
    std::vector<DagNode> nodes_;
    std::vector<DagEdge> edges_;
    std::vector<std::vector<uint32_t>> out_;
    std::vector<std::vector<uint32_t>> in_;
    std::vector<std::size_t> longest_to_;
    std::vector<std::size_t> longest_from_;
    std::size_t longest_path_ = 0;

    void finalize();
};

/// Measures are nodes; barriers are transparent (the operations on either side
/// of a barrier on a qubit are linked directly through that qubit).
GateDag build_dag(const Circuit &c);

/// degree -> number of nodes with that degree. Counts sum to num_nodes.
std::map<std::size_t, std::size_t> degree_histogram(const GateDag &dag, DegreeMode mode);

std::size_t longest_path_len(const GateDag &dag);

}  // namespace qfid

#endif
