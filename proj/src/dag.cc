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

#include "qfid/dag.h"

#include <algorithm>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "qfid/qasm.h"

namespace qfid {

std::size_t GateDag::degree(uint32_t node, DegreeMode mode) const {
    switch (mode) {
        case DegreeMode::IN:
            return in_degree(node);
        case DegreeMode::OUT:
            return out_degree(node);
        case DegreeMode::TOTAL:
            break;
    }
    return in_degree(node) + out_degree(node);
}

std::vector<uint32_t> GateDag::topological_order() const {
    std::vector<std::size_t> pending(nodes_.size());
    std::vector<uint32_t> ready;
    for (uint32_t v = 0; v < nodes_.size(); v++) {
        pending[v] = in_[v].size();
        if (pending[v] == 0) {
            ready.push_back(v);
        }
    }
    std::vector<uint32_t> order;
    order.reserve(nodes_.size());
    // Smallest ready index first keeps the order deterministic.
    std::make_heap(ready.begin(), ready.end(), std::greater<>());
    while (!ready.empty()) {
        std::pop_heap(ready.begin(), ready.end(), std::greater<>());
        uint32_t v = ready.back();
        ready.pop_back();
        order.push_back(v);
        for (uint32_t e : out_[v]) {
            uint32_t w = edges_[e].dst;
            if (--pending[w] == 0) {
                ready.push_back(w);
                std::push_heap(ready.begin(), ready.end(), std::greater<>());
            }
        }
    }
    if (order.size() != nodes_.size()) {
        return {};
    }
    return order;
}

void GateDag::finalize() {
    std::size_t n = nodes_.size();
    out_.assign(n, {});
    in_.assign(n, {});
    for (uint32_t e = 0; e < edges_.size(); e++) {
        out_[edges_[e].src].push_back(e);
        in_[edges_[e].dst].push_back(e);
    }
    // src < dst for every edge, so node order is topological.
    longest_to_.assign(n, 0);
    longest_from_.assign(n, 0);
    for (uint32_t v = 0; v < n; v++) {
        for (uint32_t e : in_[v]) {
            longest_to_[v] = std::max(longest_to_[v], longest_to_[edges_[e].src] + 1);
        }
    }
    for (uint32_t v = static_cast<uint32_t>(n); v-- > 0;) {
        for (uint32_t e : out_[v]) {
            longest_from_[v] = std::max(longest_from_[v], longest_from_[edges_[e].dst] + 1);
        }
    }
    longest_path_ = 0;
    for (std::size_t v = 0; v < n; v++) {
        longest_path_ = std::max(longest_path_, longest_to_[v]);
    }
}

GateDag GateDag::from_edges(std::vector<DagNode> nodes, std::vector<DagEdge> edges) {
    for (const auto &e : edges) {
        if (e.src >= e.dst || e.dst >= nodes.size()) {
            throw std::invalid_argument("GateDag edges must point forward within range");
        }
    }
    GateDag d;
    d.nodes_ = std::move(nodes);
    d.edges_ = std::move(edges);
    d.finalize();
    return d;
}

GateDag build_dag(const Circuit &c) {
    std::vector<DagNode> nodes;
    std::vector<DagEdge> edges;
    std::vector<std::optional<uint32_t>> last(c.num_qubits);
    for (const auto &op : c.ops) {
        if (op.kind == OpKind::BARRIER) {
            continue;
        }
        uint32_t v = static_cast<uint32_t>(nodes.size());
        nodes.push_back(DagNode{op.id, op.kind, op.qubits, op.params});
        for (uint32_t q : op.qubits) {
            if (last[q].has_value()) {
                edges.push_back(DagEdge{*last[q], v, q});
            }
            last[q] = v;
        }
    }
    return GateDag::from_edges(std::move(nodes), std::move(edges));
}

std::map<std::size_t, std::size_t> degree_histogram(const GateDag &dag, DegreeMode mode) {
    std::map<std::size_t, std::size_t> hist;
    for (uint32_t v = 0; v < dag.num_nodes(); v++) {
        hist[dag.degree(v, mode)]++;
    }
    return hist;
}

std::size_t longest_path_len(const GateDag &dag) {
    return dag.longest_path();
}

std::string GateDag::to_dot() const {
    std::ostringstream out;
    out << "digraph gates {\n";
    for (std::size_t v = 0; v < nodes_.size(); v++) {
        const auto &node = nodes_[v];
        out << "  n" << v << " [label=\"" << op_info(node.kind).name;
        if (!node.params.empty()) {
            out << "(";
            for (std::size_t k = 0; k < node.params.size(); k++) {
                out << (k ? "," : "") << format_double(node.params[k]);
            }
            out << ")";
        }
        for (std::size_t k = 0; k < node.qubits.size(); k++) {
            out << (k ? "," : " ") << "q" << node.qubits[k];
        }
        out << "\"];\n";
    }
    for (const auto &e : edges_) {
        out << "  n" << e.src << " -> n" << e.dst << " [label=\"q" << e.qubit << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace qfid
