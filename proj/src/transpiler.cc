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

#include "qfid/transpiler.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "qfid/error.h"

namespace qfid {

using std::numbers::pi;

// ---------------------------------------------------------------------------
// CouplingMap

CouplingMap::CouplingMap(uint32_t num_physical_qubits, std::vector<std::pair<uint32_t, uint32_t>> edges)
    : n_(num_physical_qubits) {
    for (auto [a, b] : edges) {
        if (a == b) {
            throw CouplingMapError("self-pair on qubit " + std::to_string(a));
        }
        if (a >= n_ || b >= n_) {
            throw CouplingMapError(
                "edge (" + std::to_string(a) + "," + std::to_string(b) + ") outside " + std::to_string(n_) +
                " qubits");
        }
        edges_.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    adj_.assign(n_, {});
    for (auto [a, b] : edges_) {
        adj_[a].push_back(b);
        adj_[b].push_back(a);
    }
    for (auto &nbrs : adj_) {
        std::sort(nbrs.begin(), nbrs.end());
    }
}

CouplingMap CouplingMap::linear(uint32_t n) {
    std::vector<std::pair<uint32_t, uint32_t>> e;
    for (uint32_t k = 0; k + 1 < n; k++) {
        e.emplace_back(k, k + 1);
    }
    return CouplingMap(n, std::move(e));
}

CouplingMap CouplingMap::ring(uint32_t n) {
    if (n < 3) {
        return linear(n);
    }
    std::vector<std::pair<uint32_t, uint32_t>> e;
    for (uint32_t k = 0; k < n; k++) {
        e.emplace_back(k, (k + 1) % n);
    }
    return CouplingMap(n, std::move(e));
}

CouplingMap CouplingMap::grid(uint32_t rows, uint32_t cols) {
    std::vector<std::pair<uint32_t, uint32_t>> e;
    for (uint32_t r = 0; r < rows; r++) {
        for (uint32_t c = 0; c < cols; c++) {
            uint32_t v = r * cols + c;
            if (c + 1 < cols) {
                e.emplace_back(v, v + 1);
            }
            if (r + 1 < rows) {
                e.emplace_back(v, v + cols);
            }
        }
    }
    return CouplingMap(rows * cols, std::move(e));
}

CouplingMap CouplingMap::heavy_hex27() {
    return CouplingMap(
        27,
        {{0, 1},   {1, 2},   {1, 4},   {2, 3},   {3, 5},   {4, 7},   {5, 8},   {6, 7},   {7, 10},  {8, 9},
         {8, 11},  {10, 12}, {11, 14}, {12, 13}, {12, 15}, {13, 14}, {14, 16}, {15, 18}, {16, 19}, {17, 18},
         {18, 21}, {19, 20}, {19, 22}, {21, 23}, {22, 25}, {23, 24}, {24, 25}, {25, 26}});
}

CouplingMap CouplingMap::from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &ex) {
        throw CouplingMapError(std::string("invalid JSON: ") + ex.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("edges") || !j["n"].is_number_unsigned() ||
        !j["edges"].is_array()) {
        throw CouplingMapError("expected {\"n\": int, \"edges\": [[a,b], ...]}");
    }
    uint64_t n = j["n"].get<uint64_t>();
    if (n == 0 || n > (1u << 16)) {
        throw CouplingMapError("n must be in [1, 65536]");
    }
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    for (const auto &e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
            throw CouplingMapError("each edge must be a pair of non-negative integers");
        }
        uint64_t a = e[0].get<uint64_t>(), b = e[1].get<uint64_t>();
        if (a >= n || b >= n) {
            throw CouplingMapError("edge endpoint out of range");
        }
        edges.emplace_back(static_cast<uint32_t>(a), static_cast<uint32_t>(b));
    }
    return CouplingMap(static_cast<uint32_t>(n), std::move(edges));
}

std::string CouplingMap::to_json() const {
    nlohmann::json j;
    j["n"] = n_;
    j["edges"] = nlohmann::json::array();
    for (auto [a, b] : edges_) {
        j["edges"].push_back({a, b});
    }
    return j.dump();
}

bool CouplingMap::adjacent(uint32_t a, uint32_t b) const {
    if (a >= n_ || b >= n_) {
        return false;
    }
    return std::binary_search(adj_[a].begin(), adj_[a].end(), b);
}

std::vector<uint32_t> CouplingMap::distances_from(uint32_t source) const {
    constexpr uint32_t INF = std::numeric_limits<uint32_t>::max();
    std::vector<uint32_t> dist(n_, INF);
    std::deque<uint32_t> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        uint32_t v = queue.front();
        queue.pop_front();
        for (uint32_t w : adj_[v]) {
            if (dist[w] == INF) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

CouplingMap coupling_from_spec(std::string_view spec, uint32_t num_logical_qubits) {
    if (spec == "linear") {
        return CouplingMap::linear(num_logical_qubits);
    }
    if (spec == "ring") {
        return CouplingMap::ring(num_logical_qubits);
    }
    if (spec == "heavyhex27") {
        return CouplingMap::heavy_hex27();
    }
    if (spec.starts_with("grid:")) {
        std::string_view dims = spec.substr(5);
        auto x = dims.find('x');
        uint32_t r = 0, c = 0;
        bool ok = x != std::string_view::npos;
        if (ok) {
            auto [p1, e1] = std::from_chars(dims.data(), dims.data() + x, r);
            auto [p2, e2] = std::from_chars(dims.data() + x + 1, dims.data() + dims.size(), c);
            ok = e1 == std::errc() && e2 == std::errc() && p1 == dims.data() + x &&
                 p2 == dims.data() + dims.size() && r > 0 && c > 0 && uint64_t{r} * c <= (1u << 16);
        }
        if (!ok) {
            throw CouplingMapError("grid spec must look like grid:RxC, got '" + std::string(spec) + "'");
        }
        return CouplingMap::grid(r, c);
    }
    if (spec.starts_with("@")) {
        std::string path(spec.substr(1));
        std::ifstream in(path);
        if (!in) {
            throw CouplingMapError("cannot read coupling map file '" + path + "'");
        }
        std::stringstream buf;
        buf << in.rdbuf();
        return CouplingMap::from_json(buf.str());
    }
    throw CouplingMapError("unknown coupling spec '" + std::string(spec) + "'");
}

// ---------------------------------------------------------------------------
// Basis decomposition

namespace {

class BasisWriter {
   public:
    explicit BasisWriter(Circuit &out) : out_(out) {
    }
    void rz(uint32_t q, double angle) {
        out_.append(OpKind::RZ, {q}, {angle});
    }
    void sx(uint32_t q) {
        out_.append(OpKind::SX, {q});
    }
    void x(uint32_t q) {
        out_.append(OpKind::X, {q});
    }
    void cx(uint32_t c, uint32_t t) {
        out_.append(OpKind::CX, {c, t});
    }
    void h(uint32_t q) {
        rz(q, pi / 2);
        sx(q);
        rz(q, pi / 2);
    }
    // u3(theta, phi, lambda) = rz(lambda) sx rz(theta + pi) sx rz(phi + pi), up to phase.
    void u3(uint32_t q, double theta, double phi, double lambda) {
        rz(q, lambda);
        sx(q);
        rz(q, theta + pi);
        sx(q);
        rz(q, phi + pi);
    }
    void ccx(uint32_t a, uint32_t b, uint32_t c) {
        h(c);
        cx(b, c);
        rz(c, -pi / 4);
        cx(a, c);
        rz(c, pi / 4);
        cx(b, c);
        rz(c, -pi / 4);
        cx(a, c);
        rz(b, pi / 4);
        rz(c, pi / 4);
        h(c);
        cx(a, b);
        rz(a, pi / 4);
        rz(b, -pi / 4);
        cx(a, b);
    }

   private:
    Circuit &out_;
};

double wrap_angle(double a) {
    double r = std::remainder(a, 2 * pi);
    if (r <= -pi) {
        r += 2 * pi;
    }
    return r;
}

constexpr double ZERO_ANGLE_TOL = 1e-12;

Circuit merge_rotations(const Circuit &c) {
    Circuit out(c.num_qubits, c.num_clbits);
    std::vector<std::optional<double>> pending(c.num_qubits);
    auto flush = [&](uint32_t q) {
        if (pending[q].has_value()) {
            double a = wrap_angle(*pending[q]);
            if (std::abs(a) > ZERO_ANGLE_TOL) {
                out.append(OpKind::RZ, {q}, {a});
            }
            pending[q].reset();
        }
    };
    for (const auto &op : c.ops) {
        if (op.kind == OpKind::RZ) {
            uint32_t q = op.qubits[0];
            pending[q] = pending[q].value_or(0.0) + op.params[0];
            continue;
        }
        for (uint32_t q : op.qubits) {
            flush(q);
        }
        out.append_op(op);
    }
    for (uint32_t q = 0; q < c.num_qubits; q++) {
        flush(q);
    }
    return out;
}

}  // namespace

Circuit decompose_to_basis(const Circuit &c) {
    Circuit raw(c.num_qubits, c.num_clbits);
    BasisWriter w(raw);
    for (const auto &op : c.ops) {
        const auto &q = op.qubits;
        const auto &p = op.params;
        switch (op.kind) {
            case OpKind::U:
            case OpKind::U3:
                w.u3(q[0], p[0], p[1], p[2]);
                break;
            case OpKind::U2:
                w.u3(q[0], pi / 2, p[0], p[1]);
                break;
            case OpKind::U1:
            case OpKind::RZ:
                w.rz(q[0], p[0]);
                break;
            case OpKind::RX:
                w.u3(q[0], p[0], -pi / 2, pi / 2);
                break;
            case OpKind::RY:
                w.u3(q[0], p[0], 0, 0);
                break;
            case OpKind::X:
                w.x(q[0]);
                break;
            case OpKind::Y:
                w.rz(q[0], pi);
                w.x(q[0]);
                break;
            case OpKind::Z:
                w.rz(q[0], pi);
                break;
            case OpKind::H:
                w.h(q[0]);
                break;
            case OpKind::S:
                w.rz(q[0], pi / 2);
                break;
            case OpKind::SDG:
                w.rz(q[0], -pi / 2);
                break;
            case OpKind::T:
                w.rz(q[0], pi / 4);
                break;
            case OpKind::TDG:
                w.rz(q[0], -pi / 4);
                break;
            case OpKind::SX:
                w.sx(q[0]);
                break;
            case OpKind::CX:
                w.cx(q[0], q[1]);
                break;
            case OpKind::CZ:
                w.h(q[1]);
                w.cx(q[0], q[1]);
                w.h(q[1]);
                break;
            case OpKind::SWAP:
                w.cx(q[0], q[1]);
                w.cx(q[1], q[0]);
                w.cx(q[0], q[1]);
                break;
            case OpKind::CCX:
                w.ccx(q[0], q[1], q[2]);
                break;
            case OpKind::MEASURE:
            case OpKind::BARRIER:
                raw.append_op(op);
                break;
        }
    }
    return merge_rotations(raw);
}

// ---------------------------------------------------------------------------
// Routing

TranspileResult route(const Circuit &c, const CouplingMap &map, uint64_t seed) {
    (void)seed;
    const uint32_t n_phys = map.num_physical_qubits();
    if (c.num_qubits > n_phys) {
        throw LayoutError(
            "circuit needs " + std::to_string(c.num_qubits) + " qubits but the coupling map has " +
            std::to_string(n_phys));
    }
    TranspileResult result;
    result.circuit = Circuit(n_phys, c.num_clbits);
    std::vector<uint32_t> log_to_phys(c.num_qubits);
    std::vector<std::optional<uint32_t>> phys_to_log(n_phys);
    for (uint32_t q = 0; q < c.num_qubits; q++) {
        log_to_phys[q] = q;
        phys_to_log[q] = q;
    }
    result.initial_layout = log_to_phys;
    Circuit &out = result.circuit;

    auto swap_physical = [&](uint32_t a, uint32_t b) {
        out.append(OpKind::CX, {a, b});
        out.append(OpKind::CX, {b, a});
        out.append(OpKind::CX, {a, b});
        std::swap(phys_to_log[a], phys_to_log[b]);
        if (phys_to_log[a].has_value()) {
            log_to_phys[*phys_to_log[a]] = a;
        }
        if (phys_to_log[b].has_value()) {
            log_to_phys[*phys_to_log[b]] = b;
        }
        result.swap_count++;
    };

    for (const auto &op : c.ops) {
        if (op.is_unitary() && op.qubits.size() > 2) {
            throw UnsupportedGateError(
                std::string(op.name()) + " acts on more than two qubits; decompose before routing");
        }
        if (op.is_unitary() && op.qubits.size() == 2) {
            uint32_t a = log_to_phys[op.qubits[0]];
            uint32_t b = log_to_phys[op.qubits[1]];
            if (!map.adjacent(a, b)) {
                std::vector<uint32_t> dist = map.distances_from(b);
                if (dist[a] == std::numeric_limits<uint32_t>::max()) {
                    throw DisconnectedMapError(
                        "no path between physical qubits " + std::to_string(a) + " and " + std::to_string(b));
                }
                uint32_t cur = a;
                while (dist[cur] > 1) {
                    uint32_t next = cur;
                    for (uint32_t w : map.neighbors()[cur]) {
                        if (dist[w] + 1 == dist[cur]) {
                            next = w;
                            break;
                        }
                    }
                    swap_physical(cur, next);
                    cur = next;
                }
            }
        }
        Operation mapped = op;
        for (auto &q : mapped.qubits) {
            q = log_to_phys[q];
        }
        out.append_op(mapped);
    }
    result.final_layout = log_to_phys;
    result.depth = circuit_depth(out);
    return result;
}

TranspileResult transpile(const Circuit &c, const CouplingMap &map, uint64_t seed) {
    if (c.num_qubits > map.num_physical_qubits()) {
        throw LayoutError(
            "circuit needs " + std::to_string(c.num_qubits) + " qubits but the coupling map has " +
            std::to_string(map.num_physical_qubits()));
    }
    return route(decompose_to_basis(c), map, seed);
}

Circuit compact_qubits(const Circuit &c) {
    std::vector<uint32_t> used = c.used_qubits();
    std::vector<uint32_t> relabel(c.num_qubits, 0);
    for (uint32_t k = 0; k < used.size(); k++) {
        relabel[used[k]] = k;
    }
    Circuit out(static_cast<uint32_t>(used.size()), c.num_clbits);
    for (const auto &op : c.ops) {
        Operation m = op;
        for (auto &q : m.qubits) {
            q = relabel[q];
        }
        out.append_op(m);
    }
    return out;
}

}  // namespace qfid
