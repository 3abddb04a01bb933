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

#include "qfid/circuit.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qfid/error.h"

namespace qfid {

namespace {

constexpr std::array<OpInfo, 22> OP_TABLE{{
    {"u", 1, 3},
    {"u1", 1, 1},
    {"u2", 1, 2},
    {"u3", 1, 3},
    {"rx", 1, 1},
    {"ry", 1, 1},
    {"rz", 1, 1},
    {"x", 1, 0},
    {"y", 1, 0},
    {"z", 1, 0},
    {"h", 1, 0},
    {"s", 1, 0},
    {"sdg", 1, 0},
    {"t", 1, 0},
    {"tdg", 1, 0},
    {"sx", 1, 0},
    {"cx", 2, 0},
    {"cz", 2, 0},
    {"swap", 2, 0},
    {"ccx", 3, 0},
    {"measure", 1, 0},
    {"barrier", 0, 0},
}};

constexpr std::array<OpKind, 22> ALL_KINDS{
    OpKind::U,   OpKind::U1,  OpKind::U2,  OpKind::U3, OpKind::RX,   OpKind::RY,  OpKind::RZ,      OpKind::X,
    OpKind::Y,   OpKind::Z,   OpKind::H,   OpKind::S,  OpKind::SDG,  OpKind::T,   OpKind::TDG,     OpKind::SX,
    OpKind::CX,  OpKind::CZ,  OpKind::SWAP, OpKind::CCX, OpKind::MEASURE, OpKind::BARRIER,
};

const Complex I{0.0, 1.0};

Unitary u3_matrix(double theta, double phi, double lambda) {
    double c = std::cos(theta / 2);
    double s = std::sin(theta / 2);
    return Unitary(
        2,
        {
            c,
            -std::exp(I * lambda) * s,
            std::exp(I * phi) * s,
            std::exp(I * (phi + lambda)) * c,
        });
}

}  // namespace

const OpInfo &op_info(OpKind kind) {
    return OP_TABLE[static_cast<std::size_t>(kind)];
}

std::optional<OpKind> op_kind_from_name(std::string_view name) {
    for (OpKind k : ALL_KINDS) {
        if (op_info(k).name == name) {
            return k;
        }
    }
    return std::nullopt;
}

std::span<const OpKind> all_op_kinds() {
    return ALL_KINDS;
}

static void check_op(const Circuit &c, const Operation &op) {
    const OpInfo &info = op_info(op.kind);
    if (info.num_qubits != 0 && op.qubits.size() != info.num_qubits) {
        throw std::invalid_argument(
            std::string(info.name) + " expects " + std::to_string(info.num_qubits) + " qubits, got " +
            std::to_string(op.qubits.size()));
    }
    if (op.qubits.empty()) {
        throw std::invalid_argument(std::string(info.name) + " has no qubits");
    }
    if (op.params.size() != info.num_params) {
        throw std::invalid_argument(
            std::string(info.name) + " expects " + std::to_string(info.num_params) + " params, got " +
            std::to_string(op.params.size()));
    }
    for (std::size_t i = 0; i < op.qubits.size(); i++) {
        if (op.qubits[i] >= c.num_qubits) {
            throw std::invalid_argument(
                "qubit " + std::to_string(op.qubits[i]) + " out of range " + std::to_string(c.num_qubits));
        }
        for (std::size_t j = 0; j < i; j++) {
            if (op.qubits[i] == op.qubits[j]) {
                throw std::invalid_argument(std::string(info.name) + " repeats qubit " + std::to_string(op.qubits[i]));
            }
        }
    }
    for (double p : op.params) {
        if (!std::isfinite(p)) {
            throw std::invalid_argument(std::string(info.name) + " has a non-finite parameter");
        }
    }
    if (op.kind == OpKind::MEASURE && op.clbit >= c.num_clbits) {
        throw std::invalid_argument(
            "clbit " + std::to_string(op.clbit) + " out of range " + std::to_string(c.num_clbits));
    }
}

Operation &Circuit::append_op(const Operation &op) {
    Operation copy = op;
    copy.id = ops.empty() ? 0 : ops.back().id + 1;
    if (copy.kind != OpKind::MEASURE) {
        copy.clbit = 0;
    }
    check_op(*this, copy);
    ops.push_back(std::move(copy));
    return ops.back();
}

Operation &Circuit::append(OpKind kind, std::vector<uint32_t> qubits, std::vector<double> params) {
    Operation op;
    op.kind = kind;
    op.qubits = std::move(qubits);
    op.params = std::move(params);
    return append_op(op);
}

Operation &Circuit::append_measure(uint32_t qubit, uint32_t clbit) {
    Operation op;
    op.kind = OpKind::MEASURE;
    op.qubits = {qubit};
    op.clbit = clbit;
    return append_op(op);
}

Operation &Circuit::append_barrier(std::vector<uint32_t> qubits) {
    return append(OpKind::BARRIER, std::move(qubits));
}

void Circuit::validate() const {
    for (std::size_t i = 0; i < ops.size(); i++) {
        check_op(*this, ops[i]);
        if (i > 0 && ops[i].id <= ops[i - 1].id) {
            throw std::invalid_argument("operation ids are not strictly increasing");
        }
    }
}

std::size_t Circuit::count(OpKind kind) const {
    return std::count_if(ops.begin(), ops.end(), [&](const Operation &op) {
        return op.kind == kind;
    });
}

std::size_t Circuit::num_unitary_ops() const {
    return std::count_if(ops.begin(), ops.end(), [](const Operation &op) {
        return op.is_unitary();
    });
}

std::size_t Circuit::num_two_qubit_ops() const {
    return std::count_if(ops.begin(), ops.end(), [](const Operation &op) {
        return op.is_unitary() && op.qubits.size() == 2;
    });
}

std::vector<uint32_t> Circuit::used_qubits() const {
    std::vector<bool> used(num_qubits, false);
    for (const auto &op : ops) {
        for (uint32_t q : op.qubits) {
            used[q] = true;
        }
    }
    std::vector<uint32_t> out;
    for (uint32_t q = 0; q < num_qubits; q++) {
        if (used[q]) {
            out.push_back(q);
        }
    }
    return out;
}

bool structurally_equal(const Circuit &a, const Circuit &b, double tol) {
    if (a.num_qubits != b.num_qubits || a.num_clbits != b.num_clbits || a.ops.size() != b.ops.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.ops.size(); i++) {
        const Operation &x = a.ops[i];
        const Operation &y = b.ops[i];
        if (x.kind != y.kind || x.qubits != y.qubits || x.params.size() != y.params.size()) {
            return false;
        }
        if (x.kind == OpKind::MEASURE && x.clbit != y.clbit) {
            return false;
        }
        for (std::size_t k = 0; k < x.params.size(); k++) {
            if (std::abs(x.params[k] - y.params[k]) > tol) {
                return false;
            }
        }
    }
    return true;
}

Unitary::Unitary(std::size_t dim, std::initializer_list<Complex> values) : dim(dim), data(values) {
    if (data.size() != dim * dim) {
        throw std::invalid_argument("Unitary initializer has the wrong size");
    }
}

Unitary Unitary::identity(std::size_t dim) {
    Unitary u(dim);
    for (std::size_t k = 0; k < dim; k++) {
        u(k, k) = 1;
    }
    return u;
}

Unitary Unitary::operator*(const Unitary &other) const {
    if (dim != other.dim) {
        throw std::invalid_argument("Unitary dimension mismatch");
    }
    Unitary out(dim);
    for (std::size_t r = 0; r < dim; r++) {
        for (std::size_t k = 0; k < dim; k++) {
            Complex a = (*this)(r, k);
            if (a == Complex{}) {
                continue;
            }
            for (std::size_t c = 0; c < dim; c++) {
                out(r, c) += a * other(k, c);
            }
        }
    }
    return out;
}

Unitary Unitary::adjoint() const {
    Unitary out(dim);
    for (std::size_t r = 0; r < dim; r++) {
        for (std::size_t c = 0; c < dim; c++) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

double Unitary::distance(const Unitary &other) const {
    double total = 0;
    for (std::size_t k = 0; k < data.size(); k++) {
        total += std::norm(data[k] - other.data[k]);
    }
    return std::sqrt(total);
}

double Unitary::distance_up_to_phase(const Unitary &other) const {
    // Align phases on the largest entry of `other`.
    std::size_t best = 0;
    for (std::size_t k = 1; k < other.data.size(); k++) {
        if (std::abs(other.data[k]) > std::abs(other.data[best])) {
            best = k;
        }
    }
    Complex phase = 1;
    if (std::abs(other.data[best]) > 0 && std::abs(data[best]) > 0) {
        phase = data[best] / other.data[best];
        phase /= std::abs(phase);
    }
    double worst = 0;
    for (std::size_t k = 0; k < data.size(); k++) {
        worst = std::max(worst, std::abs(data[k] - phase * other.data[k]));
    }
    return worst;
}

bool Unitary::is_unitary(double tol) const {
    Unitary prod = adjoint() * *this;
    Unitary id = identity(dim);
    for (std::size_t k = 0; k < prod.data.size(); k++) {
        if (std::abs(prod.data[k] - id.data[k]) > tol) {
            return false;
        }
    }
    return true;
}

Unitary gate_unitary(const Operation &op) {
    using std::numbers::pi;
    const double r2 = std::numbers::sqrt2 / 2;
    const auto &p = op.params;
    switch (op.kind) {
        case OpKind::U:
        case OpKind::U3:
            return u3_matrix(p.at(0), p.at(1), p.at(2));
        case OpKind::U2:
            return u3_matrix(pi / 2, p.at(0), p.at(1));
        case OpKind::U1:
            return Unitary(2, {1, 0, 0, std::exp(I * p.at(0))});
        case OpKind::RX: {
            double c = std::cos(p.at(0) / 2), s = std::sin(p.at(0) / 2);
            return Unitary(2, {c, -I * s, -I * s, c});
        }
        case OpKind::RY: {
            double c = std::cos(p.at(0) / 2), s = std::sin(p.at(0) / 2);
            return Unitary(2, {c, -s, s, c});
        }
        case OpKind::RZ:
            return Unitary(2, {std::exp(-I * (p.at(0) / 2)), 0, 0, std::exp(I * (p.at(0) / 2))});
        case OpKind::X:
            return Unitary(2, {0, 1, 1, 0});
        case OpKind::Y:
            return Unitary(2, {0, -I, I, 0});
        case OpKind::Z:
            return Unitary(2, {1, 0, 0, -1});
        case OpKind::H:
            return Unitary(2, {r2, r2, r2, -r2});
        case OpKind::S:
            return Unitary(2, {1, 0, 0, I});
        case OpKind::SDG:
            return Unitary(2, {1, 0, 0, -I});
        case OpKind::T:
            return Unitary(2, {1, 0, 0, std::exp(I * (pi / 4))});
        case OpKind::TDG:
            return Unitary(2, {1, 0, 0, std::exp(-I * (pi / 4))});
        case OpKind::SX:
            return Unitary(2, {Complex(0.5, 0.5), Complex(0.5, -0.5), Complex(0.5, -0.5), Complex(0.5, 0.5)});
        case OpKind::CX:
            // bit0 = control, bit1 = target.
            return Unitary(4, {1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0});
        case OpKind::CZ:
            return Unitary(4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1});
        case OpKind::SWAP:
            return Unitary(4, {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1});
        case OpKind::CCX: {
            // bit0, bit1 = controls, bit2 = target.
            Unitary u = Unitary::identity(8);
            u(3, 3) = 0;
            u(7, 7) = 0;
            u(3, 7) = 1;
            u(7, 3) = 1;
            return u;
        }
        case OpKind::MEASURE:
        case OpKind::BARRIER:
            break;
    }
    throw NonUnitaryOpError(std::string(op.name()) + " has no unitary");
}

std::size_t circuit_depth(const Circuit &c) {
    std::vector<std::size_t> level(c.num_qubits, 0);
    std::size_t depth = 0;
    for (const auto &op : c.ops) {
        std::size_t m = 0;
        for (uint32_t q : op.qubits) {
            m = std::max(m, level[q]);
        }
        if (op.kind != OpKind::BARRIER) {
            m += 1;
        }
        for (uint32_t q : op.qubits) {
            level[q] = m;
        }
        depth = std::max(depth, m);
    }
    return depth;
}

}  // namespace qfid
