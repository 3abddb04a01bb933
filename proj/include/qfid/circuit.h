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

#ifndef QFID_CIRCUIT_H
#define QFID_CIRCUIT_H

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qfid {

using Complex = std::complex<double>;

enum class OpKind : uint8_t {
    U,
    U1,
    U2,
    U3,
    RX,
    RY,
    RZ,
    X,
    Y,
    Z,
    H,
    S,
    SDG,
    T,
    TDG,
    SX,
    CX,
    CZ,
    SWAP,
    CCX,
    MEASURE,
    BARRIER,
};

struct OpInfo {
    std::string_view name;
    /// Zero means "any positive number" (barrier).
    uint32_t num_qubits;
    uint32_t num_params;
};

const OpInfo &op_info(OpKind kind);
std::optional<OpKind> op_kind_from_name(std::string_view name);
std::span<const OpKind> all_op_kinds();

/// One instruction of a circuit. Measures read `qubits[0]` into `clbit`;
/// barriers carry only their qubit list.
struct Operation {
    OpKind kind = OpKind::X;
    std::vector<uint32_t> qubits;
    std::vector<double> params;
    uint32_t clbit = 0;
    uint32_t id = 0;

    bool is_unitary() const {
        return kind != OpKind::MEASURE && kind != OpKind::BARRIER;
    }
    std::string_view name() const {
        return op_info(kind).name;
    }
};

/// Hardware-agnostic gate list over flat qubit/clbit indices.
///
/// Operation ids are assigned on append and are strictly increasing in op
/// order. Appending validates arity, index range and qubit distinctness and
/// throws std::invalid_argument on violation.
struct Circuit {
    uint32_t num_qubits = 0;
    uint32_t num_clbits = 0;
    std::vector<Operation> ops;

    Circuit() = default;
    Circuit(uint32_t num_qubits, uint32_t num_clbits) : num_qubits(num_qubits), num_clbits(num_clbits) {
    }

    Operation &append(OpKind kind, std::vector<uint32_t> qubits, std::vector<double> params = {});
    Operation &append_measure(uint32_t qubit, uint32_t clbit);
    Operation &append_barrier(std::vector<uint32_t> qubits);
    /// Appends a copy of `op` with a fresh id.
    Operation &append_op(const Operation &op);

    /// Re-checks every invariant. Throws std::invalid_argument.
    void validate() const;

    std::size_t count(OpKind kind) const;
    std::size_t num_unitary_ops() const;
    std::size_t num_two_qubit_ops() const;
    /// Qubits that at least one operation touches, ascending.
    std::vector<uint32_t> used_qubits() const;
};

/// Same counts, same op sequence (kinds, operands, clbits), angles within `tol`.
/// Ids are not compared.
bool structurally_equal(const Circuit &a, const Circuit &b, double tol = 1e-12);

/// Dense square complex matrix, row-major.
///
/// For a gate on qubits [q0, q1, ...] the local basis index is
/// sum_j bit(q_j) << j, i.e. the first listed qubit is least significant.
struct Unitary {
    std::size_t dim = 0;
    std::vector<Complex> data;

    Unitary() = default;
    explicit Unitary(std::size_t dim) : dim(dim), data(dim * dim) {
    }
    Unitary(std::size_t dim, std::initializer_list<Complex> values);

    static Unitary identity(std::size_t dim);

    Complex &operator()(std::size_t r, std::size_t c) {
        return data[r * dim + c];
    }
    const Complex &operator()(std::size_t r, std::size_t c) const {
        return data[r * dim + c];
    }

    Unitary operator*(const Unitary &other) const;
    Unitary adjoint() const;
    /// Frobenius-norm distance.
    double distance(const Unitary &other) const;
    /// min over global phases of max |a_ij - e^{i phi} b_ij|.
    double distance_up_to_phase(const Unitary &other) const;
    bool is_unitary(double tol) const;
};

/// Standard matrix of a unitary operation. Throws NonUnitaryOpError for
/// measure and barrier.
///
/// Conventions: RZ(t) = diag(e^{-it/2}, e^{it/2}); U3(t,p,l) is the OpenQASM 2
/// u3; U1(l) = diag(1, e^{il}); U2(p,l) = U3(pi/2,p,l); U is an alias of U3.
/// CX lists [control, target].
Unitary gate_unitary(const Operation &op);

/// Number of layers on the critical path where ops conflict iff they share a
/// qubit. Measures occupy a layer; barriers synchronise their qubits without
/// occupying one.
std::size_t circuit_depth(const Circuit &c);

}  // namespace qfid

#endif
