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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qfid/error.h"
#include "test_support.h"

using namespace qfid;
using qfid::testing::Gen;

namespace {

const Complex I(0, 1);

Operation make_op(OpKind kind, std::vector<uint32_t> qubits, std::vector<double> params = {}) {
    Operation op;
    op.kind = kind;
    op.qubits = std::move(qubits);
    op.params = std::move(params);
    return op;
}

void expect_matrix_near(const Unitary &a, const Unitary &b, double tol) {
    ASSERT_EQ(a.dim, b.dim);
    for (std::size_t k = 0; k < a.data.size(); k++) {
        EXPECT_NEAR(std::abs(a.data[k] - b.data[k]), 0.0, tol) << "entry " << k;
    }
}

}  // namespace

TEST(gate_unitary, pauli_x_is_the_swap_of_basis_states) {
    Unitary x = gate_unitary(make_op(OpKind::X, {0}));
    expect_matrix_near(x, Unitary(2, {0, 1, 1, 0}), 0);
}

TEST(gate_unitary, rz_zero_is_exact_identity) {
    Unitary rz = gate_unitary(make_op(OpKind::RZ, {0}, {0.0}));
    expect_matrix_near(rz, Unitary::identity(2), 1e-12);
}

TEST(gate_unitary, hadamard_squares_to_identity) {
    Unitary h = gate_unitary(make_op(OpKind::H, {0}));
    expect_matrix_near(h * h, Unitary::identity(2), 1e-12);
}

TEST(gate_unitary, rz_follows_half_angle_convention) {
    double t = 0.731;
    Unitary rz = gate_unitary(make_op(OpKind::RZ, {0}, {t}));
    EXPECT_NEAR(std::abs(rz(0, 0) - std::exp(-I * (t / 2))), 0, 1e-15);
    EXPECT_NEAR(std::abs(rz(1, 1) - std::exp(I * (t / 2))), 0, 1e-15);
}

TEST(gate_unitary, u3_matches_euler_product) {
    // U3(t, p, l) = e^{i(p+l)/2} RZ(p) RY(t) RZ(l)
    Gen g(11);
    for (int trial = 0; trial < 50; trial++) {
        double t = g.uniform(-4, 4), p = g.uniform(-4, 4), l = g.uniform(-4, 4);
        Unitary euler = gate_unitary(make_op(OpKind::RZ, {0}, {p})) * gate_unitary(make_op(OpKind::RY, {0}, {t})) *
                        gate_unitary(make_op(OpKind::RZ, {0}, {l}));
        Complex phase = std::exp(I * ((p + l) / 2));
        for (Complex &z : euler.data) {
            z *= phase;
        }
        expect_matrix_near(gate_unitary(make_op(OpKind::U3, {0}, {t, p, l})), euler, 1e-12);
        expect_matrix_near(gate_unitary(make_op(OpKind::U, {0}, {t, p, l})), euler, 1e-12);
    }
}

TEST(gate_unitary, named_gates_match_rotation_forms) {
    using std::numbers::pi;
    auto u1 = [](double l) { return gate_unitary(make_op(OpKind::U1, {0}, {l})); };
    EXPECT_LT(gate_unitary(make_op(OpKind::Z, {0})).distance(u1(pi)), 1e-12);
    EXPECT_LT(gate_unitary(make_op(OpKind::S, {0})).distance(u1(pi / 2)), 1e-12);
    EXPECT_LT(gate_unitary(make_op(OpKind::SDG, {0})).distance(u1(-pi / 2)), 1e-12);
    EXPECT_LT(gate_unitary(make_op(OpKind::T, {0})).distance(u1(pi / 4)), 1e-12);
    EXPECT_LT(gate_unitary(make_op(OpKind::TDG, {0})).distance(u1(-pi / 4)), 1e-12);
    Unitary sx = gate_unitary(make_op(OpKind::SX, {0}));
    EXPECT_LT((sx * sx).distance(gate_unitary(make_op(OpKind::X, {0}))), 1e-12);
    Unitary u2 = gate_unitary(make_op(OpKind::U2, {0}, {0.3, -1.1}));
    EXPECT_LT(u2.distance(gate_unitary(make_op(OpKind::U3, {0}, {pi / 2, 0.3, -1.1}))), 1e-12);
}

TEST(gate_unitary, controlled_gates_use_first_qubit_as_low_bit) {
    Unitary cx = gate_unitary(make_op(OpKind::CX, {0, 1}));
    // |control=1, target=0> is index 1 and maps to index 3.
    EXPECT_EQ(cx(3, 1), Complex(1, 0));
    EXPECT_EQ(cx(1, 3), Complex(1, 0));
    EXPECT_EQ(cx(2, 2), Complex(1, 0));
    Unitary ccx = gate_unitary(make_op(OpKind::CCX, {0, 1, 2}));
    EXPECT_EQ(ccx(7, 3), Complex(1, 0));
    EXPECT_EQ(ccx(5, 5), Complex(1, 0));
}

TEST(gate_unitary, measure_and_barrier_are_rejected) {
    EXPECT_THROW(gate_unitary(make_op(OpKind::MEASURE, {0})), NonUnitaryOpError);
    EXPECT_THROW(gate_unitary(make_op(OpKind::BARRIER, {0, 1})), NonUnitaryOpError);
}

TEST(gate_unitary, random_parameterised_gates_are_unitary) {
    Gen g(2024);
    std::vector<OpKind> kinds;
    for (OpKind k : all_op_kinds()) {
        if (k != OpKind::MEASURE && k != OpKind::BARRIER) {
            kinds.push_back(k);
        }
    }
    for (int trial = 0; trial < 10000; trial++) {
        OpKind k = kinds[g.below(kinds.size())];
        const OpInfo &info = op_info(k);
        std::vector<uint32_t> qubits(info.num_qubits);
        for (uint32_t j = 0; j < info.num_qubits; j++) {
            qubits[j] = j;
        }
        std::vector<double> params(info.num_params);
        for (double &p : params) {
            p = g.uniform(-100, 100);
        }
        ASSERT_TRUE(gate_unitary(make_op(k, qubits, params)).is_unitary(1e-12)) << op_info(k).name;
    }
}

TEST(circuit_depth, parallel_gates_share_a_layer) {
    Circuit c(2, 0);
    c.append(OpKind::H, {0});
    c.append(OpKind::H, {1});
    EXPECT_EQ(circuit_depth(c), 1u);
}

TEST(circuit_depth, chain_through_shared_qubits) {
    Circuit c(2, 0);
    c.append(OpKind::H, {0});
    c.append(OpKind::CX, {0, 1});
    c.append(OpKind::H, {1});
    EXPECT_EQ(circuit_depth(c), 3u);
}

TEST(circuit_depth, empty_circuit_has_zero_depth) {
    EXPECT_EQ(circuit_depth(Circuit(3, 0)), 0u);
}

TEST(circuit_depth, measures_count_and_barriers_synchronise) {
    Circuit c(2, 2);
    c.append(OpKind::H, {0});
    c.append(OpKind::H, {0});
    c.append_barrier({0, 1});
    c.append(OpKind::X, {1});
    c.append_measure(1, 1);
    // x(1) waits for the barrier at level 2, then the measure adds one more.
    EXPECT_EQ(circuit_depth(c), 4u);
}

TEST(circuit_depth, bounded_by_op_count_and_exact_for_one_qubit) {
    Gen g(5);
    for (int trial = 0; trial < 300; trial++) {
        uint32_t n = g.range(1, 6);
        Circuit c = qfid::testing::gen_circuit(g, n, g.range(0, 60), true);
        EXPECT_LE(circuit_depth(c), c.ops.size());
    }
    Circuit one(1, 0);
    for (int i = 0; i < 17; i++) {
        one.append(i % 2 ? OpKind::H : OpKind::T, {0});
    }
    EXPECT_EQ(circuit_depth(one), 17u);
}

TEST(circuit, append_assigns_increasing_ids) {
    Circuit c(3, 1);
    c.append(OpKind::H, {0});
    c.append(OpKind::CX, {0, 2});
    c.append_measure(2, 0);
    for (std::size_t i = 1; i < c.ops.size(); i++) {
        EXPECT_LT(c.ops[i - 1].id, c.ops[i].id);
    }
    EXPECT_NO_THROW(c.validate());
}

TEST(circuit, append_rejects_invalid_operations) {
    Circuit c(2, 1);
    EXPECT_THROW(c.append(OpKind::CX, {0, 0}), std::invalid_argument);
    EXPECT_THROW(c.append(OpKind::CX, {0}), std::invalid_argument);
    EXPECT_THROW(c.append(OpKind::H, {2}), std::invalid_argument);
    EXPECT_THROW(c.append(OpKind::RZ, {0}, {}), std::invalid_argument);
    EXPECT_THROW(c.append(OpKind::RZ, {0}, {std::nan("")}), std::invalid_argument);
    EXPECT_THROW(c.append_measure(0, 1), std::invalid_argument);
}

TEST(circuit, structural_equality_ignores_ids_and_tiny_angle_noise) {
    Circuit a(1, 0), b(1, 0);
    a.append(OpKind::RZ, {0}, {0.5});
    b.append(OpKind::RZ, {0}, {0.5 + 1e-14});
    b.ops[0].id = 42;
    EXPECT_TRUE(structurally_equal(a, b));
    b.ops[0].params[0] = 0.6;
    EXPECT_FALSE(structurally_equal(a, b));
}
