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

#ifndef QFID_SIMULATOR_H
#define QFID_SIMULATOR_H

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qfid/circuit.h"

namespace qfid {

constexpr uint32_t MAX_STATEVECTOR_QUBITS = 20;
constexpr uint32_t MAX_DENSITY_MATRIX_QUBITS = 12;

/// Uniform depolarizing noise after every gate plus symmetric readout flips.
struct NoiseModel {
    /// Depolarizing probability after one-qubit gates.
    double p1 = 0;
    /// Depolarizing probability after gates on two or more qubits.
    double p2 = 0;
    /// Per-bit readout flip probability.
    double p_ro = 0;

    /// Throws std::invalid_argument when a rate is outside its range.
    void validate() const;
    bool is_noiseless() const {
        return p1 == 0 && p2 == 0 && p_ro == 0;
    }
    /// "p1=1e-3,p2=1e-2,ro=1e-2"; omitted keys are zero. Throws
    /// std::invalid_argument.
    static NoiseModel parse(std::string_view text);
    std::string to_string() const;
};

/// Probabilities over the 2^num_bits classical outcomes. Outcome index bit c
/// is clbit c; printed bitstrings put clbit num_bits-1 first.
struct OutcomeDistribution {
    uint32_t num_bits = 0;
    std::vector<double> probs;

    double total() const;
    std::string bitstring(uint64_t outcome) const;
};

std::string format_bitstring(uint64_t outcome, uint32_t num_bits);
/// Throws std::invalid_argument on characters other than 0/1 or a length
/// mismatch.
uint64_t parse_bitstring(std::string_view text, uint32_t num_bits);

class StateVector {
   public:
    explicit StateVector(uint32_t num_qubits);
    uint32_t num_qubits() const {
        return n_;
    }
    std::vector<Complex> &amplitudes() {
        return amps_;
    }
    const std::vector<Complex> &amplitudes() const {
        return amps_;
    }
    void apply(const Unitary &u, std::span<const uint32_t> qubits);
    std::vector<double> probabilities() const;

   private:
    uint32_t n_;
    std::vector<Complex> amps_;
};

/// rho stored as a 2n-qubit vector: entry (r, c) lives at r | (c << n).
class DensityMatrix {
   public:
    explicit DensityMatrix(uint32_t num_qubits);
    uint32_t num_qubits() const {
        return n_;
    }
    Complex at(uint64_t row, uint64_t col) const {
        return data_[row | (col << n_)];
    }
    void apply(const Unitary &u, std::span<const uint32_t> qubits);
    /// rho -> (1-p) rho + p Tr_Q(rho) (x) I/2^|Q|.
    void depolarize(std::span<const uint32_t> qubits, double p);
    double trace() const;
    /// max |rho_rc - conj(rho_cr)|.
    double hermiticity_error() const;
    std::vector<double> diagonal() const;

   private:
    uint32_t n_;
    std::vector<Complex> data_;
};

/// Pure-state output of all unitary ops (measures and barriers skipped).
std::vector<Complex> final_state(const Circuit &c);

/// Full unitary of a measurement-free circuit; intended for <= 10 qubits.
Unitary circuit_unitary(const Circuit &c);

/// Noiseless outcome distribution via the statevector. Read-out follows the
/// circuit's measures; a circuit without measures reads qubit i into bit i.
/// Throws TooManyQubitsError above MAX_STATEVECTOR_QUBITS.
OutcomeDistribution ideal_distribution(const Circuit &c);

using DensityObserver = std::function<void(const DensityMatrix &, const Operation &)>;

/// Exact noisy outcome distribution: density-matrix evolution with a
/// depolarizing channel after each gate and readout confusion on the result.
/// `observer` (optional) sees the state after every operation's channel.
/// Throws TooManyQubitsError above MAX_DENSITY_MATRIX_QUBITS.
OutcomeDistribution noisy_distribution(const Circuit &c, const NoiseModel &noise, const DensityObserver &observer = {});

/// Bhattacharyya-based Hellinger distance sqrt(1 - sum sqrt(p q)), clamped
/// to [0, 1]. Throws DimensionMismatchError.
double hellinger_distance(const OutcomeDistribution &p, const OutcomeDistribution &q);

}  // namespace qfid

#endif
