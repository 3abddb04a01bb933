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

#ifndef QFID_BENCHMARKS_H
#define QFID_BENCHMARKS_H

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qfid/circuit.h"

namespace qfid {

constexpr uint32_t MIN_BENCH_QUBITS = 2;
constexpr uint32_t MAX_BENCH_QUBITS = 12;

/// One benchmark instance: family, qubit count, seed and family options.
///
/// Options per family:
///   bv        secret=<bits>        n-1 bits, clbit 0 rightmost
///   qpe       phase=<k/2^t|float>  in [0, 1); n-1 counting qubits
///   qft       x=<int>              expected output value
///   clifford  depth=<int>
///   ising     steps=<int> J=<f> h=<f> dt=<f>
///   su2       layers=<int>
///   xeb       depth=<int>
struct BenchSpec {
    std::string family;
    uint32_t n = 0;
    uint64_t seed = 1;
    std::map<std::string, std::string> extras;

    /// Throws InvalidSpecError.
    void validate() const;
    /// Canonical "family:n:seed[:key=value...]".
    std::string to_string() const;

    bool operator==(const BenchSpec &other) const = default;
};

std::span<const std::string_view> bench_families();

/// Parses "family:n[:seed][:key=value...]". Throws InvalidSpecError.
BenchSpec parse_bench_spec(std::string_view text);

/// Builds the circuit for a validated spec. Throws InvalidSpecError.
Circuit generate(const BenchSpec &spec);

/// Every family at n in {4, 6, 8} (plus 10 when requested), seed 1.
std::vector<BenchSpec> default_suite(bool include_n10 = false);

/// JSON array of spec objects {"family", "n", "seed", "extras"} or spec
/// strings. Throws InvalidSpecError.
std::vector<BenchSpec> suite_from_json(std::string_view text);
std::string suite_to_json(const std::vector<BenchSpec> &suite);

/// Measurement-free quantum Fourier transform, |y> -> sum_k e^{2 pi i yk/2^n}
/// |k> / sqrt(2^n) with qubit 0 least significant.
Circuit qft_circuit(uint32_t n);

/// Appends a controlled phase diag(1, 1, 1, e^{i theta}) built from u1 and cx.
void append_controlled_phase(Circuit &c, uint32_t control, uint32_t target, double theta);

struct RandomCircuitOptions {
    uint32_t num_qubits = 3;
    std::size_t num_gates = 20;
    uint64_t seed = 1;
    /// Include three-qubit ccx gates when num_qubits >= 3.
    bool allow_ccx = true;
    /// End with a measure of every qubit.
    bool measure = false;
};

/// Uniformly mixed gates from the full supported set with random angles.
Circuit random_circuit(const RandomCircuitOptions &opts);

}  // namespace qfid

#endif
