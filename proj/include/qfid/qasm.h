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

#ifndef QFID_QASM_H
#define QFID_QASM_H

#include <cstdint>
#include <string>
#include <string_view>

#include "qfid/circuit.h"

namespace qfid {

/// Largest total qubit (or clbit) count a program may declare.
constexpr uint32_t MAX_QASM_BITS = 1u << 16;

/// Parses the OpenQASM 2.0 subset used throughout qfid.
///
/// Registers are flattened in declaration order. Whole-register gate arguments
/// broadcast to one gate per index, and `measure q -> c;` on registers expands
/// pairwise. `include "qelib1.inc";` is accepted and ignored.
///
/// Throws QasmSyntaxError, UnknownGateError, RegisterError or
/// UnsupportedFeatureError. Never throws anything else for any input text.
Circuit parse_qasm(std::string_view text);

/// Canonical text: one flat `q` and (if needed) `c` register, one statement
/// per line, angles printed with 17 significant digits.
std::string emit_qasm(const Circuit &c);

/// Shortest text for `value` with 17 significant digits; locale-independent.
std::string format_double(double value);

}  // namespace qfid

#endif
