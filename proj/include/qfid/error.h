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

#ifndef QFID_ERROR_H
#define QFID_ERROR_H

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qfid {

/// Coarse pipeline stage an error originates from. The CLI maps these onto
/// process exit codes (parse=1, transpile=2, numeric=3, oracle=4).
enum class ErrorStage {
    PARSE = 1,
    TRANSPILE = 2,
    NUMERIC = 3,
    ORACLE = 4,
};

struct Error : std::runtime_error {
    ErrorStage stage;
    Error(ErrorStage stage, const std::string &what) : std::runtime_error(what), stage(stage) {
    }
};

// ---- input / parsing ----

struct QasmSyntaxError : Error {
    std::size_t line;
    std::size_t column;
    std::string expected;
    QasmSyntaxError(std::size_t line, std::size_t column, std::string expected, const std::string &detail = "");
};

struct UnknownGateError : Error {
    std::string name;
    explicit UnknownGateError(std::string name);
};

struct RegisterError : Error {
    explicit RegisterError(const std::string &what) : Error(ErrorStage::PARSE, "RegisterError: " + what) {
    }
};

struct UnsupportedFeatureError : Error {
    explicit UnsupportedFeatureError(const std::string &what)
        : Error(ErrorStage::PARSE, "UnsupportedFeature: " + what) {
    }
};

struct InvalidSpecError : Error {
    explicit InvalidSpecError(const std::string &what) : Error(ErrorStage::PARSE, "InvalidSpec: " + what) {
    }
};

// ---- transpilation ----

struct UnsupportedGateError : Error {
    explicit UnsupportedGateError(const std::string &what)
        : Error(ErrorStage::TRANSPILE, "UnsupportedGate: " + what) {
    }
};

struct LayoutError : Error {
    explicit LayoutError(const std::string &what) : Error(ErrorStage::TRANSPILE, "LayoutError: " + what) {
    }
};

struct DisconnectedMapError : Error {
    explicit DisconnectedMapError(const std::string &what)
        : Error(ErrorStage::TRANSPILE, "DisconnectedMap: " + what) {
    }
};

struct CouplingMapError : Error {
    explicit CouplingMapError(const std::string &what)
        : Error(ErrorStage::TRANSPILE, "CouplingMapError: " + what) {
    }
};

// ---- numerics ----

struct NumericError : Error {
    explicit NumericError(const std::string &what) : Error(ErrorStage::NUMERIC, what) {
    }
};

struct NonUnitaryOpError : NumericError {
    explicit NonUnitaryOpError(const std::string &what) : NumericError("NonUnitaryOp: " + what) {
    }
};

struct EmptyGraphError : NumericError {
    explicit EmptyGraphError(const std::string &what) : NumericError("EmptyGraph: " + what) {
    }
};

struct DomainError : NumericError {
    explicit DomainError(const std::string &what) : NumericError("DomainError: " + what) {
    }
};

struct DimensionMismatchError : NumericError {
    explicit DimensionMismatchError(const std::string &what) : NumericError("DimensionMismatch: " + what) {
    }
};

struct UniformIdealError : NumericError {
    explicit UniformIdealError(const std::string &what) : NumericError("UniformIdeal: " + what) {
    }
};

// ---- simulation / shot oracles ----

struct OracleError : Error {
    explicit OracleError(const std::string &what) : Error(ErrorStage::ORACLE, what) {
    }
};

struct TooManyQubitsError : OracleError {
    explicit TooManyQubitsError(const std::string &what) : OracleError("TooManyQubits: " + what) {
    }
};

struct ReplayExhaustedError : OracleError {
    explicit ReplayExhaustedError(const std::string &what) : OracleError("ReplayExhausted: " + what) {
    }
};

}  // namespace qfid

#endif
