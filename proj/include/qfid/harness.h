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

#ifndef QFID_HARNESS_H
#define QFID_HARNESS_H

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qfid/benchmarks.h"
#include "qfid/circuit.h"
#include "qfid/dag.h"
#include "qfid/deformation.h"
#include "qfid/estimator.h"
#include "qfid/simulator.h"
#include "qfid/spectral.h"
#include "qfid/transpiler.h"

namespace qfid {

/// A circuit plus where it came from.
struct CircuitSource {
    /// Bench spec string or QASM path.
    std::string label;
    /// Benchmark family, or "qasm".
    std::string family;
    Circuit circuit;
};

CircuitSource source_from_bench(const BenchSpec &spec);
/// Reads and parses a QASM file. Parse errors propagate; an unreadable file
/// raises InvalidSpecError.
CircuitSource source_from_qasm_file(const std::string &path);

/// Adds measure q[i] -> c[i] for every qubit when the circuit has none.
Circuit with_measurements(const Circuit &c);

struct AnalyzeOptions {
    std::string coupling = "linear";
    uint64_t seed = 1;
    /// Number of eigenvalues; 0 selects the default.
    std::size_t k = 0;
    KernelConfig kernel;
    EigenOptions eigen;
    PlanConfig plan;
};

struct AnalyzeReport {
    std::string source;
    std::string family;
    uint32_t num_qubits = 0;
    uint32_t num_clbits = 0;
    std::map<std::string, std::size_t> gate_counts;
    std::map<std::string, std::size_t> transpiled_gate_counts;
    std::size_t depth0 = 0;
    std::size_t depth_t = 0;
    std::size_t swap_count = 0;
    DeformationReport deformation;
    PropagationSpectrum spectrum;
    std::size_t batch_size = 0;
    // Configuration echo.
    std::string coupling;
    uint64_t seed = 0;
    double delta = 0;
    double alpha = 0;
    std::size_t p_max = 0;
    std::size_t batch_min = 0;
    std::string estimator;

    bool operator==(const AnalyzeReport &other) const;
};

/// Everything produced up to batch sizing. The logical circuit carries
/// explicit measurements.
struct Analysis {
    Circuit logical;
    TranspileResult transpiled;
    GateDag g0;
    GateDag gt;
    AnalyzeReport report;
};

Analysis analyze(const CircuitSource &src, const AnalyzeOptions &opts);

enum class OracleKind {
    NOISY,
    IDEAL,
    REPLAY,
};

struct EstimateOptions {
    AnalyzeOptions analyze;
    NoiseModel noise;
    OracleKind oracle = OracleKind::NOISY;
    std::string replay_path;
    /// Also draw this many shots from the noisy distribution (separate seed)
    /// and record the Hellinger distance of that reference histogram.
    std::size_t reference_shots = 0;
    /// Record wall-clock time. Off by default so reports stay reproducible.
    bool timing = false;
};

struct RunRecord {
    AnalyzeReport analysis;
    std::string noise;
    std::string oracle;
    EstimationTrace trace;
    /// Hellinger distance of the estimator's histogram to the exact noisy
    /// distribution of the transpiled circuit.
    double bias_exact = 0;
    std::optional<double> bias_reference;
    std::size_t reference_shots = 0;
    uint64_t seed = 0;
    double walltime_ms = 0;
};

/// Exact distributions shared by every run of one circuit.
struct PreparedRun {
    Analysis analysis;
    OutcomeDistribution ideal;
    OutcomeDistribution noisy;
};

PreparedRun prepare_run(const CircuitSource &src, const AnalyzeOptions &opts, const NoiseModel &noise);

/// One adaptive run against a prepared circuit. The plan in `opts` decides
/// delta, alpha and the cap; the batch size is re-derived from it.
RunRecord run_prepared(const PreparedRun &prep, const EstimateOptions &opts);

RunRecord run_estimate(const CircuitSource &src, const EstimateOptions &opts);

/// Seed used for the reference histogram of a run with seed `seed`.
uint64_t reference_seed(uint64_t seed);

/// Draws `shots` outcomes from the exact noisy distribution.
Counts reference_counts(const CircuitSource &src, const AnalyzeOptions &opts, const NoiseModel &noise,
                        std::size_t shots, uint64_t seed);

struct SweepOptions {
    std::vector<BenchSpec> suite;
    std::vector<double> deltas = {0.01, 0.02, 0.03};
    std::vector<uint64_t> seeds = {1};
    EstimateOptions estimate;
    /// 0 selects the hardware concurrency.
    unsigned threads = 0;
};

struct SweepRow {
    std::string family;
    uint32_t n = 0;
    uint64_t seed = 0;
    double delta = 0;
    bool ok = false;
    std::string error;
    std::size_t depth0 = 0;
    std::size_t depth_t = 0;
    double ddeg = 0;
    double dpath = 0;
    double dconn = 0;
    double complexity = 0;
    std::size_t batch = 0;
    std::size_t shots_used = 0;
    std::string stop_reason;
    double fhat = 0;
    double ci = 0;
    double bias_exact = 0;
    double walltime_ms = 0;
};

/// Rows ordered by suite position, then seed, then delta, regardless of
/// thread scheduling. A failing spec yields rows with ok = false.
std::vector<SweepRow> sweep(const SweepOptions &opts);

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow &row);
std::string sweep_to_csv(const std::vector<SweepRow> &rows);
nlohmann::ordered_json sweep_row_json(const SweepRow &row);

nlohmann::ordered_json analyze_report_json(const AnalyzeReport &r);
/// Throws std::invalid_argument on a malformed document.
AnalyzeReport analyze_report_from_json(const nlohmann::json &j);
nlohmann::ordered_json trace_json(const EstimationTrace &t);
nlohmann::ordered_json run_record_json(const RunRecord &r);

/// Serialises with two-space indentation; floating-point values use 17
/// significant digits and non-finite values become null.
std::string dump_json(const nlohmann::ordered_json &j);

}  // namespace qfid

#endif
