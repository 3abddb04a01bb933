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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qfid/error.h"
#include "qfid/harness.h"
#include "qfid/qasm.h"

namespace {

using namespace qfid;

/// Exit code for failures that fit no pipeline stage.
constexpr int EXIT_INTERNAL = 5;

struct Flags {
    std::string qasm;
    std::string bench;
    std::string coupling = "linear";
    uint64_t seed = 1;
    std::size_t k = 0;
    double self_loop = 0.5;
    std::string noise = "p1=1e-3,p2=1e-2,ro=1e-2";
    double delta = 0.01;
    double alpha = 0.05;
    std::size_t pmax = 10000;
    std::size_t batch_min = 20;
    std::string estimator = "success";
    std::string out;
    std::string format;
    std::string dot;
    std::string oracle = "noisy";
    std::size_t reference_shots = 0;
    bool timing = false;
    // sweep
    std::string suite = "default";
    bool include_n10 = false;
    std::vector<double> deltas = {0.01, 0.02, 0.03};
    uint64_t seeds = 5;
    unsigned threads = 0;
    // reference
    std::size_t shots = 10000;
};

void add_source_flags(CLI::App *cmd, Flags &f) {
    auto *q = cmd->add_option("--qasm", f.qasm, "OpenQASM 2.0 input file");
    auto *b = cmd->add_option("--bench", f.bench, "benchmark spec family:n[:seed][:key=value...]");
    q->excludes(b);
    b->excludes(q);
}

void add_analysis_flags(CLI::App *cmd, Flags &f) {
    cmd->add_option("--coupling", f.coupling, "linear | ring | grid:RxC | heavyhex27 | @map.json")
        ->capture_default_str();
    cmd->add_option("--seed", f.seed, "run seed")->capture_default_str();
    cmd->add_option("--k", f.k, "number of eigenvalues (0 = min(10, nodes))")->capture_default_str();
    cmd->add_option("--self-loop", f.self_loop, "kernel self-loop weight")->capture_default_str();
    cmd->add_option("--delta", f.delta, "target error bound")->capture_default_str();
    cmd->add_option("--alpha", f.alpha, "significance level")->capture_default_str();
    cmd->add_option("--pmax", f.pmax, "shot cap")->capture_default_str();
    cmd->add_option("--batch-min", f.batch_min, "minimum batch size")->capture_default_str();
    cmd->add_option("--estimator", f.estimator, "success | xeb")->capture_default_str();
    cmd->add_option("--out", f.out, "write output to this file instead of stdout");
}

void add_noise_flags(CLI::App *cmd, Flags &f) {
    cmd->add_option("--noise", f.noise, "p1=..,p2=..,ro=..")->capture_default_str();
    cmd->add_flag("--timing", f.timing, "record wall-clock time");
}

AnalyzeOptions analyze_options(const Flags &f) {
    AnalyzeOptions o;
    o.coupling = f.coupling;
    o.seed = f.seed;
    o.k = f.k;
    o.kernel.self_loop = f.self_loop;
    o.plan.delta = f.delta;
    o.plan.alpha = f.alpha;
    o.plan.p_max = f.pmax;
    o.plan.batch_min = f.batch_min;
    auto est = estimator_from_name(f.estimator);
    if (!est) {
        throw std::invalid_argument("unknown estimator '" + f.estimator + "' (expected success or xeb)");
    }
    o.plan.estimator = *est;
    o.plan.validate();
    return o;
}

CircuitSource load_source(const Flags &f) {
    if (!f.qasm.empty()) {
        return source_from_qasm_file(f.qasm);
    }
    if (!f.bench.empty()) {
        return source_from_bench(parse_bench_spec(f.bench));
    }
    throw std::invalid_argument("one of --qasm or --bench is required");
}

void write_output(const Flags &f, const std::string &text) {
    if (f.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream o(f.out, std::ios::binary);
    if (!o) {
        throw std::runtime_error("cannot write '" + f.out + "'");
    }
    o << text;
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream o(path, std::ios::binary);
    if (!o) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    o << text;
}

std::string format_or(const Flags &f, const char *fallback) {
    std::string fmt = f.format.empty() ? fallback : f.format;
    if (fmt != "json" && fmt != "csv") {
        throw std::invalid_argument("--format must be json or csv");
    }
    return fmt;
}

int cmd_analyze(const Flags &f) {
    Analysis a = analyze(load_source(f), analyze_options(f));
    if (!f.dot.empty()) {
        write_file(f.dot, a.gt.to_dot());
    }
    const AnalyzeReport &r = a.report;
    if (format_or(f, "json") == "csv") {
        std::string s = "family,n,depth0,deptht,swap_count,ddeg,dpath,dconn,complexity,batch\n";
        s += r.family + "," + std::to_string(r.num_qubits) + "," + std::to_string(r.depth0) + "," +
             std::to_string(r.depth_t) + "," + std::to_string(r.swap_count) + "," +
             format_double(r.deformation.delta_deg) + "," + format_double(r.deformation.delta_path) + "," +
             format_double(r.deformation.delta_conn) + "," + format_double(r.spectrum.complexity) + "," +
             std::to_string(r.batch_size) + "\n";
        write_output(f, s);
    } else {
        write_output(f, dump_json(analyze_report_json(r)));
    }
    return 0;
}

EstimateOptions estimate_options(const Flags &f) {
    EstimateOptions o;
    o.analyze = analyze_options(f);
    o.noise = NoiseModel::parse(f.noise);
    o.reference_shots = f.reference_shots;
    o.timing = f.timing;
    if (f.oracle == "noisy") {
        o.oracle = OracleKind::NOISY;
    } else if (f.oracle == "ideal") {
        o.oracle = OracleKind::IDEAL;
    } else if (f.oracle.rfind("replay:", 0) == 0) {
        o.oracle = OracleKind::REPLAY;
        o.replay_path = f.oracle.substr(7);
    } else {
        throw std::invalid_argument("--oracle must be noisy, ideal or replay:<counts.json>");
    }
    return o;
}

int cmd_estimate(const Flags &f) {
    EstimateOptions eo = estimate_options(f);
    RunRecord rec = run_estimate(load_source(f), eo);
    if (format_or(f, "json") == "csv") {
        SweepRow r;
        r.family = rec.analysis.family;
        r.n = rec.analysis.num_qubits;
        r.seed = rec.seed;
        r.delta = rec.analysis.delta;
        r.ok = true;
        r.depth0 = rec.analysis.depth0;
        r.depth_t = rec.analysis.depth_t;
        r.ddeg = rec.analysis.deformation.delta_deg;
        r.dpath = rec.analysis.deformation.delta_path;
        r.dconn = rec.analysis.deformation.delta_conn;
        r.complexity = rec.analysis.spectrum.complexity;
        r.batch = rec.analysis.batch_size;
        r.shots_used = rec.trace.shots_used;
        r.stop_reason = std::string(stop_reason_name(rec.trace.stop_reason));
        r.fhat = rec.trace.fhat;
        r.ci = rec.trace.ci;
        r.bias_exact = rec.bias_exact;
        r.walltime_ms = rec.walltime_ms;
        write_output(f, sweep_to_csv({r}));
    } else {
        write_output(f, dump_json(run_record_json(rec)));
    }
    return 0;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidSpecError("cannot read '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cmd_sweep(const Flags &f) {
    SweepOptions so;
    if (f.suite == "default") {
        so.suite = default_suite(f.include_n10);
    } else if (f.suite == "empty") {
        so.suite = {};
    } else {
        so.suite = suite_from_json(read_file(f.suite));
    }
    so.deltas = f.deltas;
    so.seeds.clear();
    for (uint64_t s = 1; s <= f.seeds; s++) {
        so.seeds.push_back(s);
    }
    so.estimate = estimate_options(f);
    so.threads = f.threads;
    std::vector<SweepRow> rows = sweep(so);
    for (const SweepRow &r : rows) {
        if (!r.ok) {
            std::cerr << "sweep: " << r.family << ":" << r.n << " seed " << r.seed << " failed: " << r.error << "\n";
        }
    }
    if (format_or(f, "csv") == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const SweepRow &r : rows) {
            arr.push_back(sweep_row_json(r));
        }
        write_output(f, dump_json(arr));
    } else {
        write_output(f, sweep_to_csv(rows));
    }
    return 0;
}

int cmd_reference(const Flags &f) {
    AnalyzeOptions ao = analyze_options(f);
    Counts c = reference_counts(load_source(f), ao, NoiseModel::parse(f.noise), f.shots, f.seed);
    write_output(f, c.to_json());
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qfid: structure-aware shot planning for circuit fidelity estimation"};
    app.require_subcommand(1);
    Flags f;

    auto *analyze_cmd = app.add_subcommand("analyze", "transpile, measure deformation and size the shot batch");
    add_source_flags(analyze_cmd, f);
    add_analysis_flags(analyze_cmd, f);
    analyze_cmd->add_option("--format", f.format, "json | csv");
    analyze_cmd->add_option("--dot", f.dot, "write the transpiled dependency graph as Graphviz DOT");

    auto *estimate_cmd = app.add_subcommand("estimate", "run the adaptive fidelity estimator");
    add_source_flags(estimate_cmd, f);
    add_analysis_flags(estimate_cmd, f);
    add_noise_flags(estimate_cmd, f);
    estimate_cmd->add_option("--format", f.format, "json | csv");
    estimate_cmd->add_option("--oracle", f.oracle, "noisy | ideal | replay:<counts.json>")->capture_default_str();
    estimate_cmd->add_option("--reference-shots", f.reference_shots, "size of an extra reference histogram");

    auto *sweep_cmd = app.add_subcommand("sweep", "run a benchmark suite over deltas and seeds");
    sweep_cmd->alias("bench");
    add_analysis_flags(sweep_cmd, f);
    add_noise_flags(sweep_cmd, f);
    sweep_cmd->add_option("--format", f.format, "csv | json");
    sweep_cmd->add_option("--suite", f.suite, "default | empty | suite.json")->capture_default_str();
    sweep_cmd->add_flag("--n10", f.include_n10, "add n = 10 to the default suite");
    sweep_cmd->add_option("--deltas", f.deltas, "comma-separated error bounds")->delimiter(',')->capture_default_str();
    sweep_cmd->add_option("--seeds", f.seeds, "run seeds 1..N")->capture_default_str();
    sweep_cmd->add_option("--threads", f.threads, "worker threads (0 = all cores)");

    auto *reference_cmd = app.add_subcommand("reference", "sample a counts file from the noisy distribution");
    add_source_flags(reference_cmd, f);
    add_analysis_flags(reference_cmd, f);
    reference_cmd->add_option("--noise", f.noise, "p1=..,p2=..,ro=..")->capture_default_str();
    reference_cmd->add_option("--shots", f.shots, "number of shots")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ErrorStage::PARSE);
    }

    try {
        if (*analyze_cmd) {
            return cmd_analyze(f);
        }
        if (*estimate_cmd) {
            return cmd_estimate(f);
        }
        if (*sweep_cmd) {
            return cmd_sweep(f);
        }
        return cmd_reference(f);
    } catch (const qfid::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.stage);
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(ErrorStage::PARSE);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_INTERNAL;
    }
}
